//! Quartic invariant of the 56 charges, in Cartan and Cremmer-Julia form.
//!
//! The 28 `so(8)` generators are the antisymmetric operators: `-Gamma^{0k} = g_k`
//! and `-Gamma^{jk} = (1/2)[g_j, g_k]`. Electric charges fill `x`, magnetic
//! ones `y`, through fixed templates naming one boldface charge per slot.
//! The central charge is kept as a Gaussian-integer matrix times a power of
//! `sqrt 2`, so every quartic quantity comes out exactly rational.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{half_commutator, GateMatrix};
use crate::hexagon::{HexLabel, HexagonModel};
use crate::matrix::{DenseIntMatrix, Matrix, Scalar};
use crate::par::Execution;
use crate::pauli::SignedPauliOp;

pub type GaussianRational = Complex<BigRational>;
pub type GaussianBigInt = Complex<BigInt>;

pub const DEFAULT_SEED: u64 = 20080911;
pub const DEFAULT_TRIALS: usize = 1000;
pub const CHARGE_RANGE: i64 = 9;

const CHARGE_LETTERS: [char; 7] = ['a', 'b', 'c', 'd', 'e', 'f', 'g'];

/// Signed basis operator in each slot; row `I`, column `J` holds `-Gamma^{IJ}`.
const GAMMA_TEMPLATE: &str = "\
0 g1 g2 g3 g4 g5 g6 g7
-g1 0 e6 c4 -f3 f7 -c2 -e5
-g2 -e6 0 e7 c5 -f4 f1 -c3
-g3 -c4 -e7 0 e1 c6 -f5 f2
-g4 f3 -c5 -e1 0 e2 c7 -f6
-g5 -f7 f4 -c6 -e2 0 e3 c1
-g6 c2 -f1 f5 -c7 -e3 0 e4
-g7 e5 c3 -f2 f6 -c1 -e4 0";

const X_TEMPLATE: &str = "\
0 -a7 -b7 -c7 -d7 -e7 -f7 -g7
a7 0 f1 d4 -c2 g2 -b4 -e1
b7 -f1 0 g1 e4 -d2 a2 -c4
c7 -d4 -g1 0 a1 f4 -e2 b2
d7 c2 -e4 -a1 0 b1 g4 -f2
e7 -g2 d2 -f4 -b1 0 c1 a4
f7 b4 -a2 e2 -g4 -c1 0 d1
g7 e1 c4 -b2 f2 -a4 -d1 0";

const Y_TEMPLATE: &str = "\
0 -a0 -b0 -c0 -d0 -e0 -f0 -g0
a0 0 f6 d3 -c5 g5 -b3 -e6
b0 -f6 0 g6 e3 -d5 a5 -c3
c0 -d3 -g6 0 a6 f3 -e5 b5
d0 c5 -e3 -a6 0 b6 g3 -f5
e0 -g5 d5 -f3 -b6 0 c6 a3
f0 b3 -a5 e5 -g3 -c6 0 d6
g0 e6 c3 -b5 f5 -a3 -d6 0";

/// `(sign, name)` per cell; the diagonal is `None`.
fn parse_template(t: &str) -> Vec<Vec<Option<(i8, String)>>> {
    t.lines()
        .map(|row| {
            row.split_whitespace()
                .map(|cell| match cell {
                    "0" => None,
                    c => Some(match c.strip_prefix('-') {
                        Some(rest) => (-1, rest.to_string()),
                        None => (1, c.to_string()),
                    }),
                })
                .collect()
        })
        .collect()
}

/// The 28 slots `(I, J)` with `I < J`, row by row.
pub fn slots() -> Vec<(usize, usize)> {
    (0..8)
        .flat_map(|i| (i + 1..8).map(move |j| (i, j)))
        .collect()
}

fn slot_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    slots()
        .iter()
        .position(|&s| s == (i, j))
        .expect("off-diagonal slot")
}

/// Boldface charge name, `a0 .. g7`.
pub fn charge_name(n: usize) -> String {
    format!("{}{}", CHARGE_LETTERS[n / 8], n % 8)
}

pub fn charge_index(name: &str) -> Result<usize> {
    let mut it = name.chars();
    match (it.next(), it.next(), it.next()) {
        (Some(l), Some(d), None) => {
            let letter = CHARGE_LETTERS.iter().position(|&c| c == l);
            let digit = d.to_digit(10).filter(|&d| d < 8);
            match (letter, digit) {
                (Some(l), Some(d)) => Ok(l * 8 + d as usize),
                _ => Err(Error::ChargeLabel(name.to_string())),
            }
        }
        _ => Err(Error::ChargeLabel(name.to_string())),
    }
}

/// Fifty-six integer charges indexed by `letter * 8 + n`.
pub type Charges = [i64; 56];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaEntry {
    pub slot: (usize, usize),
    /// The basis operator `-Gamma^{IJ}` as a hexagon label with sign.
    pub sign: i8,
    pub label: HexLabel,
    pub operator: SignedPauliOp,
}

impl GammaEntry {
    /// `Gamma^{IJ}` as a real matrix.
    pub fn gamma(&self) -> DenseIntMatrix {
        -self.operator.to_dense()
    }
}

#[derive(Clone, Debug)]
pub struct GammaDictionary {
    entries: Vec<GammaEntry>,
}

pub fn build_gamma_dictionary(m: &HexagonModel) -> Result<GammaDictionary> {
    let t = parse_template(GAMMA_TEMPLATE);
    let entries = slots()
        .into_iter()
        .map(|(i, j)| {
            let (sign, name) = t[i][j].clone().expect("off-diagonal");
            let label: HexLabel = name.parse()?;
            let op = m.operator(label);
            Ok(GammaEntry {
                slot: (i, j),
                sign,
                label,
                operator: if sign < 0 { op.negate() } else { op },
            })
        })
        .collect::<Result<_>>()?;
    Ok(GammaDictionary { entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaCheck {
    /// `-Gamma^{0k} = g_k`.
    pub first_row: bool,
    /// `-Gamma^{jk} = (1/2)[g_j, g_k]`, sign included.
    pub commutators: bool,
    /// The template is antisymmetric in `(I, J)`.
    pub antisymmetric: bool,
    /// The images are the 28 antisymmetric operators.
    pub covers_antisymmetric: bool,
}

impl GammaCheck {
    pub fn passed(&self) -> bool {
        self.first_row && self.commutators && self.antisymmetric && self.covers_antisymmetric
    }
}

impl GammaDictionary {
    pub fn entries(&self) -> &[GammaEntry] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &GammaEntry {
        &self.entries[slot_index(i, j)]
    }

    /// `Gamma^{IJ}` for any ordered pair, antisymmetric in `(I, J)`.
    pub fn gamma(&self, i: usize, j: usize) -> DenseIntMatrix {
        let g = self.entry(i, j).gamma();
        if i < j {
            g
        } else {
            -g
        }
    }

    pub fn verify(&self, m: &HexagonModel) -> GammaCheck {
        let g = |k: usize| m.operator(HexLabel::new('g', k as i32));
        let first_row = (1..8).all(|k| self.entry(0, k).operator == g(k));
        let commutators = (1..8).all(|j| {
            (j + 1..8).all(|k| half_commutator(&g(j), &g(k)) == Some(self.entry(j, k).operator))
        });
        let t = parse_template(GAMMA_TEMPLATE);
        let antisymmetric = (0..8).all(|i| {
            (0..8).all(|j| match (&t[i][j], &t[j][i]) {
                (None, None) => i == j,
                (Some((s1, n1)), Some((s2, n2))) => n1 == n2 && s1 == &-s2,
                _ => false,
            })
        });
        let mut codes: Vec<u8> = self.entries.iter().map(|e| e.operator.code()).collect();
        codes.sort_unstable();
        codes.dedup();
        let covers_antisymmetric =
            codes.len() == 28 && self.entries.iter().all(|e| !e.operator.is_symmetric());
        GammaCheck {
            first_row,
            commutators,
            antisymmetric,
            covers_antisymmetric,
        }
    }
}

/// Electric and magnetic charge matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeConfiguration {
    pub x: DenseIntMatrix,
    pub y: DenseIntMatrix,
}

fn fill(template: &str, c: &Charges) -> DenseIntMatrix {
    let t = parse_template(template);
    Matrix::from_fn(8, |i, j| match &t[i][j] {
        None => 0,
        Some((s, name)) => *s as i64 * c[charge_index(name).expect("template name")],
    })
}

pub fn charges_to_matrices(c: &Charges) -> ChargeConfiguration {
    ChargeConfiguration {
        x: fill(X_TEMPLATE, c),
        y: fill(Y_TEMPLATE, c),
    }
}

impl ChargeConfiguration {
    pub fn zero() -> Self {
        charges_to_matrices(&[0; 56])
    }

    pub fn from_matrices(x: DenseIntMatrix, y: DenseIntMatrix) -> Result<Self> {
        for m in [&x, &y] {
            if m.dim() != 8 {
                return Err(Error::Dimension {
                    expected: 8,
                    found: m.dim(),
                });
            }
            if !m.is_antisymmetric() {
                return Err(Error::NotAntisymmetric);
            }
        }
        Ok(Self { x, y })
    }

    /// Reads the 56 charges back off the templates.
    pub fn charges(&self) -> Charges {
        let mut c = [0; 56];
        for (template, m) in [(X_TEMPLATE, &self.x), (Y_TEMPLATE, &self.y)] {
            let t = parse_template(template);
            for (i, j) in slots() {
                let (s, name) = t[i][j].clone().expect("off-diagonal");
                c[charge_index(&name).expect("template name")] = s as i64 * m[(i, j)];
            }
        }
        c
    }

    /// Whether only the `a` charges are nonzero.
    pub fn is_a_truncation(&self) -> bool {
        self.charges()[8..].iter().all(|&v| v == 0)
    }
}

/// Where a charge sits: `(in x, slot)`.
pub fn charge_slot(n: usize) -> (bool, (usize, usize)) {
    let name = charge_name(n);
    for (is_x, template) in [(true, X_TEMPLATE), (false, Y_TEMPLATE)] {
        let t = parse_template(template);
        if let Some(s) = slots()
            .into_iter()
            .find(|&(i, j)| t[i][j].as_ref().map(|(_, nm)| nm == &name).unwrap_or(false))
        {
            return (is_x, s);
        }
    }
    unreachable!("every charge has a slot")
}

/// Basis point of a charge by the conversion rule: the letter gives the
/// point index (`a -> 1, .., g -> 7`) and the charge index gives the point
/// letter (`7, 0 -> g`, `1, 6 -> e`, `4, 3 -> c`, `2, 5 -> f`).
pub fn conversion_rule(n: usize) -> HexLabel {
    let letter = match n % 8 {
        7 | 0 => 'g',
        1 | 6 => 'e',
        4 | 3 => 'c',
        _ => 'f',
    };
    HexLabel::new(letter, (n / 8) as i32 + 1)
}

fn to_big(m: &DenseIntMatrix) -> Matrix<BigInt> {
    m.map(|&v| BigInt::from(v))
}

/// Pfaffian by expansion along the first row.
pub fn pfaffian<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    if !m.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let idx: Vec<usize> = (0..m.dim()).collect();
    Ok(pf_rec(m, &idx))
}

fn pf_rec<T: Scalar>(m: &Matrix<T>, idx: &[usize]) -> T {
    match idx.len() {
        0 => return T::one(),
        n if n % 2 == 1 => return T::zero(),
        _ => {}
    }
    let mut acc = T::zero();
    for k in 1..idx.len() {
        let a = m[(idx[0], idx[k])].clone();
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..]
            .iter()
            .enumerate()
            .filter(|&(p, _)| p + 1 != k)
            .map(|(_, &v)| v)
            .collect();
        let term = a * pf_rec(m, &rest);
        acc = if k % 2 == 1 { acc + term } else { acc - term };
    }
    acc
}

fn parity(perm: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            odd ^= perm[i] > perm[j];
        }
    }
    odd
}

fn matchings(free: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if free.is_empty() {
        out.push(cur.clone());
        return;
    }
    let i = free.remove(0);
    for k in 0..free.len() {
        let j = free.remove(k);
        cur.extend([i, j]);
        matchings(free, cur, out);
        cur.truncate(cur.len() - 2);
        free.insert(k, j);
    }
    free.insert(0, i);
}

/// Pfaffian as a signed sum over perfect matchings (105 terms at size 8).
pub fn pfaffian_matchings<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    if !m.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    if m.dim() % 2 == 1 {
        return Ok(T::zero());
    }
    let mut all = Vec::new();
    matchings(&mut (0..m.dim()).collect(), &mut Vec::new(), &mut all);
    Ok(all.iter().fold(T::zero(), |acc, p| {
        let term = p
            .chunks(2)
            .fold(T::one(), |t, pair| t * m[(pair[0], pair[1])].clone());
        if parity(p) {
            acc - term
        } else {
            acc + term
        }
    }))
}

/// `-Tr (xy)^2 + (1/4)(Tr xy)^2 - 4(Pf x + Pf y)`, always an integer.
pub fn j4_cartan(c: &ChargeConfiguration) -> BigInt {
    let (x, y) = (to_big(&c.x), to_big(&c.y));
    let xy = &x * &y;
    let t = xy.trace();
    let quarter = &t * &t;
    debug_assert!((&quarter % 4u8).is_zero());
    let pf = pfaffian(&x).expect("antisymmetric") + pfaffian(&y).expect("antisymmetric");
    -(&xy * &xy).trace() + quarter / 4 - pf * 4
}

/// `Z = numerator * sqrt(2)^sqrt2_exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharge {
    pub numerator: Matrix<GaussianBigInt>,
    pub sqrt2_exponent: i32,
}

/// `Z_AB = -(1/(4 sqrt 2)) (x^{IJ} + i y_{IJ}) Gamma^{IJ}_AB`, summed over all
/// ordered pairs. The pair `(I,J), (J,I)` doubles each slot, so
/// `sqrt 8 Z = sum_{I<J} (x^{IJ} + i y^{IJ}) (-Gamma^{IJ})`.
pub fn central_charge(c: &ChargeConfiguration, dict: &GammaDictionary) -> CentralCharge {
    let mut n: Matrix<GaussianBigInt> = Matrix::zeros(8);
    for e in dict.entries() {
        let (i, j) = e.slot;
        let coeff = Complex::new(BigInt::from(c.x[(i, j)]), BigInt::from(c.y[(i, j)]));
        if coeff.is_zero() {
            continue;
        }
        let basis = e.operator.to_dense();
        n = &n + &basis.map(|&v| Complex::new(BigInt::from(v), BigInt::zero()) * coeff.clone());
    }
    CentralCharge {
        numerator: n,
        sqrt2_exponent: -3,
    }
}

fn conj(m: &Matrix<GaussianBigInt>) -> Matrix<GaussianBigInt> {
    m.map(|z| z.conj())
}

fn big_to_rational(z: GaussianBigInt) -> GaussianRational {
    Complex::new(
        BigRational::from_integer(z.re),
        BigRational::from_integer(z.im),
    )
}

/// `Tr (Z Zbar)^2 - (1/4)(Tr Z Zbar)^2 + 4(Pf Z + Pf Zbar)`.
pub fn j4_cremmer(z: &CentralCharge) -> GaussianRational {
    let n = &z.numerator;
    let nb = conj(n);
    let m = n * &nb;
    let t = m.trace();
    let four_times = (&m * &m).trace() * Complex::new(BigInt::from(4), BigInt::zero())
        - t.clone() * t
        + (pfaffian(n).expect("antisymmetric") + pfaffian(&nb).expect("antisymmetric"))
            * Complex::new(BigInt::from(16), BigInt::zero());
    // degree four: sqrt(2)^(4e) = 2^(2e)
    let e2 = 2 * z.sqrt2_exponent;
    let scale = if e2 >= 0 {
        BigRational::from_integer(BigInt::one() << e2 as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e2) as usize)
    };
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let v = big_to_rational(four_times);
    Complex::new(v.re * &scale * &quarter, v.im * &scale * &quarter)
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn fraction(q: &BigRational) -> [String; 2] {
    [q.numer().to_string(), q.denom().to_string()]
}

/// `x` with twelve digits after the point.
pub fn format_entropy(x: f64) -> String {
    format!("{x:.12}")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyReport {
    pub j4_cartan: String,
    pub j4_cremmer: String,
    /// `[numerator, denominator]` of the real and imaginary parts.
    pub j4_cremmer_re: [String; 2],
    pub j4_cremmer_im: [String; 2],
    pub forms_agree: bool,
    /// `BPS` for positive J4, `non-BPS` for negative, `zero` otherwise.
    pub classification: &'static str,
    pub abs_j4: String,
    pub entropy: f64,
    pub entropy_text: String,
}

pub fn classify(j4: &BigInt) -> &'static str {
    if j4.is_positive() {
        "BPS"
    } else if j4.is_negative() {
        "non-BPS"
    } else {
        "zero"
    }
}

/// `S = pi sqrt |J4|`; the only floating-point step.
pub fn entropy(c: &ChargeConfiguration, dict: &GammaDictionary) -> EntropyReport {
    let cartan = j4_cartan(c);
    let cremmer = j4_cremmer(&central_charge(c, dict));
    let agree = cremmer.im.is_zero() && cremmer.re == BigRational::from_integer(cartan.clone());
    let abs = cartan.abs();
    let s = std::f64::consts::PI * abs.to_string().parse::<f64>().expect("integer").sqrt();
    EntropyReport {
        j4_cartan: cartan.to_string(),
        j4_cremmer: if cremmer.im.is_zero() {
            format_rational(&cremmer.re)
        } else {
            format!(
                "{}+{}i",
                format_rational(&cremmer.re),
                format_rational(&cremmer.im)
            )
        },
        j4_cremmer_re: fraction(&cremmer.re),
        j4_cremmer_im: fraction(&cremmer.im),
        forms_agree: agree,
        classification: classify(&cartan),
        abs_j4: abs.to_string(),
        entropy: s,
        entropy_text: format_entropy(s),
    }
}

/// Cayley's hyperdeterminant of the amplitudes `a_0 .. a_7` (binary `a_{abc}`).
pub fn cayley_hyperdeterminant(a: &[i64; 8]) -> BigInt {
    let a: Vec<BigInt> = a.iter().map(|&v| BigInt::from(v)).collect();
    let p07 = &a[0] * &a[7];
    let p16 = &a[1] * &a[6];
    let p25 = &a[2] * &a[5];
    let p34 = &a[3] * &a[4];
    let squares = &p07 * &p07 + &p16 * &p16 + &p25 * &p25 + &p34 * &p34;
    let cross0 = &p07 * (&p16 + &p25 + &p34) * 2;
    let cross = (&p16 * &p25 + &p25 * &p34 + &p34 * &p16) * 2;
    let quartic = (&a[0] * &a[3] * &a[5] * &a[6] + &a[1] * &a[2] * &a[4] * &a[7]) * 4;
    squares - cross0 - cross + quartic
}

/// Permutes the three qubits: qubit `q` (1 is leftmost) moves to position `perm[q-1]`.
pub fn permute_qubits(a: &[i64; 8], perm: [usize; 3]) -> [i64; 8] {
    let mut out = [0; 8];
    for (n, &v) in a.iter().enumerate() {
        let bits = [(n >> 2) & 1, (n >> 1) & 1, n & 1];
        let mut m = 0;
        for q in 0..3 {
            m |= bits[q] << (2 - (perm[q] - 1));
        }
        out[m] = v;
    }
    out
}

/// Signed permutation of the 28 slots induced by `Gamma -> g^T Gamma g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotAction {
    /// `image[s] = (sign, t)`: `g^T Gamma^{s} g = sign Gamma^{t}`.
    pub image: Vec<(i8, usize)>,
}

impl SlotAction {
    pub fn from_gate(g: &GateMatrix, dict: &GammaDictionary) -> Result<Self> {
        let gammas: Vec<DenseIntMatrix> = dict.entries().iter().map(|e| e.gamma()).collect();
        let gm = g.matrix();
        let image = gammas
            .iter()
            .map(|m| {
                let c = &(&gm.transpose() * m) * gm;
                gammas
                    .iter()
                    .enumerate()
                    .find_map(|(t, n)| {
                        if *n == c {
                            Some((1, t))
                        } else if *n == -c.clone() {
                            Some((-1, t))
                        } else {
                            None
                        }
                    })
                    .ok_or(Error::NotPauli)
            })
            .collect::<Result<_>>()?;
        Ok(Self { image })
    }

    /// Charges transported so that the new central charge is `g^T Z g`.
    pub fn transport(&self, c: &ChargeConfiguration) -> ChargeConfiguration {
        let all = slots();
        let mut x: DenseIntMatrix = Matrix::zeros(8);
        let mut y: DenseIntMatrix = Matrix::zeros(8);
        for (s, &(sign, t)) in self.image.iter().enumerate() {
            let (i, j) = all[s];
            let (k, l) = all[t];
            let s = sign as i64;
            x[(k, l)] = s * c.x[(i, j)];
            x[(l, k)] = -s * c.x[(i, j)];
            y[(k, l)] = s * c.y[(i, j)];
            y[(l, k)] = -s * c.y[(i, j)];
        }
        ChargeConfiguration { x, y }
    }

    /// `charge n -> sign * charge m` on the 56 boldface charges.
    pub fn charge_map(&self) -> Vec<(i8, usize)> {
        let all = slots();
        let tx = parse_template(X_TEMPLATE);
        let ty = parse_template(Y_TEMPLATE);
        let mut out = vec![(0, 0); 56];
        for (s, &(sign, t)) in self.image.iter().enumerate() {
            let (i, j) = all[s];
            let (k, l) = all[t];
            for tpl in [&tx, &ty] {
                let (s1, n1) = tpl[i][j].clone().expect("slot");
                let (s2, n2) = tpl[k][l].clone().expect("slot");
                out[charge_index(&n1).expect("name")] =
                    (sign * s1 * s2, charge_index(&n2).expect("name"));
            }
        }
        out
    }
}

pub fn psl27_action_on_charges(
    g: &GateMatrix,
    c: &ChargeConfiguration,
    dict: &GammaDictionary,
) -> Result<ChargeConfiguration> {
    Ok(SlotAction::from_gate(g, dict)?.transport(c))
}

/// Canonical form data of an `a`-only configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    /// `a_0 .. a_7`, read as amplitudes `a_{abc}` of a three-qubit state.
    pub amplitudes: [i64; 8],
    /// `sqrt 8 * z_j`, Gaussian integers.
    pub scaled_z: [Complex<i64>; 4],
    /// `sqrt 8 Z = diag(sqrt 8 z) (x) Y` holds exactly.
    pub block_form: bool,
    pub j4: BigInt,
    pub hyperdeterminant: BigInt,
}

/// `sqrt 8 z` by the closed form: real parts from `a_7, a_2, a_1, a_4`,
/// imaginary parts from `a_0, a_5, a_6, a_3` in the same pattern.
pub fn predicted_scaled_z(a: &[i64; 8]) -> [Complex<i64>; 4] {
    let signs: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];
    signs.map(|[s2, s1, s4]| {
        Complex::new(
            -a[7] + s2 * a[2] + s1 * a[1] + s4 * a[4],
            -a[0] + s2 * a[5] + s1 * a[6] + s4 * a[3],
        )
    })
}

pub fn canonical_truncation(c: &ChargeConfiguration, dict: &GammaDictionary) -> Result<Truncation> {
    if !c.is_a_truncation() {
        return Err(Error::NotTruncation);
    }
    let ch = c.charges();
    let amplitudes: [i64; 8] = std::array::from_fn(|n| ch[n]);
    let z = central_charge(c, dict);
    let small = |v: &GaussianBigInt| {
        Complex::new(
            i64::try_from(&v.re).expect("small"),
            i64::try_from(&v.im).expect("small"),
        )
    };
    let scaled_z: [Complex<i64>; 4] =
        std::array::from_fn(|k| small(&z.numerator[(2 * k, 2 * k + 1)]));
    let y = crate::matrix::blocks::y2().map(|&v| Complex::new(BigInt::from(v), BigInt::zero()));
    let diag: Matrix<GaussianBigInt> = Matrix::from_fn(4, |r, col| {
        if r == col {
            Complex::new(BigInt::from(scaled_z[r].re), BigInt::from(scaled_z[r].im))
        } else {
            Complex::zero()
        }
    });
    let block_form = diag.kron(&y) == z.numerator;
    Ok(Truncation {
        amplitudes,
        scaled_z,
        block_form,
        j4: j4_cartan(c),
        hyperdeterminant: cayley_hyperdeterminant(&amplitudes),
    })
}

/// Four basis points carrying each letter's charges, one set per letter.
pub fn stu_supports(dict: &GammaDictionary) -> Vec<[HexLabel; 4]> {
    CHARGE_LETTERS
        .iter()
        .enumerate()
        .map(|(l, _)| {
            let mut labels: Vec<HexLabel> = Vec::new();
            for n in 0..8 {
                let (_, (i, j)) = charge_slot(l * 8 + n);
                let label = dict.entry(i, j).label;
                if !labels.contains(&label) {
                    labels.push(label);
                }
            }
            labels.sort();
            [labels[0], labels[1], labels[2], labels[3]]
        })
        .collect()
}

pub fn random_charges(rng: &mut ChaCha8Rng) -> Charges {
    std::array::from_fn(|_| rng.gen_range(-CHARGE_RANGE..=CHARGE_RANGE))
}

pub fn random_a_charges(rng: &mut ChaCha8Rng) -> Charges {
    let mut c = [0; 56];
    for v in c.iter_mut().take(8) {
        *v = rng.gen_range(-CHARGE_RANGE..=CHARGE_RANGE);
    }
    c
}

/// Deterministic batch of configurations from a seed.
pub fn seeded_batch(seed: u64, trials: usize, a_only: bool) -> Vec<ChargeConfiguration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let c = if a_only {
                random_a_charges(&mut rng)
            } else {
                random_charges(&mut rng)
            };
            charges_to_matrices(&c)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: usize,
    pub agreements: usize,
    /// Cremmer over Cartan, whenever the latter is nonzero; `None` if it varies.
    pub measured_constant: Option<String>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.agreements == self.trials && self.measured_constant.as_deref().is_none_or(|c| c == "1")
    }
}

/// Compares both forms of J4 on seeded random charges.
pub fn fuzz_forms(seed: u64, trials: usize, dict: &GammaDictionary, exec: Execution) -> FuzzReport {
    let batch = seeded_batch(seed, trials, false);
    let results = exec.map(&batch, |c| {
        let cartan = j4_cartan(c);
        let cremmer = j4_cremmer(&central_charge(c, dict));
        let ratio = (!cartan.is_zero() && cremmer.im.is_zero())
            .then(|| cremmer.re.clone() / BigRational::from_integer(cartan.clone()));
        (
            cremmer == Complex::new(BigRational::from_integer(cartan), BigRational::zero()),
            ratio,
        )
    });
    let agreements = results.iter().filter(|r| r.0).count();
    let mut ratios: Vec<BigRational> = results.into_iter().filter_map(|r| r.1).collect();
    ratios.sort();
    ratios.dedup();
    FuzzReport {
        seed,
        trials,
        agreements,
        measured_constant: (ratios.len() == 1).then(|| format_rational(&ratios[0])),
    }
}

/// Whether `J4 = -D(a)` on seeded random `a`-only charges.
pub fn fuzz_truncation(seed: u64, trials: usize, exec: Execution) -> usize {
    let batch = seeded_batch(seed, trials, true);
    exec.map(&batch, |c| {
        let a: [i64; 8] = std::array::from_fn(|n| c.charges()[n]);
        j4_cartan(c) == -cayley_hyperdeterminant(&a)
    })
    .into_iter()
    .filter(|&ok| ok)
    .count()
}

/// Invariance of J4 under every slot action for every configuration.
pub fn invariance_check(
    actions: &[SlotAction],
    configs: &[ChargeConfiguration],
    exec: Execution,
) -> bool {
    exec.map(actions, |a| {
        configs
            .iter()
            .all(|c| j4_cartan(&a.transport(c)) == j4_cartan(c))
    })
    .into_iter()
    .all(|ok| ok)
}

/// Whether `Pf(O Z O^T) = Pf(Z)` for every gate and configuration.
pub fn pfaffian_invariance(
    gates: &[&GateMatrix],
    configs: &[ChargeConfiguration],
    dict: &GammaDictionary,
) -> bool {
    configs.iter().all(|c| {
        let z = central_charge(c, dict).numerator;
        let pf = pfaffian(&z).expect("antisymmetric");
        gates.iter().all(|g| {
            let o = g
                .matrix()
                .map(|&v| Complex::new(BigInt::from(v), BigInt::zero()));
            pfaffian(&(&(&o * &z) * &o.transpose())).expect("antisymmetric") == pf
        })
    })
}

/// JSON charge input: named charges (missing ones are zero) or two matrices.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ChargeInput {
    Named { charges: BTreeMap<String, i64> },
    Matrices { x: Vec<Vec<i64>>, y: Vec<Vec<i64>> },
}

impl ChargeInput {
    pub fn to_configuration(&self) -> Result<ChargeConfiguration> {
        match self {
            ChargeInput::Named { charges } => {
                let mut c = [0; 56];
                for (name, &v) in charges {
                    c[charge_index(name)?] = v;
                }
                Ok(charges_to_matrices(&c))
            }
            ChargeInput::Matrices { x, y } => {
                let to_matrix = |rows: &Vec<Vec<i64>>| {
                    if rows.len() != 8 || rows.iter().any(|r| r.len() != 8) {
                        return Err(Error::Dimension {
                            expected: 8,
                            found: rows.len(),
                        });
                    }
                    Ok(Matrix::from_rows(rows))
                };
                ChargeConfiguration::from_matrices(to_matrix(x)?, to_matrix(y)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        build_generators, conjugate, generate_group, PauliAction, DEFAULT_ELEMENT_BUDGET,
    };
    use crate::hexagon::build_hexagon;
    use crate::pauli::op;

    fn setup() -> (HexagonModel, GammaDictionary) {
        let m = build_hexagon().unwrap();
        let d = build_gamma_dictionary(&m).unwrap();
        (m, d)
    }

    fn named(pairs: &[(&str, i64)]) -> ChargeConfiguration {
        let mut c = [0; 56];
        for (n, v) in pairs {
            c[charge_index(n).unwrap()] = *v;
        }
        charges_to_matrices(&c)
    }

    #[test]
    fn dictionary_reproduces_signs() {
        let (m, d) = setup();
        assert!(d.verify(&m).passed());
        assert_eq!(d.entry(2, 5).operator, op("-YII"));
        assert_eq!(d.entry(2, 5).label.to_string(), "f4");
        assert_eq!(d.entry(0, 1).operator, m.operator(HexLabel::new('g', 1)));
        assert_eq!(d.gamma(0, 1), -m.operator(HexLabel::new('g', 1)).to_dense());
        assert_eq!(d.gamma(5, 2), -d.gamma(2, 5));
    }

    #[test]
    fn charge_names_round_trip() {
        for n in 0..56 {
            assert_eq!(charge_index(&charge_name(n)).unwrap(), n);
        }
        assert!(charge_index("h0").is_err());
        assert!(charge_index("a8").is_err());
    }

    #[test]
    fn conversion_rule_matches_templates() {
        let (_, d) = setup();
        for n in 0..56 {
            let (is_x, (i, j)) = charge_slot(n);
            assert_eq!(
                d.entry(i, j).label,
                conversion_rule(n),
                "{}",
                charge_name(n)
            );
            assert_eq!(is_x, matches!(n % 8, 7 | 1 | 4 | 2), "{}", charge_name(n));
        }
    }

    #[test]
    fn template_slots() {
        let c = named(&[("e2", 1), ("e5", 1), ("a7", 1)]);
        assert_eq!(c.x[(3, 6)], -1);
        assert_eq!(c.y[(3, 6)], -1);
        assert_eq!(c.x[(0, 1)], -1);
        assert_eq!(ChargeConfiguration::zero().x, Matrix::zeros(8));
        let (m, d) = setup();
        assert_eq!(
            d.entry(3, 6).operator,
            m.operator("f5".parse().unwrap()).negate()
        );
        assert_eq!(d.entry(3, 6).label.to_string(), "f5");
    }

    #[test]
    fn charges_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let c = random_charges(&mut rng);
            let m = charges_to_matrices(&c);
            assert!(m.x.is_antisymmetric() && m.y.is_antisymmetric());
            assert_eq!(m.charges(), c);
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        let mut x: DenseIntMatrix = Matrix::zeros(8);
        x[(0, 1)] = 1;
        assert_eq!(
            ChargeConfiguration::from_matrices(x, Matrix::zeros(8)),
            Err(Error::NotAntisymmetric)
        );
        assert!(ChargeConfiguration::from_matrices(Matrix::zeros(4), Matrix::zeros(4)).is_err());
    }

    #[test]
    fn pfaffian_routes_agree_with_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2usize, 4, 6, 8] {
            for _ in 0..10 {
                let mut m: Matrix<BigInt> = Matrix::zeros(n);
                for i in 0..n {
                    for j in i + 1..n {
                        let v = BigInt::from(rng.gen_range(-9..=9));
                        m[(i, j)] = v.clone();
                        m[(j, i)] = -v;
                    }
                }
                let p = pfaffian(&m).unwrap();
                assert_eq!(p, pfaffian_matchings(&m).unwrap());
                assert_eq!(&p * &p, m.determinant());
            }
        }
        assert!(pfaffian(&Matrix::<i64>::identity(2)).is_err());
        assert_eq!(pfaffian(&Matrix::<i64>::zeros(8)).unwrap(), 0);
        assert_eq!(pfaffian_matchings(&Matrix::<i64>::zeros(3)).unwrap(), 0);
    }

    #[test]
    fn pfaffian_of_block_form() {
        let z = [2i64, -3, 5, 7];
        let diag = Matrix::from_fn(4, |r, c| if r == c { z[r] } else { 0 });
        let m = diag.kron(&crate::matrix::blocks::y2());
        assert_eq!(pfaffian(&m).unwrap(), z.iter().product::<i64>());
        assert_eq!(pfaffian_matchings(&m).unwrap(), z.iter().product::<i64>());
    }

    #[test]
    fn pfaffian_invariant_under_generators() {
        let (_, d) = setup();
        let g = build_generators();
        assert!(pfaffian_invariance(
            &g.as_array(),
            &seeded_batch(11, 3, false),
            &d
        ));
    }

    #[test]
    fn zero_charges() {
        let (_, d) = setup();
        let c = ChargeConfiguration::zero();
        assert!(j4_cartan(&c).is_zero());
        let z = central_charge(&c, &d);
        assert!(z.numerator.is_zero());
        assert!(j4_cremmer(&z).is_zero());
        let e = entropy(&c, &d);
        assert_eq!((e.entropy, e.classification), (0.0, "zero"));
    }

    #[test]
    fn four_charge_black_hole() {
        let (_, d) = setup();
        let c = named(&[("a1", 1), ("a2", 1), ("a4", 1), ("a7", -1)]);
        let e = entropy(&c, &d);
        assert_eq!(e.j4_cartan, "4");
        assert!(e.forms_agree);
        assert_eq!(e.classification, "BPS");
        assert!((e.entropy - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        assert_eq!(e.entropy_text, "6.283185307180");
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let [a1, a2, a4, a7] = std::array::from_fn(|_| rng.gen_range(-9i64..=9));
            let c = named(&[("a1", a1), ("a2", a2), ("a4", a4), ("a7", a7)]);
            assert_eq!(
                j4_cartan(&c).abs(),
                BigInt::from((4 * a1 * a2 * a4 * a7).abs())
            );
        }
    }

    #[test]
    fn ghz_charges() {
        let (_, d) = setup();
        let c = named(&[("a0", 1), ("a7", 1)]);
        let e = entropy(&c, &d);
        assert_eq!(e.j4_cartan, "-1");
        assert_eq!(e.j4_cremmer_re, ["-1".to_string(), "1".to_string()]);
        assert_eq!(e.j4_cremmer_im[0], "0");
        assert_eq!(e.classification, "non-BPS");
        assert!((e.entropy - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn central_charge_of_real_truncation() {
        let (m, d) = setup();
        let (a1, a2, a4, a7) = (3, -2, 5, 7);
        let c = named(&[("a1", a1), ("a2", a2), ("a4", a4), ("a7", a7)]);
        let z = central_charge(&c, &d);
        assert_eq!(z.sqrt2_exponent, -3);
        let mut expected: DenseIntMatrix = Matrix::zeros(8);
        for (coeff, l) in [(-a7, "g1"), (a1, "e1"), (a4, "c1"), (a2, "f1")] {
            expected = &expected + &m.operator(l.parse().unwrap()).to_dense().scale(&coeff);
        }
        assert_eq!(
            z.numerator,
            expected.map(|&v| Complex::new(BigInt::from(v), BigInt::zero()))
        );
    }

    #[test]
    fn explicit_block_forms() {
        let (m, _) = setup();
        let y = crate::matrix::blocks::y2();
        let diag = |d: [i64; 4]| Matrix::from_fn(4, |r, c| if r == c { d[r] } else { 0 }).kron(&y);
        assert_eq!(
            m.operator("c1".parse().unwrap()).to_dense(),
            diag([1, -1, -1, 1])
        );
        assert_eq!(
            m.operator("e1".parse().unwrap()).to_dense(),
            diag([1, -1, 1, -1])
        );
        assert_eq!(
            m.operator("f1".parse().unwrap()).to_dense(),
            diag([1, 1, -1, -1])
        );
        assert_eq!(
            m.operator("g1".parse().unwrap()).to_dense(),
            diag([1, 1, 1, 1])
        );
    }

    #[test]
    fn truncation_canonical_form() {
        let (_, d) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let mut c = random_a_charges(&mut rng);
            let t = canonical_truncation(&charges_to_matrices(&c), &d).unwrap();
            assert!(t.block_form);
            let a: [i64; 8] = std::array::from_fn(|n| c[n]);
            assert_eq!(t.scaled_z, predicted_scaled_z(&a));
            assert_eq!(t.j4, -t.hyperdeterminant.clone());
            c[8] = 1;
            assert_eq!(
                canonical_truncation(&charges_to_matrices(&c), &d),
                Err(Error::NotTruncation)
            );
        }
    }

    #[test]
    fn hyperdeterminant_values() {
        assert_eq!(
            cayley_hyperdeterminant(&[1, 0, 0, 0, 0, 0, 0, 1]),
            BigInt::from(1)
        );
        assert_eq!(
            cayley_hyperdeterminant(&[0, 1, 1, 0, 1, 0, 0, 1]),
            BigInt::from(4)
        );
        assert!(cayley_hyperdeterminant(&[1, 0, 0, 0, 0, 0, 0, 0]).is_zero());
        // product state (1,2) x (3,-1) x (1,1)
        let q = [[1i64, 2], [3, -1], [1, 1]];
        let prod: [i64; 8] =
            std::array::from_fn(|n| q[0][n >> 2] * q[1][(n >> 1) & 1] * q[2][n & 1]);
        assert!(cayley_hyperdeterminant(&prod).is_zero());
    }

    #[test]
    fn hyperdeterminant_permutation_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let perms = [
            [1, 2, 3],
            [2, 3, 1],
            [3, 1, 2],
            [2, 1, 3],
            [1, 3, 2],
            [3, 2, 1],
        ];
        for _ in 0..50 {
            let a: [i64; 8] = std::array::from_fn(|_| rng.gen_range(-9..=9));
            let d = cayley_hyperdeterminant(&a);
            for p in perms {
                assert_eq!(cayley_hyperdeterminant(&permute_qubits(&a, p)), d);
            }
        }
    }

    fn a_cycles(map: &[(i8, usize)]) -> Vec<(i8, usize)> {
        map[..8].to_vec()
    }

    #[test]
    fn generator_actions_on_a_charges() {
        let (_, d) = setup();
        let g = build_generators();
        let beta = SlotAction::from_gate(&g.beta, &d).unwrap().charge_map();
        // (a0)(a7)(a3 a6 a5)(a1 a2 a4)
        let expected = [0, 2, 4, 6, 1, 3, 5, 7];
        assert_eq!(
            a_cycles(&beta),
            expected.iter().map(|&m| (1, m)).collect::<Vec<_>>()
        );
        let gamma = SlotAction::from_gate(&g.gamma, &d).unwrap().charge_map();
        // (a2 a4)(a3 a5), with an overall sign
        let expected = [0, 1, 4, 5, 2, 3, 6, 7];
        assert_eq!(
            a_cycles(&gamma),
            expected.iter().map(|&m| (-1, m)).collect::<Vec<_>>()
        );
        // the same moves as qubit permutations
        let a: [i64; 8] = std::array::from_fn(|n| n as i64 + 1);
        let moved = |map: &[(i8, usize)]| {
            let mut out = [0i64; 8];
            for n in 0..8 {
                out[map[n].1] = a[n];
            }
            out
        };
        assert_eq!(moved(&beta), permute_qubits(&a, [3, 1, 2]));
        assert_eq!(moved(&gamma), permute_qubits(&a, [2, 1, 3]));
    }

    #[test]
    fn alpha_shifts_letters() {
        let (_, d) = setup();
        let map = SlotAction::from_gate(&build_generators().alpha, &d)
            .unwrap()
            .charge_map();
        for n in 0..48 {
            assert_eq!(map[n].1, n + 8);
        }
        for n in 48..56 {
            assert_eq!(map[n].1, n - 48);
        }
    }

    #[test]
    fn gamma_sends_c1_to_minus_f1() {
        let (m, _) = setup();
        let g = build_generators();
        let c1 = m.operator("c1".parse().unwrap());
        assert_eq!(
            conjugate(&g.gamma, &c1).unwrap(),
            m.operator("f1".parse().unwrap()).negate()
        );
        let act = PauliAction::from_gate(&g.gamma).unwrap();
        assert!(act.image(&m.operator("i1".parse().unwrap())).is_negative());
    }

    #[test]
    fn forms_agree_on_random_charges() {
        let (_, d) = setup();
        let r = fuzz_forms(DEFAULT_SEED, 50, &d, Execution::default());
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.measured_constant.as_deref(), Some("1"));
    }

    #[test]
    fn truncation_fuzz() {
        assert_eq!(
            fuzz_truncation(DEFAULT_SEED, 200, Execution::default()),
            200
        );
    }

    #[test]
    fn invariance_under_group() {
        let (_, d) = setup();
        let g = build_generators();
        let group = generate_group(
            &[g.alpha, g.beta, g.gamma],
            DEFAULT_ELEMENT_BUDGET,
            Execution::default(),
        )
        .unwrap();
        let actions: Vec<SlotAction> = group
            .elements()
            .iter()
            .map(|e| SlotAction::from_gate(e, &d).unwrap())
            .collect();
        let configs = seeded_batch(DEFAULT_SEED, 3, false);
        assert!(invariance_check(&actions, &configs, Execution::default()));
    }

    #[test]
    fn stu_supports_by_letter() {
        let (m, d) = setup();
        let s = stu_supports(&d);
        assert_eq!(s.len(), 7);
        let a: Vec<String> = s[0].iter().map(|l| m.operator(*l).to_string()).collect();
        let mut a_sorted = a.clone();
        a_sorted.sort();
        assert_eq!(a_sorted, ["IIY", "IZY", "ZIY", "ZZY"]);
        for (k, set) in s.iter().enumerate() {
            assert!(set.iter().all(|l| l.index as usize == k + 1));
        }
    }

    #[test]
    fn charge_input_json() {
        let named: ChargeInput =
            serde_json::from_str(r#"{"charges": {"a1": 1, "a7": -1}}"#).unwrap();
        let c = named.to_configuration().unwrap();
        assert_eq!(c.x[(0, 1)], 1);
        let zeros = vec![vec![0i64; 8]; 8];
        let m = ChargeInput::Matrices {
            x: zeros.clone(),
            y: zeros,
        };
        assert_eq!(m.to_configuration().unwrap(), ChargeConfiguration::zero());
        let bad: ChargeInput = serde_json::from_str(r#"{"charges": {"z1": 1}}"#).unwrap();
        assert!(bad.to_configuration().is_err());
    }

    #[test]
    fn entropy_digits() {
        assert_eq!(format_entropy(std::f64::consts::PI), "3.141592653590");
        assert_eq!(format_entropy(0.0), "0.000000000000");
    }
}
