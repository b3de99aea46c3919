//! Gates, conjugation actions and the order-168 group they generate.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{blocks, DenseIntMatrix, GaussianIntMatrix, Matrix};
use crate::par::Execution;
use crate::pauli::{enumerate_universe, op, SignedPauliOp};

pub const DEFAULT_ELEMENT_BUDGET: usize = 1_000_000;

/// An 8x8 orthogonal matrix with entries in {-1, 0, 1}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GateMatrix(DenseIntMatrix);

impl GateMatrix {
    pub fn new(m: DenseIntMatrix) -> Result<Self> {
        if m.dim() != 8 {
            return Err(Error::Dimension {
                expected: 8,
                found: m.dim(),
            });
        }
        if m.entries().iter().any(|x| x.abs() > 1) || !m.is_orthogonal() {
            return Err(Error::NotGate);
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Matrix::identity(8))
    }

    /// Diagonal or permutation gates from a Pauli operator.
    pub fn from_pauli(p: &SignedPauliOp) -> Self {
        Self(p.to_dense())
    }

    pub fn matrix(&self) -> &DenseIntMatrix {
        &self.0
    }

    pub fn then(&self, other: &GateMatrix) -> GateMatrix {
        Self(&self.0 * &other.0)
    }

    pub fn inverse(&self) -> GateMatrix {
        Self(self.0.transpose())
    }

    pub fn pow(&self, n: u32) -> GateMatrix {
        Self(self.0.pow(n))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Smallest positive power equal to the identity (bounded by 168).
    pub fn order(&self) -> Option<u32> {
        let mut m = self.clone();
        for k in 1..=168 {
            if m.is_identity() {
                return Some(k);
            }
            m = m.then(self);
        }
        None
    }
}

impl fmt::Debug for GateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Product of a list of gates, left to right.
pub fn word(gates: &[&GateMatrix]) -> GateMatrix {
    gates
        .iter()
        .fold(GateMatrix::identity(), |acc, g| acc.then(g))
}

#[derive(Clone, Debug)]
pub struct Cnots {
    pub c12: GateMatrix,
    pub c21: GateMatrix,
    pub c23: GateMatrix,
    pub c31: GateMatrix,
}

fn from_blocks(rows: [[DenseIntMatrix; 4]; 4]) -> GateMatrix {
    let rows: Vec<Vec<DenseIntMatrix>> = rows.into_iter().map(Vec::from).collect();
    GateMatrix::new(Matrix::from_blocks(&rows)).expect("block gate is orthogonal")
}

/// CNOTs `C_ij` with control qubit `i` and target `j`, qubit 1 most significant.
pub fn build_cnots() -> Cnots {
    use blocks::*;
    let (i, o, x, p, q) = (i2(), o2(), x2(), p2(), q2());
    Cnots {
        c12: from_blocks([
            [i.clone(), o.clone(), o.clone(), o.clone()],
            [o.clone(), i.clone(), o.clone(), o.clone()],
            [o.clone(), o.clone(), o.clone(), i.clone()],
            [o.clone(), o.clone(), i.clone(), o.clone()],
        ]),
        c21: from_blocks([
            [i.clone(), o.clone(), o.clone(), o.clone()],
            [o.clone(), o.clone(), o.clone(), i.clone()],
            [o.clone(), o.clone(), i.clone(), o.clone()],
            [o.clone(), i.clone(), o.clone(), o.clone()],
        ]),
        c23: from_blocks([
            [i.clone(), o.clone(), o.clone(), o.clone()],
            [o.clone(), x.clone(), o.clone(), o.clone()],
            [o.clone(), o.clone(), i.clone(), o.clone()],
            [o.clone(), o.clone(), o.clone(), x],
        ]),
        c31: from_blocks([
            [p.clone(), o.clone(), q.clone(), o.clone()],
            [o.clone(), p.clone(), o.clone(), q.clone()],
            [q.clone(), o.clone(), p.clone(), o.clone()],
            [o.clone(), q, o, p],
        ]),
    }
}

#[derive(Clone, Debug)]
pub struct Generators {
    pub alpha: GateMatrix,
    pub beta: GateMatrix,
    pub gamma: GateMatrix,
}

impl Generators {
    pub fn as_array(&self) -> [&GateMatrix; 3] {
        [&self.alpha, &self.beta, &self.gamma]
    }

    pub fn named(&self) -> [(&'static str, &GateMatrix); 3] {
        [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
        ]
    }
}

/// The order-7 gate written out in 2x2 blocks built from `P = diag(1,0)`, `Q = diag(0,1)`.
pub fn alpha_block_form() -> GateMatrix {
    use blocks::*;
    let (o, x, p, q) = (o2(), x2(), p2(), q2());
    let px = &p * &x;
    let qx = &q * &x;
    from_blocks([
        [p.clone(), q.clone(), o.clone(), o.clone()],
        [o.clone(), o.clone(), q, p],
        [o.clone(), o.clone(), qx.clone(), px.clone()],
        [px, qx, o.clone(), o],
    ])
}

pub fn beta_block_form() -> GateMatrix {
    use blocks::*;
    let (i, o) = (i2(), o2());
    from_blocks([
        [i.clone(), o.clone(), o.clone(), o.clone()],
        [o.clone(), o.clone(), o.clone(), i.clone()],
        [o.clone(), i.clone(), o.clone(), o.clone()],
        [o.clone(), o.clone(), i, o],
    ])
}

pub fn gamma_block_form() -> GateMatrix {
    use blocks::*;
    let (z, o) = (z2(), o2());
    from_blocks([
        [z.clone(), o.clone(), o.clone(), o.clone()],
        [o.clone(), o.clone(), o.clone(), z.clone()],
        [o.clone(), o.clone(), z.clone(), o.clone()],
        [o.clone(), z, o.clone(), o],
    ])
}

/// `(C12 C21)(C12 C31) C23 (C12 C31)`.
pub fn alpha_cnot_word(c: &Cnots) -> GateMatrix {
    word(&[&c.c12, &c.c21, &c.c12, &c.c31, &c.c23, &c.c12, &c.c31])
}

/// The three generators as CNOT circuits (and one phase gate on qubit 3).
pub fn build_generators() -> Generators {
    let c = build_cnots();
    Generators {
        alpha: alpha_cnot_word(&c),
        beta: c.c12.then(&c.c21),
        gamma: c.c21.then(&GateMatrix::from_pauli(&op("IIZ"))),
    }
}

/// The six defining relations, each paired with whether it holds.
pub fn relations(g: &Generators) -> Vec<(&'static str, bool)> {
    let (a, b, c) = (&g.alpha, &g.beta, &g.gamma);
    let ai = a.inverse();
    vec![
        ("alpha^7", a.pow(7).is_identity()),
        ("beta^3", b.pow(3).is_identity()),
        ("gamma^2", c.pow(2).is_identity()),
        (
            "alpha^-2 beta alpha beta^-1",
            word(&[&ai, &ai, b, a, &b.inverse()]).is_identity(),
        ),
        ("(gamma beta)^2", c.then(b).pow(2).is_identity()),
        ("(gamma alpha)^3", c.then(a).pow(3).is_identity()),
    ]
}

/// `g^-1 p g`, decoded back to a signed operator.
pub fn conjugate(g: &GateMatrix, p: &SignedPauliOp) -> Result<SignedPauliOp> {
    let m = &(&g.0.transpose() * &p.to_dense()) * &g.0;
    SignedPauliOp::from_dense(&m)
}

/// A permutation of `1..=n` written in cycle notation, e.g. `(124)(365)(7)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermutationWord {
    /// `images[i]` is the image of `i + 1`, 0-based.
    images: Vec<usize>,
}

impl PermutationWord {
    pub fn from_images(images: Vec<usize>) -> Self {
        Self { images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    /// Cycles with 1-based symbols, each starting at its smallest symbol.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for s in 0..self.images.len() {
            if seen[s] {
                continue;
            }
            let mut c = vec![];
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x + 1);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }
}

impl FromStr for PermutationWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Permutation(s.to_string());
        let mut images: Vec<Option<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let end = body.find(')').ok_or_else(bad)?;
            let syms: Vec<usize> = body[..end]
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .filter(|&d| d > 0)
                        .ok_or_else(bad)
                })
                .collect::<Result<_>>()?;
            if syms.is_empty() {
                return Err(bad());
            }
            for (k, &x) in syms.iter().enumerate() {
                let y = syms[(k + 1) % syms.len()];
                if images.len() < x {
                    images.resize(x, None);
                }
                if images[x - 1].replace(y - 1).is_some() {
                    return Err(bad());
                }
            }
            rest = body[end + 1..].trim_start();
        }
        let n = images.len();
        let images: Vec<usize> = images
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.unwrap_or(i))
            .collect();
        let mut hit = vec![false; n];
        for &y in &images {
            if y >= n || std::mem::replace(&mut hit[y], true) {
                return Err(bad());
            }
        }
        Ok(Self { images })
    }
}

impl fmt::Display for PermutationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            write!(f, "(")?;
            for x in c {
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Signed action of one gate on all 64 operators, indexed by symplectic code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliAction {
    images: Vec<SignedPauliOp>,
}

impl PauliAction {
    pub fn from_gate(g: &GateMatrix) -> Result<Self> {
        let images = (0..64u8)
            .map(|c| conjugate(g, &SignedPauliOp::from_code(c)))
            .collect::<Result<_>>()?;
        Ok(Self { images })
    }

    pub fn image(&self, p: &SignedPauliOp) -> SignedPauliOp {
        let img = self.images[p.code() as usize];
        if p.is_negative() {
            img.negate()
        } else {
            img
        }
    }

    /// Up-to-sign permutation of the 64 codes.
    pub fn permutation(&self) -> Vec<usize> {
        self.images.iter().map(|p| p.code() as usize).collect()
    }

    /// Codes whose image carries a minus sign.
    pub fn sign_flips(&self) -> Vec<u8> {
        (0..64u8)
            .filter(|&c| self.images[c as usize].is_negative())
            .collect()
    }

    /// Whether the action maps the given up-to-sign set onto itself.
    pub fn preserves(&self, set: &[SignedPauliOp]) -> bool {
        let codes: HashSet<u8> = set.iter().map(|p| p.code()).collect();
        set.iter().all(|p| codes.contains(&self.image(p).code()))
    }

    /// Permutation induced on an ordered up-to-sign list the action preserves.
    pub fn permutation_of(&self, list: &[SignedPauliOp]) -> Option<PermutationWord> {
        let images = list
            .iter()
            .map(|p| {
                let q = self.image(p);
                list.iter().position(|r| r.same_up_to_sign(&q))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PermutationWord::from_images(images))
    }
}

/// Reference cyclic orbit sequences of the order-7 generator, keyed by their
/// relabelling letter.
pub const REFERENCE_ORBITS: [(char, [&str; 7]); 9] = [
    ('i', ["IIX", "IXX", "XIX", "XII", "XXX", "IXI", "XXI"]),
    ('h', ["ZZI", "ZII", "ZZZ", "IZI", "IZZ", "ZIZ", "IIZ"]),
    ('a', ["ZZX", "ZXX", "YZY", "XZI", "XYY", "ZXZ", "XXZ"]),
    ('b', ["ZIX", "ZYY", "XZX", "XZZ", "YXY", "IXZ", "YYI"]),
    ('d', ["IZX", "IYY", "YIY", "XIZ", "YYX", "ZXI", "YYZ"]),
    ('c', ["ZZY", "IYX", "XZY", "YIZ", "XXY", "ZYI", "YXI"]),
    ('e', ["IZY", "ZXY", "XIY", "YZI", "YXX", "ZYZ", "XYI"]),
    ('f', ["ZIY", "IXY", "YZX", "YII", "YYY", "IYI", "XYZ"]),
    ('g', ["IIY", "ZYX", "YIX", "YZZ", "XYX", "IYZ", "YXZ"]),
];

pub fn reference_orbit(letter: char) -> Option<[SignedPauliOp; 7]> {
    REFERENCE_ORBITS
        .iter()
        .find(|(l, _)| *l == letter)
        .map(|(_, seq)| seq.map(op))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Letter of the matching reference sequence, if any.
    pub tag: Option<char>,
    /// Members in the order `p, g^-1 p g, ...`, signs carried along.
    pub members: Vec<SignedPauliOp>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.members.len()).collect()
    }

    pub fn by_tag(&self, tag: char) -> Option<&Orbit> {
        self.orbits.iter().find(|o| o.tag == Some(tag))
    }
}

fn same_cycle_up_to_sign(seq: &[SignedPauliOp], reference: &[SignedPauliOp]) -> bool {
    seq.len() == reference.len() && seq.iter().zip(reference).all(|(p, q)| p.same_up_to_sign(q))
}

/// Orbits of the conjugation action on the 63 operators. Each orbit starts at
/// the first element of a matching reference sequence when there is one, and
/// at its smallest code otherwise.
pub fn orbits_under(g: &GateMatrix) -> Result<OrbitDecomposition> {
    let action = PauliAction::from_gate(g)?;
    let mut seen = [false; 64];
    let mut orbits = Vec::new();
    let starts: Vec<SignedPauliOp> = REFERENCE_ORBITS
        .iter()
        .map(|(_, s)| op(s[0]))
        .chain(enumerate_universe())
        .collect();
    for start in starts {
        if seen[start.code() as usize] {
            continue;
        }
        let mut members = vec![start];
        seen[start.code() as usize] = true;
        loop {
            let next = action.image(members.last().expect("nonempty"));
            if next.same_up_to_sign(&start) {
                break;
            }
            seen[next.code() as usize] = true;
            members.push(next);
        }
        let tag = REFERENCE_ORBITS
            .iter()
            .find(|(_, s)| same_cycle_up_to_sign(&members, &s.map(op)))
            .map(|(l, _)| *l);
        orbits.push(Orbit { tag, members });
    }
    Ok(OrbitDecomposition { orbits })
}

/// `(1/2)[p, q]` for anticommuting operators, otherwise `None`.
pub fn half_commutator(p: &SignedPauliOp, q: &SignedPauliOp) -> Option<SignedPauliOp> {
    (!p.commutes(q)).then(|| p.multiply(q))
}

fn times_minus_i(p: &SignedPauliOp) -> GaussianIntMatrix {
    p.to_dense().map(|&x| Complex::new(0, -x))
}

fn gaussian_to_pauli(m: &GaussianIntMatrix) -> Option<SignedPauliOp> {
    if m.entries().iter().any(|z| z.im != 0) {
        return None;
    }
    SignedPauliOp::from_dense(&m.map(|z| z.re)).ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliffordReport {
    /// `Gamma_j Gamma_k + Gamma_k Gamma_j = 2 delta_jk` with `Gamma_k = -i L'_k`.
    pub anticommutators: bool,
    /// `(1/2)[Gamma_j, Gamma_k]` for `j < k` (0-based), always real.
    pub half_commutators: Vec<((usize, usize), SignedPauliOp)>,
    /// The 21 half-commutators are, up to sign, the anti-flag orbits c, e, f.
    pub half_commutators_match: bool,
    /// The 28 antisymmetric operators close under commutators into `2 x` themselves.
    pub so8_closed: bool,
}

impl CliffordReport {
    pub fn passed(&self) -> bool {
        self.anticommutators && self.half_commutators_match && self.so8_closed
    }
}

pub fn verify_clifford(special: &[SignedPauliOp; 7]) -> CliffordReport {
    let gammas: Vec<GaussianIntMatrix> = special.iter().map(times_minus_i).collect();
    let id2: GaussianIntMatrix = Matrix::identity(8).scale(&Complex::new(2, 0));
    let zero: GaussianIntMatrix = Matrix::zeros(8);
    let mut anticommutators = true;
    let mut half_commutators = Vec::new();
    let mut ok = true;
    for j in 0..7 {
        for k in 0..7 {
            let ac = gammas[j].anticommutator(&gammas[k]);
            anticommutators &= if j == k { ac == id2 } else { ac == zero };
            if j < k {
                let c = gammas[j].commutator(&gammas[k]);
                if c.entries().iter().any(|z| z.re % 2 != 0 || z.im % 2 != 0) {
                    ok = false;
                    continue;
                }
                match gaussian_to_pauli(&c.map(|z| z / 2)) {
                    Some(p) => half_commutators.push(((j, k), p)),
                    None => ok = false,
                }
            }
        }
    }
    let mut expected: Vec<u8> = ['c', 'e', 'f']
        .iter()
        .flat_map(|&l| reference_orbit(l).expect("known letter"))
        .map(|p| p.code())
        .collect();
    expected.sort_unstable();
    let mut got: Vec<u8> = half_commutators.iter().map(|(_, p)| p.code()).collect();
    got.sort_unstable();
    let half_commutators_match = ok && got == expected;

    let anti: Vec<SignedPauliOp> = enumerate_universe()
        .into_iter()
        .filter(|p| !p.is_symmetric())
        .collect();
    let dense: Vec<DenseIntMatrix> = anti.iter().map(|p| p.to_dense()).collect();
    let so8_closed = anti.len() == 28
        && dense.iter().all(|a| {
            dense.iter().all(|b| {
                let c = a.commutator(b);
                c.is_zero()
                    || (c.entries().iter().all(|x| x % 2 == 0)
                        && SignedPauliOp::from_dense(&c.map(|x| x / 2))
                            .map(|p| !p.is_symmetric())
                            .unwrap_or(false))
            })
        });
    CliffordReport {
        anticommutators,
        half_commutators,
        half_commutators_match,
        so8_closed,
    }
}

/// A finite group of gate matrices, elements sorted by their entries.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    elements: Vec<GateMatrix>,
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GateMatrix] {
        &self.elements
    }

    pub fn contains(&self, g: &GateMatrix) -> bool {
        self.elements
            .binary_search_by(|e| e.0.entries().cmp(g.0.entries()))
            .is_ok()
    }

    pub fn actions(&self, exec: Execution) -> Result<Vec<PauliAction>> {
        exec.map(&self.elements, PauliAction::from_gate)
            .into_iter()
            .collect()
    }
}

/// Closure under multiplication by breadth-first search; each frontier is
/// expanded with the chosen execution policy.
pub fn generate_group(gens: &[GateMatrix], budget: usize, exec: Execution) -> Result<MatrixGroup> {
    let mut seen: HashSet<GateMatrix> = HashSet::from([GateMatrix::identity()]);
    let mut frontier = vec![GateMatrix::identity()];
    while !frontier.is_empty() {
        let products: Vec<Vec<GateMatrix>> =
            exec.map(&frontier, |x| gens.iter().map(|g| x.then(g)).collect());
        let mut next = Vec::new();
        for y in products.into_iter().flatten() {
            if !seen.contains(&y) {
                seen.insert(y.clone());
                if seen.len() > budget {
                    return Err(Error::ElementBudget(budget));
                }
                next.push(y);
            }
        }
        frontier = next;
    }
    let mut elements: Vec<GateMatrix> = seen.into_iter().collect();
    elements.sort_by(|a, b| a.0.entries().cmp(b.0.entries()));
    Ok(MatrixGroup { elements })
}

/// JSON-friendly orbit listing.
pub fn orbit_report(d: &OrbitDecomposition) -> serde_json::Value {
    let orbits: Vec<BTreeMap<&str, serde_json::Value>> = d
        .orbits
        .iter()
        .enumerate()
        .map(|(i, o)| {
            BTreeMap::from([
                ("id", serde_json::json!(i + 1)),
                ("tag", serde_json::json!(o.tag.map(String::from))),
                (
                    "members",
                    serde_json::json!(o.members.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
                ),
            ])
        })
        .collect();
    serde_json::json!({ "schema": crate::SCHEMA, "generator": "alpha", "orbits": orbits })
}
