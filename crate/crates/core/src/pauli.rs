//! Real three-qubit Pauli operators.
//!
//! An operator is a sign together with a symplectic pair `(a, b)` of GF(2)
//! vectors of length three, packed into the low three bits of a byte with
//! qubit 1 in the most significant position. Per qubit `I = (0,0)`,
//! `X = (1,0)`, `Z = (0,1)` and `Y = (1,1)`, where `Y = Z X` is the real
//! antisymmetric matrix `[[0, 1], [-1, 0]]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{blocks, DenseIntMatrix};

pub const QUBITS: usize = 3;
pub const DIM: usize = 1 << QUBITS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SingleQubitOp {
    I,
    X,
    Y,
    Z,
}

impl SingleQubitOp {
    pub const ALL: [SingleQubitOp; 4] = [Self::I, Self::X, Self::Y, Self::Z];

    /// Symplectic bits `(x, z)`.
    pub fn bits(self) -> (u8, u8) {
        match self {
            Self::I => (0, 0),
            Self::X => (1, 0),
            Self::Z => (0, 1),
            Self::Y => (1, 1),
        }
    }

    pub fn from_bits(x: u8, z: u8) -> Self {
        match (x & 1, z & 1) {
            (0, 0) => Self::I,
            (1, 0) => Self::X,
            (0, 1) => Self::Z,
            _ => Self::Y,
        }
    }

    pub fn to_dense(self) -> DenseIntMatrix {
        match self {
            Self::I => blocks::i2(),
            Self::X => blocks::x2(),
            Self::Y => blocks::y2(),
            Self::Z => blocks::z2(),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Self::I => 'I',
            Self::X => 'X',
            Self::Y => 'Y',
            Self::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(Self::I),
            'X' => Some(Self::X),
            'Y' => Some(Self::Y),
            'Z' => Some(Self::Z),
            _ => None,
        }
    }

    /// `self * other` as `(sign, result)`, read off the product table.
    pub fn product(self, other: Self) -> (i8, Self) {
        use SingleQubitOp::*;
        // rows: left factor I, X, Y, Z; columns: right factor I, X, Y, Z
        const TABLE: [[(i8, SingleQubitOp); 4]; 4] = [
            [(1, I), (1, X), (1, Y), (1, Z)],
            [(1, X), (1, I), (-1, Z), (-1, Y)],
            [(1, Y), (1, Z), (-1, I), (-1, X)],
            [(1, Z), (1, Y), (1, X), (1, I)],
        ];
        TABLE[self as usize][other as usize]
    }
}

/// A real three-qubit Pauli operator `sign * A (x) B (x) C`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPauliOp {
    negative: bool,
    a: u8,
    b: u8,
}

impl SignedPauliOp {
    pub const IDENTITY: SignedPauliOp = SignedPauliOp {
        negative: false,
        a: 0,
        b: 0,
    };

    /// Builds `+op` from the X-part `a` and Z-part `b` (3-bit masks, qubit 1 = bit 2).
    pub fn new(a: u8, b: u8) -> Self {
        Self {
            negative: false,
            a: a & 0b111,
            b: b & 0b111,
        }
    }

    pub fn from_code(code: u8) -> Self {
        Self::new(code >> 3, code)
    }

    pub fn from_qubits(ops: [SingleQubitOp; 3]) -> Self {
        let (mut a, mut b) = (0, 0);
        for op in ops {
            let (x, z) = op.bits();
            a = (a << 1) | x;
            b = (b << 1) | z;
        }
        Self::new(a, b)
    }

    pub fn qubits(&self) -> [SingleQubitOp; 3] {
        let f = |q: usize| {
            let shift = 2 - q;
            SingleQubitOp::from_bits(self.a >> shift, self.b >> shift)
        };
        [f(0), f(1), f(2)]
    }

    pub fn a(&self) -> u8 {
        self.a
    }

    pub fn b(&self) -> u8 {
        self.b
    }

    /// The 6-bit symplectic coordinate `(a|b)`, also the universe sort key.
    pub fn code(&self) -> u8 {
        (self.a << 3) | self.b
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// The canonical `+` representative.
    pub fn unsigned(&self) -> Self {
        Self::new(self.a, self.b)
    }

    pub fn with_sign(&self, sign: i8) -> Self {
        Self {
            negative: sign < 0,
            ..*self
        }
    }

    pub fn negate(&self) -> Self {
        Self {
            negative: !self.negative,
            ..*self
        }
    }

    /// Equality up to sign.
    pub fn same_up_to_sign(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut sign = self.sign() * other.sign();
        for (p, q) in self.qubits().into_iter().zip(other.qubits()) {
            sign *= p.product(q).0;
        }
        Self {
            negative: sign < 0,
            a: self.a ^ other.a,
            b: self.b ^ other.b,
        }
    }

    /// Symplectic form `a_p . b_q + a_q . b_p` over GF(2) is zero.
    pub fn commutes(&self, other: &Self) -> bool {
        let form = (self.a & other.b).count_ones() + (other.a & self.b).count_ones();
        form.is_multiple_of(2)
    }

    /// Even number of `Y` factors.
    pub fn is_symmetric(&self) -> bool {
        (self.a & self.b).count_ones().is_multiple_of(2)
    }

    pub fn y_count(&self) -> u32 {
        (self.a & self.b).count_ones()
    }

    pub fn to_dense(&self) -> DenseIntMatrix {
        let [p, q, r] = self.qubits();
        let m = p.to_dense().kron(&q.to_dense()).kron(&r.to_dense());
        if self.negative {
            -m
        } else {
            m
        }
    }

    /// Decodes a dense 8x8 matrix back into a signed Pauli operator.
    pub fn from_dense(m: &DenseIntMatrix) -> Result<Self> {
        if m.dim() != DIM {
            return Err(Error::Dimension {
                expected: DIM,
                found: m.dim(),
            });
        }
        // the X-part is the permutation carried by row 0
        let row0 = m.row(0);
        let col = row0.iter().position(|&e| e != 0).ok_or(Error::NotPauli)?;
        let a = col as u8;
        for b in 0..8u8 {
            let cand = Self::new(a, b);
            let dense = cand.to_dense();
            if dense == *m {
                return Ok(cand);
            }
            if -&dense == *m {
                return Ok(cand.negate());
            }
        }
        Err(Error::NotPauli)
    }
}

/// The 63 nontrivial operators with sign `+1`, ordered by `(a|b)`.
pub fn enumerate_universe() -> Vec<SignedPauliOp> {
    (1u8..64).map(SignedPauliOp::from_code).collect()
}

impl fmt::Display for SignedPauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        for q in self.qubits() {
            write!(f, "{}", q.symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedPauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SignedPauliOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Mnemonic(s.to_string());
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let chars: Vec<char> = body.chars().collect();
        if chars.len() != QUBITS {
            return Err(bad());
        }
        let mut ops = [SingleQubitOp::I; 3];
        for (slot, c) in ops.iter_mut().zip(chars) {
            *slot = SingleQubitOp::from_symbol(c).ok_or_else(bad)?;
        }
        let op = Self::from_qubits(ops);
        Ok(if negative { op.negate() } else { op })
    }
}

impl Serialize for SignedPauliOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignedPauliOp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a mnemonic known to be valid. Panics otherwise; for literals.
pub fn op(s: &str) -> SignedPauliOp {
    s.parse().unwrap_or_else(|e| panic!("{e}"))
}

/// Parses a list of literal mnemonics.
pub fn ops<const N: usize>(labels: [&str; N]) -> [SignedPauliOp; N] {
    labels.map(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_qubit_table_matches_2x2_products() {
        for p in SingleQubitOp::ALL {
            for q in SingleQubitOp::ALL {
                let (sign, r) = p.product(q);
                let expected = r.to_dense().scale(&(sign as i64));
                assert_eq!(&p.to_dense() * &q.to_dense(), expected, "{p:?}*{q:?}");
            }
        }
    }

    #[test]
    fn y_is_z_times_x() {
        assert_eq!(
            SingleQubitOp::Z.product(SingleQubitOp::X),
            (1, SingleQubitOp::Y)
        );
        assert!(SingleQubitOp::Y.to_dense().is_antisymmetric());
        for s in [SingleQubitOp::I, SingleQubitOp::X, SingleQubitOp::Z] {
            assert!(s.to_dense().is_symmetric());
        }
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(op("IIX").multiply(&op("ZZI")), op("ZZX"));
        let triple = op("XYX").multiply(&op("YZZ")).multiply(&op("ZYX"));
        assert_eq!(triple, op("IZZ"));
        for p in enumerate_universe() {
            assert_eq!(SignedPauliOp::IDENTITY.multiply(&p), p);
        }
    }

    #[test]
    fn commutation_examples() {
        assert!(op("IIX").commutes(&op("IXI")));
        assert!(!op("IIX").commutes(&op("IIZ")));
        let p = op("ZYX");
        assert!(p.commutes(&p));
    }

    #[test]
    fn symmetry_examples() {
        assert!(!op("ZYX").is_symmetric());
        assert!(op("XZX").is_symmetric());
        assert!(op("IYY").is_symmetric());
        assert!(SignedPauliOp::IDENTITY.is_symmetric());
    }

    #[test]
    fn dense_zyx_block_form() {
        // [[YX, 0], [0, -YX]] written out with 2x2 X blocks
        let x = blocks::x2();
        let o = blocks::o2();
        let expected = DenseIntMatrix::from_blocks(&[
            vec![o.clone(), x.clone(), o.clone(), o.clone()],
            vec![-&x, o.clone(), o.clone(), o.clone()],
            vec![o.clone(), o.clone(), o.clone(), -&x],
            vec![o.clone(), o.clone(), x.clone(), o],
        ]);
        assert_eq!(op("ZYX").to_dense(), expected);
        assert!(SignedPauliOp::IDENTITY.to_dense().is_identity());
        assert_eq!(op("-IIX").to_dense(), op("IIX").to_dense().scale(&-1));
    }

    #[test]
    fn dense_round_trip_all_signed() {
        for p in std::iter::once(SignedPauliOp::IDENTITY).chain(enumerate_universe()) {
            for q in [p, p.negate()] {
                assert_eq!(SignedPauliOp::from_dense(&q.to_dense()).unwrap(), q);
            }
        }
    }

    #[test]
    fn from_dense_rejects_non_pauli() {
        let mut m = op("XYZ").to_dense();
        m[(0, 0)] += 1;
        assert_eq!(SignedPauliOp::from_dense(&m), Err(Error::NotPauli));
        assert!(SignedPauliOp::from_dense(&DenseIntMatrix::zeros(8)).is_err());
        assert!(matches!(
            SignedPauliOp::from_dense(&DenseIntMatrix::identity(4)),
            Err(Error::Dimension { .. })
        ));
        // a permutation matrix that is not a tensor of Paulis
        let swap = DenseIntMatrix::from_fn(8, |r, c| (c == [1, 0, 2, 3, 4, 5, 6, 7][r]) as i64);
        assert_eq!(SignedPauliOp::from_dense(&swap), Err(Error::NotPauli));
    }

    #[test]
    fn dense_realization_is_signed_permutation() {
        for p in enumerate_universe() {
            let m = p.to_dense();
            for r in 0..8 {
                assert_eq!(m.row(r).iter().filter(|e| **e != 0).count(), 1);
                assert_eq!(m.column(r).iter().filter(|e| **e != 0).count(), 1);
            }
            assert!(m.entries().iter().all(|e| e.abs() <= 1));
        }
    }

    #[test]
    fn universe_census() {
        let u = enumerate_universe();
        assert_eq!(u.len(), 63);
        assert_eq!(u.iter().filter(|p| p.is_symmetric()).count(), 35);
        assert_eq!(u.iter().filter(|p| !p.is_symmetric()).count(), 28);
        assert!(u.windows(2).all(|w| w[0].code() < w[1].code()));
        assert_eq!(u[0], op("IIZ"));
        assert_eq!(u[62], op("YYY"));
    }

    #[test]
    fn mnemonic_grammar() {
        assert_eq!(op("-IIY").to_string(), "-IIY");
        assert_eq!(op("ZYX").to_string(), "ZYX");
        for bad in ["", "ZY", "ZYXX", "+ZYX", "zyx", "--ZYX", "ZAX", " ZYX"] {
            assert!(bad.parse::<SignedPauliOp>().is_err(), "{bad:?}");
        }
    }

    fn any_op() -> impl Strategy<Value = SignedPauliOp> {
        (0u8..64, any::<bool>()).prop_map(|(c, n)| {
            let p = SignedPauliOp::from_code(c);
            if n {
                p.negate()
            } else {
                p
            }
        })
    }

    proptest! {
        #[test]
        fn product_matches_dense(p in any_op(), q in any_op()) {
            prop_assert_eq!(p.multiply(&q).to_dense(), &p.to_dense() * &q.to_dense());
        }

        #[test]
        fn reversed_product_differs_only_by_commutation_sign(p in any_op(), q in any_op()) {
            let pq = p.multiply(&q);
            let qp = q.multiply(&p);
            prop_assert!(pq.same_up_to_sign(&qp));
            prop_assert_eq!(pq == qp, p.commutes(&q));
            let dense_commutes = p.to_dense().commutator(&q.to_dense()).is_zero();
            prop_assert_eq!(dense_commutes, p.commutes(&q));
        }

        #[test]
        fn square_is_plus_or_minus_identity(p in any_op()) {
            let sq = p.multiply(&p);
            prop_assert!(sq.is_identity());
            prop_assert_eq!(sq.sign() == 1, p.is_symmetric());
            prop_assert_eq!(p.to_dense().is_symmetric(), p.is_symmetric());
        }

        #[test]
        fn mnemonic_round_trip(p in any_op()) {
            prop_assert_eq!(p.to_string().parse::<SignedPauliOp>().unwrap(), p);
        }
    }
}
