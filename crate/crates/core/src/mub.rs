//! Nine maximal commuting sets and their mutually unbiased eigenbases.

use std::collections::BTreeSet;

use num_complex::Complex;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fano::OperatorLabelling;
use crate::hexagon::{HexLabel, HexagonModel};
use crate::matrix::{GaussianIntMatrix, Matrix};
use crate::par::Execution;
use crate::pauli::{ops, SignedPauliOp};

type Gi = Complex<i64>;

/// The seven sets through the special points, in reference order.
pub const REFERENCE_SETS: [[&str; 7]; 7] = [
    ["YZZ", "XXZ", "ZYI", "YXX", "IYY", "ZIY", "XZX"],
    ["YIX", "ZXZ", "XXY", "YZI", "IZX", "XYZ", "ZYY"],
    ["ZYX", "XYY", "YIZ", "XIY", "YYZ", "IYI", "ZIX"],
    ["IIY", "XZI", "XZY", "ZXY", "ZXI", "YYY", "YYI"],
    ["YXZ", "YZY", "IYX", "IZY", "YYX", "YII", "IXZ"],
    ["IYZ", "ZXX", "ZZY", "XYI", "XIZ", "YZX", "YXY"],
    ["XYX", "ZZX", "YXI", "ZYZ", "YIY", "IXY", "XZZ"],
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutingSet {
    /// `1..=9`.
    pub label: usize,
    pub members: Vec<SignedPauliOp>,
    /// The special point the set was read from, for `1..=7`.
    pub centre: Option<HexLabel>,
}

impl CommutingSet {
    pub fn name(&self) -> String {
        format!("B{}", self.label)
    }

    pub fn is_commuting(&self) -> bool {
        self.members
            .iter()
            .all(|p| self.members.iter().all(|q| p.commutes(q)))
    }

    fn codes(&self) -> BTreeSet<u8> {
        self.members.iter().map(|p| p.code()).collect()
    }
}

fn set_codes(ops: &[SignedPauliOp]) -> BTreeSet<u8> {
    ops.iter().map(|p| p.code()).collect()
}

/// The special point `g_j` whose three lines give the reference set `B_k`.
pub fn centre_of(k: usize) -> HexLabel {
    HexLabel::new('g', 5 - k as i32)
}

/// Sets `B1..B7` from the three lines through each `g_j`, then `B8 = P`, `B9 = L`.
pub fn build_commuting_sets(m: &HexagonModel) -> Vec<CommutingSet> {
    let mut out = Vec::with_capacity(9);
    for k in 1..=7 {
        let centre = centre_of(k);
        let c = centre.ordinal();
        let mut members = vec![m.operator(centre)];
        for l in m.lines_through(c) {
            for &p in &m.lines()[l].points {
                if p != c {
                    members.push(m.operators()[p]);
                }
            }
        }
        out.push(CommutingSet {
            label: k,
            members,
            centre: Some(centre),
        });
    }
    let lab = OperatorLabelling::standard();
    out.push(CommutingSet {
        label: 8,
        members: lab.point_ops.to_vec(),
        centre: None,
    });
    out.push(CommutingSet {
        label: 9,
        members: lab.line_ops.to_vec(),
        centre: None,
    });
    out
}

/// Whether `B1..B7` equal the reference sets, as unsigned sets.
pub fn matches_reference(sets: &[CommutingSet]) -> bool {
    sets.iter()
        .take(7)
        .zip(REFERENCE_SETS)
        .all(|(s, r)| s.codes() == set_codes(&ops(r)))
}

/// First three members whose `(a|b)` vectors are independent over GF(2).
pub fn select_generators(s: &CommutingSet) -> Result<[SignedPauliOp; 3]> {
    let mut chosen: Vec<SignedPauliOp> = Vec::new();
    let mut span: BTreeSet<u8> = BTreeSet::from([0]);
    for p in &s.members {
        if span.contains(&p.code()) {
            continue;
        }
        let grown: Vec<u8> = span.iter().map(|x| x ^ p.code()).collect();
        span.extend(grown);
        chosen.push(*p);
        if chosen.len() == 3 {
            return Ok([chosen[0], chosen[1], chosen[2]]);
        }
    }
    Err(Error::DependentGenerators(s.name()))
}

/// `O` for symmetric operators, `iO` for antisymmetric ones; both square to 1.
pub fn hermitianize(p: &SignedPauliOp) -> GaussianIntMatrix {
    let d = p.to_dense();
    if p.is_symmetric() {
        d.to_gaussian()
    } else {
        d.map(|&x| Complex::new(0, x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactBasis {
    pub generators: [SignedPauliOp; 3],
    /// Sign patterns in the order `(+,+,+), (+,+,-), ...`.
    pub patterns: Vec<[i8; 3]>,
    pub vectors: Vec<Vec<Gi>>,
    pub norm_squares: Vec<i64>,
}

fn sign_patterns() -> Vec<[i8; 3]> {
    (0..8)
        .map(|n| std::array::from_fn(|j| if n >> (2 - j) & 1 == 0 { 1 } else { -1 }))
        .collect()
}

pub fn inner(u: &[Gi], v: &[Gi]) -> Gi {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn apply(m: &GaussianIntMatrix, v: &[Gi]) -> Vec<Gi> {
    (0..m.dim())
        .map(|r| m.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn primitive(v: Vec<Gi>) -> Vec<Gi> {
    let g = v.iter().fold(0i64, |g, z| g.gcd(&z.re).gcd(&z.im));
    if g <= 1 {
        v
    } else {
        v.into_iter().map(|z| z / g).collect()
    }
}

/// Joint eigenbasis from the rank-one projectors `prod_j (1 + s_j H_j)`, each
/// a multiple 8 of the projector; one nonzero column per projector.
pub fn joint_eigenbasis(s: &CommutingSet) -> Result<ExactBasis> {
    let generators = select_generators(s)?;
    let hs: Vec<GaussianIntMatrix> = generators.iter().map(hermitianize).collect();
    let id: GaussianIntMatrix = Matrix::identity(8);
    debug_assert!(hs.iter().all(|h| (h * h) == id));
    let patterns = sign_patterns();
    let mut vectors = Vec::with_capacity(8);
    for pat in &patterns {
        let proj = hs.iter().zip(pat).fold(id.clone(), |acc, (h, &sj)| {
            let factor = &id + &h.scale(&Complex::new(sj as i64, 0));
            &acc * &factor
        });
        let trace = proj.trace();
        let idempotent = &proj * &proj == proj.scale(&Complex::new(8, 0));
        if !idempotent || trace != Complex::new(8, 0) {
            let rank = if idempotent {
                (trace.re / 8) as usize
            } else {
                0
            };
            return Err(Error::ProjectorRank {
                pattern: *pat,
                rank,
            });
        }
        let col = (0..8)
            .map(|c| proj.column(c))
            .find(|v| v.iter().any(|z| *z != Complex::new(0, 0)))
            .expect("nonzero projector");
        let v = primitive(col);
        debug_assert!(hs.iter().zip(pat).all(|(h, &sj)| {
            apply(h, &v) == v.iter().map(|z| z * sj as i64).collect::<Vec<_>>()
        }));
        vectors.push(v);
    }
    let norm_squares = vectors.iter().map(|v| inner(v, v).re).collect();
    Ok(ExactBasis {
        generators,
        patterns,
        vectors,
        norm_squares,
    })
}

impl ExactBasis {
    pub fn is_orthogonal(&self) -> bool {
        (0..8).all(|i| {
            (0..8)
                .all(|j| i == j || inner(&self.vectors[i], &self.vectors[j]) == Complex::new(0, 0))
        }) && self.norm_squares.iter().all(|&n| n > 0)
    }

    /// Every vector is a joint eigenvector of every Hermitianized member.
    pub fn diagonalizes(&self, s: &CommutingSet) -> bool {
        s.members.iter().all(|p| {
            let h = hermitianize(p);
            self.vectors.iter().all(|v| {
                let hv = apply(&h, v);
                hv == *v || hv == v.iter().map(|z| -z).collect::<Vec<_>>()
            })
        })
    }
}

/// `8 |<u,v>|^2 == <u,u><v,v>` for every vector pair of two bases.
pub fn unbiased(a: &ExactBasis, b: &ExactBasis) -> bool {
    a.vectors.iter().zip(&a.norm_squares).all(|(u, &nu)| {
        b.vectors
            .iter()
            .zip(&b.norm_squares)
            .all(|(v, &nv)| 8 * inner(u, v).norm_sqr() == nu * nv)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MubReport {
    pub bases: usize,
    pub orthogonal: usize,
    pub unbiased_pairs: usize,
    pub total_pairs: usize,
}

impl MubReport {
    pub fn passed(&self) -> bool {
        self.bases == 9
            && self.orthogonal == 9
            && self.unbiased_pairs == 36
            && self.total_pairs == 36
    }
}

pub fn certify_unbiased(bases: &[ExactBasis], exec: Execution) -> MubReport {
    let pairs: Vec<(usize, usize)> = (0..bases.len())
        .flat_map(|i| (i + 1..bases.len()).map(move |j| (i, j)))
        .collect();
    let ok = exec.map(&pairs, |&(i, j)| unbiased(&bases[i], &bases[j]));
    MubReport {
        bases: bases.len(),
        orthogonal: bases.iter().filter(|b| b.is_orthogonal()).count(),
        unbiased_pairs: ok.into_iter().filter(|&x| x).count(),
        total_pairs: pairs.len(),
    }
}

pub fn all_bases(sets: &[CommutingSet]) -> Result<Vec<ExactBasis>> {
    sets.iter().map(joint_eigenbasis).collect()
}

pub fn mub_report_json(
    sets: &[CommutingSet],
    bases: &[ExactBasis],
    report: &MubReport,
) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = sets
        .iter()
        .zip(bases)
        .map(|(s, b)| {
            serde_json::json!({
                "set": s.name(),
                "centre": s.centre.map(|c| c.to_string()),
                "members": s.members.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "generators": b.generators.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "vectors": b.vectors.iter().map(|v| v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "norm_squares": b.norm_squares,
            })
        })
        .collect();
    serde_json::json!({
        "schema": crate::SCHEMA,
        "bases": report.bases,
        "orthogonal": report.orthogonal,
        "unbiased_pairs": report.unbiased_pairs,
        "total_pairs": report.total_pairs,
        "sets": entries,
    })
}
