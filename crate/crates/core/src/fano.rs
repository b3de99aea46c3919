//! The Fano plane and its operator labelling.
//!
//! Rows of the product table are the seven `X`-type operators (lines), columns
//! the seven `Z`-type operators (points). A symmetric product marks an
//! incident point-line pair (a flag), an antisymmetric one a non-incident pair
//! (an anti-flag).

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::pauli::{op, ops, SignedPauliOp};

/// Offsets of the base line; line `k` holds points `k, k+1, k+3` (mod 7).
pub const DIFFERENCE_SET: [usize; 3] = [0, 1, 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoPlane {
    structure: IncidenceStructure,
}

impl FanoPlane {
    /// Generated from cyclic shifts of the difference set; indices are 0-based.
    pub fn new() -> Self {
        let lines = (0..7)
            .map(|k| DIFFERENCE_SET.iter().map(|d| (k + d) % 7).collect())
            .collect();
        Self {
            structure: IncidenceStructure::new(7, lines),
        }
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn is_incident(&self, point: usize, line: usize) -> bool {
        self.structure.is_incident(point, line)
    }

    /// Points of line `k` in the order `k, k+1, k+3`, before sorting.
    pub fn line_points(&self, line: usize) -> [usize; 3] {
        DIFFERENCE_SET.map(|d| (line + d) % 7)
    }

    /// Lines through `point` in the order `p, p-1, p-3`.
    pub fn point_lines(&self, point: usize) -> [usize; 3] {
        DIFFERENCE_SET.map(|d| (point + 7 - d) % 7)
    }

    /// Projective-plane axioms: 3 points per line, 3 lines per point, two points on
    /// a unique line, two lines meeting in a unique point.
    pub fn satisfies_axioms(&self) -> bool {
        let s = &self.structure;
        let order_ok = s.order() == Some((3, 3));
        let points_ok = (0..7).all(|p| {
            (p + 1..7).all(|q| {
                (0..7)
                    .filter(|&l| s.is_incident(p, l) && s.is_incident(q, l))
                    .count()
                    == 1
            })
        });
        let lines_ok = (0..7).all(|l| {
            (l + 1..7).all(|m| {
                (0..7)
                    .filter(|&p| s.is_incident(p, l) && s.is_incident(p, m))
                    .count()
                    == 1
            })
        });
        order_ok && points_ok && lines_ok
    }
}

impl Default for FanoPlane {
    fn default() -> Self {
        Self::new()
    }
}

/// Swaps points and lines.
pub fn dual_plane(f: &FanoPlane) -> FanoPlane {
    FanoPlane {
        structure: f.structure.dual(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorLabelling {
    /// Column labels, the set `P` of `Z`-type operators.
    pub point_ops: [SignedPauliOp; 7],
    /// Row labels, the set `L` of `X`-type operators.
    pub line_ops: [SignedPauliOp; 7],
}

impl OperatorLabelling {
    pub fn standard() -> Self {
        Self {
            point_ops: ops(["ZZI", "ZII", "ZZZ", "IZI", "IZZ", "ZIZ", "IIZ"]),
            line_ops: ops(["IIX", "IXX", "XIX", "XII", "XXX", "IXI", "XXI"]),
        }
    }

    pub fn is_valid(&self) -> bool {
        let pairwise =
            |set: &[SignedPauliOp; 7]| set.iter().all(|p| set.iter().all(|q| p.commutes(q)));
        let distinct = |set: &[SignedPauliOp; 7]| {
            let mut codes: Vec<u8> = set.iter().map(|p| p.code()).collect();
            codes.sort_unstable();
            codes.dedup();
            codes.len() == 7 && codes[0] != 0
        };
        pairwise(&self.point_ops)
            && pairwise(&self.line_ops)
            && distinct(&self.point_ops)
            && distinct(&self.line_ops)
    }
}

impl Default for OperatorLabelling {
    fn default() -> Self {
        Self::standard()
    }
}

/// Where an operator sits in the table picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cell {
    Point { point: usize },
    Line { line: usize },
    Flag { line: usize, point: usize },
    AntiFlag { line: usize, point: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagTable {
    pub labelling: OperatorLabelling,
    /// `entries[i][j] = line_ops[i] * point_ops[j]`, with its sign.
    pub entries: [[SignedPauliOp; 7]; 7],
    /// `true` where the product is symmetric.
    pub flag_mask: [[bool; 7]; 7],
}

pub fn build_table1(labelling: &OperatorLabelling) -> FlagTable {
    let mut entries = [[SignedPauliOp::IDENTITY; 7]; 7];
    let mut flag_mask = [[false; 7]; 7];
    for (i, l) in labelling.line_ops.iter().enumerate() {
        for (j, p) in labelling.point_ops.iter().enumerate() {
            let e = l.multiply(p);
            entries[i][j] = e;
            flag_mask[i][j] = e.is_symmetric();
        }
    }
    FlagTable {
        labelling: labelling.clone(),
        entries,
        flag_mask,
    }
}

impl FlagTable {
    pub fn standard() -> Self {
        build_table1(&OperatorLabelling::standard())
    }

    /// Up-to-sign entry.
    pub fn entry(&self, row: usize, col: usize) -> SignedPauliOp {
        self.entries[row][col].unsigned()
    }

    /// Symmetric columns of a row, as 0-based indices in increasing order.
    pub fn row_pattern(&self, row: usize) -> Vec<usize> {
        (0..7).filter(|&j| self.flag_mask[row][j]).collect()
    }

    /// Symmetric rows of a column, as 0-based indices in increasing order.
    pub fn column_pattern(&self, col: usize) -> Vec<usize> {
        (0..7).filter(|&i| self.flag_mask[i][col]).collect()
    }

    /// Place of an operator (up to sign) among the 63.
    pub fn classify(&self, op: &SignedPauliOp) -> Option<Cell> {
        let lab = &self.labelling;
        if let Some(point) = lab.point_ops.iter().position(|p| p.same_up_to_sign(op)) {
            return Some(Cell::Point { point });
        }
        if let Some(line) = lab.line_ops.iter().position(|p| p.same_up_to_sign(op)) {
            return Some(Cell::Line { line });
        }
        for line in 0..7 {
            for point in 0..7 {
                if self.entries[line][point].same_up_to_sign(op) {
                    return Some(if self.flag_mask[line][point] {
                        Cell::Flag { line, point }
                    } else {
                        Cell::AntiFlag { line, point }
                    });
                }
            }
        }
        None
    }

    /// CSV grid: header of point labels, one row per line label, each cell
    /// quoted as `"ENTRY,symmetric"` or `"ENTRY,antisymmetric"`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("Lines/Points");
        for p in &self.labelling.point_ops {
            let _ = write!(out, ",{p}");
        }
        out.push('\n');
        for i in 0..7 {
            let _ = write!(out, "{}", self.labelling.line_ops[i]);
            for j in 0..7 {
                let kind = if self.flag_mask[i][j] {
                    "symmetric"
                } else {
                    "antisymmetric"
                };
                let _ = write!(out, ",\"{},{kind}\"", self.entry(i, j));
            }
            out.push('\n');
        }
        out
    }

    /// Incidence graph of the plane (Heawood graph) with flag operators on the edges.
    pub fn incidence_dot(&self) -> String {
        let lab = &self.labelling;
        let mut out = String::from("graph \"fano_incidence\" {\n");
        for (j, p) in lab.point_ops.iter().enumerate() {
            let _ = writeln!(
                out,
                "  p{} [label=\"{p}\", shape=circle, color=gray];",
                j + 1
            );
        }
        for (i, l) in lab.line_ops.iter().enumerate() {
            let _ = writeln!(
                out,
                "  l{} [label=\"{l}\", shape=circle, color=black];",
                i + 1
            );
        }
        for i in 0..7 {
            for j in 0..7 {
                if self.flag_mask[i][j] {
                    let _ = writeln!(
                        out,
                        "  p{} -- l{} [label=\"{}\"];",
                        j + 1,
                        i + 1,
                        self.entry(i, j)
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A line of the dual plane with its three points in the cyclic order whose
/// ordered product is `+label`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientedLine {
    pub label: SignedPauliOp,
    /// 0-based indices into the special list.
    pub points: [usize; 3],
    pub ops: [SignedPauliOp; 3],
}

fn product3(a: &SignedPauliOp, b: &SignedPauliOp, c: &SignedPauliOp) -> SignedPauliOp {
    a.multiply(b).multiply(c)
}

/// Orients every line of the dual plane labelled by the special seven operators.
///
/// Dual line `j` (labelled by the point operator `P[j]`) carries the special
/// operators of the rows incident with column `j`.
pub fn orient_dual_fano(
    special: &[SignedPauliOp; 7],
    labelling: &OperatorLabelling,
) -> Result<Vec<OrientedLine>> {
    let plane = FanoPlane::new();
    let mut out = Vec::with_capacity(7);
    for j in 0..7 {
        let label = labelling.point_ops[j];
        let rows = plane.point_lines(j);
        let mut found = None;
        for order in [[0, 1, 2], [0, 2, 1]] {
            let idx = order.map(|k| rows[k]);
            let trio = idx.map(|r| special[r]);
            let prod = product3(&trio[0], &trio[1], &trio[2]);
            if !prod.same_up_to_sign(&label) {
                return Err(Error::Orientation(label.to_string()));
            }
            if prod == label {
                found = Some(OrientedLine {
                    label,
                    points: idx,
                    ops: trio,
                });
                break;
            }
        }
        let line = found.ok_or_else(|| Error::Orientation(label.to_string()))?;
        // the three even orderings give +label, the three odd ones -label
        let [a, b, c] = line.ops;
        let even = [(a, b, c), (b, c, a), (c, a, b)];
        let odd = [(b, a, c), (a, c, b), (c, b, a)];
        let consistent = even.iter().all(|(x, y, z)| product3(x, y, z) == label)
            && odd
                .iter()
                .all(|(x, y, z)| product3(x, y, z) == label.negate());
        if !consistent {
            return Err(Error::Orientation(label.to_string()));
        }
        out.push(line);
    }
    Ok(out)
}

/// The reference 7x7 product grid, rows by line operator and columns by point
/// operator; a leading `_` marks an antisymmetric entry.
pub const REFERENCE_TABLE1: [[&str; 7]; 7] = [
    ["ZZX", "ZIX", "_ZZY", "IZX", "_IZY", "_ZIY", "_IIY"],
    ["_ZYX", "ZXX", "ZYY", "_IYX", "IYY", "_ZXY", "_IXY"],
    ["_YZX", "_YIX", "YZY", "XZX", "_XZY", "YIY", "_XIY"],
    ["_YZI", "_YII", "_YZZ", "XZI", "XZZ", "_YIZ", "XIZ"],
    ["YYX", "_YXX", "_YYY", "_XYX", "XYY", "YXY", "_XXY"],
    ["_ZYI", "ZXI", "_ZYZ", "_IYI", "_IYZ", "ZXZ", "IXZ"],
    ["YYI", "_YXI", "YYZ", "_XYI", "_XYZ", "_YXZ", "XXZ"],
];

/// Cells of `t` that disagree with the reference grid, entry up to sign or mask.
pub fn reference_mismatches(t: &FlagTable) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, row) in REFERENCE_TABLE1.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let (anti, name) = match cell.strip_prefix('_') {
                Some(n) => (true, n),
                None => (false, *cell),
            };
            if t.entry(i, j) != op(name) || t.flag_mask[i][j] == anti {
                out.push((i, j));
            }
        }
    }
    out
}

/// Rows and columns each hold three commuting symmetric and four commuting
/// antisymmetric entries, each symmetric pattern the previous one shifted by one.
/// The column sequence `(134), (245), ..` enters at `(571)` in the first column.
pub fn check_row_column_structure(t: &FlagTable) -> bool {
    let shift = |base: [usize; 3], k: usize| {
        let mut v: Vec<usize> = base.iter().map(|&x| (x + k) % 7).collect();
        v.sort_unstable();
        v
    };
    let commuting =
        |cells: &[SignedPauliOp]| cells.iter().all(|p| cells.iter().all(|q| p.commutes(q)));
    (0..7).all(|k| {
        let row: Vec<SignedPauliOp> = t.entries[k].to_vec();
        let col: Vec<SignedPauliOp> = (0..7).map(|i| t.entries[i][k]).collect();
        let split = |cells: &[SignedPauliOp]| -> (Vec<SignedPauliOp>, Vec<SignedPauliOp>) {
            cells.iter().partition(|p| p.is_symmetric())
        };
        let (rs, ra) = split(&row);
        let (cs, ca) = split(&col);
        t.row_pattern(k) == shift([0, 1, 3], k)
            && t.column_pattern(k) == shift([0, 2, 3], k + 4)
            && rs.len() == 3
            && cs.len() == 3
            && [rs, ra, cs, ca].iter().all(|c| commuting(c))
    })
}

/// Unit-octonion indices `e1..e7` attached to the special operators.
pub fn octonion_mnemonic() -> [SignedPauliOp; 7] {
    ops(["XYX", "YZZ", "YIX", "ZYX", "IIY", "YXZ", "IYZ"])
}

/// Whether each oriented line, renamed through the octonion correspondence, is a
/// cyclic rotation of an oriented octonion triple `(i, i+1, i+3)`.
pub fn matches_octonion_signs(lines: &[OrientedLine]) -> bool {
    let e = octonion_mnemonic();
    let triples: Vec<[usize; 3]> = (0..7).map(|i| [i, (i + 1) % 7, (i + 3) % 7]).collect();
    lines.iter().all(|l| {
        let Some(idx) = l
            .ops
            .iter()
            .map(|op| e.iter().position(|x| x.same_up_to_sign(op)))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        (0..3).any(|r| {
            let rot = [idx[r], idx[(r + 1) % 3], idx[(r + 2) % 3]];
            triples.contains(&rot)
        })
    })
}

/// The DOT rendering of the oriented dual plane: directed edges around each line.
pub fn oriented_dot(lines: &[OrientedLine], special: &[SignedPauliOp; 7]) -> String {
    let mut out = String::from("digraph \"oriented_fano\" {\n");
    for (k, s) in special.iter().enumerate() {
        let _ = writeln!(out, "  g{} [label=\"{s}\"];", k + 1);
    }
    for l in lines {
        let [a, b, c] = l.points;
        for (u, v) in [(a, b), (b, c), (c, a)] {
            let _ = writeln!(out, "  g{} -> g{} [label=\"{}\"];", u + 1, v + 1, l.label);
        }
    }
    out.push_str("}\n");
    out
}

/// The special orbit of antisymmetric operators in cyclic order.
pub fn special_set() -> [SignedPauliOp; 7] {
    ops(["IIY", "ZYX", "YIX", "YZZ", "XYX", "IYZ", "YXZ"])
}
