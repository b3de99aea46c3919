//! The split Cayley hexagon of order two on the 63 operators.
//!
//! Points carry the labels `a..i` with indices `1..7`: `h_k` and `i_k` are the
//! point and line operators of the Fano plane, and `a..g` run along the
//! shifted diagonals of the product table. Lines come in nine families of
//! seven, `A..F` (H2-lines) and `G..I` (H1-lines).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_cover::ExactCover;
use crate::fano::{FlagTable, OperatorLabelling};
use crate::graph::{coxeter_reference, heawood_reference, Graph};
use crate::group::PauliAction;
use crate::incidence::IncidenceStructure;
use crate::par::Execution;
use crate::pauli::SignedPauliOp;
use crate::search;

pub const LETTERS: [char; 9] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i'];
pub const FAMILIES: [char; 9] = ['A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I'];

/// Letters of the flag points (symmetric operators off the margins).
pub const FLAG_LETTERS: [char; 3] = ['a', 'b', 'd'];
/// Letters of the anti-flag points (the antisymmetric operators).
pub const ANTIFLAG_LETTERS: [char; 4] = ['c', 'e', 'f', 'g'];

/// Reduces an integer into `1..=7`.
pub fn mod7(k: i32) -> u8 {
    (k - 1).rem_euclid(7) as u8 + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HexLabel {
    pub letter: char,
    pub index: u8,
}

impl HexLabel {
    pub fn new(letter: char, index: i32) -> Self {
        Self {
            letter,
            index: mod7(index),
        }
    }

    /// Position in the canonical point order `a1..a7, b1, .., i7`.
    pub fn ordinal(&self) -> usize {
        let l = LETTERS
            .iter()
            .position(|&c| c == self.letter)
            .expect("valid letter");
        l * 7 + self.index as usize - 1
    }

    pub fn from_ordinal(n: usize) -> Self {
        Self {
            letter: LETTERS[n / 7],
            index: (n % 7) as u8 + 1,
        }
    }
}

impl fmt::Display for HexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.index)
    }
}

impl FromStr for HexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.chars();
        match (it.next(), it.next(), it.next()) {
            (Some(l), Some(d), None) if LETTERS.contains(&l) && ('1'..='7').contains(&d) => {
                Ok(Self {
                    letter: l,
                    index: d as u8 - b'0',
                })
            }
            _ => Err(Error::ChargeLabel(s.to_string())),
        }
    }
}

impl Serialize for HexLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Operator carried by a label, up to sign.
pub fn label_operator(label: HexLabel, table: &FlagTable) -> SignedPauliOp {
    let k = label.index as usize - 1;
    match label.letter {
        'h' => table.labelling.point_ops[k].unsigned(),
        'i' => table.labelling.line_ops[k].unsigned(),
        l => {
            let shift = LETTERS.iter().position(|&c| c == l).expect("valid letter");
            table.entry(k, (k + shift) % 7)
        }
    }
}

/// Letter grid with rows `i_1..i_7` and columns `h_1..h_7`.
pub fn table2_grid() -> [[HexLabel; 7]; 7] {
    let mut g = [[HexLabel::new('a', 1); 7]; 7];
    for (r, row) in g.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = HexLabel {
                letter: LETTERS[(c + 7 - r) % 7],
                index: r as u8 + 1,
            };
        }
    }
    g
}

pub fn table2_csv() -> String {
    let mut out = String::from("L/P");
    for k in 1..=7 {
        out.push_str(&format!(",h{k}"));
    }
    out.push('\n');
    for (r, row) in table2_grid().iter().enumerate() {
        out.push_str(&format!("i{}", r + 1));
        for cell in row {
            out.push_str(&format!(",{cell}"));
        }
        out.push('\n');
    }
    out
}

/// Members of line `family_k`.
pub fn family_line(family: char, k: i32) -> [HexLabel; 3] {
    let l = HexLabel::new;
    match family {
        'A' => [l('g', k + 1), l('c', k + 3), l('a', k + 4)],
        'B' => [l('f', k - 2), l('b', k), l('g', k + 1)],
        'C' => [l('c', k - 2), l('b', k), l('c', k + 1)],
        'D' => [l('d', k - 1), l('g', k + 1), l('e', k + 2)],
        'E' => [l('e', k + 1), l('e', k + 3), l('a', k + 4)],
        'F' => [l('d', k - 1), l('f', k + 1), l('f', k + 2)],
        'G' => [l('d', k - 1), l('h', k + 2), l('i', k - 1)],
        'H' => [l('a', k + 4), l('h', k + 4), l('i', k + 4)],
        'I' => [l('b', k), l('h', k + 1), l('i', k)],
        _ => panic!("unknown line family {family}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HexLine {
    pub family: char,
    pub index: u8,
    /// Point ordinals in family order.
    pub points: [usize; 3],
}

impl HexLine {
    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.index)
    }

    pub fn is_h1(&self) -> bool {
        matches!(self.family, 'G' | 'H' | 'I')
    }

    pub fn ordinal(&self) -> usize {
        FAMILIES
            .iter()
            .position(|&f| f == self.family)
            .expect("family")
            * 7
            + self.index as usize
            - 1
    }
}

#[derive(Clone, Debug)]
pub struct HexagonModel {
    operators: Vec<SignedPauliOp>,
    lines: Vec<HexLine>,
    structure: IncidenceStructure,
}

pub fn build_hexagon() -> Result<HexagonModel> {
    let table = FlagTable::standard();
    let operators: Vec<SignedPauliOp> = (0..63)
        .map(|n| label_operator(HexLabel::from_ordinal(n), &table))
        .collect();
    let mut lines = Vec::with_capacity(63);
    for family in FAMILIES {
        for k in 1..=7u8 {
            let pts = family_line(family, k as i32).map(|l| l.ordinal());
            let line = HexLine {
                family,
                index: k,
                points: pts,
            };
            let [p, q, r] = pts.map(|i| operators[i]);
            let closed = p.commutes(&q)
                && q.commutes(&r)
                && p.commutes(&r)
                && p.multiply(&q).same_up_to_sign(&r);
            if !closed {
                return Err(Error::LineClosure(line.name()));
            }
            lines.push(line);
        }
    }
    let structure = IncidenceStructure::new(63, lines.iter().map(|l| l.points.to_vec()).collect());
    Ok(HexagonModel {
        operators,
        lines,
        structure,
    })
}

impl HexagonModel {
    pub fn operators(&self) -> &[SignedPauliOp] {
        &self.operators
    }

    pub fn operator(&self, label: HexLabel) -> SignedPauliOp {
        self.operators[label.ordinal()]
    }

    /// Point ordinal of an operator, ignoring its sign.
    pub fn find_operator(&self, p: &SignedPauliOp) -> Option<usize> {
        self.operators.iter().position(|q| q.same_up_to_sign(p))
    }

    pub fn lines(&self) -> &[HexLine] {
        &self.lines
    }

    pub fn line(&self, family: char, index: i32) -> &HexLine {
        let f = FAMILIES.iter().position(|&c| c == family).expect("family");
        &self.lines[f * 7 + mod7(index) as usize - 1]
    }

    pub fn line_operators(&self, line: &HexLine) -> [SignedPauliOp; 3] {
        line.points.map(|i| self.operators[i])
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    /// Lines through a point, as line ordinals.
    pub fn lines_through(&self, point: usize) -> Vec<usize> {
        self.structure.lines_through(point)
    }

    pub fn points_with_letters(&self, letters: &[char]) -> Vec<usize> {
        (0..63)
            .filter(|&n| letters.contains(&HexLabel::from_ordinal(n).letter))
            .collect()
    }

    pub fn flag_points(&self) -> Vec<usize> {
        self.points_with_letters(&FLAG_LETTERS)
    }

    pub fn antiflag_points(&self) -> Vec<usize> {
        self.points_with_letters(&ANTIFLAG_LETTERS)
    }

    pub fn fano_points(&self) -> Vec<usize> {
        self.points_with_letters(&['h', 'i'])
    }

    pub fn collinearity_graph(&self) -> Graph {
        self.structure.collinearity_graph()
    }

    /// Point permutation induced by a conjugation action.
    pub fn point_permutation(&self, action: &PauliAction) -> Option<Vec<usize>> {
        self.operators
            .iter()
            .map(|p| self.find_operator(&action.image(p)))
            .collect()
    }

    /// Line permutation induced by a conjugation action, if lines go to lines.
    pub fn line_permutation(&self, action: &PauliAction) -> Option<Vec<usize>> {
        let perm = self.point_permutation(action)?;
        self.structure.induced_line_permutation(&perm)
    }

    pub fn point_labels(&self) -> Vec<String> {
        (0..63)
            .map(|n| HexLabel::from_ordinal(n).to_string())
            .collect()
    }

    /// Dot-orbit class of each point: its letter.
    pub fn letter_classes(&self) -> Vec<usize> {
        (0..63).map(|n| n / 7).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HexagonCertificate {
    pub points: usize,
    pub lines: usize,
    pub points_per_line: Option<usize>,
    pub lines_per_point: Option<usize>,
    pub connected: bool,
    pub bipartite: bool,
    pub girth: Option<usize>,
    pub diameter: Option<usize>,
    pub h1_lines: usize,
    pub h2_lines: usize,
}

impl HexagonCertificate {
    pub fn passed(&self) -> bool {
        self.points == 63
            && self.lines == 63
            && self.points_per_line == Some(3)
            && self.lines_per_point == Some(3)
            && self.connected
            && self.bipartite
            && self.girth == Some(12)
            && self.diameter == Some(6)
            && self.h1_lines == 21
            && self.h2_lines == 42
    }
}

pub fn certify_generalized_hexagon(m: &HexagonModel) -> HexagonCertificate {
    let g = m.structure.incidence_graph();
    let order = m.structure.order();
    let h1 = m.lines.iter().filter(|l| l.is_h1()).count();
    HexagonCertificate {
        points: m.structure.num_points(),
        lines: m.structure.num_lines(),
        points_per_line: order.map(|o| o.0),
        lines_per_point: order.map(|o| o.1),
        connected: g.is_connected(),
        bipartite: g.is_bipartite(),
        girth: g.girth(),
        diameter: g.diameter(),
        h1_lines: h1,
        h2_lines: m.lines.len() - h1,
    }
}

#[derive(Clone, Debug)]
pub struct Component {
    /// Point ordinals, increasing; vertex `v` of `graph` is `points[v]`.
    pub points: Vec<usize>,
    pub graph: Graph,
    /// Line ordinals providing the edges.
    pub lines: Vec<usize>,
    pub isomorphic_to_reference: bool,
}

#[derive(Clone, Debug)]
pub struct FlagRemoval {
    /// Each line meets the flag points exactly once.
    pub one_flag_per_line: bool,
    pub heawood: Component,
    pub coxeter: Component,
}

fn component(
    pts: Vec<usize>,
    edges: &[(usize, usize, usize)],
    reference: &Graph,
    budget: usize,
) -> Result<Component> {
    let local: BTreeMap<usize, usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut graph = Graph::new(pts.len());
    let mut lines = Vec::new();
    for &(u, v, l) in edges {
        if let (Some(&a), Some(&b)) = (local.get(&u), local.get(&v)) {
            graph.add_edge(a, b);
            lines.push(l);
        }
    }
    lines.sort_unstable();
    let iso = search::find_isomorphism(&graph, reference, None, budget)?.is_some();
    Ok(Component {
        points: pts,
        graph,
        lines,
        isomorphic_to_reference: iso,
    })
}

/// Deletes the 21 flag points. Every line keeps two points, which become an
/// edge; the remaining 42 points split into a Heawood and a Coxeter graph.
pub fn flag_removal_components(m: &HexagonModel, budget: usize) -> Result<FlagRemoval> {
    let flags: BTreeSet<usize> = m.flag_points().into_iter().collect();
    let mut one_flag_per_line = true;
    let mut edges = Vec::new();
    for (l, line) in m.lines.iter().enumerate() {
        let rest: Vec<usize> = line
            .points
            .iter()
            .copied()
            .filter(|p| !flags.contains(p))
            .collect();
        one_flag_per_line &= rest.len() == 2;
        if rest.len() == 2 {
            edges.push((rest[0], rest[1], l));
        }
    }
    let mut remaining = Graph::new(63);
    for &(u, v, _) in &edges {
        remaining.add_edge(u, v);
    }
    let comps: Vec<Vec<usize>> = remaining
        .components()
        .into_iter()
        .filter(|c| !c.iter().any(|p| flags.contains(p)))
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    let find = |n: usize| {
        comps
            .iter()
            .find(|c| c.len() == n)
            .cloned()
            .unwrap_or_default()
    };
    Ok(FlagRemoval {
        one_flag_per_line: one_flag_per_line && comps.len() == 2,
        heawood: component(find(14), &edges, &heawood_reference(), budget)?,
        coxeter: component(find(28), &edges, &coxeter_reference(), budget)?,
    })
}

#[derive(Clone, Debug)]
pub struct HexAutomorphisms {
    /// Point permutations, sorted.
    pub elements: Vec<Vec<usize>>,
    pub generators: Vec<Vec<usize>>,
}

impl HexAutomorphisms {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, perm: &[usize]) -> bool {
        self.elements
            .binary_search_by(|e| e.as_slice().cmp(perm))
            .is_ok()
    }
}

/// Full automorphism group. Lines are exactly the triangles of the
/// collinearity graph, so its automorphisms are the collineations. A strong
/// generating set is searched for under the node budget, checked against the
/// line set, and closed under composition within the same budget.
pub fn automorphism_group(m: &HexagonModel, budget: usize) -> Result<HexAutomorphisms> {
    let gens = search::automorphism_generators(&m.collinearity_graph(), None, budget)?;
    let gens: Vec<Vec<usize>> = gens
        .into_iter()
        .filter(|p| m.structure.preserves_lines(p))
        .collect();
    let elements = search::permutation_closure(&gens, budget)?;
    let generators = search::greedy_generators(&elements);
    Ok(HexAutomorphisms {
        elements,
        generators,
    })
}

fn mask(points: &[usize]) -> u64 {
    points.iter().fold(0, |acc, &p| acc | 1 << p)
}

/// Number of distinct images of a point set under the group.
pub fn orbit_size(points: &[usize], group: &HexAutomorphisms, exec: Execution) -> usize {
    let images: BTreeSet<u64> = exec
        .map(&group.elements, |p| {
            let img: Vec<usize> = points.iter().map(|&x| p[x]).collect();
            mask(&img)
        })
        .into_iter()
        .collect();
    images.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CopyCounts {
    pub heawood: usize,
    pub coxeter: usize,
    pub group_order: usize,
}

/// Images of the canonical Heawood (h, i) and Coxeter (anti-flag) point sets.
pub fn count_subgeometry_copies(
    m: &HexagonModel,
    group: &HexAutomorphisms,
    exec: Execution,
) -> CopyCounts {
    CopyCounts {
        heawood: orbit_size(&m.fano_points(), group, exec),
        coxeter: orbit_size(&m.antiflag_points(), group, exec),
        group_order: group.order(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OvoidReport {
    pub size: usize,
    pub expected_size: usize,
    pub covers_each_line_once: bool,
    pub exact_cover_count: usize,
}

/// Whether `points` meets every line exactly once.
pub fn is_distance2_ovoid(m: &HexagonModel, points: &[usize]) -> bool {
    let set: BTreeSet<usize> = points.iter().copied().collect();
    m.lines
        .iter()
        .all(|l| l.points.iter().filter(|p| set.contains(p)).count() == 1)
}

/// All distance-2-ovoids, found as exact covers of the lines by point stars.
pub fn all_distance2_ovoids(m: &HexagonModel) -> Vec<Vec<usize>> {
    let mut dlx = ExactCover::new(63);
    for p in 0..63 {
        dlx.add_row(&m.lines_through(p));
    }
    dlx.all_solutions()
}

pub fn distance2_ovoid(m: &HexagonModel) -> OvoidReport {
    let (s, t) = (2usize, 2usize);
    let flags = m.flag_points();
    OvoidReport {
        size: flags.len(),
        expected_size: s * s * t * t + s * t + 1,
        covers_each_line_once: is_distance2_ovoid(m, &flags),
        exact_cover_count: all_distance2_ovoids(m).len(),
    }
}

/// A point of PG(5,2), the six bits `(a | b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PG52Point {
    pub coords: u8,
}

impl PG52Point {
    pub fn from_operator(p: &SignedPauliOp) -> Self {
        Self {
            coords: (p.a() << 3) | p.b(),
        }
    }

    /// `a1 b1 + a2 b2 + a3 b3` over GF(2).
    pub fn quadric(&self) -> u8 {
        let (a, b) = (self.coords >> 3, self.coords & 7);
        ((a & b).count_ones() % 2) as u8
    }

    pub fn coordinates(&self) -> [u8; 6] {
        std::array::from_fn(|i| (self.coords >> (5 - i)) & 1)
    }
}

impl fmt::Display for PG52Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coordinates();
        write!(f, "({}{}{}|{}{}{})", c[0], c[1], c[2], c[3], c[4], c[5])
    }
}

pub fn klein_quadric_embedding(m: &HexagonModel) -> Vec<(SignedPauliOp, PG52Point)> {
    m.operators
        .iter()
        .map(|p| (*p, PG52Point::from_operator(p)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KleinReport {
    pub distinct_points: usize,
    pub on_quadric: usize,
    pub quadric_is_symmetric_locus: bool,
    pub collinear_lines: usize,
}

pub fn certify_klein_quadric(m: &HexagonModel) -> KleinReport {
    let emb = klein_quadric_embedding(m);
    let distinct: BTreeSet<PG52Point> = emb.iter().map(|(_, x)| *x).collect();
    let on_quadric = emb.iter().filter(|(_, x)| x.quadric() == 0).count();
    let sym = emb
        .iter()
        .all(|(p, x)| (x.quadric() == 0) == p.is_symmetric());
    let collinear = m
        .lines
        .iter()
        .filter(|l| l.points.iter().fold(0u8, |acc, &p| acc ^ emb[p].1.coords) == 0)
        .count();
    KleinReport {
        distinct_points: distinct.len(),
        on_quadric,
        quadric_is_symmetric_locus: sym,
        collinear_lines: collinear,
    }
}

/// H2-lines with two points of the same letter, i.e. the same rotation orbit.
pub fn same_orbit_h2_lines(m: &HexagonModel) -> Vec<usize> {
    (0..63)
        .filter(|&l| {
            let line = &m.lines[l];
            let letters: BTreeSet<char> = line
                .points
                .iter()
                .map(|&p| HexLabel::from_ordinal(p).letter)
                .collect();
            !line.is_h1() && letters.len() < 3
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StuQuadruple {
    pub labels: [HexLabel; 4],
    pub operators: [SignedPauliOp; 4],
    /// Coxeter-graph distances of the six pairs.
    pub distances: [usize; 6],
}

/// Pairwise distances of each four-point support inside the Coxeter component.
pub fn stu_quadruples(
    coxeter: &Component,
    m: &HexagonModel,
    supports: &[[HexLabel; 4]],
) -> Vec<StuQuadruple> {
    let dist = coxeter.graph.distance_matrix();
    let local = |l: &HexLabel| coxeter.points.iter().position(|&p| p == l.ordinal());
    supports
        .iter()
        .map(|labels| {
            let v: Vec<Option<usize>> = labels.iter().map(local).collect();
            let mut distances = [usize::MAX; 6];
            let mut n = 0;
            for i in 0..4 {
                for j in i + 1..4 {
                    if let (Some(a), Some(b)) = (v[i], v[j]) {
                        distances[n] = dist[a][b];
                    }
                    n += 1;
                }
            }
            StuQuadruple {
                labels: *labels,
                operators: labels.map(|l| m.operator(l)),
                distances,
            }
        })
        .collect()
}

/// Expands compact cycle notation over labels. `letters` is a product of
/// cycles of letters, `indices` a permutation of `1..7`; a letter cycle of
/// length `m` combined with an index cycle of the same length `m` gives the
/// `m` cycles `(r_i s_j t_k)(s_i t_j r_k)(t_i r_j s_k)`, a single letter
/// follows the index cycle, and a fixed index keeps the letter cycle.
pub fn expand_compound(letters: &str, indices: &str) -> Result<BTreeMap<String, String>> {
    let bad = || Error::Permutation(format!("{letters}_{indices}"));
    let parse = |s: &str| -> Result<Vec<Vec<char>>> {
        s.split(')')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .strip_prefix('(')
                    .map(|b| b.chars().collect())
                    .ok_or_else(bad)
            })
            .collect()
    };
    let lc = parse(letters)?;
    let ic = parse(indices)?;
    let mut map = BTreeMap::new();
    for l in &lc {
        for i in &ic {
            let (m, n) = (l.len(), i.len());
            let cycles: Vec<Vec<String>> = if m == 1 || n == 1 {
                let len = m.max(n);
                vec![(0..len)
                    .map(|p| format!("{}{}", l[p % m], i[p % n]))
                    .collect()]
            } else if m == n {
                (0..m)
                    .map(|d| {
                        (0..m)
                            .map(|p| format!("{}{}", l[(d + p) % m], i[p]))
                            .collect()
                    })
                    .collect()
            } else {
                return Err(bad());
            };
            for c in cycles {
                for p in 0..c.len() {
                    if map
                        .insert(c[p].clone(), c[(p + 1) % c.len()].clone())
                        .is_some()
                    {
                        return Err(bad());
                    }
                }
            }
        }
    }
    Ok(map)
}

/// Parses plain cycles of two-character labels, e.g. `(a1b1)(d1)`.
pub fn parse_label_cycles(s: &str) -> Result<BTreeMap<String, String>> {
    let bad = || Error::Permutation(s.to_string());
    let mut map = BTreeMap::new();
    for t in s.split(')').filter(|t| !t.trim().is_empty()) {
        let body: Vec<char> = t
            .trim()
            .strip_prefix('(')
            .ok_or_else(bad)?
            .chars()
            .collect();
        if body.is_empty() || !body.len().is_multiple_of(2) {
            return Err(bad());
        }
        let labels: Vec<String> = body.chunks(2).map(|c| c.iter().collect()).collect();
        for p in 0..labels.len() {
            if map
                .insert(labels[p].clone(), labels[(p + 1) % labels.len()].clone())
                .is_some()
            {
                return Err(bad());
            }
        }
    }
    Ok(map)
}

/// `label -> image label` for a point permutation.
pub fn point_label_map(perm: &[usize]) -> BTreeMap<String, String> {
    (0..63)
        .map(|n| {
            (
                HexLabel::from_ordinal(n).to_string(),
                HexLabel::from_ordinal(perm[n]).to_string(),
            )
        })
        .collect()
}

/// `line name -> image line name` for a line permutation.
pub fn line_label_map(m: &HexagonModel, perm: &[usize]) -> BTreeMap<String, String> {
    (0..63)
        .map(|l| (m.lines[l].name(), m.lines[perm[l]].name()))
        .collect()
}

pub fn hexagon_dot(m: &HexagonModel) -> String {
    let labels: Vec<String> = (0..63)
        .map(|n| format!("{} {}", HexLabel::from_ordinal(n), m.operators[n]))
        .collect();
    m.collinearity_graph()
        .to_dot("hexagon", &labels, Some(&m.letter_classes()))
}

pub fn component_dot(name: &str, c: &Component, m: &HexagonModel) -> String {
    let labels: Vec<String> = c
        .points
        .iter()
        .map(|&n| format!("{} {}", HexLabel::from_ordinal(n), m.operators[n]))
        .collect();
    let classes: Vec<usize> = c.points.iter().map(|&n| n / 7).collect();
    c.graph.to_dot(name, &labels, Some(&classes))
}

/// Labels of the operator sets `P` and `L` as stored in the model.
pub fn check_margins(m: &HexagonModel, lab: &OperatorLabelling) -> bool {
    (1..=7).all(|k| {
        m.operator(HexLabel::new('h', k)) == lab.point_ops[k as usize - 1]
            && m.operator(HexLabel::new('i', k)) == lab.line_ops[k as usize - 1]
    })
}
