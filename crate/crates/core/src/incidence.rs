//! Finite point-line incidence structures.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::graph::Graph;
use crate::par::Execution;
use crate::search;

/// Points are `0..points`; each line is a sorted list of point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    points: usize,
    lines: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    pub fn new(points: usize, lines: Vec<Vec<usize>>) -> Self {
        let lines = lines
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l
            })
            .collect();
        Self { points, lines }
    }

    pub fn num_points(&self) -> usize {
        self.points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line(&self, l: usize) -> &[usize] {
        &self.lines[l]
    }

    pub fn is_incident(&self, point: usize, line: usize) -> bool {
        self.lines[line].binary_search(&point).is_ok()
    }

    pub fn lines_through(&self, point: usize) -> Vec<usize> {
        (0..self.lines.len())
            .filter(|&l| self.is_incident(point, l))
            .collect()
    }

    /// Points and lines swap roles; point `l` of the dual is line `l` here.
    pub fn dual(&self) -> Self {
        let lines = (0..self.points).map(|p| self.lines_through(p)).collect();
        Self::new(self.lines.len(), lines)
    }

    /// `Some((s + 1, t + 1))` when every line has `s + 1` points and every point lies on `t + 1` lines.
    pub fn order(&self) -> Option<(usize, usize)> {
        let k = self.lines.first()?.len();
        if self.lines.iter().any(|l| l.len() != k) {
            return None;
        }
        let r = self.lines_through(0).len();
        (0..self.points)
            .all(|p| self.lines_through(p).len() == r)
            .then_some((k, r))
    }

    /// Bipartite incidence graph: points `0..P`, lines `P..P+L`.
    pub fn incidence_graph(&self) -> Graph {
        let mut g = Graph::new(self.points + self.lines.len());
        for (l, pts) in self.lines.iter().enumerate() {
            for &p in pts {
                g.add_edge(p, self.points + l);
            }
        }
        g
    }

    /// Points adjacent when they share a line.
    pub fn collinearity_graph(&self) -> Graph {
        let mut g = Graph::new(self.points);
        for l in &self.lines {
            for (i, &p) in l.iter().enumerate() {
                for &q in &l[i + 1..] {
                    g.add_edge(p, q);
                }
            }
        }
        g
    }

    /// Whether the point permutation sends every line onto a line.
    pub fn preserves_lines(&self, perm: &[usize]) -> bool {
        let set: BTreeSet<Vec<usize>> = self.lines.iter().cloned().collect();
        self.lines.iter().all(|l| {
            let mut img: Vec<usize> = l.iter().map(|&p| perm[p]).collect();
            img.sort_unstable();
            set.contains(&img)
        })
    }

    /// Index of the line whose point set is `pts`, if any.
    pub fn find_line(&self, pts: &[usize]) -> Option<usize> {
        let mut key = pts.to_vec();
        key.sort_unstable();
        self.lines.iter().position(|l| *l == key)
    }

    /// Line permutation induced by a line-preserving point permutation.
    pub fn induced_line_permutation(&self, perm: &[usize]) -> Option<Vec<usize>> {
        self.lines
            .iter()
            .map(|l| {
                let img: Vec<usize> = l.iter().map(|&p| perm[p]).collect();
                self.find_line(&img)
            })
            .collect()
    }

    /// Point permutations preserving the incidence, found on the two-coloured incidence graph.
    pub fn automorphisms(&self, budget: usize, exec: Execution) -> Result<Vec<Vec<usize>>> {
        let g = self.incidence_graph();
        let colours: Vec<u32> = (0..g.order()).map(|v| (v >= self.points) as u32).collect();
        let auts = search::automorphisms(&g, Some(&colours), budget, exec)?;
        Ok(auts
            .into_iter()
            .map(|p| p[..self.points].to_vec())
            .collect())
    }
}
