//! Simple undirected graphs with the handful of invariants the geometry
//! checks need: BFS distances, girth, diameter, components and the integer
//! characteristic polynomial.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `u - v` unless already present. Self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v || self.adj[u].contains(&v) {
            return;
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.adj[u].sort_unstable();
        self.adj[v].sort_unstable();
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|ns| ns.len() == d).then_some(d)
    }

    /// BFS distances from `src`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|v| self.distances_from(v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    /// Largest finite distance, or `None` for a disconnected graph.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.order() {
            for d in self.distances_from(v) {
                if d == usize::MAX {
                    return None;
                }
                best = best.max(d);
            }
        }
        Some(best)
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.order();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.order()];
        for s in 0..self.order() {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for s in 0..self.order() {
            if seen[s] {
                continue;
            }
            let comp: Vec<usize> = self
                .distances_from(s)
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != usize::MAX)
                .map(|(v, _)| v)
                .collect();
            for &v in &comp {
                seen[v] = true;
            }
            out.push(comp);
        }
        out
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if i < j && self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Applies a vertex permutation and checks the edge set is preserved.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        perm.len() == self.order() && self.edges().all(|(u, v)| self.has_edge(perm[u], perm[v]))
    }

    /// Coefficients of `det(xI - A)`, constant term first, by Faddeev-LeVerrier.
    pub fn characteristic_polynomial(&self) -> Vec<BigInt> {
        let n = self.order();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = vec![vec![BigInt::zero(); n]; n];
            for r in 0..n {
                for &j in &self.adj[r] {
                    for c in 0..n {
                        if !m[j][c].is_zero() {
                            next[r][c] += &m[j][c];
                        }
                    }
                }
                next[r][r] += &coeffs[n - k + 1];
            }
            m = next;
            // c_{n-k} = -tr(A M_k) / k
            let mut tr = BigInt::zero();
            for r in 0..n {
                for &j in &self.adj[r] {
                    tr += &m[j][r];
                }
            }
            coeffs[n - k] = -tr / BigInt::from(k);
        }
        coeffs
    }

    /// Graphviz rendering. `labels[v]` names vertex `v`; `classes[v]` is an
    /// optional colour class written as `group` and mapped onto a palette.
    pub fn to_dot(&self, name: &str, labels: &[String], classes: Option<&[usize]>) -> String {
        const PALETTE: [&str; 9] = [
            "gold",
            "sienna",
            "pink",
            "orange",
            "red",
            "black",
            "green",
            "lightblue",
            "darkblue",
        ];
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{name}\" {{");
        for v in 0..self.order() {
            match classes {
                Some(cls) => {
                    let _ = writeln!(
                        out,
                        "  {v} [label=\"{}\", group={}, color=\"{}\"];",
                        labels[v],
                        cls[v],
                        PALETTE[cls[v] % PALETTE.len()]
                    );
                }
                None => {
                    let _ = writeln!(out, "  {v} [label=\"{}\"];", labels[v]);
                }
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// Incidence graph of the Fano plane built from the difference set `{0, 1, 3}` mod 7.
/// Points are vertices `0..7`, lines `7..14`.
pub fn heawood_reference() -> Graph {
    let mut g = Graph::new(14);
    for line in 0..7 {
        for d in [0, 1, 3] {
            g.add_edge((line + d) % 7, 7 + line);
        }
    }
    g
}

/// The 28 triangles (non-collinear triples) of the Fano plane, adjacent when disjoint.
pub fn coxeter_reference() -> Graph {
    let lines: BTreeSet<[usize; 3]> = (0..7)
        .map(|k| {
            let mut t = [k, (k + 1) % 7, (k + 3) % 7];
            t.sort_unstable();
            t
        })
        .collect();
    let mut triangles = Vec::new();
    for a in 0..7 {
        for b in a + 1..7 {
            for c in b + 1..7 {
                if !lines.contains(&[a, b, c]) {
                    triangles.push([a, b, c]);
                }
            }
        }
    }
    let mut g = Graph::new(triangles.len());
    for i in 0..triangles.len() {
        for j in i + 1..triangles.len() {
            if triangles[i].iter().all(|p| !triangles[j].contains(p)) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn poly_pow(p: &[i64], k: usize) -> Vec<i64> {
        (0..k).fold(vec![1], |acc, _| poly_mul(&acc, p))
    }

    fn as_big(p: Vec<i64>) -> Vec<BigInt> {
        p.into_iter().map(BigInt::from).collect()
    }

    #[test]
    fn cycle_invariants() {
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6)));
        assert_eq!(c6.girth(), Some(6));
        assert_eq!(c6.diameter(), Some(3));
        assert!(c6.is_bipartite());
        assert_eq!(c6.regular_degree(), Some(2));
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(path.girth(), None);
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]);
        assert_eq!(split.diameter(), None);
        assert_eq!(split.components(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn heawood_reference_invariants() {
        let h = heawood_reference();
        assert_eq!((h.order(), h.size()), (14, 21));
        assert_eq!(h.regular_degree(), Some(3));
        assert_eq!(h.girth(), Some(6));
        assert_eq!(h.diameter(), Some(3));
        assert!(h.is_bipartite());
        // spectrum +-3, +-sqrt2 (x6 each)
        let expected = poly_mul(&poly_mul(&[-3, 1], &[3, 1]), &poly_pow(&[-2, 0, 1], 6));
        assert_eq!(h.characteristic_polynomial(), as_big(expected));
    }

    #[test]
    fn coxeter_reference_invariants() {
        let c = coxeter_reference();
        assert_eq!((c.order(), c.size()), (28, 42));
        assert_eq!(c.regular_degree(), Some(3));
        assert_eq!(c.girth(), Some(7));
        assert_eq!(c.diameter(), Some(4));
        assert!(!c.is_bipartite());
        // spectrum 3, 2^8, (-1)^7, (-1 +- sqrt2)^6
        let mut expected = poly_mul(&[-3, 1], &poly_pow(&[-2, 1], 8));
        expected = poly_mul(&expected, &poly_pow(&[1, 1], 7));
        expected = poly_mul(&expected, &poly_pow(&[-1, 2, 1], 6));
        assert_eq!(c.characteristic_polynomial(), as_big(expected));
    }

    #[test]
    fn dot_lists_every_edge() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let dot = g.to_dot("p3", &labels, Some(&[0, 1, 0]));
        assert_eq!(dot.matches(" -- ").count(), 2);
        assert!(dot.contains("label=\"b\""));
        assert!(dot.starts_with("graph \"p3\" {"));
    }
}
