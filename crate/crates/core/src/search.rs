//! Isomorphism and automorphism search by individualization and refinement.
//!
//! Two graphs are refined jointly: at every round each vertex gets the
//! signature (colour, sorted multiset of neighbour colours), and the union of
//! signatures from both sides is sorted to assign new colours. Any mismatch
//! in colour-class sizes prunes the branch. Individualization always targets
//! the first non-singleton cell of the left side, so all leaves share one left
//! path and each automorphism is reached exactly once.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::Execution;

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

type Colouring = Vec<u32>;

fn histogram(c: &Colouring, classes: usize) -> Vec<usize> {
    let mut h = vec![0; classes];
    for &x in c {
        h[x as usize] += 1;
    }
    h
}

/// Refines both colourings to the coarsest common equitable partition.
/// Returns `false` when the two sides become incompatible.
fn refine(g: &Graph, h: &Graph, cg: &mut Colouring, ch: &mut Colouring) -> bool {
    let mut classes = 1 + cg.iter().chain(ch.iter()).copied().max().unwrap_or(0) as usize;
    if histogram(cg, classes) != histogram(ch, classes) {
        return false;
    }
    loop {
        let sig = |graph: &Graph, col: &Colouring, v: usize| {
            let mut ns: Vec<u32> = graph.neighbors(v).iter().map(|&u| col[u]).collect();
            ns.sort_unstable();
            (col[v], ns)
        };
        let sg: Vec<_> = (0..g.order()).map(|v| sig(g, cg, v)).collect();
        let sh: Vec<_> = (0..h.order()).map(|v| sig(h, ch, v)).collect();
        let mut all: Vec<&(u32, Vec<u32>)> = sg.iter().chain(sh.iter()).collect();
        all.sort();
        all.dedup();
        let id = |s: &(u32, Vec<u32>)| all.binary_search(&s).expect("signature present") as u32;
        let ng: Colouring = sg.iter().map(id).collect();
        let nh: Colouring = sh.iter().map(id).collect();
        let new_classes = all.len();
        if histogram(&ng, new_classes) != histogram(&nh, new_classes) {
            return false;
        }
        *cg = ng;
        *ch = nh;
        if new_classes == classes {
            return true;
        }
        classes = new_classes;
    }
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    nodes: &'a AtomicUsize,
    budget: usize,
}

impl Search<'_> {
    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            Err(Error::NodeBudget(self.budget))
        } else {
            Ok(())
        }
    }

    /// Left vertex and right candidates of the target cell, or `None` at a leaf.
    fn target(cg: &Colouring, ch: &Colouring) -> Option<(usize, Vec<usize>)> {
        let classes = 1 + *cg.iter().max()? as usize;
        let hist = histogram(cg, classes);
        let cell = hist.iter().position(|&n| n > 1)? as u32;
        let v = cg.iter().position(|&c| c == cell)?;
        let ws = (0..ch.len()).filter(|&w| ch[w] == cell).collect();
        Some((v, ws))
    }

    fn individualize(c: &Colouring, v: usize) -> Colouring {
        let fresh = 1 + *c.iter().max().unwrap_or(&0);
        let mut out = c.clone();
        out[v] = fresh;
        out
    }

    fn leaf(&self, cg: &Colouring, ch: &Colouring) -> Option<Vec<usize>> {
        let mut by_colour = vec![usize::MAX; ch.len()];
        for (w, &c) in ch.iter().enumerate() {
            by_colour[c as usize] = w;
        }
        let map: Vec<usize> = cg.iter().map(|&c| by_colour[c as usize]).collect();
        let ok = self.g.size() == self.h.size()
            && self.g.edges().all(|(u, v)| self.h.has_edge(map[u], map[v]));
        ok.then_some(map)
    }

    fn run(
        &self,
        mut cg: Colouring,
        mut ch: Colouring,
        out: &mut Vec<Vec<usize>>,
        first_only: bool,
    ) -> Result<()> {
        self.tick()?;
        if !refine(self.g, self.h, &mut cg, &mut ch) {
            return Ok(());
        }
        match Self::target(&cg, &ch) {
            None => {
                if let Some(map) = self.leaf(&cg, &ch) {
                    out.push(map);
                }
            }
            Some((v, ws)) => {
                let left = Self::individualize(&cg, v);
                for w in ws {
                    self.run(left.clone(), Self::individualize(&ch, w), out, first_only)?;
                    if first_only && !out.is_empty() {
                        break;
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_colours(g: &Graph, colours: Option<&[u32]>) -> Colouring {
    match colours {
        Some(c) => {
            assert_eq!(c.len(), g.order(), "one colour per vertex");
            c.to_vec()
        }
        None => vec![0; g.order()],
    }
}

/// An isomorphism `g -> h` respecting the optional vertex colours, if any.
pub fn find_isomorphism(
    g: &Graph,
    h: &Graph,
    colours: Option<(&[u32], &[u32])>,
    budget: usize,
) -> Result<Option<Vec<usize>>> {
    if g.order() != h.order() || g.size() != h.size() {
        return Ok(None);
    }
    let nodes = AtomicUsize::new(0);
    let search = Search {
        g,
        h,
        nodes: &nodes,
        budget,
    };
    let (cg, ch) = match colours {
        Some((a, b)) => (check_colours(g, Some(a)), check_colours(h, Some(b))),
        None => (check_colours(g, None), check_colours(h, None)),
    };
    let mut out = Vec::new();
    search.run(cg, ch, &mut out, true)?;
    Ok(out.into_iter().next())
}

/// Every automorphism of `g` preserving the optional colouring, sorted.
pub fn automorphisms(
    g: &Graph,
    colours: Option<&[u32]>,
    budget: usize,
    exec: Execution,
) -> Result<Vec<Vec<usize>>> {
    let nodes = AtomicUsize::new(0);
    let search = Search {
        g,
        h: g,
        nodes: &nodes,
        budget,
    };
    let mut cg = check_colours(g, colours);
    let mut ch = cg.clone();
    search.tick()?;
    if !refine(g, g, &mut cg, &mut ch) {
        return Ok(Vec::new());
    }
    let mut all = match Search::target(&cg, &ch) {
        None => vec![(0..g.order()).collect()],
        Some((v, ws)) => {
            let left = Search::individualize(&cg, v);
            let branches = exec.map(&ws, |&w| {
                let mut out = Vec::new();
                search
                    .run(left.clone(), Search::individualize(&ch, w), &mut out, false)
                    .map(|_| out)
            });
            let mut all = Vec::new();
            for b in branches {
                all.extend(b?);
            }
            all
        }
    };
    all.sort();
    Ok(all)
}

/// Orbit of `v` under the group generated by `gens`.
fn orbit_of(v: usize, gens: &[Vec<usize>]) -> Vec<bool> {
    let n = gens.first().map_or(v + 1, Vec::len);
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for g in gens {
            if !seen[g[x]] {
                seen[g[x]] = true;
                stack.push(g[x]);
            }
        }
    }
    seen
}

/// A strong generating set for the automorphism group.
///
/// The leftmost path of the search tree fixes a base `v_1, v_2, ...`. Walking
/// it bottom-up, for each level and each candidate `w` in the target cell not
/// already in the orbit of `v_i` under the generators found so far, one
/// automorphism fixing `v_1..v_{i-1}` and sending `v_i` to `w` is searched for.
/// The group order is the product of the final orbit lengths.
pub fn automorphism_generators(
    g: &Graph,
    colours: Option<&[u32]>,
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let nodes = AtomicUsize::new(0);
    let search = Search {
        g,
        h: g,
        nodes: &nodes,
        budget,
    };
    let mut cur = check_colours(g, colours);
    let mut twin = cur.clone();
    search.tick()?;
    refine(g, g, &mut cur, &mut twin);
    let mut path = Vec::new();
    while let Some((v, ws)) = Search::target(&cur, &cur) {
        let mut a = Search::individualize(&cur, v);
        let mut b = a.clone();
        search.tick()?;
        refine(g, g, &mut a, &mut b);
        path.push((std::mem::replace(&mut cur, a), v, ws));
    }
    let mut gens: Vec<Vec<usize>> = Vec::new();
    for (col, v, ws) in path.iter().rev() {
        let left = Search::individualize(col, *v);
        let mut orbit = orbit_of(*v, &gens);
        for &w in ws {
            if orbit.get(w).copied().unwrap_or(false) {
                continue;
            }
            let mut out = Vec::new();
            search.run(left.clone(), Search::individualize(col, w), &mut out, true)?;
            if let Some(p) = out.pop() {
                gens.push(p);
                orbit = orbit_of(*v, &gens);
            }
        }
    }
    Ok(gens)
}

/// Closure of a set of permutations under composition.
pub fn permutation_closure(generators: &[Vec<usize>], budget: usize) -> Result<Vec<Vec<usize>>> {
    use std::collections::BTreeSet;
    let n = generators.first().map_or(0, Vec::len);
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                if seen.len() > budget {
                    return Err(Error::ElementBudget(budget));
                }
                frontier.push(q);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// A small generating set of `group` (which must be closed), chosen greedily in order.
pub fn greedy_generators(group: &[Vec<usize>]) -> Vec<Vec<usize>> {
    use std::collections::BTreeSet;
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut span: BTreeSet<Vec<usize>> = BTreeSet::new();
    if let Some(first) = group.first() {
        span.insert((0..first.len()).collect());
    }
    for p in group {
        if span.contains(p) {
            continue;
        }
        gens.push(p.clone());
        span = permutation_closure(&gens, usize::MAX)
            .expect("unbounded")
            .into_iter()
            .collect();
        if span.len() == group.len() {
            break;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{coxeter_reference, heawood_reference};

    fn closure_size(g: &Graph, colours: Option<&[u32]>) -> usize {
        let gens = automorphism_generators(g, colours, DEFAULT_NODE_BUDGET).unwrap();
        if gens.is_empty() {
            return 1;
        }
        permutation_closure(&gens, usize::MAX).unwrap().len()
    }

    #[test]
    fn generators_span_the_full_group() {
        let hw = heawood_reference();
        assert_eq!(closure_size(&hw, None), 336);
        let sides: Vec<u32> = (0..14).map(|v| (v >= 7) as u32).collect();
        assert_eq!(closure_size(&hw, Some(&sides)), 168);
        assert_eq!(closure_size(&coxeter_reference(), None), 336);
        for n in 3..9 {
            assert_eq!(closure_size(&cycle(n), None), 2 * n);
        }
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(closure_size(&path, None), 2);
        let asym = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (6, 5)]);
        assert_eq!(
            closure_size(&asym, None),
            automorphisms(&asym, None, DEFAULT_NODE_BUDGET, Execution::Sequential)
                .unwrap()
                .len()
        );
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    fn brute_force_automorphism_count(g: &Graph) -> usize {
        fn rec(g: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> usize {
            let k = perm.len();
            if k == g.order() {
                return g.is_automorphism(perm) as usize;
            }
            let mut total = 0;
            for w in 0..g.order() {
                if used[w] {
                    continue;
                }
                if (0..k).any(|u| g.has_edge(u, k) != g.has_edge(perm[u], w)) {
                    continue;
                }
                used[w] = true;
                perm.push(w);
                total += rec(g, perm, used);
                perm.pop();
                used[w] = false;
            }
            total
        }
        rec(g, &mut Vec::new(), &mut vec![false; g.order()])
    }

    #[test]
    fn cycle_automorphisms_are_dihedral() {
        for n in 3..9 {
            let auts =
                automorphisms(&cycle(n), None, DEFAULT_NODE_BUDGET, Execution::Sequential).unwrap();
            assert_eq!(auts.len(), 2 * n);
        }
    }

    #[test]
    fn counts_agree_with_brute_force() {
        let petersen = Graph::from_edges(
            10,
            (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]),
        );
        let cube = Graph::from_edges(
            8,
            (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b)))),
        );
        for g in [petersen, cube] {
            let auts = automorphisms(&g, None, DEFAULT_NODE_BUDGET, Execution::default()).unwrap();
            assert_eq!(auts.len(), brute_force_automorphism_count(&g));
            assert!(auts.iter().all(|p| g.is_automorphism(p)));
        }
    }

    #[test]
    fn heawood_and_coxeter_groups() {
        let h = heawood_reference();
        assert_eq!(
            automorphisms(&h, None, DEFAULT_NODE_BUDGET, Execution::default())
                .unwrap()
                .len(),
            336
        );
        let sides: Vec<u32> = (0..14).map(|v| (v >= 7) as u32).collect();
        assert_eq!(
            automorphisms(&h, Some(&sides), DEFAULT_NODE_BUDGET, Execution::default())
                .unwrap()
                .len(),
            168
        );
        let c = coxeter_reference();
        assert_eq!(
            automorphisms(&c, None, DEFAULT_NODE_BUDGET, Execution::default())
                .unwrap()
                .len(),
            336
        );
    }

    #[test]
    fn isomorphism_of_relabelled_graph() {
        let c = coxeter_reference();
        let perm: Vec<usize> = (0..28).map(|i| (i * 5 + 3) % 28).collect();
        let relabelled = Graph::from_edges(28, c.edges().map(|(u, v)| (perm[u], perm[v])));
        let iso = find_isomorphism(&c, &relabelled, None, DEFAULT_NODE_BUDGET)
            .unwrap()
            .expect("isomorphic");
        assert!(c.edges().all(|(u, v)| relabelled.has_edge(iso[u], iso[v])));
        assert_eq!(
            find_isomorphism(&c, &cycle(28), None, DEFAULT_NODE_BUDGET).unwrap(),
            None
        );
    }

    #[test]
    fn budget_is_enforced() {
        let c = coxeter_reference();
        assert_eq!(
            automorphisms(&c, None, 5, Execution::Sequential),
            Err(Error::NodeBudget(5))
        );
    }

    #[test]
    fn closure_and_generators() {
        let rot: Vec<usize> = (0..5).map(|i| (i + 1) % 5).collect();
        let refl: Vec<usize> = (0..5).map(|i| (5 - i) % 5).collect();
        let group = permutation_closure(&[rot, refl], 100).unwrap();
        assert_eq!(group.len(), 10);
        let gens = greedy_generators(&group);
        assert_eq!(permutation_closure(&gens, 100).unwrap(), group);
        assert!(matches!(
            permutation_closure(&group, 3),
            Err(Error::ElementBudget(3))
        ));
    }
}
