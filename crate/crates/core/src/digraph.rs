//! Auxiliary digraphs over a b-matching and their strongly connected
//! components.
//!
//! Vertex and arc indices are stored as `u32` to halve the memory traffic of
//! the linear-time passes; graphs are limited to fewer than 2^32 vertices
//! and arcs.

use crate::graph::{BipartiteGraph, Side, VertexId, VertexSet};
use crate::matching::Matching;

fn narrow(x: usize) -> u32 {
    u32::try_from(x).expect("digraph exceeds 2^32 vertices or arcs")
}

/// Directed graph on the vertex ids of a source graph, stored as CSR.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxDigraph {
    start: Vec<u32>,
    targets: Vec<u32>,
}

impl AuxDigraph {
    /// `aux(G[R]; W1, W2; M ∩ E[R])` where `W1 = R ∩ tail_side` and `W2` is
    /// the rest of `R` (`R = restrict`, all of V when `None`).
    ///
    /// An unmatched edge `uv` with `u ∈ W1` yields the arc `u -> v`; a matched
    /// one yields `v -> u`.
    pub fn build(
        g: &BipartiteGraph,
        tail_side: Side,
        m: &Matching,
        restrict: Option<&VertexSet>,
    ) -> Self {
        let inside = |v: VertexId| restrict.is_none_or(|r| r.contains(v));
        let arcs = g.edges().iter().enumerate().filter_map(|(e, &(a, b))| {
            if !(inside(a) && inside(b)) {
                return None;
            }
            let (u, v) = match tail_side {
                Side::A => (a, b),
                Side::B => (b, a),
            };
            Some(if m.contains(e) { (v, u) } else { (u, v) })
        });
        Self::from_arc_iter(g.vertex_count(), arcs)
    }

    pub fn from_arcs(n: usize, arcs: &[(VertexId, VertexId)]) -> Self {
        Self::from_arc_iter(n, arcs.iter().copied())
    }

    /// Two passes over `arcs`: count out-degrees, then place targets.
    fn from_arc_iter<I>(n: usize, arcs: I) -> Self
    where
        I: Iterator<Item = (VertexId, VertexId)> + Clone,
    {
        narrow(n);
        let mut start = vec![0u32; n + 1];
        for (u, _) in arcs.clone() {
            start[u + 1] += 1;
        }
        for v in 0..n {
            start[v + 1] += start[v];
        }
        let mut fill = start.clone();
        let mut targets = vec![0u32; start[n] as usize];
        for (u, v) in arcs {
            targets[fill[u] as usize] = v as u32;
            fill[u] += 1;
        }
        AuxDigraph { start, targets }
    }

    /// The same vertices with every arc flipped.
    pub fn reversed(&self) -> Self {
        let n = self.vertex_count();
        Self::from_arc_iter(
            n,
            (0..n).flat_map(move |u| self.successors(u).map(move |v| (v, u))),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.start.len() - 1
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    fn targets_of(&self, v: usize) -> &[u32] {
        &self.targets[self.start[v] as usize..self.start[v + 1] as usize]
    }

    #[inline]
    pub fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + Clone + '_ {
        self.targets_of(v).iter().map(|&t| t as VertexId)
    }

    /// Arcs grouped by tail, tails ascending.
    pub fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.vertex_count())
            .flat_map(|u| self.successors(u).map(move |v| (u, v)))
            .collect()
    }

    /// Every vertex reachable from `sources` (sources included).
    pub fn reachable_from(&self, sources: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::empty(self.vertex_count());
        let mut queue: Vec<u32> = sources.iter().map(|v| v as u32).collect();
        for &v in &queue {
            seen.insert(v as usize);
        }
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            for &v in self.targets_of(u) {
                if seen.insert(v as usize) {
                    queue.push(v);
                }
            }
        }
        seen
    }
}

/// Strongly connected components plus the deduplicated condensation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    /// Component of each vertex, or [`Condensation::EXCLUDED`] for vertices
    /// left out of the search.
    pub comp_of: Vec<usize>,
    pub count: usize,
    /// Arcs between distinct components, sorted and deduplicated.
    pub arcs: Vec<(usize, usize)>,
}

impl Condensation {
    pub const EXCLUDED: usize = usize::MAX;

    /// Member lists, ascending, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.comp_of.iter().enumerate() {
            if c != Self::EXCLUDED {
                out[c].push(v);
            }
        }
        out
    }
}

const UNSET: u32 = u32::MAX;

/// Tarjan's algorithm with an explicit call stack. Components are numbered
/// by their smallest vertex.
pub fn strongly_connected_components(d: &AuxDigraph) -> Condensation {
    strongly_connected_components_within(d, None)
}

/// [`strongly_connected_components`] of the subdigraph induced by `keep`.
pub fn strongly_connected_components_within(
    d: &AuxDigraph,
    keep: Option<&VertexSet>,
) -> Condensation {
    let n = d.vertex_count();
    let kept = |v: usize| keep.is_none_or(|k| k.contains(v));
    let mut index = vec![UNSET; n];
    let mut low = vec![0u32; n];
    // Raw component id; a visited vertex with no id yet is on the stack.
    let mut raw_comp = vec![UNSET; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut raw_count = 0u32;
    let mut counter = 0u32;
    // (vertex, position of the next arc to scan)
    let mut calls: Vec<(u32, u32)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSET || !kept(root) {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root as u32);
        calls.push((root as u32, d.start[root]));
        while let Some(frame) = calls.last_mut() {
            let v = frame.0 as usize;
            if frame.1 < d.start[v + 1] {
                let w = d.targets[frame.1 as usize] as usize;
                frame.1 += 1;
                if !kept(w) {
                    continue;
                }
                if index[w] == UNSET {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w as u32);
                    calls.push((w as u32, d.start[w]));
                } else if raw_comp[w] == UNSET {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow") as usize;
                    raw_comp[w] = raw_count;
                    if w == v {
                        break;
                    }
                }
                raw_count += 1;
            }
            if let Some(&(parent, _)) = calls.last() {
                let parent = parent as usize;
                low[parent] = low[parent].min(low[v]);
            }
        }
    }

    let mut renumber = vec![UNSET; raw_count as usize];
    let mut count = 0usize;
    let mut comp_of = vec![Condensation::EXCLUDED; n];
    for v in 0..n {
        let raw = raw_comp[v];
        if raw == UNSET {
            continue;
        }
        if renumber[raw as usize] == UNSET {
            renumber[raw as usize] = count as u32;
            count += 1;
        }
        comp_of[v] = renumber[raw as usize] as usize;
    }

    let arcs: Vec<(usize, usize)> = (0..n)
        .filter(|&u| comp_of[u] != Condensation::EXCLUDED)
        .flat_map(|u| d.successors(u).map(move |v| (u, v)))
        .map(|(u, v)| (comp_of[u], comp_of[v]))
        .filter(|&(x, y)| y != Condensation::EXCLUDED && x != y)
        .collect();
    let arcs = sorted_unique_arcs(count, arcs);
    Condensation {
        comp_of,
        count,
        arcs,
    }
}

/// Sorts arcs over nodes `0..k` lexicographically and drops repeats, in
/// O(k + arcs) with two counting-sort passes.
pub(crate) fn sorted_unique_arcs(k: usize, arcs: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    let by_head = counting_sort(k, arcs, |&(_, y)| y);
    let mut sorted = counting_sort(k, by_head, |&(x, _)| x);
    sorted.dedup();
    sorted
}

fn counting_sort(
    k: usize,
    arcs: Vec<(usize, usize)>,
    key: impl Fn(&(usize, usize)) -> usize,
) -> Vec<(usize, usize)> {
    let mut start = vec![0usize; k + 1];
    for arc in &arcs {
        start[key(arc) + 1] += 1;
    }
    for i in 0..k {
        start[i + 1] += start[i];
    }
    let mut out = vec![(0, 0); arcs.len()];
    for arc in arcs {
        let slot = &mut start[key(&arc)];
        out[*slot] = arc;
        *slot += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aux_on_path() {
        // P3, M = {a1b1}: arcs b1 -> a1 and a2 -> b1.
        let g = BipartiteGraph::with_uniform_caps(2, 1, &[(0, 0), (1, 0)], 1).unwrap();
        let m = Matching::from_edges(&g, &[0]).unwrap();
        let d = AuxDigraph::build(&g, Side::A, &m, None);
        let mut arcs = d.arcs();
        arcs.sort();
        assert_eq!(arcs, vec![(1, 2), (2, 0)]);
    }

    #[test]
    fn aux_without_edges() {
        let g = BipartiteGraph::with_uniform_caps(2, 2, &[], 1).unwrap();
        let d = AuxDigraph::build(&g, Side::A, &Matching::empty(&g), None);
        assert_eq!(d.arc_count(), 0);
    }

    #[test]
    fn aux_on_c4_reversed_roles() {
        // ids: a1=0 a2=1 b1=2 b2=3; M = {a1b1, a2b2}.
        let g =
            BipartiteGraph::with_uniform_caps(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)], 1).unwrap();
        let m = Matching::from_edges(&g, &[0, 3]).unwrap();
        let d = AuxDigraph::build(&g, Side::B, &m, None);
        let mut arcs = d.arcs();
        arcs.sort();
        assert_eq!(arcs, vec![(0, 2), (1, 3), (2, 1), (3, 0)]);
        let c = strongly_connected_components(&d);
        assert_eq!(c.components(), vec![vec![0, 1, 2, 3]]);
        assert!(c.arcs.is_empty());
    }

    #[test]
    fn aux_respects_restriction() {
        let g = BipartiteGraph::with_uniform_caps(2, 1, &[(0, 0), (1, 0)], 1).unwrap();
        let m = Matching::from_edges(&g, &[0]).unwrap();
        let r = VertexSet::from_vertices(3, [1, 2]);
        let d = AuxDigraph::build(&g, Side::A, &m, Some(&r));
        assert_eq!(d.arcs(), vec![(1, 2)]);
    }

    #[test]
    fn scc_chain() {
        // a2 -> b2 -> a1 -> b1 with ids a1=0 a2=1 b1=2 b2=3.
        let d = AuxDigraph::from_arcs(4, &[(1, 3), (3, 0), (0, 2)]);
        let c = strongly_connected_components(&d);
        assert_eq!(c.components(), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(c.arcs, vec![(0, 2), (1, 3), (3, 0)]);
    }

    #[test]
    fn scc_empty_digraph() {
        let c = strongly_connected_components(&AuxDigraph::from_arcs(3, &[]));
        assert_eq!(c.count, 3);
        assert!(c.arcs.is_empty());
    }

    #[test]
    fn scc_condensation_dedups() {
        // {0,1} cycle with two parallel exits into {2,3} cycle.
        let d = AuxDigraph::from_arcs(4, &[(0, 1), (1, 0), (0, 2), (1, 3), (2, 3), (3, 2)]);
        let c = strongly_connected_components(&d);
        assert_eq!(c.components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(c.arcs, vec![(0, 1)]);
    }

    #[test]
    fn scc_deep_path_does_not_overflow() {
        let n = 200_000;
        let arcs: Vec<_> = (0..n - 1).map(|v| (v, v + 1)).collect();
        let c = strongly_connected_components(&AuxDigraph::from_arcs(n, &arcs));
        assert_eq!(c.count, n);
    }

    #[test]
    fn scc_within_subset() {
        // 0 <-> 1 <-> 2 cycle through 1; dropping 1 splits it.
        let d = AuxDigraph::from_arcs(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2)]);
        assert_eq!(strongly_connected_components(&d).count, 1);
        let keep = VertexSet::from_vertices(3, [0, 2]);
        let c = strongly_connected_components_within(&d, Some(&keep));
        assert_eq!(c.comp_of, vec![0, Condensation::EXCLUDED, 1]);
        assert_eq!(c.arcs, vec![(0, 1)]);
    }

    #[test]
    fn reversal_flips_arcs() {
        let d = AuxDigraph::from_arcs(3, &[(0, 1), (0, 2), (2, 1)]);
        let mut arcs = d.reversed().arcs();
        arcs.sort();
        assert_eq!(arcs, vec![(1, 0), (1, 2), (2, 0)]);
        assert_eq!(d.reversed().reversed().arcs(), d.arcs());
    }

    #[test]
    fn reachability() {
        let d = AuxDigraph::from_arcs(4, &[(0, 1), (1, 2)]);
        let r = d.reachable_from(&VertexSet::from_vertices(4, [0]));
        assert_eq!(r.to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn sorted_unique_matches_sort() {
        let arcs = vec![(3, 1), (0, 2), (3, 1), (1, 0), (0, 1), (3, 0), (0, 2)];
        let mut expected = arcs.clone();
        expected.sort_unstable();
        expected.dedup();
        assert_eq!(sorted_unique_arcs(4, arcs), expected);
        assert!(sorted_unique_arcs(0, Vec::new()).is_empty());
    }
}
