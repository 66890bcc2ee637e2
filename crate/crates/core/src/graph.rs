//! Bipartite graphs with a vertex capacity function, plus the small
//! set-algebra used everywhere else: neighborhoods, cuts and induced edge
//! sets.
//!
//! Vertex ids are dense: the `a_count` vertices of color class A come first
//! (`0..a_count`), followed by the B-block. Edge ids follow input order.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Color class of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    fn prefix(self) -> char {
        match self {
            Side::A => 'a',
            Side::B => 'b',
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::A => f.write_str("A"),
            Side::B => f.write_str("B"),
        }
    }
}

/// Membership bitmap over the vertex ids of one graph.
///
/// The derived ordering is lexicographic over the bitmap (vertex 0 first,
/// absent before present), which is the canonical order used for listings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet {
    bits: Vec<bool>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            bits: vec![false; universe],
        }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet {
            bits: vec![true; universe],
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = VertexId>>(universe: usize, vertices: I) -> Self {
        let mut set = VertexSet::empty(universe);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    /// Builds a set from the low `universe` bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        VertexSet {
            bits: (0..universe).map(|v| mask >> v & 1 == 1).collect(),
        }
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        VertexSet { bits }
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn as_bools(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.bits.get(v).copied().unwrap_or(false)
    }

    /// Panics if `v` is outside the universe.
    #[inline]
    pub fn insert(&mut self, v: VertexId) -> bool {
        !std::mem::replace(&mut self.bits[v], true)
    }

    #[inline]
    pub fn remove(&mut self, v: VertexId) -> bool {
        std::mem::replace(&mut self.bits[v], false)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(v, &b)| if b { Some(v) } else { None })
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet {
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |x, y| x || y)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |x, y| x && y)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |x, y| x && !y)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(bool, bool) -> bool) -> VertexSet {
        assert_eq!(
            self.universe(),
            other.universe(),
            "vertex sets over different graphs"
        );
        VertexSet {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&x, &y)| f(x, y))
                .collect(),
        }
    }
}

/// A simple bipartite graph with capacities `b: V -> Z>=0`.
///
/// Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    a_count: usize,
    b_count: usize,
    caps: Vec<u64>,
    /// `(a, b)` in global vertex ids; `a < a_count <= b`.
    edges: Vec<(VertexId, VertexId)>,
    adj_start: Vec<usize>,
    adj_edges: Vec<EdgeId>,
}

impl BipartiteGraph {
    /// Builds a graph from class-local edge coordinates `(a_index, b_index)`.
    ///
    /// `caps` is indexed by global vertex id (A-block first).
    pub fn new(
        a_count: usize,
        b_count: usize,
        edges: &[(usize, usize)],
        caps: &[i64],
    ) -> Result<Self> {
        let n = a_count + b_count;
        if caps.len() != n {
            return Err(Error::CapacityCount {
                expected: n,
                got: caps.len(),
            });
        }
        let mut checked_caps = Vec::with_capacity(n);
        for (v, &cap) in caps.iter().enumerate() {
            if cap < 0 {
                return Err(Error::NegativeCapacity { vertex: v, cap });
            }
            checked_caps.push(cap as u64);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut global = Vec::with_capacity(edges.len());
        for &(ai, bi) in edges {
            if ai >= a_count {
                return Err(Error::IndexOutOfRange {
                    what: "A-vertex",
                    index: ai,
                    limit: a_count,
                });
            }
            if bi >= b_count {
                return Err(Error::IndexOutOfRange {
                    what: "B-vertex",
                    index: bi,
                    limit: b_count,
                });
            }
            if !seen.insert((ai, bi)) {
                return Err(Error::DuplicateEdge { a: ai, b: bi });
            }
            global.push((ai, a_count + bi));
        }
        Ok(Self::from_parts(a_count, b_count, checked_caps, global))
    }

    /// Same as [`BipartiteGraph::new`] with every capacity equal to `cap`.
    pub fn with_uniform_caps(
        a_count: usize,
        b_count: usize,
        edges: &[(usize, usize)],
        cap: i64,
    ) -> Result<Self> {
        Self::new(a_count, b_count, edges, &vec![cap; a_count + b_count])
    }

    fn from_parts(
        a_count: usize,
        b_count: usize,
        caps: Vec<u64>,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Self {
        let n = a_count + b_count;
        let mut degree = vec![0usize; n + 1];
        for &(a, b) in &edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut adj_start = vec![0usize; n + 1];
        for v in 0..n {
            adj_start[v + 1] = adj_start[v] + degree[v];
        }
        let mut fill = adj_start.clone();
        let mut adj_edges = vec![0; 2 * edges.len()];
        for (e, &(a, b)) in edges.iter().enumerate() {
            adj_edges[fill[a]] = e;
            fill[a] += 1;
            adj_edges[fill[b]] = e;
            fill[b] += 1;
        }
        BipartiteGraph {
            a_count,
            b_count,
            caps,
            edges,
            adj_start,
            adj_edges,
        }
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn b_count(&self) -> usize {
        self.b_count
    }

    pub fn vertex_count(&self) -> usize {
        self.a_count + self.b_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn side(&self, v: VertexId) -> Side {
        if v < self.a_count {
            Side::A
        } else {
            Side::B
        }
    }

    pub fn side_set(&self, side: Side) -> VertexSet {
        let n = self.vertex_count();
        match side {
            Side::A => VertexSet::from_vertices(n, 0..self.a_count),
            Side::B => VertexSet::from_vertices(n, self.a_count..n),
        }
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    pub fn side_vertices(&self, side: Side) -> std::ops::Range<VertexId> {
        match side {
            Side::A => 0..self.a_count,
            Side::B => self.a_count..self.vertex_count(),
        }
    }

    #[inline]
    pub fn cap(&self, v: VertexId) -> u64 {
        self.caps[v]
    }

    pub fn caps(&self) -> &[u64] {
        &self.caps
    }

    /// Endpoints `(a, b)` of edge `e` as global vertex ids.
    #[inline]
    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Incident edge ids of `v`, ascending.
    #[inline]
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adj_edges[self.adj_start[v]..self.adj_start[v + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj_start[v + 1] - self.adj_start[v]
    }

    #[inline]
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if v == a {
            b
        } else {
            a
        }
    }

    /// Looks up the edge joining `u` and `v`, in either order.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if u >= self.vertex_count() || v >= self.vertex_count() {
            return None;
        }
        let (probe, target) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.incident(probe)
            .iter()
            .copied()
            .find(|&e| self.other_end(e, probe) == target)
    }

    /// `"a<i>"` for A-vertices, `"b<j>"` for B-vertices, indices class-local.
    pub fn vertex_name(&self, v: VertexId) -> String {
        let side = self.side(v);
        let local = match side {
            Side::A => v,
            Side::B => v - self.a_count,
        };
        format!("{}{}", side.prefix(), local)
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<VertexId> {
        let unknown = || Error::UnknownVertexName(name.to_string());
        let (side, digits) = match name.split_at_checked(1) {
            Some(("a", rest)) => (Side::A, rest),
            Some(("b", rest)) => (Side::B, rest),
            _ => return Err(unknown()),
        };
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(unknown());
        }
        let index: usize = digits.parse().map_err(|_| unknown())?;
        match side {
            Side::A if index < self.a_count => Ok(index),
            Side::B if index < self.b_count => Ok(self.a_count + index),
            _ => Err(unknown()),
        }
    }

    /// The same graph with the color classes exchanged.
    ///
    /// Returns the new graph and the map from old vertex ids to new ones.
    /// Edge ids are preserved.
    pub fn swapped(&self) -> (BipartiteGraph, Vec<VertexId>) {
        let nb = self.b_count;
        let map: Vec<VertexId> = self
            .vertices()
            .map(|v| match self.side(v) {
                Side::A => nb + v,
                Side::B => v - self.a_count,
            })
            .collect();
        let mut caps = vec![0; self.vertex_count()];
        for v in self.vertices() {
            caps[map[v]] = self.caps[v];
        }
        let edges = self.edges.iter().map(|&(a, b)| (map[b], map[a])).collect();
        (
            Self::from_parts(self.b_count, self.a_count, caps, edges),
            map,
        )
    }

    /// N(X): vertices adjacent to X that are not in X.
    pub fn neighbors(&self, x: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.vertex_count());
        for v in x.iter() {
            for &e in self.incident(v) {
                let w = self.other_end(e, v);
                if !x.contains(w) {
                    out.insert(w);
                }
            }
        }
        out
    }

    /// E[X]: edges with both ends in X, ascending ids.
    pub fn edges_within(&self, x: &VertexSet) -> Vec<EdgeId> {
        self.filter_edges(|a, b| x.contains(a) && x.contains(b))
    }

    /// E[X, Y]: edges with one end in X and the other in Y.
    pub fn edges_between(&self, x: &VertexSet, y: &VertexSet) -> Vec<EdgeId> {
        self.filter_edges(|a, b| {
            (x.contains(a) && y.contains(b)) || (x.contains(b) && y.contains(a))
        })
    }

    /// The cut E[X, V \ X].
    pub fn cut(&self, x: &VertexSet) -> Vec<EdgeId> {
        self.filter_edges(|a, b| x.contains(a) != x.contains(b))
    }

    fn filter_edges(&self, keep: impl Fn(VertexId, VertexId) -> bool) -> Vec<EdgeId> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| keep(a, b))
            .map(|(e, _)| e)
            .collect()
    }

    /// Connected components of the subgraph made of the kept vertices and
    /// the kept edges joining two kept vertices. Each list is ascending and
    /// the lists are ordered by smallest member.
    pub fn components_by(
        &self,
        keep_vertex: impl Fn(VertexId) -> bool,
        keep_edge: impl Fn(EdgeId) -> bool,
    ) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for root in 0..n {
            if seen[root] || !keep_vertex(root) {
                continue;
            }
            seen[root] = true;
            stack.push(root);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &e in self.incident(u) {
                    let w = self.other_end(e, u);
                    if !seen[w] && keep_edge(e) && keep_vertex(w) {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub(crate) fn check_set(&self, x: &VertexSet) -> Result<()> {
        if x.universe() != self.vertex_count() {
            return Err(Error::VertexSetSize {
                expected: self.vertex_count(),
                got: x.universe(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> BipartiteGraph {
        BipartiteGraph::with_uniform_caps(2, 1, &[(0, 0), (1, 0)], 1).unwrap()
    }

    #[test]
    fn build_smallest_graph() {
        let g = BipartiteGraph::with_uniform_caps(1, 1, &[(0, 0)], 1).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edge(0), (0, 1));
        assert_eq!(g.side(0), Side::A);
        assert_eq!(g.side(1), Side::B);
    }

    #[test]
    fn build_path_layout() {
        let g = p3();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
        assert_eq!(g.incident(2), &[0, 1]);
        assert_eq!(g.vertex_name(2), "b0");
        assert_eq!(g.vertex_by_name("a1").unwrap(), 1);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            BipartiteGraph::with_uniform_caps(1, 1, &[(0, 0), (0, 0)], 1),
            Err(Error::DuplicateEdge { a: 0, b: 0 })
        );
        assert!(matches!(
            BipartiteGraph::with_uniform_caps(1, 1, &[(1, 0)], 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            BipartiteGraph::with_uniform_caps(1, 1, &[(0, 3)], 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert_eq!(
            BipartiteGraph::new(1, 1, &[(0, 0)], &[1, -2]),
            Err(Error::NegativeCapacity { vertex: 1, cap: -2 })
        );
    }

    #[test]
    fn side_opposite() {
        assert_eq!(Side::A.opposite(), Side::B);
        assert_eq!(Side::B.opposite(), Side::A);
    }

    #[test]
    fn neighbors_examples() {
        let g = p3();
        let b1 = VertexSet::from_vertices(3, [2]);
        assert_eq!(g.neighbors(&b1).to_vec(), vec![0, 1]);
        assert!(g.neighbors(&VertexSet::full(3)).is_empty());
        assert!(g.neighbors(&VertexSet::empty(3)).is_empty());
    }

    #[test]
    fn edge_set_examples() {
        let g = p3();
        assert_eq!(
            g.edges_within(&VertexSet::from_vertices(3, [0, 2])),
            vec![0]
        );
        assert_eq!(g.cut(&VertexSet::from_vertices(3, [2])), vec![0, 1]);
        let a1 = VertexSet::from_vertices(3, [0]);
        let a2 = VertexSet::from_vertices(3, [1]);
        assert!(g.edges_between(&a1, &a2).is_empty());
    }

    #[test]
    fn vertex_names_reject_garbage() {
        let g = p3();
        for bad in ["", "a", "c0", "a2", "b1", "a-1", "a+1", "A0"] {
            assert!(g.vertex_by_name(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn swapped_exchanges_classes() {
        let g = BipartiteGraph::new(2, 1, &[(0, 0), (1, 0)], &[1, 2, 3]).unwrap();
        let (s, map) = g.swapped();
        assert_eq!(s.a_count(), 1);
        assert_eq!(map, vec![1, 2, 0]);
        assert_eq!(s.cap(0), 3);
        assert_eq!(s.edges(), &[(0, 1), (0, 2)]);
    }

    #[test]
    fn find_edge_both_orders() {
        let g = p3();
        assert_eq!(g.find_edge(1, 2), Some(1));
        assert_eq!(g.find_edge(2, 1), Some(1));
        assert_eq!(g.find_edge(0, 1), None);
    }

    #[test]
    fn vertex_set_order_is_bitmap_lexicographic() {
        let x = VertexSet::from_vertices(4, [2, 3]);
        let y = VertexSet::from_vertices(4, [1, 2]);
        assert!(x < y);
    }
}
