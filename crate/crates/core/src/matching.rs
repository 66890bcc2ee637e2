//! b-matchings and a maximum b-matching solver.
//!
//! The solver routes flow through `source -> A -> B -> sink` with capacities
//! `b(a)`, `1` per edge and `b(b)`, augmenting along shortest paths in
//! Dinic phases. Vertices and arcs are scanned in ascending id order, so the
//! result is a deterministic function of the graph.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeId, Side, VertexId, VertexSet};

/// A set of edges together with the per-vertex load it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    member: Vec<bool>,
    load: Vec<u64>,
    size: usize,
}

impl Matching {
    pub fn empty(g: &BipartiteGraph) -> Self {
        Matching {
            member: vec![false; g.edge_count()],
            load: vec![0; g.vertex_count()],
            size: 0,
        }
    }

    /// Builds a matching from edge ids, rejecting unknown ids and cap
    /// violations. Repeated ids count once.
    pub fn from_edges(g: &BipartiteGraph, edges: &[EdgeId]) -> Result<Self> {
        let m = Self::from_edges_unchecked(g, edges)?;
        m.validate(g)?;
        Ok(m)
    }

    fn from_edges_unchecked(g: &BipartiteGraph, edges: &[EdgeId]) -> Result<Self> {
        let mut m = Matching::empty(g);
        for &e in edges {
            if e >= g.edge_count() {
                return Err(Error::UnknownEdgeId(e));
            }
            if !m.member[e] {
                m.member[e] = true;
                let (a, b) = g.edge(e);
                m.load[a] += 1;
                m.load[b] += 1;
                m.size += 1;
            }
        }
        Ok(m)
    }

    /// Checks that this matching belongs to `g` and respects every cap.
    pub fn validate(&self, g: &BipartiteGraph) -> Result<()> {
        if self.member.len() != g.edge_count() || self.load.len() != g.vertex_count() {
            return Err(Error::InconsistentDecomposition(format!(
                "matching covers {} edges / {} vertices, graph has {} / {}",
                self.member.len(),
                self.load.len(),
                g.edge_count(),
                g.vertex_count()
            )));
        }
        for v in g.vertices() {
            if self.load[v] > g.cap(v) {
                return Err(Error::NotABMatching {
                    vertex: v,
                    load: self.load[v],
                    cap: g.cap(v),
                });
            }
        }
        Ok(())
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        self.member[e]
    }

    #[inline]
    pub fn load(&self, v: VertexId) -> u64 {
        self.load[v]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Member edge ids, ascending.
    pub fn edges(&self) -> Vec<EdgeId> {
        self.member
            .iter()
            .enumerate()
            .filter_map(|(e, &m)| if m { Some(e) } else { None })
            .collect()
    }

    #[inline]
    pub fn is_loose(&self, g: &BipartiteGraph, v: VertexId) -> bool {
        self.load[v] < g.cap(v)
    }
}

/// Whether the edge set `edges` satisfies `|cut(v) ∩ M| <= b(v)` everywhere.
pub fn is_b_matching(g: &BipartiteGraph, edges: &[EdgeId]) -> Result<bool> {
    let m = Matching::from_edges_unchecked(g, edges)?;
    Ok(g.vertices().all(|v| m.load[v] <= g.cap(v)))
}

/// M-loose vertices on one side (`U_A` or `U_B`).
pub fn loose_vertices(g: &BipartiteGraph, m: &Matching, side: Side) -> Result<VertexSet> {
    m.validate(g)?;
    Ok(VertexSet::from_vertices(
        g.vertex_count(),
        g.side_vertices(side).filter(|&v| m.is_loose(g, v)),
    ))
}

/// A maximum-cardinality b-matching.
pub fn max_b_matching(g: &BipartiteGraph) -> Matching {
    let mut net = FlowNetwork::new(g);
    net.run();
    let member: Vec<bool> = net
        .edge_arcs
        .iter()
        .map(|&arc| net.residual[arc] == 0)
        .collect();
    let edges: Vec<EdgeId> = member
        .iter()
        .enumerate()
        .filter_map(|(e, &m)| if m { Some(e) } else { None })
        .collect();
    Matching::from_edges_unchecked(g, &edges).expect("solver produced an unknown edge")
}

const UNREACHED: usize = usize::MAX;

struct FlowNetwork {
    source: usize,
    sink: usize,
    /// Arcs `2k` (forward) and `2k + 1` (reverse) form a pair.
    head: Vec<usize>,
    residual: Vec<u64>,
    adj_start: Vec<usize>,
    adj: Vec<usize>,
    edge_arcs: Vec<usize>,
    level: Vec<usize>,
}

impl FlowNetwork {
    fn new(g: &BipartiteGraph) -> Self {
        let n = g.vertex_count();
        let source = n;
        let sink = n + 1;
        let mut tail = Vec::new();
        let mut head = Vec::new();
        let mut residual = Vec::new();
        let mut push = |u: usize, v: usize, cap: u64| {
            let id = tail.len();
            tail.push(u);
            head.push(v);
            residual.push(cap);
            tail.push(v);
            head.push(u);
            residual.push(0);
            id
        };
        for a in g.side_vertices(Side::A) {
            push(source, a, g.cap(a));
        }
        let edge_arcs: Vec<usize> = g.edges().iter().map(|&(a, b)| push(a, b, 1)).collect();
        for b in g.side_vertices(Side::B) {
            push(b, sink, g.cap(b));
        }

        let nodes = n + 2;
        let mut adj_start = vec![0usize; nodes + 1];
        for &u in &tail {
            adj_start[u + 1] += 1;
        }
        for u in 0..nodes {
            adj_start[u + 1] += adj_start[u];
        }
        let mut fill = adj_start.clone();
        let mut adj = vec![0; tail.len()];
        for (arc, &u) in tail.iter().enumerate() {
            adj[fill[u]] = arc;
            fill[u] += 1;
        }
        FlowNetwork {
            source,
            sink,
            head,
            residual,
            adj_start,
            adj,
            edge_arcs,
            level: vec![UNREACHED; nodes],
        }
    }

    fn run(&mut self) {
        while self.build_levels() {
            self.blocking_flow();
        }
    }

    fn build_levels(&mut self) -> bool {
        self.level.fill(UNREACHED);
        self.level[self.source] = 0;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for &arc in &self.adj[self.adj_start[u]..self.adj_start[u + 1]] {
                let v = self.head[arc];
                if self.residual[arc] > 0 && self.level[v] == UNREACHED {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[self.sink] != UNREACHED
    }

    fn admissible(&self, arc: usize, u: usize) -> bool {
        let v = self.head[arc];
        self.residual[arc] > 0 && self.level[v] != UNREACHED && self.level[v] == self.level[u] + 1
    }

    /// Iterative DFS with current-arc pointers.
    fn blocking_flow(&mut self) {
        let mut cursor = self.adj_start.clone();
        let mut path: Vec<usize> = Vec::new();
        let mut u = self.source;
        loop {
            if u == self.sink {
                let push = path.iter().map(|&a| self.residual[a]).min().unwrap_or(0);
                for &a in &path {
                    self.residual[a] -= push;
                    self.residual[a ^ 1] += push;
                }
                let first_saturated = path
                    .iter()
                    .position(|&a| self.residual[a] == 0)
                    .expect("augmentation saturates an arc");
                path.truncate(first_saturated);
                u = path.last().map_or(self.source, |&a| self.head[a]);
                continue;
            }
            let end = self.adj_start[u + 1];
            while cursor[u] < end && !self.admissible(self.adj[cursor[u]], u) {
                cursor[u] += 1;
            }
            if cursor[u] == end {
                if u == self.source {
                    return;
                }
                self.level[u] = UNREACHED;
                let arc = path.pop().expect("non-source node has an entry arc");
                u = self.head[arc ^ 1];
                cursor[u] += 1;
                continue;
            }
            let arc = self.adj[cursor[u]];
            path.push(arc);
            u = self.head[arc];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> BipartiteGraph {
        BipartiteGraph::with_uniform_caps(2, 1, &[(0, 0), (1, 0)], 1).unwrap()
    }

    #[test]
    fn is_b_matching_examples() {
        let g = p3();
        assert!(is_b_matching(&g, &[0]).unwrap());
        assert!(!is_b_matching(&g, &[0, 1]).unwrap());
        assert!(is_b_matching(&g, &[]).unwrap());
        assert_eq!(is_b_matching(&g, &[7]), Err(Error::UnknownEdgeId(7)));
    }

    #[test]
    fn max_matching_small_cases() {
        assert_eq!(max_b_matching(&p3()).size(), 1);
        let star = BipartiteGraph::new(3, 1, &[(0, 0), (1, 0), (2, 0)], &[1, 1, 1, 2]).unwrap();
        assert_eq!(max_b_matching(&star).size(), 2);
        let c4 =
            BipartiteGraph::with_uniform_caps(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)], 1).unwrap();
        assert_eq!(max_b_matching(&c4).size(), 2);
    }

    #[test]
    fn max_matching_is_deterministic() {
        let g = p3();
        assert_eq!(max_b_matching(&g), max_b_matching(&g));
        assert_eq!(max_b_matching(&g).edges(), vec![0]);
    }

    #[test]
    fn zero_caps_and_empty_graph() {
        let g = BipartiteGraph::new(2, 1, &[(0, 0), (1, 0)], &[1, 1, 0]).unwrap();
        assert_eq!(max_b_matching(&g).size(), 0);
        let e = BipartiteGraph::with_uniform_caps(0, 0, &[], 1).unwrap();
        assert_eq!(max_b_matching(&e).size(), 0);
    }

    #[test]
    fn loose_vertices_examples() {
        let g = p3();
        let m = Matching::from_edges(&g, &[0]).unwrap();
        assert_eq!(loose_vertices(&g, &m, Side::A).unwrap().to_vec(), vec![1]);
        assert!(loose_vertices(&g, &m, Side::B).unwrap().is_empty());

        let g = BipartiteGraph::new(1, 1, &[(0, 0)], &[2, 1]).unwrap();
        let m = Matching::from_edges(&g, &[0]).unwrap();
        assert_eq!(loose_vertices(&g, &m, Side::A).unwrap().to_vec(), vec![0]);
    }

    #[test]
    fn from_edges_rejects_overload() {
        let g = p3();
        assert!(matches!(
            Matching::from_edges(&g, &[0, 1]),
            Err(Error::NotABMatching { vertex: 2, .. })
        ));
    }

    #[test]
    fn large_caps_saturate_degree() {
        // b(v) beyond deg(v): every edge fits.
        let g =
            BipartiteGraph::with_uniform_caps(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)], 5).unwrap();
        assert_eq!(max_b_matching(&g).size(), 4);
    }
}
