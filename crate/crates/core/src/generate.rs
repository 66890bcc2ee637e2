//! Seeded random instances.
//!
//! Instance `i` of seed `s` is drawn from ChaCha8 stream `i` keyed by `s`,
//! so any single instance can be regenerated without replaying the batch.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::BipartiteGraph;

/// Shape of small random instances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomParams {
    /// Class sizes are drawn uniformly from `1..=max_a` and `1..=max_b`.
    pub max_a: usize,
    pub max_b: usize,
    /// Capacities are drawn uniformly from `min_cap..=max_cap`.
    pub min_cap: u64,
    pub max_cap: u64,
    pub edge_prob: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            max_a: 4,
            max_b: 4,
            min_cap: 0,
            max_cap: 2,
            edge_prob: 0.5,
        }
    }
}

impl RandomParams {
    /// Unit capacities everywhere.
    pub fn unit(self) -> Self {
        RandomParams {
            min_cap: 1,
            max_cap: 1,
            ..self
        }
    }
}

fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_instance(params: &RandomParams, seed: u64, index: u64) -> BipartiteGraph {
    let mut rng = stream_rng(seed, index);
    let a = rng.random_range(1..=params.max_a.max(1));
    let b = rng.random_range(1..=params.max_b.max(1));
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            if rng.random_bool(params.edge_prob) {
                edges.push((i, j));
            }
        }
    }
    let caps: Vec<i64> = (0..a + b)
        .map(|_| rng.random_range(params.min_cap..=params.max_cap.max(params.min_cap)) as i64)
        .collect();
    BipartiteGraph::new(a, b, &edges, &caps).expect("generated instance is valid")
}

/// A sparse random graph with exactly `edges` distinct edges on
/// `edges / 4` vertices per side and capacities in `1..=3`.
pub fn random_large(edges: usize, seed: u64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = (edges / 4).max(1);
    let target = edges.min(side * side);
    let mut seen = HashSet::with_capacity(target);
    let mut list = Vec::with_capacity(target);
    while list.len() < target {
        let e = (rng.random_range(0..side), rng.random_range(0..side));
        if seen.insert(e) {
            list.push(e);
        }
    }
    let caps: Vec<i64> = (0..2 * side).map(|_| rng.random_range(1..=3)).collect();
    BipartiteGraph::new(side, side, &list, &caps).expect("generated instance is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_reproducible() {
        let p = RandomParams::default();
        assert_eq!(random_instance(&p, 7, 3), random_instance(&p, 7, 3));
        assert_ne!(
            (0..10)
                .map(|i| random_instance(&p, 7, i))
                .collect::<Vec<_>>(),
            (0..10)
                .map(|i| random_instance(&p, 8, i))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn unit_params() {
        let g = random_instance(&RandomParams::default().unit(), 1, 0);
        assert!(g.caps().iter().all(|&c| c == 1));
    }

    #[test]
    fn large_has_requested_edges() {
        let g = random_large(1000, 3);
        assert_eq!(g.edge_count(), 1000);
        assert_eq!(random_large(0, 3).edge_count(), 0);
    }
}
