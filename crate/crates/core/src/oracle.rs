//! Exhaustive reference computations for small graphs, and checks that
//! compare them with the fast pipeline.
//!
//! The oracle works from definitions only: it enumerates every edge subset
//! to find the maximum b-matchings, every vertex subset to find the
//! verifying sets, and derives components, kinds and order from the edge
//! classes. It never calls the decomposition code.

use serde::Serialize;

use crate::classification::{
    canonical_verifying_sets, classify_edges, loose_attainable, EdgeClass,
};
use crate::decomposition::{decompose, ComponentKind};
use crate::error::{Error, Result};
use crate::generate::{random_instance, RandomParams};
use crate::graph::{BipartiteGraph, EdgeId, VertexId, VertexSet};
use crate::matching::{max_b_matching, Matching};
use crate::par;
use crate::verifying::{enumerate_verifying_sets, verifying_cost};

/// Size bounds beyond which the oracle refuses to run. Both must stay at or
/// below 64 since subsets are enumerated as `u64` masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_edges: usize,
    pub max_vertices: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_edges: 16,
            max_vertices: 16,
        }
    }
}

impl OracleLimits {
    fn check(&self, g: &BipartiteGraph) -> Result<()> {
        let edge_limit = self.max_edges.min(63);
        let vertex_limit = self.max_vertices.min(63);
        if g.edge_count() > edge_limit {
            return Err(Error::TooLarge {
                what: "edges",
                got: g.edge_count(),
                limit: edge_limit,
            });
        }
        if g.vertex_count() > vertex_limit {
            return Err(Error::TooLarge {
                what: "vertices",
                got: g.vertex_count(),
                limit: vertex_limit,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleComponent {
    /// Ascending.
    pub vertices: Vec<VertexId>,
    /// `None` when the component is hooked up by both sides, which the
    /// theory rules out.
    pub kind: Option<ComponentKind>,
    pub hooked_a: bool,
    pub hooked_b: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub max_size: usize,
    /// Edge ids of every maximum b-matching, ascending within each.
    pub all_max_matchings: Vec<Vec<EdgeId>>,
    pub edge_class: Vec<EdgeClass>,
    pub d_set: VertexSet,
    /// Ordered by smallest vertex.
    pub components: Vec<OracleComponent>,
    /// Reflexive-transitive closure of the order, indexed like `components`.
    pub order_closure: Vec<Vec<bool>>,
    pub min_cost: u64,
    /// Sorted by membership bitmap.
    pub verifying_sets: Vec<VertexSet>,
}

/// Edge masks of all b-matchings for the capacity vector `caps`.
fn b_matching_masks(g: &BipartiteGraph, caps: &[u64]) -> Vec<u64> {
    let m = g.edge_count();
    let mut load = vec![0u64; g.vertex_count()];
    (0..1u64 << m)
        .filter(|&mask| {
            load.fill(0);
            for e in 0..m {
                if mask >> e & 1 == 1 {
                    let (a, b) = g.edge(e);
                    load[a] += 1;
                    load[b] += 1;
                }
            }
            load.iter().zip(caps).all(|(l, c)| l <= c)
        })
        .collect()
}

fn max_size_with(g: &BipartiteGraph, caps: &[u64]) -> usize {
    b_matching_masks(g, caps)
        .into_iter()
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn oracle_report(g: &BipartiteGraph, limits: &OracleLimits) -> Result<OracleReport> {
    limits.check(g)?;
    let n = g.vertex_count();
    let m = g.edge_count();
    let masks = b_matching_masks(g, g.caps());
    let max_size = masks
        .iter()
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let max_masks: Vec<u64> = masks
        .into_iter()
        .filter(|mask| mask.count_ones() as usize == max_size)
        .collect();
    let all_max_matchings: Vec<Vec<EdgeId>> = max_masks
        .iter()
        .map(|&mask| (0..m).filter(|&e| mask >> e & 1 == 1).collect())
        .collect();

    let in_all = max_masks.iter().fold(u64::MAX, |acc, &x| acc & x);
    let in_some = max_masks.iter().fold(0, |acc, &x| acc | x);
    let edge_class: Vec<EdgeClass> = (0..m)
        .map(|e| {
            if in_all >> e & 1 == 1 {
                EdgeClass::Inevitable
            } else if in_some >> e & 1 == 1 {
                EdgeClass::Flexible
            } else {
                EdgeClass::Forbidden
            }
        })
        .collect();

    // Vertices loose under at least one maximum b-matching.
    let mut d_set = VertexSet::empty(n);
    for &mask in &max_masks {
        let mut load = vec![0u64; n];
        for e in (0..m).filter(|&e| mask >> e & 1 == 1) {
            let (a, b) = g.edge(e);
            load[a] += 1;
            load[b] += 1;
        }
        for (v, &l) in load.iter().enumerate() {
            if l < g.cap(v) {
                d_set.insert(v);
            }
        }
    }

    // An inactive vertex is hooked up by the opposite side when giving it
    // one unit of capacity raises the maximum.
    let raises_max = |v: VertexId| {
        let mut caps = g.caps().to_vec();
        caps[v] += 1;
        max_size_with(g, &caps) > max_size
    };

    let parts = g.components_by(|_| true, |e| edge_class[e] == EdgeClass::Flexible);
    let components: Vec<OracleComponent> = parts
        .into_iter()
        .map(|vertices| {
            let mut hooked = [false; 2];
            for &v in &vertices {
                let side = g.side(v);
                if d_set.contains(v) {
                    hooked[side as usize] = true;
                }
                if g.cap(v) == 0 && raises_max(v) {
                    hooked[side.opposite() as usize] = true;
                }
            }
            let inactive = vertices.len() == 1 && g.cap(vertices[0]) == 0;
            let kind = match (hooked[0], hooked[1]) {
                (false, false) => Some(ComponentKind::Consistent),
                (true, true) => None,
                (true, false) if inactive => Some(ComponentKind::InactiveHookedA),
                (true, false) => Some(ComponentKind::LooseHookedA),
                (false, true) if inactive => Some(ComponentKind::InactiveHookedB),
                (false, true) => Some(ComponentKind::LooseHookedB),
            };
            OracleComponent {
                vertices,
                kind,
                hooked_a: hooked[0],
                hooked_b: hooked[1],
            }
        })
        .collect();

    // Inevitable edges point from the A-end's component to the B-end's,
    // forbidden edges the other way.
    let k = components.len();
    let mut comp_of = vec![0; n];
    for (i, c) in components.iter().enumerate() {
        for &v in &c.vertices {
            comp_of[v] = i;
        }
    }
    let mut closure = vec![vec![false; k]; k];
    for (i, row) in closure.iter_mut().enumerate() {
        row[i] = true;
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let (ca, cb) = (comp_of[a], comp_of[b]);
        match edge_class[e] {
            EdgeClass::Inevitable => closure[ca][cb] = true,
            EdgeClass::Forbidden => closure[cb][ca] = true,
            EdgeClass::Flexible => {}
        }
    }
    for via in 0..k {
        let through = closure[via].clone();
        for row in closure.iter_mut().filter(|row| row[via]) {
            for (cell, &reach) in row.iter_mut().zip(&through) {
                *cell |= reach;
            }
        }
    }

    let costs: Vec<(u64, u64)> = (0..1u64 << n)
        .map(|mask| (mask, verifying_cost(g, &VertexSet::from_mask(n, mask))))
        .collect();
    let min_cost = costs.iter().map(|&(_, c)| c).min().unwrap_or(0);
    let mut verifying_sets: Vec<VertexSet> = costs
        .into_iter()
        .filter(|&(_, c)| c == min_cost)
        .map(|(mask, _)| VertexSet::from_mask(n, mask))
        .collect();
    verifying_sets.sort();

    Ok(OracleReport {
        max_size,
        all_max_matchings,
        edge_class,
        d_set,
        components,
        order_closure: closure,
        min_cost,
        verifying_sets,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub field: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Diverge(Divergence),
}

impl Verdict {
    pub fn is_agree(&self) -> bool {
        matches!(self, Verdict::Agree)
    }
}

fn diverge(field: &'static str, detail: String) -> Verdict {
    Verdict::Diverge(Divergence { field, detail })
}

fn set_list(sets: &[VertexSet]) -> String {
    let inner: Vec<String> = sets.iter().map(|s| format!("{:?}", s.to_vec())).collect();
    format!("[{}]", inner.join(", "))
}

/// Compares the fast pipeline on `g` with the oracle, field by field.
pub fn equivalence_check(g: &BipartiteGraph, limits: &OracleLimits) -> Result<Verdict> {
    let report = oracle_report(g, limits)?;
    let m = max_b_matching(g);
    if m.size() != report.max_size {
        return Ok(diverge(
            "max_size",
            format!("solver {} oracle {}", m.size(), report.max_size),
        ));
    }
    if report.min_cost != report.max_size as u64 {
        return Ok(diverge(
            "min_max",
            format!("min cost {} max size {}", report.min_cost, report.max_size),
        ));
    }
    let d = decompose(g, &m)?;
    let cls = classify_edges(g, &m, &d)?;
    if cls.classes() != report.edge_class.as_slice() {
        return Ok(diverge(
            "edge_class",
            format!("fast {:?} oracle {:?}", cls.classes(), report.edge_class),
        ));
    }
    let d_set = loose_attainable(&d);
    if d_set != report.d_set {
        return Ok(diverge(
            "d_set",
            format!(
                "fast {:?} oracle {:?}",
                d_set.to_vec(),
                report.d_set.to_vec()
            ),
        ));
    }
    let fast_parts: Vec<&[VertexId]> = d.components().iter().map(|c| &c.vertices[..]).collect();
    let oracle_parts: Vec<&[VertexId]> =
        report.components.iter().map(|c| &c.vertices[..]).collect();
    if fast_parts != oracle_parts {
        return Ok(diverge(
            "components",
            format!("fast {fast_parts:?} oracle {oracle_parts:?}"),
        ));
    }
    let fast_kinds: Vec<Option<ComponentKind>> = d.kinds().into_iter().map(Some).collect();
    let oracle_kinds: Vec<Option<ComponentKind>> =
        report.components.iter().map(|c| c.kind).collect();
    if fast_kinds != oracle_kinds {
        return Ok(diverge(
            "kinds",
            format!("fast {fast_kinds:?} oracle {oracle_kinds:?}"),
        ));
    }
    let closure = d.order_closure();
    if closure != report.order_closure {
        return Ok(diverge(
            "order",
            format!("fast {closure:?} oracle {:?}", report.order_closure),
        ));
    }
    let cap = (1usize << g.vertex_count()) + 1;
    let fast_sets = enumerate_verifying_sets(&d, cap)?;
    if fast_sets.truncated || fast_sets.sets != report.verifying_sets {
        return Ok(diverge(
            "verifying_sets",
            format!(
                "fast {} oracle {}",
                set_list(&fast_sets.sets),
                set_list(&report.verifying_sets)
            ),
        ));
    }
    let (z1, z2) = canonical_verifying_sets(&d);
    for (name, z) in [("canonical_z1", &z1), ("canonical_z2", &z2)] {
        let cost = verifying_cost(g, z);
        if cost != report.max_size as u64 {
            return Ok(diverge(
                name,
                format!("{:?} costs {cost}, maximum {}", z.to_vec(), report.max_size),
            ));
        }
    }
    Ok(Verdict::Agree)
}

/// Decomposes `g` with every maximum b-matching and checks that the
/// partition, kinds, order and edge classes never change.
pub fn canonicity_check(g: &BipartiteGraph, limits: &OracleLimits) -> Result<Verdict> {
    let report = oracle_report(g, limits)?;
    let base_m = max_b_matching(g);
    let base = decompose(g, &base_m)?;
    let base_cls = classify_edges(g, &base_m, &base)?;
    for edges in &report.all_max_matchings {
        let m = Matching::from_edges(g, edges)?;
        let d = decompose(g, &m)?;
        if !d.same_structure(&base) {
            return Ok(diverge(
                "canonicity",
                format!("matching {edges:?} gives a different decomposition"),
            ));
        }
        if classify_edges(g, &m, &d)? != base_cls {
            return Ok(diverge(
                "canonicity",
                format!("matching {edges:?} gives different edge classes"),
            ));
        }
    }
    Ok(Verdict::Agree)
}

/// Exchanging the color classes keeps the partition, swaps the kinds and
/// reverses the order.
pub fn symmetry_check(g: &BipartiteGraph) -> Result<Verdict> {
    let d = decompose(g, &max_b_matching(g))?;
    let (h, map) = g.swapped();
    let e = decompose(&h, &max_b_matching(&h))?;
    if d.component_count() != e.component_count() {
        return Ok(diverge(
            "symmetry",
            format!(
                "{} components, {} after swapping",
                d.component_count(),
                e.component_count()
            ),
        ));
    }
    let image: Vec<usize> = d
        .components()
        .iter()
        .map(|c| e.comp_of(map[c.vertices[0]]))
        .collect();
    for c in d.components() {
        let target = e.component(image[c.id])?;
        let mut mapped: Vec<VertexId> = c.vertices.iter().map(|&v| map[v]).collect();
        mapped.sort_unstable();
        if mapped != target.vertices {
            return Ok(diverge(
                "symmetry",
                format!("component {} maps to {:?}", c.id, target.vertices),
            ));
        }
        if target.kind != c.kind.swap_sides() {
            return Ok(diverge(
                "symmetry",
                format!(
                    "component {} is {} and {} after swapping",
                    c.id, c.kind, target.kind
                ),
            ));
        }
    }
    for x in 0..d.component_count() {
        for y in 0..d.component_count() {
            if d.poset_leq(x, y)? != e.poset_leq(image[y], image[x])? {
                return Ok(diverge(
                    "symmetry",
                    format!("order between components {x} and {y} is not reversed"),
                ));
            }
        }
    }
    Ok(Verdict::Agree)
}

/// All three checks on one instance.
pub fn full_check(g: &BipartiteGraph, limits: &OracleLimits) -> Result<Verdict> {
    for verdict in [
        equivalence_check(g, limits)?,
        canonicity_check(g, limits)?,
        symmetry_check(g)?,
    ] {
        if !verdict.is_agree() {
            return Ok(verdict);
        }
    }
    Ok(Verdict::Agree)
}

/// A failed instance of a random batch, enough to regenerate it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchFailure {
    pub seed: u64,
    pub index: u64,
    pub field: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchReport {
    pub checked: u64,
    pub failures: Vec<BatchFailure>,
}

impl BatchReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_one(
    params: &RandomParams,
    limits: &OracleLimits,
    seed: u64,
    index: u64,
) -> Option<BatchFailure> {
    let g = random_instance(params, seed, index);
    let (field, detail) = match full_check(&g, limits) {
        Ok(Verdict::Agree) => return None,
        Ok(Verdict::Diverge(d)) => (d.field.to_string(), d.detail),
        Err(err) => ("error".to_string(), err.to_string()),
    };
    Some(BatchFailure {
        seed,
        index,
        field,
        detail,
    })
}

/// Runs [`full_check`] on instances `0..count` of `seed`, in parallel when
/// the `parallel` feature is on.
pub fn check_random(
    count: u64,
    seed: u64,
    params: &RandomParams,
    limits: &OracleLimits,
) -> BatchReport {
    let failures = par::map_range(count, |i| check_one(params, limits, seed, i))
        .into_iter()
        .flatten()
        .collect();
    BatchReport {
        checked: count,
        failures,
    }
}

/// [`check_random`] on a single thread.
pub fn check_random_seq(
    count: u64,
    seed: u64,
    params: &RandomParams,
    limits: &OracleLimits,
) -> BatchReport {
    let failures = (0..count)
        .filter_map(|i| check_one(params, limits, seed, i))
        .collect();
    BatchReport {
        checked: count,
        failures,
    }
}
