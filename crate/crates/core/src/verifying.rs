//! Verifying sets: vertex sets `Z` attaining `min b(V \ Z) + |E[Z]|`.
//!
//! Every verifying set is the projective union of a complementary pair of
//! normalized ideals of the component order: A-vertices of the lower ideal
//! plus B-vertices of the upper ideal. Enumerating the normalized lower
//! ideals therefore enumerates the verifying sets.

use std::collections::BTreeSet;

use crate::decomposition::{certify_maximum, Decomposition};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Side, VertexSet};
use crate::matching::Matching;

/// `b(V \ Z) + |E[Z]|`.
pub fn verifying_cost(g: &BipartiteGraph, z: &VertexSet) -> u64 {
    let outside: u64 = g
        .vertices()
        .filter(|&v| !z.contains(v))
        .map(|v| g.cap(v))
        .sum();
    let inside = g
        .edges()
        .iter()
        .filter(|&&(a, b)| z.contains(a) && z.contains(b))
        .count() as u64;
    outside + inside
}

/// Whether `z` attains the minimum, i.e. its cost equals `|m|` for the
/// maximum b-matching `m`.
pub fn is_verifying(g: &BipartiteGraph, z: &VertexSet, m: &Matching) -> Result<bool> {
    g.check_set(z)?;
    m.validate(g)?;
    certify_maximum(g, m)?;
    Ok(verifying_cost(g, z) == m.size() as u64)
}

/// A complementary pair `(lower, upper)` of normalized ideals of
/// `(components, ⪯_A)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalizedIdealPair {
    lower: BTreeSet<usize>,
    upper: BTreeSet<usize>,
}

impl NormalizedIdealPair {
    /// Pairs `lower` with its complement and validates the result.
    pub fn from_lower<I: IntoIterator<Item = usize>>(d: &Decomposition, lower: I) -> Result<Self> {
        let lower: BTreeSet<usize> = lower.into_iter().collect();
        if let Some(&c) = lower.iter().find(|&&c| c >= d.component_count()) {
            return Err(Error::UnknownComponent(c));
        }
        let upper = (0..d.component_count())
            .filter(|c| !lower.contains(c))
            .collect();
        let pair = NormalizedIdealPair { lower, upper };
        pair.validate(d)?;
        Ok(pair)
    }

    /// An arbitrary pair; call [`NormalizedIdealPair::validate`] before
    /// trusting it.
    pub fn from_parts(lower: BTreeSet<usize>, upper: BTreeSet<usize>) -> Self {
        NormalizedIdealPair { lower, upper }
    }

    pub fn lower(&self) -> &BTreeSet<usize> {
        &self.lower
    }

    pub fn upper(&self) -> &BTreeSet<usize> {
        &self.upper
    }

    /// Complementary, downward closed and normalized.
    pub fn validate(&self, d: &Decomposition) -> Result<()> {
        let k = d.component_count();
        if let Some(&c) = self.lower.iter().chain(&self.upper).find(|&&c| c >= k) {
            return Err(Error::UnknownComponent(c));
        }
        if let Some(c) = self.lower.intersection(&self.upper).next() {
            return Err(Error::NotAnIdeal(format!("component {c} is in both parts")));
        }
        if self.lower.len() + self.upper.len() != k {
            return Err(Error::NotAnIdeal(
                "parts do not cover all components".into(),
            ));
        }
        for &(x, y) in d.order_arcs() {
            if self.lower.contains(&y) && !self.lower.contains(&x) {
                return Err(Error::NotAnIdeal(format!(
                    "component {x} precedes {y} but is not in the lower ideal"
                )));
            }
        }
        for c in d.components() {
            let misplaced = match c.kind.hooked_by() {
                Some(Side::A) => !self.lower.contains(&c.id),
                Some(Side::B) => !self.upper.contains(&c.id),
                None => false,
            };
            if misplaced {
                return Err(Error::NotNormalized(c.id));
            }
        }
        Ok(())
    }
}

/// `Z = (A-vertices of lower) ∪ (B-vertices of upper)`.
pub fn ideal_to_verifying(d: &Decomposition, p: &NormalizedIdealPair) -> Result<VertexSet> {
    p.validate(d)?;
    Ok(project(d, |c| p.lower.contains(&c)))
}

fn project(d: &Decomposition, in_lower: impl Fn(usize) -> bool) -> VertexSet {
    let mut z = VertexSet::empty(d.vertex_count());
    for c in d.components() {
        let keep = if in_lower(c.id) { Side::A } else { Side::B };
        for &v in &c.vertices {
            if d.side(v) == keep {
                z.insert(v);
            }
        }
    }
    z
}

/// Recovers the ideal pair behind a verifying set.
///
/// A component goes to the lower ideal when its A-part lies in `z` and its
/// B-part avoids `z`, to the upper ideal in the mirrored case.
pub fn verifying_to_ideal(
    g: &BipartiteGraph,
    d: &Decomposition,
    z: &VertexSet,
) -> Result<NormalizedIdealPair> {
    g.check_set(z)?;
    if d.vertex_count() != g.vertex_count() {
        return Err(Error::InconsistentDecomposition(
            "decomposition and graph differ in size".into(),
        ));
    }
    let cost = verifying_cost(g, z);
    let max = d.matching().size() as u64;
    if cost != max {
        return Err(Error::NotVerifying { cost, max });
    }
    let mut lower = BTreeSet::new();
    let mut upper = BTreeSet::new();
    for c in d.components() {
        let (mut a_in, mut a_out, mut b_in, mut b_out) = (false, false, false, false);
        for &v in &c.vertices {
            match (d.side(v), z.contains(v)) {
                (Side::A, true) => a_in = true,
                (Side::A, false) => a_out = true,
                (Side::B, true) => b_in = true,
                (Side::B, false) => b_out = true,
            }
        }
        let as_lower = !a_out && !b_in;
        let as_upper = !a_in && !b_out;
        match (as_lower, as_upper) {
            (true, false) => lower.insert(c.id),
            (false, true) => upper.insert(c.id),
            _ => return Err(Error::MalformedSet(c.id)),
        };
    }
    let pair = NormalizedIdealPair { lower, upper };
    pair.validate(d)?;
    Ok(pair)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealEnumeration {
    pub ideals: Vec<NormalizedIdealPair>,
    /// More ideals exist beyond the cap.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyingEnumeration {
    /// Sorted by membership bitmap, deduplicated.
    pub sets: Vec<VertexSet>,
    pub truncated: bool,
}

/// Enumerates up to `cap` normalized lower ideals of `(components, ⪯_A)`.
///
/// Components are decided in topological order; a component may enter the
/// lower ideal only if all its predecessors did, components hooked up by A
/// are forced in and those hooked up by B forced out. Every branch ends in a
/// valid ideal, so the search costs O(k + arcs) per ideal.
pub fn enumerate_normalized_ideals(d: &Decomposition, cap: usize) -> Result<IdealEnumeration> {
    if cap == 0 {
        return Err(Error::ZeroCap);
    }
    let order = d.topological_order();
    let k = order.len();
    let kinds = d.kinds();
    let mut included = vec![false; d.component_count()];
    // Per decided position: whether the alternative (include) is still open.
    let mut frames: Vec<bool> = Vec::with_capacity(k);
    let mut ideals = Vec::new();
    let mut truncated = false;

    let options = |c: usize, included: &[bool]| -> (bool, bool) {
        // (first choice, alternative available)
        match kinds[c].hooked_by() {
            Some(Side::A) => (true, false),
            Some(Side::B) => (false, false),
            None => {
                let can_include = d.predecessors(c).iter().all(|&p| included[p]);
                (false, can_include)
            }
        }
    };

    loop {
        if frames.len() == k {
            if ideals.len() == cap {
                truncated = true;
                break;
            }
            let lower: BTreeSet<usize> =
                (0..d.component_count()).filter(|&c| included[c]).collect();
            let upper = (0..d.component_count()).filter(|&c| !included[c]).collect();
            ideals.push(NormalizedIdealPair { lower, upper });
        } else {
            let c = order[frames.len()];
            let (first, alt) = options(c, &included);
            included[c] = first;
            frames.push(alt);
            continue;
        }
        // Backtrack to the deepest open alternative.
        loop {
            match frames.pop() {
                None => return Ok(IdealEnumeration { ideals, truncated }),
                Some(true) => {
                    let c = order[frames.len()];
                    included[c] = true;
                    frames.push(false);
                    break;
                }
                Some(false) => {
                    included[order[frames.len()]] = false;
                }
            }
        }
    }
    Ok(IdealEnumeration { ideals, truncated })
}

/// All verifying sets (up to `cap`), via the normalized lower ideals.
pub fn enumerate_verifying_sets(d: &Decomposition, cap: usize) -> Result<VerifyingEnumeration> {
    let ideals = enumerate_normalized_ideals(d, cap)?;
    let mut sets: Vec<VertexSet> = ideals
        .ideals
        .iter()
        .map(|p| project(d, |c| p.lower.contains(&c)))
        .collect();
    sets.sort();
    sets.dedup();
    Ok(VerifyingEnumeration {
        sets,
        truncated: ideals.truncated,
    })
}
