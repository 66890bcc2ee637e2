//! Edge classes, the loose-attainable set `D(G; b)` and the two canonical
//! verifying sets, all read off a decomposition.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeId, Side, VertexId, VertexSet};
use crate::matching::Matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    /// In no maximum b-matching.
    Forbidden,
    /// In every maximum b-matching.
    Inevitable,
    /// In some maximum b-matchings but not all.
    Flexible,
}

impl EdgeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeClass::Forbidden => "forbidden",
            EdgeClass::Inevitable => "inevitable",
            EdgeClass::Flexible => "flexible",
        }
    }

    pub fn is_allowed(self) -> bool {
        self != EdgeClass::Forbidden
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassification {
    class_of: Vec<EdgeClass>,
}

impl EdgeClassification {
    pub fn from_classes(class_of: Vec<EdgeClass>) -> Self {
        EdgeClassification { class_of }
    }

    #[inline]
    pub fn class(&self, e: EdgeId) -> EdgeClass {
        self.class_of[e]
    }

    pub fn classes(&self) -> &[EdgeClass] {
        &self.class_of
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn count(&self, class: EdgeClass) -> usize {
        self.class_of.iter().filter(|&&c| c == class).count()
    }
}

/// Intra-component edges are flexible; an edge between two components is
/// inevitable when `m` uses it and forbidden otherwise.
pub fn classify_edges(
    g: &BipartiteGraph,
    m: &Matching,
    d: &Decomposition,
) -> Result<EdgeClassification> {
    if d.vertex_count() != g.vertex_count() || d.a_count() != g.a_count() {
        return Err(Error::InconsistentDecomposition(format!(
            "decomposition has {} vertices, graph has {}",
            d.vertex_count(),
            g.vertex_count()
        )));
    }
    m.validate(g)?;
    let class_of = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| {
            if d.comp_of(a) == d.comp_of(b) {
                EdgeClass::Flexible
            } else if m.contains(e) {
                EdgeClass::Inevitable
            } else {
                EdgeClass::Forbidden
            }
        })
        .collect();
    Ok(EdgeClassification { class_of })
}

/// `D(G; b) = (ext_A ∩ A) ∪ (ext_B ∩ B)`: the vertices that are loose under
/// at least one maximum b-matching.
pub fn loose_attainable(d: &Decomposition) -> VertexSet {
    let n = d.vertex_count();
    VertexSet::from_vertices(n, (0..n).filter(|&v| d.ext(d.side(v)).contains(v)))
}

/// Connected components over the allowed (inevitable or flexible) edges.
pub fn elementary_components(g: &BipartiteGraph, cls: &EdgeClassification) -> Vec<Vec<VertexId>> {
    g.components_by(|_| true, |e| cls.class(e).is_allowed())
}

/// The two canonical verifying sets
/// `Z1 = (ext_A ∩ A) ∪ (B \ ext_A)` and `Z2 = (ext_B ∩ B) ∪ (A \ ext_B)`.
///
/// `Z1` comes from the smallest normalized lower ideal (only the components
/// hooked up by A), `Z2` from the largest.
pub fn canonical_verifying_sets(d: &Decomposition) -> (VertexSet, VertexSet) {
    let n = d.vertex_count();
    let build = |side: Side| {
        let ext = d.ext(side);
        VertexSet::from_vertices(
            n,
            (0..n).filter(|&v| (d.side(v) == side) == ext.contains(v)),
        )
    };
    (build(Side::A), build(Side::B))
}
