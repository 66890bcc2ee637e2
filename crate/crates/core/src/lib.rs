//! Dulmage-Mendelsohn decomposition for b-matchings in bipartite graphs.
//!
//! Pipeline: [`max_b_matching`] finds a maximum b-matching, [`decompose`]
//! turns it into the canonical flexible components and their partial order,
//! [`classify_edges`] reads off forbidden / inevitable / flexible edges, and
//! the [`verifying`] module converts between normalized ideals of the order
//! and the verifying sets of the min-max formula.
//!
//! The [`oracle`] module recomputes everything by exhaustive enumeration on
//! small graphs and compares.
//!
//! ```
//! use dmb_core::{decompose, max_b_matching, BipartiteGraph, ComponentKind};
//!
//! // a0 - b0 - a1 with unit capacities
//! let g = BipartiteGraph::with_uniform_caps(2, 1, &[(0, 0), (1, 0)], 1).unwrap();
//! let m = max_b_matching(&g);
//! let d = decompose(&g, &m).unwrap();
//! assert_eq!(d.component_count(), 1);
//! assert_eq!(d.components()[0].kind, ComponentKind::LooseHookedA);
//! ```

pub mod classification;
pub mod decomposition;
pub mod digraph;
pub mod document;
pub mod dot;
pub mod error;
pub mod generate;
pub mod graph;
pub mod matching;
pub mod oracle;
mod par;
pub mod verifying;

pub use classification::{
    canonical_verifying_sets, classify_edges, elementary_components, loose_attainable, EdgeClass,
    EdgeClassification,
};
pub use decomposition::{
    certify_maximum, decompose, inconsistent_unit, restricted_capacity, ComponentKind,
    Decomposition, FlexComponent,
};
pub use digraph::{
    strongly_connected_components, strongly_connected_components_within, AuxDigraph, Condensation,
};
pub use error::{Error, Result};
pub use graph::{BipartiteGraph, EdgeId, Side, VertexId, VertexSet};
pub use matching::{is_b_matching, loose_vertices, max_b_matching, Matching};
pub use verifying::{
    enumerate_normalized_ideals, enumerate_verifying_sets, ideal_to_verifying, is_verifying,
    verifying_cost, verifying_to_ideal, NormalizedIdealPair,
};
