//! JSON input and output formats.
//!
//! Input: `{"a": 2, "b": 1, "edges": [[0, 0], [1, 0]], "cap": {"b0": 2}}`,
//! capacities defaulting to 1. Output: [`DecompositionDocument`], which names
//! vertices `a<i>` / `b<j>` by their input position.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classification::{canonical_verifying_sets, loose_attainable, EdgeClassification};
use crate::decomposition::Decomposition;
use crate::error::Error;
use crate::graph::{BipartiteGraph, VertexSet};
use crate::matching::Matching;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphInput {
    pub a: usize,
    pub b: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub cap: BTreeMap<String, i64>,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid graph: {0}")]
    Graph(#[from] Error),
}

impl GraphInput {
    pub fn to_graph(&self) -> Result<BipartiteGraph, Error> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[a, b]| (a, b)).collect();
        // Resolve names against a unit-capacity copy first so that bad names
        // are reported before bad values.
        let shape = BipartiteGraph::with_uniform_caps(self.a, self.b, &edges, 1)?;
        let mut caps = vec![1i64; self.a + self.b];
        for (name, &k) in &self.cap {
            caps[shape.vertex_by_name(name)?] = k;
        }
        BipartiteGraph::new(self.a, self.b, &edges, &caps)
    }

    pub fn from_graph(g: &BipartiteGraph) -> Self {
        let offset = g.a_count();
        GraphInput {
            a: g.a_count(),
            b: g.b_count(),
            edges: g.edges().iter().map(|&(a, b)| [a, b - offset]).collect(),
            cap: g
                .vertices()
                .map(|v| (g.vertex_name(v), g.cap(v) as i64))
                .collect(),
        }
    }
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph, InputError> {
    let input: GraphInput = serde_json::from_str(text)?;
    Ok(input.to_graph()?)
}

/// Pretty JSON of `g` in the input format, with every capacity spelled out.
pub fn graph_to_json(g: &BipartiteGraph) -> String {
    serde_json::to_string_pretty(&GraphInput::from_graph(g)).expect("graph serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub id: usize,
    pub vertices: Vec<String>,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDocument {
    pub schema_version: String,
    pub matching: Vec<[String; 2]>,
    pub max_size: usize,
    pub components: Vec<ComponentEntry>,
    pub order_arcs: Vec<[usize; 2]>,
    #[serde(rename = "ext_A")]
    pub ext_a: Vec<String>,
    #[serde(rename = "ext_B")]
    pub ext_b: Vec<String>,
    #[serde(rename = "D_set")]
    pub d_set: Vec<String>,
    /// Keyed `"a<i>-b<j>"`.
    pub edge_classes: BTreeMap<String, String>,
    pub canonical_verifying: [Vec<String>; 2],
}

impl DecompositionDocument {
    pub fn build(
        g: &BipartiteGraph,
        m: &Matching,
        d: &Decomposition,
        cls: &EdgeClassification,
    ) -> Self {
        let names = |s: &VertexSet| -> Vec<String> { s.iter().map(|v| g.vertex_name(v)).collect() };
        let edge_name = |(a, b): (usize, usize)| [g.vertex_name(a), g.vertex_name(b)];
        let (z1, z2) = canonical_verifying_sets(d);
        DecompositionDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            matching: m
                .edges()
                .into_iter()
                .map(|e| edge_name(g.edge(e)))
                .collect(),
            max_size: m.size(),
            components: d
                .components()
                .iter()
                .map(|c| ComponentEntry {
                    id: c.id,
                    vertices: c.vertices.iter().map(|&v| g.vertex_name(v)).collect(),
                    kind: c.kind.as_str().to_string(),
                })
                .collect(),
            order_arcs: d.order_arcs().iter().map(|&(x, y)| [x, y]).collect(),
            ext_a: names(d.ext(crate::graph::Side::A)),
            ext_b: names(d.ext(crate::graph::Side::B)),
            d_set: names(&loose_attainable(d)),
            edge_classes: g
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &edge)| {
                    let [a, b] = edge_name(edge);
                    (format!("{a}-{b}"), cls.class(e).as_str().to_string())
                })
                .collect(),
            canonical_verifying: [names(&z1), names(&z2)],
        }
    }
}
