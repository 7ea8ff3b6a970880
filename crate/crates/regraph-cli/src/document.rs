//! On-disk graph description.
//!
//! A graph document is a single JSON object with keys `name`,
//! `vertex_count`, and `edges` (an array of `[u, v]` pairs, 0-indexed, each
//! unordered pair listed once). Unknown keys are rejected.

use anyhow::Context;
use serde::{Deserialize, Serialize};

use regraph_core::Graph;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub name: String,
    pub vertex_count: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphDocument {
    pub fn from_graph(name: impl Into<String>, g: &Graph) -> GraphDocument {
        GraphDocument {
            name: name.into(),
            vertex_count: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn parse(text: &str) -> anyhow::Result<GraphDocument> {
        serde_json::from_str(text).context("invalid graph document")
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serializes");
        out.push('\n');
        out
    }

    pub fn build(&self) -> anyhow::Result<Graph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges(self.vertex_count, &edges)
            .map_err(|e| anyhow::anyhow!("graph document {:?}: {e}", self.name))
    }
}
