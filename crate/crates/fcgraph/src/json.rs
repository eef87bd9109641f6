//! JSON exchange formats.
//!
//! A graph is `{"n": 3, "framing": [0, 1, 0], "edges": [[0, 1, "r"], [1, 2, "b"]]}`
//! with `i < j` in every edge. A linear combination is a list of
//! `{"coeff": "p/q", "graph": {...}}` terms.

use fcgraph_core::scalar::ParseScalarError;
use fcgraph_core::{canonical_form, EdgeColor, FramedGraph, GraphError, LinearCombination, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON")]
    Json(#[from] serde_json::Error),
    #[error("invalid graph")]
    Graph(#[from] GraphError),
    #[error("framing has {got} entries but n = {n}")]
    FramingLength { n: usize, got: usize },
    #[error("edge [{0}, {1}] must list the smaller vertex first")]
    UnorderedEdge(usize, usize),
    #[error("unknown edge color {0:?}; expected \"b\" or \"r\"")]
    Color(String),
    #[error("invalid coefficient")]
    Coefficient(#[from] ParseScalarError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub framing: Vec<u8>,
    pub edges: Vec<(usize, usize, String)>,
}

impl GraphJson {
    pub fn from_graph(g: &FramedGraph) -> GraphJson {
        GraphJson {
            n: g.n(),
            framing: g.framings().to_vec(),
            edges: g.edges().map(|(u, v, c)| (u, v, c.code().to_string())).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<FramedGraph, FormatError> {
        if self.framing.len() != self.n {
            return Err(FormatError::FramingLength { n: self.n, got: self.framing.len() });
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for (u, v, c) in &self.edges {
            if u >= v {
                return Err(FormatError::UnorderedEdge(*u, *v));
            }
            let color = match c.as_str() {
                "b" => EdgeColor::Black,
                "r" => EdgeColor::Red,
                other => return Err(FormatError::Color(other.to_string())),
            };
            edges.push((*u, *v, color));
        }
        Ok(FramedGraph::from_parts(&self.framing, &edges)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub graph: GraphJson,
}

pub fn parse_graph(text: &str) -> Result<FramedGraph, FormatError> {
    serde_json::from_str::<GraphJson>(text)?.to_graph()
}

pub fn graph_value(g: &FramedGraph) -> serde_json::Value {
    serde_json::to_value(GraphJson::from_graph(g)).expect("graph JSON is serializable")
}

/// Terms in key order, each graph given by its canonical representative.
pub fn combination_terms(x: &LinearCombination) -> Vec<TermJson> {
    x.iter()
        .map(|(k, c)| TermJson { coeff: c.to_string(), graph: GraphJson::from_graph(&k.to_graph()) })
        .collect()
}

pub fn combination_value(x: &LinearCombination) -> serde_json::Value {
    serde_json::to_value(combination_terms(x)).expect("combination JSON is serializable")
}

pub fn parse_combination(text: &str) -> Result<LinearCombination, FormatError> {
    let terms: Vec<TermJson> = serde_json::from_str(text)?;
    let mut out = LinearCombination::zero();
    for t in terms {
        let coeff: Scalar = t.coeff.parse()?;
        out.add_term(canonical_form(&t.graph.to_graph()?), coeff);
    }
    Ok(out)
}
