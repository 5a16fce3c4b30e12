//! The graph document format: UTF-8 JSON with every rational written as an
//! exact `"p/q"` (or integer) string. Decimals are rejected everywhere.

use logsurf::rational::ParseRationalError;
use logsurf::{
    format_rational, parse_rational, DualGraph, Edge, LogSurfaceModel, ModelError, Rational,
    Vertex, VertexSet,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("parse error in field {field}: {source}")]
    Field {
        field: String,
        #[source]
        source: ParseRationalError,
    },
    #[error("validation error: {0}")]
    Validation(#[from] ModelError),
    #[error("validation error: {0}")]
    Graph(#[from] logsurf::GraphError),
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn zero_text() -> String {
    "0".to_string()
}

fn is_zero_text(s: &String) -> bool {
    s == "0"
}

fn is_zero(n: &u32) -> bool {
    *n == 0
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub id: String,
    /// Negative of the self-intersection.
    pub weight: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub genus: u32,
    #[serde(default = "zero_text", skip_serializing_if = "is_zero_text")]
    pub decoration: String,
    #[serde(default = "zero_text", skip_serializing_if = "is_zero_text")]
    pub boundary: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub a: String,
    pub b: String,
    #[serde(default = "one")]
    pub multiplicity: u32,
}

/// Expected values attached to a fixture. Keys are vertex ids; values are
/// exact rationals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    /// Coefficients of the contracted curves on the document's model.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coefficients: BTreeMap<String, String>,
    /// Discriminants of named vertex sets, keyed by `+`-joined ids.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub discriminants: BTreeMap<String, String>,
    /// Final contracted sets of all maximal runs of the first kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runs_first: Option<Vec<Vec<String>>>,
    /// Final contracted sets of all maximal runs of the second kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runs_second: Option<Vec<Vec<String>>>,
    /// Curves contracted by the almost minimalization of the first kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub almost_minimalization: Option<Vec<String>>,
    /// `(1-r)`-lc verdict for the model itself.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lc: Option<bool>,
    /// `(1-r)`-dlt verdict for the model itself.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dlt: Option<bool>,
    /// Log exceptional curves of the first kind on the model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_exceptional_first: Option<Vec<String>>,
    /// Log exceptional curves of the second kind on the model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_exceptional_second: Option<Vec<String>>,
    /// Redundant curves for the peeling of the first kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub redundant: Option<Vec<String>>,
    /// Almost log exceptional curves of the first kind for the peeling of the first kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ale_first: Option<Vec<String>>,
    /// Almost log exceptional curves of the second kind for the peeling of the second kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ale_second: Option<Vec<String>>,
    /// `(1-r)`-lc verdict for the almost minimal model of the first kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub almost_minimal_lc: Option<bool>,
    /// `(1-r)`-dlt verdict for the almost minimal model of the first kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub almost_minimal_dlt: Option<bool>,
}

impl Expectations {
    pub fn is_empty(&self) -> bool {
        self == &Expectations::default()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    /// Where the configuration comes from, in words.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub source: String,
    #[serde(default, skip_serializing_if = "Expectations::is_empty")]
    pub expect: Expectations,
}

impl Metadata {
    pub fn is_empty(&self) -> bool {
        self == &Metadata::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<VertexDoc>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub contracted: Vec<String>,
    /// Uniform boundary coefficient overriding the stored ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(default, skip_serializing_if = "Metadata::is_empty")]
    pub metadata: Metadata,
}

/// Parses an exact rational, naming the field on failure.
pub fn exact(field: &str, text: &str) -> Result<Rational, DocumentError> {
    parse_rational(text).map_err(|source| DocumentError::Field {
        field: field.to_string(),
        source,
    })
}

impl GraphDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Validates the document into a model.
    pub fn to_model(&self) -> Result<LogSurfaceModel, DocumentError> {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (k, v) in self.vertices.iter().enumerate() {
            let decoration = exact(&format!("vertices[{k}].decoration"), &v.decoration)?;
            let boundary = exact(&format!("vertices[{k}].boundary"), &v.boundary)?;
            vertices.push(
                Vertex::new(v.id.clone(), v.weight)
                    .with_genus(v.genus)
                    .with_decoration(decoration)
                    .with_boundary(boundary),
            );
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.a.clone(), e.b.clone(), e.multiplicity))
            .collect();
        let graph = DualGraph::new(vertices, edges)?;
        let ids: Vec<&str> = self.contracted.iter().map(String::as_str).collect();
        let contracted = graph.set_of(&ids)?;
        let r = self.r.as_deref().map(|t| exact("r", t)).transpose()?;
        Ok(LogSurfaceModel::new(graph, contracted, r)?)
    }

    /// The document of a model, with empty metadata.
    pub fn from_model(model: &LogSurfaceModel) -> Self {
        let g = model.graph();
        GraphDocument {
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexDoc {
                    id: v.id.0.clone(),
                    weight: v.weight,
                    genus: v.genus,
                    decoration: format_rational(&v.decoration),
                    boundary: format_rational(&v.boundary),
                })
                .collect(),
            edges: g
                .edges()
                .into_iter()
                .map(|e| EdgeDoc {
                    a: e.a.0,
                    b: e.b.0,
                    multiplicity: e.multiplicity,
                })
                .collect(),
            contracted: model
                .contracted()
                .iter()
                .map(|&v| g.id(v).to_string())
                .collect(),
            r: model.uniform_r().map(format_rational),
            metadata: Metadata::default(),
        }
    }
}

/// Parses a document and validates it into a model.
pub fn parse(text: &str) -> Result<LogSurfaceModel, DocumentError> {
    GraphDocument::from_json(text)?.to_model()
}

/// Serializes a model as a document.
pub fn serialize(model: &LogSurfaceModel) -> String {
    GraphDocument::from_model(model).to_json()
}

/// Resolves `+`- or `,`-separated vertex ids to a vertex set.
pub fn vertex_set(model: &LogSurfaceModel, ids: &str) -> Result<VertexSet, DocumentError> {
    let parts: Vec<&str> = ids
        .split(['+', ','])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    Ok(model.graph().set_of(&parts)?)
}
