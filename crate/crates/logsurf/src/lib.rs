//! Exact combinatorics of log surfaces.
//!
//! A log surface is encoded by the weighted dual graph of its smooth model, a
//! boundary with rational coefficients and a negative definite set of curves
//! that have already been contracted. On top of this the crate computes
//! discriminants, barks and coefficient divisors, classifies germs, and runs
//! peelings, squeezings and almost minimalizations.

pub mod bark;
pub mod classify;
pub mod coefficients;
pub mod divisor;
pub mod graph;
pub mod invariants;
pub mod linalg;
pub mod mmp;
pub mod model;
pub mod rational;
pub mod shapes;

pub use divisor::Divisor;
pub use graph::{DualGraph, Edge, GraphError, Site, Vertex, VertexId, VertexSet};
pub use model::{LogSurfaceModel, ModelError};
pub use rational::{format_rational, parse_rational, rat, Rational};
