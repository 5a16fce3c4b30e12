//! A log surface represented by its smooth model and a contracted set.
//!
//! Divisors on the contracted surface are handled through Mumford pullback:
//! the unique rational correction supported on contracted curves that makes
//! the pullback meet every contracted curve trivially.

use crate::divisor::Divisor;
use crate::graph::{DualGraph, GraphError, VertexSet};
use crate::linalg::{self, LinalgError};
use crate::rational::{format_rational, in_unit_interval, Rational};
use num_traits::{Signed, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("contracted set {{{}}} is not negative definite", .0.join(", "))]
    NotNegativeDefinite(Vec<String>),
    #[error("uniform boundary coefficient {0} is outside [0,1]")]
    ROutOfRange(String),
}

impl From<LinalgError> for ModelError {
    fn from(_: LinalgError) -> Self {
        ModelError::NotNegativeDefinite(Vec::new())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogSurfaceModel {
    graph: Arc<DualGraph>,
    contracted: VertexSet,
    uniform_r: Option<Rational>,
}

impl LogSurfaceModel {
    pub fn new(
        graph: DualGraph,
        contracted: VertexSet,
        uniform_r: Option<Rational>,
    ) -> Result<Self, ModelError> {
        Self::from_shared(Arc::new(graph), contracted, uniform_r)
    }

    pub fn from_shared(
        graph: Arc<DualGraph>,
        contracted: VertexSet,
        uniform_r: Option<Rational>,
    ) -> Result<Self, ModelError> {
        if let Some(&bad) = contracted.iter().find(|&&v| v >= graph.len()) {
            return Err(GraphError::UnknownVertex(format!("#{bad}")).into());
        }
        if let Some(r) = &uniform_r {
            if !in_unit_interval(r) {
                return Err(ModelError::ROutOfRange(format_rational(r)));
            }
        }
        if !graph.is_negative_definite(&contracted) {
            return Err(ModelError::NotNegativeDefinite(
                contracted
                    .iter()
                    .map(|&v| graph.id(v).to_string())
                    .collect(),
            ));
        }
        Ok(LogSurfaceModel {
            graph,
            contracted,
            uniform_r,
        })
    }

    /// Smooth model with nothing contracted.
    pub fn smooth(graph: DualGraph) -> Self {
        LogSurfaceModel {
            graph: Arc::new(graph),
            contracted: VertexSet::new(),
            uniform_r: None,
        }
    }

    pub fn graph(&self) -> &DualGraph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<DualGraph> {
        Arc::clone(&self.graph)
    }

    pub fn contracted(&self) -> &VertexSet {
        &self.contracted
    }

    pub fn uniform_r(&self) -> Option<&Rational> {
        self.uniform_r.as_ref()
    }

    pub fn is_contracted(&self, v: usize) -> bool {
        self.contracted.contains(&v)
    }

    /// Vertices still visible on the current model.
    pub fn surviving(&self) -> VertexSet {
        (0..self.graph.len())
            .filter(|v| !self.contracted.contains(v))
            .collect()
    }

    pub fn with_uniform_r(&self, r: Option<Rational>) -> Result<Self, ModelError> {
        Self::from_shared(self.shared_graph(), self.contracted.clone(), r)
    }

    pub fn with_contracted(&self, contracted: VertexSet) -> Result<Self, ModelError> {
        Self::from_shared(self.shared_graph(), contracted, self.uniform_r.clone())
    }

    /// The model obtained by additionally contracting `extra`.
    pub fn contract(&self, extra: &VertexSet) -> Result<Self, ModelError> {
        self.with_contracted(self.contracted.union(extra).copied().collect())
    }

    /// Whether `v` belongs to the reduced boundary `D` (positive coefficient in
    /// the document).
    pub fn in_boundary(&self, v: usize) -> bool {
        self.graph.vertex(v).boundary.is_positive()
    }

    /// Support of the reduced boundary, contracted curves included.
    pub fn boundary_support(&self) -> VertexSet {
        (0..self.graph.len())
            .filter(|&v| self.in_boundary(v))
            .collect()
    }

    /// Effective boundary coefficient: `r` on flagged vertices when a uniform
    /// coefficient is set, the stored coefficient otherwise.
    pub fn boundary_coefficient(&self, v: usize) -> Rational {
        match &self.uniform_r {
            Some(r) if self.in_boundary(v) => r.clone(),
            _ => self.graph.vertex(v).boundary.clone(),
        }
    }

    /// Proper transform of the boundary of the current model.
    pub fn boundary_divisor(&self) -> Divisor {
        self.surviving()
            .into_iter()
            .map(|v| (v, self.boundary_coefficient(v)))
            .collect()
    }

    /// Mumford pullback of `a` (its contracted components are discarded first).
    pub fn pullback(&self, a: &Divisor) -> Result<Divisor, ModelError> {
        let a = a.restricted(|v| !self.contracted.contains(&v));
        if self.contracted.is_empty() {
            return Ok(a);
        }
        let order: Vec<usize> = self.contracted.iter().copied().collect();
        let rhs: Vec<Rational> = order
            .iter()
            .map(|&c| a.dot_vertex(&self.graph, c))
            .collect();
        let corr = linalg::solve(&self.graph.negated_form(&order), &rhs)?;
        Ok(order.into_iter().zip(corr).fold(a, |mut acc, (v, c)| {
            acc.add_to(v, &c);
            acc
        }))
    }

    /// Intersection of the images of `a` and `b` on the current model.
    pub fn intersect(&self, a: &Divisor, b: &Divisor) -> Result<Rational, ModelError> {
        let b = b.restricted(|v| !self.contracted.contains(&v));
        Ok(self.pullback(a)?.dot(&self.graph, &b))
    }

    /// `A . K` on the current model.
    pub fn canonical_intersect(&self, a: &Divisor) -> Result<Rational, ModelError> {
        let pa = self.pullback(a)?;
        Ok(pa
            .iter()
            .map(|(v, c)| c * Rational::from_integer(self.graph.canonical_degree(v).into()))
            .sum())
    }

    /// `A . (K + B)` where `B` is the boundary of the current model.
    pub fn log_canonical_intersect(&self, a: &Divisor) -> Result<Rational, ModelError> {
        let k = self.canonical_intersect(a)?;
        Ok(k + self.intersect(a, &self.boundary_divisor())?)
    }

    pub fn self_intersection(&self, v: usize) -> Result<Rational, ModelError> {
        let d = Divisor::vertex(v);
        self.intersect(&d, &d)
    }

    /// Numerical data of a surviving curve: `(self-intersection, K-pairing, (K+B)-pairing)`.
    pub fn curve_numbers(&self, v: usize) -> Result<(Rational, Rational, Rational), ModelError> {
        let d = Divisor::vertex(v);
        let pd = self.pullback(&d)?;
        let g = &self.graph;
        let self_int = pd.dot_vertex(g, v);
        let k: Rational = pd
            .iter()
            .map(|(u, c)| c * Rational::from_integer(g.canonical_degree(u).into()))
            .sum();
        let b = self.boundary_divisor();
        let kb = &k + pd.dot(g, &b);
        Ok((self_int, k, kb))
    }

    /// True when `a` has zero coefficients on all contracted curves.
    pub fn off_contracted(&self, a: &Divisor) -> bool {
        a.support().all(|v| !self.contracted.contains(&v)) || a.iter().all(|(_, c)| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, Edge, Vertex};
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn chain_model(weights: &[i64], contracted: &[usize]) -> LogSurfaceModel {
        LogSurfaceModel::new(chain(weights), contracted.iter().copied().collect(), None).unwrap()
    }

    #[test]
    fn middle_curve_of_contracted_ends() {
        for (n, m) in [(2, 3), (4, 4), (3, 7)] {
            let x = chain_model(&[n, 1, m], &[0, 2]);
            let l = Divisor::vertex(1);
            assert_eq!(
                x.intersect(&l, &l).unwrap(),
                int(-1) + rat(1, n) + rat(1, m)
            );
            assert_eq!(
                x.canonical_intersect(&l).unwrap(),
                int(1) - rat(2, n) - rat(2, m)
            );
        }
    }

    #[test]
    fn trivial_pullbacks() {
        let x = chain_model(&[2], &[]);
        let e = Divisor::vertex(0);
        assert_eq!(x.intersect(&e, &e).unwrap(), int(-2));
        let x = chain_model(&[2, 1], &[0]);
        assert_eq!(x.self_intersection(1).unwrap(), rat(-1, 2));
        let lone = chain_model(&[1], &[]);
        assert_eq!(
            lone.canonical_intersect(&Divisor::vertex(0)).unwrap(),
            int(-1)
        );
    }

    #[test]
    fn hirzebruch_section() {
        let g = DualGraph::new(
            vec![Vertex::new("C", 5), Vertex::new("F", 0)],
            vec![Edge::new("C", "F", 1)],
        )
        .unwrap();
        let x = LogSurfaceModel::smooth(g);
        assert_eq!(x.canonical_intersect(&Divisor::vertex(0)).unwrap(), int(3));
    }

    #[test]
    fn rejects_non_negative_definite_contraction() {
        let err = LogSurfaceModel::new(chain(&[1, 1]), [0, 1].into(), None);
        assert!(matches!(err, Err(ModelError::NotNegativeDefinite(_))));
    }

    fn chain_with_contraction() -> impl Strategy<Value = (Vec<i64>, Vec<bool>, Vec<i64>, Vec<i64>)>
    {
        (2usize..=6).prop_flat_map(|n| {
            (
                proptest::collection::vec(2i64..=5, n),
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(-3i64..=3, n),
                proptest::collection::vec(-3i64..=3, n),
            )
        })
    }

    proptest! {
        #[test]
        fn pullback_is_orthogonal_and_form_symmetric((w, mask, a, b) in chain_with_contraction()) {
            let contracted: VertexSet = mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
            let x = chain_model(&w, &contracted.iter().copied().collect::<Vec<_>>());
            let da: Divisor = a.iter().enumerate().filter(|(i, _)| !contracted.contains(i)).map(|(i, &c)| (i, int(c))).collect();
            let db: Divisor = b.iter().enumerate().filter(|(i, _)| !contracted.contains(i)).map(|(i, &c)| (i, int(c))).collect();
            let pa = x.pullback(&da).unwrap();
            for &c in &contracted {
                prop_assert!(pa.dot_vertex(x.graph(), c).is_zero());
            }
            let ab = x.intersect(&da, &db).unwrap();
            prop_assert_eq!(&ab, &x.intersect(&db, &da).unwrap());
            let pb = x.pullback(&db).unwrap();
            prop_assert_eq!(&ab, &pa.dot(x.graph(), &pb));
        }
    }
}
