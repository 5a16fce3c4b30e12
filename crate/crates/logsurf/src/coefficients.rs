//! Coefficient divisors (log discrepancies) of contracted curves.
//!
//! If `f: X -> Y` contracts `C` and `B` is the boundary on `X`, then
//! `K_X + B + sum cf(C_j) C_j` is the pullback of `K_Y + f_*B`. Meeting each
//! contracted curve trivially gives the linear system
//! `sum_j cf(C_j) (-C_j.C_k) = K.C_k + B.C_k`. Germ mode replaces `B.C_k` by
//! the vertex decoration.

use crate::bark::{bark_d, bark_transposed_twigs};
use crate::divisor::Divisor;
use crate::graph::{DualGraph, VertexSet};
use crate::invariants::{discriminant, InvariantError};
use crate::linalg;
use crate::model::LogSurfaceModel;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Exact coefficients `cf(E; target)` of the contracted curves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoefficientVector {
    pub values: BTreeMap<usize, Rational>,
}

impl CoefficientVector {
    pub fn get(&self, v: usize) -> Option<&Rational> {
        self.values.get(&v)
    }

    /// Log discrepancy `1 - cf`.
    pub fn log_discrepancy(&self, v: usize) -> Option<Rational> {
        self.get(v).map(|c| Rational::one() - c)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.values.iter().map(|(&v, c)| (v, c))
    }

    pub fn to_divisor(&self) -> Divisor {
        self.values.iter().map(|(&v, c)| (v, c.clone())).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Shared solver: `sum_j cf_j (-C_j.C_k) = K.C_k + extra(C_k)`.
pub fn solve_coefficients(
    g: &DualGraph,
    contracted: &VertexSet,
    extra: impl Fn(usize) -> Rational,
) -> Result<CoefficientVector, InvariantError> {
    if !g.is_negative_definite(contracted) {
        return Err(InvariantError::NotNegativeDefinite);
    }
    let order: Vec<usize> = contracted.iter().copied().collect();
    let rhs: Vec<Rational> = order
        .iter()
        .map(|&c| Rational::from_integer(g.canonical_degree(c).into()) + extra(c))
        .collect();
    let x = linalg::solve(&g.negated_form(&order), &rhs)
        .map_err(|_| InvariantError::NotNegativeDefinite)?;
    Ok(CoefficientVector {
        values: order.into_iter().zip(x).collect(),
    })
}

/// Coefficients over `(X, B)` of the curves in `contracted`, where `boundary`
/// is the boundary on the smooth model (its contracted components are ignored).
pub fn coefficients_with_boundary(
    g: &DualGraph,
    contracted: &VertexSet,
    boundary: &Divisor,
) -> Result<CoefficientVector, InvariantError> {
    let visible = boundary.restricted(|v| !contracted.contains(&v));
    solve_coefficients(g, contracted, |c| visible.dot_vertex(g, c))
}

/// Global mode on a model: coefficients of its contracted curves over the
/// current surface with the current boundary.
pub fn coefficients_linear(model: &LogSurfaceModel) -> Result<CoefficientVector, InvariantError> {
    let g = model.graph();
    let boundary: Divisor = (0..g.len())
        .map(|v| (v, model.boundary_coefficient(v)))
        .collect();
    coefficients_with_boundary(g, model.contracted(), &boundary)
}

/// A resolution graph: every vertex exceptional, `-Q` positive definite.
/// The decoration of a vertex is its contact with the proper transform of the
/// boundary; `theta = 2 p_a + decoration` enters the germ equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermGraph {
    graph: DualGraph,
}

impl GermGraph {
    pub fn new(graph: DualGraph) -> Result<Self, InvariantError> {
        if graph.is_empty() || !graph.is_negative_definite(&graph.all()) {
            return Err(InvariantError::NotNegativeDefinite);
        }
        Ok(GermGraph { graph })
    }

    pub fn graph(&self) -> &DualGraph {
        &self.graph
    }

    pub fn theta(&self, v: usize) -> Rational {
        let vx = self.graph.vertex(v);
        Rational::from_integer((2 * i64::from(vx.genus)).into()) + &vx.decoration
    }

    /// `k_E(E_j) = theta(E_j) - E_j^2 - 2`.
    pub fn k(&self, v: usize) -> Rational {
        self.theta(v) + Rational::from_integer((self.graph.weight(v) - 2).into())
    }

    /// `u_E(E_j) = 2 - beta_E(E_j) - theta(E_j)`.
    pub fn u(&self, v: usize) -> Rational {
        let beta = self.graph.degree_in(v, &self.graph.all());
        Rational::from_integer((2 - i64::from(beta)).into()) - self.theta(v)
    }

    pub fn is_minimal(&self) -> bool {
        self.graph.vertices().iter().all(|v| v.weight >= 2)
    }

    pub fn is_du_val(&self) -> bool {
        self.graph
            .vertices()
            .iter()
            .all(|v| v.weight == 2 && v.genus == 0 && v.decoration.is_zero())
    }

    pub fn coefficients(&self) -> CoefficientVector {
        solve_coefficients(&self.graph, &self.graph.all(), |v| {
            self.graph.vertex(v).decoration.clone()
        })
        .expect("germ graphs are negative definite")
    }
}

/// The germ of a connected contracted set `comp` of `model`. Decorations
/// record the contact with surviving boundary curves, read as reduced. The
/// second component lists the model vertex of each germ vertex.
pub fn germ_of(
    model: &LogSurfaceModel,
    comp: &VertexSet,
) -> Result<(GermGraph, Vec<usize>), InvariantError> {
    let g = model.graph();
    let (induced, _) = g.induced(comp);
    let order: Vec<usize> = comp.iter().copied().collect();
    let graph = induced
        .map_vertices(|k, v| {
            let contact: u32 = g
                .neighbors(order[k])
                .filter(|(w, _)| {
                    !model.is_contracted(*w) && !comp.contains(w) && model.in_boundary(*w)
                })
                .map(|(_, m)| m)
                .sum();
            v.clone()
                .with_decoration(&v.decoration + Rational::from_integer(contact.into()))
                .with_boundary(Rational::zero())
        })
        .expect("relabelled induced graph is valid");
    Ok((GermGraph::new(graph)?, order))
}

/// `d(E) (1 - cf(E_j)) = sum_i u(E_i) d(E - path(E_i, E_j))` on a tree,
/// returned as `cf(E_j)`.
pub fn tree_coefficient_identity(germ: &GermGraph, j: usize) -> Result<Rational, InvariantError> {
    let g = germ.graph();
    let all = g.all();
    if !g.is_tree(&all) {
        return Err(InvariantError::NotATree);
    }
    let d = Rational::from_integer(discriminant(g, &all));
    let sum: Rational = (0..g.len())
        .map(|i| {
            let path = g.tree_path(&all, i, j).expect("tree is connected");
            let rest: VertexSet = all.difference(&path).copied().collect();
            germ.u(i) * Rational::from_integer(discriminant(g, &rest))
        })
        .sum();
    Ok(Rational::one() - sum / d)
}

/// `(i, j)` cofactor of `-Q|order`, with `i`, `j` positions in `order`.
pub fn cofactor(g: &DualGraph, order: &[usize], i: usize, j: usize) -> BigInt {
    let m = g.negated_form(order);
    let minor: Vec<Vec<BigInt>> = m
        .iter()
        .enumerate()
        .filter(|&(r, _)| r != i)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(c, _)| c != j)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect();
    let det = linalg::determinant(&minor);
    if (i + j).is_multiple_of(2) {
        det
    } else {
        -det
    }
}

/// `cf = Exc - Bk_D(Exc) - (1 - r) Bk^T(T)` for a uniform boundary `rD`, where
/// `T` is the sum of the twig components of `Exc` that are not rods.
pub fn coefficient_divisor_uniform(
    g: &DualGraph,
    d: &VertexSet,
    exc: &VertexSet,
    r: &Rational,
) -> Result<CoefficientVector, InvariantError> {
    let bark = bark_d(g, d, exc)?.divisor;
    let twigs = bark_transposed_twigs(g, d, exc)?;
    let cf = Divisor::reduced(exc.iter().copied()) - bark - twigs * (Rational::one() - r);
    Ok(CoefficientVector {
        values: exc.iter().map(|&v| (v, cf.coeff(v))).collect(),
    })
}

/// Total coefficient with the vertex realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalCoefficient {
    pub value: Rational,
    pub witness: Option<usize>,
    /// Two meeting boundary curves with coefficients summing past 1: blowing up
    /// their intersection point yields a larger coefficient, so at `eps = 0`
    /// the value read off this resolution may be too small.
    pub may_under_report: bool,
}

/// Largest of the boundary coefficients of surviving curves and the
/// coefficients of contracted curves. Ties go to the smaller vertex id.
pub fn total_coefficient(model: &LogSurfaceModel) -> Result<TotalCoefficient, InvariantError> {
    let g = model.graph();
    let cf = coefficients_linear(model)?;
    let mut entries: Vec<(usize, Rational)> = model
        .surviving()
        .into_iter()
        .map(|v| (v, model.boundary_coefficient(v)))
        .chain(cf.values)
        .collect();
    entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| g.id(a.0).cmp(g.id(b.0))));
    let (value, witness) = match entries.into_iter().next() {
        Some((v, c)) => (c, Some(v)),
        None => (Rational::zero(), None),
    };
    let surviving = model.surviving();
    let may_under_report = surviving.iter().any(|&a| {
        g.neighbors(a).any(|(b, _)| {
            surviving.contains(&b)
                && model.boundary_coefficient(a) + model.boundary_coefficient(b) > Rational::one()
        })
    });
    Ok(TotalCoefficient {
        value,
        witness,
        may_under_report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, fork, Edge, Vertex};
    use crate::rational::{int, rat};

    fn germ(weights: &[i64]) -> GermGraph {
        GermGraph::new(chain(weights)).unwrap()
    }

    #[test]
    fn single_vertex_germ() {
        let e = germ(&[3]);
        assert_eq!(e.coefficients().get(0), Some(&rat(1, 3)));
        assert_eq!(tree_coefficient_identity(&e, 0).unwrap(), rat(1, 3));
    }

    #[test]
    fn du_val_germs_have_zero_coefficients() {
        for g in [
            chain(&[2, 2, 2]),
            fork(2, [&[2], &[2], &[2, 2, 2]]),
            fork(2, [&[2], &[2, 2], &[2, 2, 2, 2]]),
        ] {
            let e = GermGraph::new(g).unwrap();
            assert!(e.is_du_val());
            assert!(e.coefficients().iter().all(|(_, c)| c.is_zero()));
        }
    }

    #[test]
    fn rod_coefficients() {
        let g = chain(&[3, 2]);
        let x = LogSurfaceModel::new(g.clone(), g.all(), None).unwrap();
        let cf = coefficients_linear(&x).unwrap();
        assert_eq!(cf.get(0), Some(&rat(2, 5)));
        assert_eq!(cf.get(1), Some(&rat(1, 5)));
        assert_eq!(cf.log_discrepancy(1), Some(rat(4, 5)));
        let tcf = total_coefficient(&x).unwrap();
        assert_eq!((tcf.value, tcf.witness), (rat(2, 5), Some(0)));
    }

    #[test]
    fn cofactor_of_two_chain() {
        let g = chain(&[2, 3]);
        assert_eq!(cofactor(&g, &[0, 1], 0, 1), BigInt::one());
    }

    #[test]
    fn crossing_reduced_boundary() {
        let g = DualGraph::new(
            vec![
                Vertex::new("A", 1).with_boundary(int(1)),
                Vertex::new("B", 1).with_boundary(int(1)),
            ],
            vec![Edge::new("A", "B", 1)],
        )
        .unwrap();
        let t = total_coefficient(&LogSurfaceModel::smooth(g)).unwrap();
        assert_eq!(t.value, int(1));
        assert!(t.may_under_report);
        let g = DualGraph::new(
            vec![
                Vertex::new("A", 1).with_boundary(rat(3, 4)),
                Vertex::new("B", 1).with_boundary(rat(1, 2)),
            ],
            vec![Edge::new("A", "B", 1)],
        )
        .unwrap();
        assert!(
            total_coefficient(&LogSurfaceModel::smooth(g))
                .unwrap()
                .may_under_report
        );
    }

    #[test]
    fn uniform_formula_on_small_cases() {
        // (-2)-twig of length 3 attached to a (-1)-curve of D: cf(E_i) = i r / 4.
        let g = chain(&[2, 2, 2, 1]);
        let d = g.all();
        let exc: VertexSet = [0, 1, 2].into();
        let r = rat(1, 3);
        let cf = coefficient_divisor_uniform(&g, &d, &exc, &r).unwrap();
        for i in 0..3 {
            assert_eq!(cf.get(i).unwrap(), &(rat(i as i64 + 1, 4) * &r));
        }
    }
}
