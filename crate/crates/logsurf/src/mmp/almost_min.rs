//! Staged almost minimalization: peel, contract a curve whose peeled image is
//! log exceptional together with the `K`-MMP over the composite, re-peel, and
//! repeat until no such curve is left.

use super::peeling::{peel, peel_from, Peeling};
use super::runs::{find_run_within, is_partial_mmp_run, relative_k_mmp};
use super::{curve_verdict, Kind, MmpError, MmpRun, RunCheck};
use crate::classify::{eps_check, EpsVerdict};
use crate::graph::VertexSet;
use crate::model::LogSurfaceModel;
use crate::rational::Rational;
use num_traits::{One, Signed, Zero};

/// Targets larger than this are not searched for an explicit elementary run.
const EXPLICIT_RUN_LIMIT: usize = 14;

/// One pass of the staged algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmStage {
    /// Exceptional set of the peeling on the stage's model.
    pub peeling: VertexSet,
    /// The curve whose peeled image is log exceptional.
    pub curve: usize,
    /// Whether the curve lies in the boundary (a redundant curve); otherwise
    /// it is almost log exceptional and joins the boundary for this stage.
    pub redundant: bool,
    /// `K`-MMP over the contraction of `peeling + curve`, on the boundary-free
    /// model.
    pub squeeze: MmpRun,
    /// `peeling + curve` minus the squeezed curves.
    pub residual: VertexSet,
    /// The residual contraction tested as a partial run on the squeezed model.
    pub residual_check: RunCheck,
}

/// An intermediate model reached by one elementary contraction of a squeeze.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderRung {
    pub curve: usize,
    pub model: LogSurfaceModel,
    pub eps: EpsVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostMinDecomposition {
    pub kind: Kind,
    pub start: LogSurfaceModel,
    /// `eps = 1 - r` for a uniform boundary, `0` otherwise.
    pub eps: Rational,
    pub start_eps: EpsVerdict,
    pub stages: Vec<AmStage>,
    pub ladder: Vec<LadderRung>,
    /// Curves contracted by the almost minimalization.
    pub am: VertexSet,
    pub almost_minimal: LogSurfaceModel,
    pub almost_minimal_eps: EpsVerdict,
    /// The peeling of the almost minimal model onto the minimal model.
    pub min: Peeling,
    pub minimal_eps: EpsVerdict,
    /// The whole contraction as a run of elementary steps on the start model,
    /// when one is found.
    pub run: Option<MmpRun>,
}

impl AlmostMinDecomposition {
    pub fn is_almost_minimal(&self) -> bool {
        self.am.is_empty()
    }

    /// Curves contracted on the way to the minimal model.
    pub fn contracted(&self) -> VertexSet {
        self.am.union(&self.min.exceptional).copied().collect()
    }

    pub fn minimal(&self) -> &LogSurfaceModel {
        self.min.peeled()
    }
}

fn eps_for(model: &LogSurfaceModel) -> Rational {
    model
        .uniform_r()
        .map_or_else(Rational::zero, |r| Rational::one() - r)
}

/// The first curve (by id) off the peeling with negative `K`-pairing whose
/// peeled image is log exceptional of an admissible kind.
fn next_curve(
    model: &LogSurfaceModel,
    peeling: &Peeling,
    kind: Kind,
) -> Result<Option<usize>, MmpError> {
    let g = model.graph();
    let mut free: Vec<usize> = model
        .surviving()
        .into_iter()
        .filter(|v| !peeling.exceptional.contains(v))
        .collect();
    free.sort_by(|a, b| g.id(*a).cmp(g.id(*b)));
    for v in free {
        if !curve_verdict(model, v)?.k_pairing.is_negative() {
            continue;
        }
        if kind.admits(curve_verdict(peeling.peeled(), v)?.kind) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// `model` with `curve` added to the boundary: coefficient `r` under a uniform
/// boundary, `1` otherwise.
fn with_curve_in_boundary(
    model: &LogSurfaceModel,
    curve: usize,
) -> Result<LogSurfaceModel, MmpError> {
    let graph = model.graph().map_vertices(|i, v| {
        if i == curve {
            v.clone().with_boundary(Rational::one())
        } else {
            v.clone()
        }
    })?;
    Ok(LogSurfaceModel::new(
        graph,
        model.contracted().clone(),
        model.uniform_r().cloned(),
    )?)
}

/// Runs the staged almost minimalization of the requested kind.
pub fn almost_minimalize(
    model: &LogSurfaceModel,
    kind: Kind,
) -> Result<AlmostMinDecomposition, MmpError> {
    let eps = eps_for(model);
    let start_eps = eps_check(model, &eps)?;
    let mut x = model.clone();
    let mut alpha = peel(&x, kind)?;
    let mut stages = Vec::new();
    let mut ladder = Vec::new();
    let mut am = VertexSet::new();
    while let Some(curve) = next_curve(&x, &alpha, kind)? {
        let redundant = x.in_boundary(curve);
        let widened = if redundant {
            x.clone()
        } else {
            with_curve_in_boundary(&x, curve)?
        };
        let mut target = alpha.exceptional.clone();
        target.insert(curve);
        let squeeze = relative_k_mmp(&widened, &target)?;
        if squeeze.is_empty() {
            break;
        }
        let mut done = VertexSet::new();
        for step in &squeeze.steps {
            done.insert(step.verdict.vertex);
            let rung = widened.contract(&done)?;
            let verdict = eps_check(&rung, &eps)?;
            ladder.push(LadderRung {
                curve: step.verdict.vertex,
                model: rung,
                eps: verdict,
            });
        }
        let squeezed = widened.contract(&squeeze.final_contracted)?;
        let residual: VertexSet = target
            .difference(&squeeze.final_contracted)
            .copied()
            .collect();
        let residual_check = is_partial_mmp_run(&squeezed, &residual, kind)?;
        am.extend(&squeeze.final_contracted);
        stages.push(AmStage {
            peeling: alpha.exceptional.clone(),
            curve,
            redundant,
            squeeze,
            residual: residual.clone(),
            residual_check,
        });
        alpha = peel_from(&squeezed, &residual, kind)?;
        x = squeezed;
    }
    let almost_minimal_eps = eps_check(&x, &eps)?;
    let minimal_eps = eps_check(alpha.peeled(), &eps)?;
    let total: VertexSet = am.union(&alpha.exceptional).copied().collect();
    let run = if total.len() <= EXPLICIT_RUN_LIMIT {
        find_run_within(model, kind, &total)?
    } else {
        None
    };
    Ok(AlmostMinDecomposition {
        kind,
        start: model.clone(),
        eps,
        start_eps,
        stages,
        ladder,
        am,
        almost_minimal: x,
        almost_minimal_eps,
        min: alpha,
        minimal_eps,
        run,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::coefficients_linear;
    use crate::graph::{DualGraph, Edge, Vertex};
    use crate::rational::{int, rat};

    /// Reduced total transform of a cuspidal cubic: `E1 - L - E2 = [2,1,3]`
    /// and the cubic `C` of self-intersection 3 meeting `L`.
    fn cuspidal_cubic(r: Rational) -> LogSurfaceModel {
        let g = DualGraph::new(
            vec![
                Vertex::new("E1", 2).with_boundary(int(1)),
                Vertex::new("L", 1).with_boundary(int(1)),
                Vertex::new("E2", 3).with_boundary(int(1)),
                Vertex::new("C", -3).with_boundary(int(1)),
            ],
            vec![
                Edge::new("E1", "L", 1),
                Edge::new("L", "E2", 1),
                Edge::new("L", "C", 1),
            ],
        )
        .unwrap();
        LogSurfaceModel::new(g, VertexSet::new(), Some(r)).unwrap()
    }

    #[test]
    fn cuspidal_cubic_ladder() {
        for r in [rat(3, 5), rat(2, 3), rat(7, 10), rat(4, 5)] {
            let x = cuspidal_cubic(r.clone());
            let amm = almost_minimalize(&x, Kind::First).unwrap();
            let order: Vec<usize> = amm.ladder.iter().map(|rung| rung.curve).collect();
            if r < rat(4, 5) {
                assert_eq!(order, vec![1, 0, 2]);
                let cf = |i: usize, v: usize| {
                    coefficients_linear(&amm.ladder[i].model)
                        .unwrap()
                        .get(v)
                        .cloned()
                        .unwrap()
                };
                assert_eq!(cf(0, 1), int(3) * &r - int(1));
                assert_eq!(cf(1, 1), int(4) * &r - int(2));
                assert_eq!(cf(1, 0), int(2) * &r - int(1));
                assert_eq!(cf(2, 1), int(6) * &r - int(4));
                assert_eq!(cf(2, 0), int(3) * &r - int(2));
                assert!(!amm.ladder[0].eps.is_lc);
                assert!(amm.run.is_some());
                assert_eq!(amm.contracted(), VertexSet::from([0, 1, 2]));
            } else {
                assert!(amm.is_almost_minimal());
            }
        }
    }

    #[test]
    fn decomposition_reproduces_contracted_set() {
        let x = cuspidal_cubic(rat(2, 3));
        let amm = almost_minimalize(&x, Kind::First).unwrap();
        let direct = x.contract(&amm.contracted()).unwrap();
        let c = 3;
        assert_eq!(
            direct.curve_numbers(c).unwrap(),
            amm.minimal().curve_numbers(c).unwrap()
        );
        assert!(amm.stages.iter().all(|s| s.residual_check.holds));
    }
}
