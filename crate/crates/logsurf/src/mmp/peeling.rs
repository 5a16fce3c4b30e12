//! Peelings: maximal pure runs supported in the boundary, with the shape
//! descriptions available for uniform boundaries `rD` with `r <= 1/2` and for
//! reduced boundaries.

use super::runs::drive;
use super::{Kind, MmpError, MmpRun, Strategy};
use crate::bark::fork_delta;
use crate::graph::{DualGraph, VertexSet};
use crate::model::LogSurfaceModel;
use crate::rational::{rat, Rational};
use crate::shapes::{
    all_admissible, all_weight_two, as_fork, beta, chain_order, find_shapes, is_admissible_vertex,
};
use num_traits::{One, Signed};

/// The exceptional set of a maximal pure peeling for `0 < r <= 1/2`, split by
/// shape.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PeelingDecomposition {
    /// `(-2)`-rods and negative definite `(-2)`-forks of `D`.
    pub gamma: VertexSet,
    /// Rods `[3,2,...,2]` of `D` with `k` components, `k` below `r/(1-2r)`
    /// (first kind) or at most it (second kind); all of them at `r = 1/2`.
    pub lambda: VertexSet,
    /// Maximal `(-2)`-twigs of `D - gamma - lambda`.
    pub delta: VertexSet,
    /// Curves contracted by the peeling outside the three families (second
    /// kind only).
    pub other: VertexSet,
}

impl PeelingDecomposition {
    pub fn union(&self) -> VertexSet {
        self.gamma
            .iter()
            .chain(&self.lambda)
            .chain(&self.delta)
            .copied()
            .collect()
    }
}

/// A maximal pure partial peeling found greedily.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peeling {
    pub kind: Kind,
    /// Steps after the initial contraction passed to [`peel_from`].
    pub run: MmpRun,
    /// All curves contracted by the peeling, initial ones included.
    pub exceptional: VertexSet,
    pub decomposition: Option<PeelingDecomposition>,
    /// Admissible twigs, rods and forks of a reduced boundary on a smooth
    /// model (first kind only).
    pub reduced_shapes: Option<VertexSet>,
}

impl Peeling {
    /// The peeled model.
    pub fn peeled(&self) -> &LogSurfaceModel {
        self.run.final_model()
    }
}

/// Maximal pure partial peeling of the requested kind.
pub fn peel(model: &LogSurfaceModel, kind: Kind) -> Result<Peeling, MmpError> {
    peel_from(model, &VertexSet::new(), kind)
}

/// Extends the pure partial peeling contracting `initial` to a maximal one.
/// Only boundary curves with non-negative `K`-pairing on `model` are
/// contracted; they are taken greedily by lowest id.
pub fn peel_from(
    model: &LogSurfaceModel,
    initial: &VertexSet,
    kind: Kind,
) -> Result<Peeling, MmpError> {
    let mut pure = VertexSet::new();
    for v in model.surviving() {
        if initial.contains(&v) || !model.in_boundary(v) {
            continue;
        }
        let (_, k, _) = model.curve_numbers(v)?;
        if !k.is_negative() {
            pure.insert(v);
        }
    }
    let start = model.contract(initial)?;
    let run = drive(&start, kind, Strategy::LowestId, Some(&pure))?;
    let exceptional: VertexSet = initial.union(&run.final_contracted).copied().collect();
    let smooth_start = model.contracted().is_empty() && initial.is_empty();
    let g = model.graph();
    let d = model.boundary_support();
    let decomposition = match (smooth_start, model.uniform_r()) {
        (true, Some(r)) if r.is_positive() && *r <= rat(1, 2) => {
            let mut dec = half_decomposition(g, &d, r, kind);
            dec.other = exceptional.difference(&dec.union()).copied().collect();
            Some(dec)
        }
        _ => None,
    };
    let reduced = smooth_start
        && kind == Kind::First
        && d.iter().all(|&v| model.boundary_coefficient(v).is_one());
    let reduced_shapes = reduced.then(|| reduced_peeling_shapes(g, &d));
    Ok(Peeling {
        kind,
        run,
        exceptional,
        decomposition,
        reduced_shapes,
    })
}

fn is_a_star_rod(g: &DualGraph, order: &[usize]) -> bool {
    let weights: Vec<i64> = order.iter().map(|&v| g.weight(v)).collect();
    let minus_two_tail = |w: &[i64]| w.iter().all(|&x| x == 2);
    all_rational(g, order)
        && match weights.as_slice() {
            [3, rest @ ..] => minus_two_tail(rest),
            [rest @ .., 3] => minus_two_tail(rest),
            _ => false,
        }
}

fn all_rational(g: &DualGraph, vs: &[usize]) -> bool {
    vs.iter().all(|&v| g.vertex(v).is_rational())
}

/// Shape description of the maximal pure peeling for `0 < r <= 1/2`.
fn half_decomposition(
    g: &DualGraph,
    d: &VertexSet,
    r: &Rational,
    kind: Kind,
) -> PeelingDecomposition {
    let mut dec = PeelingDecomposition::default();
    let half = rat(1, 2);
    for comp in g.components(d) {
        if let Some(order) = chain_order(g, &comp) {
            if all_weight_two(g, order.iter().copied()) {
                dec.gamma.extend(&comp);
                continue;
            }
            if is_a_star_rod(g, &order) {
                let qualifies = *r == half || {
                    let k = Rational::from_integer(order.len().into());
                    let threshold = r / (Rational::one() - r * Rational::from_integer(2.into()));
                    match kind {
                        Kind::First => k < threshold,
                        Kind::Second => k <= threshold,
                    }
                };
                if qualifies {
                    dec.lambda.extend(&comp);
                }
                continue;
            }
        }
        if as_fork(g, &comp).is_some()
            && all_weight_two(g, comp.iter().copied())
            && g.is_negative_definite(&comp)
        {
            dec.gamma.extend(&comp);
        }
    }
    let rest: VertexSet = d
        .difference(&dec.gamma)
        .filter(|v| !dec.lambda.contains(v))
        .copied()
        .collect();
    for &t in &rest {
        if beta(g, d, t) == 1 && all_weight_two(g, [t]) {
            dec.delta.extend(minus_two_twig_from(g, d, t));
        }
    }
    dec
}

/// The longest `(-2)`-twig of `D` starting at the tip `t`.
fn minus_two_twig_from(g: &DualGraph, d: &VertexSet, t: usize) -> Vec<usize> {
    let mut order = vec![t];
    let mut prev = None;
    let mut cur = t;
    loop {
        let nexts: Vec<(usize, u32)> = g
            .neighbors(cur)
            .filter(|(j, _)| d.contains(j) && Some(*j) != prev)
            .collect();
        let [(next, 1)] = nexts[..] else { return order };
        if order.contains(&next) || beta(g, d, next) != 2 || !all_weight_two(g, [next]) {
            return order;
        }
        order.push(next);
        prev = Some(cur);
        cur = next;
    }
}

/// Union of the admissible forks, admissible rods and the longest admissible
/// initial pieces of the maximal twigs of a reduced boundary.
pub fn reduced_peeling_shapes(g: &DualGraph, d: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    for comp in g.components(d) {
        if let Some(f) = as_fork(g, &comp) {
            if all_admissible(g, comp.iter().copied()) && fork_delta(g, &f) > Rational::one() {
                out.extend(&comp);
            }
        }
    }
    let shapes = find_shapes(g, d);
    for piece in shapes.twigs.iter().chain(&shapes.rods) {
        if all_admissible(g, piece.iter().copied()) {
            out.extend(piece);
            continue;
        }
        let ends: Vec<Vec<usize>> = if shapes.rods.contains(piece) {
            vec![piece.clone(), piece.iter().rev().copied().collect()]
        } else {
            vec![piece.clone()]
        };
        for end in ends {
            out.extend(
                end.iter()
                    .copied()
                    .take_while(|&v| is_admissible_vertex(g, v)),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, Edge, Vertex};
    use crate::rational::int;

    fn uniform(g: DualGraph, r: Rational) -> LogSurfaceModel {
        let g = g
            .map_vertices(|_, v| v.clone().with_boundary(int(1)))
            .unwrap();
        LogSurfaceModel::new(g, VertexSet::new(), Some(r)).unwrap()
    }

    #[test]
    fn three_tip_survives_for_small_r() {
        // [3]-tip attached to a 0-curve: contracted iff r > 1/2.
        for (r, contracted) in [(rat(1, 3), false), (rat(1, 2), false), (rat(2, 3), true)] {
            let x = uniform(chain(&[3, 0]), r);
            assert_eq!(
                peel(&x, Kind::First).unwrap().exceptional.contains(&0),
                contracted
            );
        }
        let x = uniform(chain(&[3, 0]), rat(1, 2));
        assert!(peel(&x, Kind::Second).unwrap().exceptional.contains(&0));
    }

    #[test]
    fn half_decomposition_matches_greedy() {
        // (-2)-twig [2,2] on a 0-curve, a separate rod [3,2,2] and a (-2)-rod.
        let g = DualGraph::new(
            vec![
                Vertex::new("A1", 2),
                Vertex::new("A2", 2),
                Vertex::new("F", 0),
                Vertex::new("R1", 3),
                Vertex::new("R2", 2),
                Vertex::new("R3", 2),
                Vertex::new("G", 2),
            ],
            vec![
                Edge::new("A1", "A2", 1),
                Edge::new("A2", "F", 1),
                Edge::new("R1", "R2", 1),
                Edge::new("R2", "R3", 1),
            ],
        )
        .unwrap();
        let x = uniform(g, rat(1, 2));
        let p = peel(&x, Kind::First).unwrap();
        let dec = p.decomposition.clone().unwrap();
        assert_eq!(dec.gamma, VertexSet::from([6]));
        assert_eq!(dec.lambda, VertexSet::from([3, 4, 5]));
        assert_eq!(dec.delta, VertexSet::from([0, 1]));
        assert!(dec.other.is_empty());
        assert_eq!(p.exceptional, dec.union());
        // At r = 2/5 the threshold r/(1-2r) = 2 excludes the rod with k = 3;
        // its (-2)-end is then a (-2)-twig of D.
        let x = x.with_uniform_r(Some(rat(2, 5))).unwrap();
        let p = peel(&x, Kind::First).unwrap();
        let dec = p.decomposition.clone().unwrap();
        assert!(dec.lambda.is_empty());
        assert_eq!(dec.delta, VertexSet::from([0, 1, 4, 5]));
        assert_eq!(p.exceptional, dec.union());
    }

    #[test]
    fn reduced_shapes_match_greedy() {
        // Fork <[3]; [2], [2], [2,4]> together with a twig [2,3] of a 0-curve.
        let g = DualGraph::new(
            vec![
                Vertex::new("B", 3),
                Vertex::new("P", 2),
                Vertex::new("Q", 2),
                Vertex::new("S1", 2),
                Vertex::new("S2", 4),
                Vertex::new("T1", 2),
                Vertex::new("T2", 3),
                Vertex::new("F", 0),
            ],
            vec![
                Edge::new("B", "P", 1),
                Edge::new("B", "Q", 1),
                Edge::new("B", "S1", 1),
                Edge::new("S1", "S2", 1),
                Edge::new("T1", "T2", 1),
                Edge::new("T2", "F", 1),
            ],
        )
        .unwrap();
        let x = uniform(g, int(1));
        let p = peel(&x, Kind::First).unwrap();
        assert_eq!(p.reduced_shapes.as_ref(), Some(&p.exceptional));
        assert_eq!(p.exceptional, (0..7).collect());
    }
}
