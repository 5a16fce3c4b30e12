//! Executing runs, the coefficient characterization of runs, brute-force run
//! enumeration and smoothness checks for images.

use super::{curve_verdict, CurveVerdict, Kind, MmpError, MmpRun, Strategy};
use crate::coefficients::coefficients_linear;
use crate::graph::VertexSet;
use crate::model::LogSurfaceModel;
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Largest number of free vertices accepted by [`enumerate_runs`].
pub const ENUMERATION_LIMIT: usize = 8;

/// Contractible curves of the requested kind, restricted to `allowed`.
pub(crate) fn candidates(
    model: &LogSurfaceModel,
    kind: Kind,
    allowed: Option<&VertexSet>,
) -> Result<Vec<CurveVerdict>, MmpError> {
    let mut out = Vec::new();
    for v in model.surviving() {
        if allowed.is_some_and(|a| !a.contains(&v)) {
            continue;
        }
        let verdict = curve_verdict(model, v)?;
        if kind.admits(verdict.kind) {
            out.push(verdict);
        }
    }
    Ok(out)
}

/// Sorts candidates by the preference of `strategy`.
pub(crate) fn rank(model: &LogSurfaceModel, strategy: Strategy, cands: &mut [CurveVerdict]) {
    let g = model.graph();
    cands.sort_by(|a, b| {
        let boundary_rank = |c: &CurveVerdict| match strategy {
            Strategy::LowestId => 0,
            Strategy::BoundaryFirst => u8::from(!model.in_boundary(c.vertex)),
        };
        a.kind
            .cmp(&b.kind)
            .then_with(|| boundary_rank(a).cmp(&boundary_rank(b)))
            .then_with(|| g.id(a.vertex).cmp(g.id(b.vertex)))
    });
}

/// Contracts preferred candidates until none is left.
pub(crate) fn drive(
    start: &LogSurfaceModel,
    kind: Kind,
    strategy: Strategy,
    allowed: Option<&VertexSet>,
) -> Result<MmpRun, MmpError> {
    let mut run = MmpRun::empty(kind, start.clone());
    loop {
        let current = run.final_model().clone();
        let mut cands = candidates(&current, kind, allowed)?;
        rank(&current, strategy, &mut cands);
        let Some(next) = cands.into_iter().next() else {
            return Ok(run);
        };
        let model = current.contract(&VertexSet::from([next.vertex]))?;
        run.push(next, model);
    }
}

/// A maximal run of the requested kind.
pub fn run_mmp(
    model: &LogSurfaceModel,
    kind: Kind,
    strategy: Strategy,
) -> Result<MmpRun, MmpError> {
    drive(model, kind, strategy, None)
}

/// The same surface and contracted set with the boundary removed.
pub fn canonical_model(model: &LogSurfaceModel) -> Result<LogSurfaceModel, MmpError> {
    let graph = model
        .graph()
        .map_vertices(|_, v| v.clone().with_boundary(Rational::zero()))?;
    Ok(LogSurfaceModel::new(
        graph,
        model.contracted().clone(),
        None,
    )?)
}

fn check_target(model: &LogSurfaceModel, target: &VertexSet) -> Result<(), MmpError> {
    if let Some(&v) = target.iter().find(|&&v| model.is_contracted(v)) {
        return Err(MmpError::AlreadyContracted(model.graph().id(v).to_string()));
    }
    model.contract(target)?;
    Ok(())
}

/// The `K`-MMP over the contraction of `over`: the maximal sequence of
/// `K`-negative contractions inside `over`. Steps live on the boundary-free
/// model returned by [`canonical_model`].
pub fn relative_k_mmp(model: &LogSurfaceModel, over: &VertexSet) -> Result<MmpRun, MmpError> {
    check_target(model, over)?;
    drive(
        &canonical_model(model)?,
        Kind::First,
        Strategy::LowestId,
        Some(over),
    )
}

/// Outcome of the coefficient test for a contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunCheck {
    pub holds: bool,
    /// First contracted curve (by id) violating the required inequality.
    pub witness: Option<usize>,
    /// `(curve, coefficient before, coefficient after)` for every contracted curve.
    pub coefficients: Vec<(usize, Rational, Rational)>,
}

/// Decides whether contracting `set` is a partial run of the given kind by
/// comparing coefficients: every contracted curve must strictly lower its
/// coefficient (first kind) or not raise it (second kind).
pub fn is_partial_mmp_run(
    model: &LogSurfaceModel,
    set: &VertexSet,
    kind: Kind,
) -> Result<RunCheck, MmpError> {
    check_target(model, set)?;
    let target = model.contract(set)?;
    let after = coefficients_linear(&target)?;
    let g = model.graph();
    let mut coefficients: Vec<(usize, Rational, Rational)> = set
        .iter()
        .map(|&v| {
            (
                v,
                model.boundary_coefficient(v),
                after.get(v).cloned().unwrap_or_else(Rational::zero),
            )
        })
        .collect();
    coefficients.sort_by(|a, b| g.id(a.0).cmp(g.id(b.0)));
    let witness = coefficients
        .iter()
        .find(|(_, before, after)| match kind {
            Kind::First => after >= before,
            Kind::Second => after > before,
        })
        .map(|(v, _, _)| *v);
    Ok(RunCheck {
        holds: witness.is_none(),
        witness,
        coefficients,
    })
}

/// All maximal runs, identified by their contracted sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunEnumeration {
    /// Final contracted set of each maximal run, with one order realizing it.
    pub finals: BTreeMap<VertexSet, Vec<usize>>,
    /// Number of distinct intermediate contracted sets visited.
    pub states: usize,
}

/// Explores every order of elementary contractions of the requested kind,
/// restricted to `within` when given. Models depend only on the contracted set,
/// so states are memoized by that set.
pub fn enumerate_runs(
    model: &LogSurfaceModel,
    kind: Kind,
    within: Option<&VertexSet>,
) -> Result<RunEnumeration, MmpError> {
    let free = model
        .surviving()
        .into_iter()
        .filter(|v| within.is_none_or(|w| w.contains(v)))
        .count();
    if free > ENUMERATION_LIMIT {
        return Err(MmpError::TooLarge {
            free,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut seen: BTreeSet<VertexSet> = BTreeSet::new();
    let mut finals = BTreeMap::new();
    let mut stack: Vec<(VertexSet, Vec<usize>)> = vec![(VertexSet::new(), Vec::new())];
    seen.insert(VertexSet::new());
    while let Some((done, path)) = stack.pop() {
        let current = model.contract(&done)?;
        let cands = candidates(&current, kind, within)?;
        if cands.is_empty() {
            finals.entry(done).or_insert(path);
            continue;
        }
        for c in cands {
            let mut next = done.clone();
            next.insert(c.vertex);
            if seen.insert(next.clone()) {
                let mut p = path.clone();
                p.push(c.vertex);
                stack.push((next, p));
            }
        }
    }
    Ok(RunEnumeration {
        finals,
        states: seen.len(),
    })
}

/// A run of the requested kind contracting exactly `target`, if one exists.
/// Orders are tried by the lowest-id preference with memoized dead ends.
pub fn find_run_within(
    model: &LogSurfaceModel,
    kind: Kind,
    target: &VertexSet,
) -> Result<Option<MmpRun>, MmpError> {
    check_target(model, target)?;
    let mut dead = BTreeSet::new();
    let mut path = Vec::new();
    if !search(model, kind, target, &VertexSet::new(), &mut path, &mut dead)? {
        return Ok(None);
    }
    let mut run = MmpRun::empty(kind, model.clone());
    for verdict in path {
        let next = run
            .final_model()
            .contract(&VertexSet::from([verdict.vertex]))?;
        run.push(verdict, next);
    }
    Ok(Some(run))
}

fn search(
    model: &LogSurfaceModel,
    kind: Kind,
    target: &VertexSet,
    done: &VertexSet,
    path: &mut Vec<CurveVerdict>,
    dead: &mut BTreeSet<VertexSet>,
) -> Result<bool, MmpError> {
    if done == target {
        return Ok(true);
    }
    let current = model.contract(done)?;
    let rest: VertexSet = target.difference(done).copied().collect();
    let mut cands = candidates(&current, kind, Some(&rest))?;
    rank(&current, Strategy::LowestId, &mut cands);
    for c in cands {
        let mut next = done.clone();
        next.insert(c.vertex);
        if dead.contains(&next) {
            continue;
        }
        path.push(c);
        if search(model, kind, target, &next, path, dead)? {
            return Ok(true);
        }
        path.pop();
    }
    dead.insert(done.clone());
    Ok(false)
}

/// Order in which the contracted set of `model` blows down as successive
/// `(-1)`-curves on the smooth model, or `None` if the image is singular.
fn blowdown_order(model: &LogSurfaceModel) -> Result<Option<Vec<usize>>, MmpError> {
    let smooth = model.with_contracted(VertexSet::new())?;
    let minus_one = -Rational::one();
    let mut done = VertexSet::new();
    let mut order = Vec::new();
    while done.len() < model.contracted().len() {
        let current = smooth.with_contracted(done.clone())?;
        let mut next = None;
        for &v in model.contracted().difference(&done) {
            let (self_int, k, _) = current.curve_numbers(v)?;
            if self_int == minus_one && k == minus_one {
                next = Some(v);
                break;
            }
        }
        let Some(v) = next else { return Ok(None) };
        done.insert(v);
        order.push(v);
    }
    Ok(Some(order))
}

/// Whether every connected component of the contracted set contracts to a
/// smooth point.
pub fn image_is_smooth(model: &LogSurfaceModel) -> Result<bool, MmpError> {
    Ok(blowdown_order(model)?.is_some())
}

/// Whether the image is smooth and the boundary stays snc through every
/// blowdown. The smooth model's boundary is taken to be snc. A blown-down curve
/// may meet at most two other boundary curves, each transversally once.
pub fn boundary_stays_snc(model: &LogSurfaceModel) -> Result<bool, MmpError> {
    let Some(order) = blowdown_order(model)? else {
        return Ok(false);
    };
    let smooth = model.with_contracted(VertexSet::new())?;
    let mut done = VertexSet::new();
    for c in order {
        let current = smooth.with_contracted(done.clone())?;
        let curve = crate::Divisor::vertex(c);
        let mut contacts = Vec::new();
        for b in current.surviving() {
            if b == c || !current.in_boundary(b) {
                continue;
            }
            let m = current.intersect(&curve, &crate::Divisor::vertex(b))?;
            if !m.is_zero() {
                contacts.push(m);
            }
        }
        if contacts.len() > 2 || contacts.iter().any(|m| !m.is_one()) {
            return Ok(false);
        }
        done.insert(c);
    }
    Ok(true)
}
