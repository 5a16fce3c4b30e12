//! Classification of germs: log terminal and log canonical resolution graphs,
//! du Val types, germs with coefficients at most one half, epsilon-lc checks
//! and subgraph monotonicity of coefficients.

use crate::bark::fork_delta;
use crate::coefficients::{total_coefficient, CoefficientVector, GermGraph};
use crate::graph::{DualGraph, Edge, Vertex, VertexSet};
use crate::invariants::{discriminant, InvariantError};
use crate::model::LogSurfaceModel;
use crate::rational::Rational;
use crate::shapes::{
    all_weight_two, as_bench, as_fork, as_half_bench, chain_order, is_cycle, is_segment, is_twig,
    twig_order, Bench, Fork, HalfBench,
};
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("resolution graph is not minimal: {0} is a smooth rational curve of weight below 2")]
    NotMinimal(String),
    #[error("resolution graph is not connected")]
    NotConnected,
    #[error("decoration of {0} is not an integral boundary contact")]
    NonIntegralContact(String),
    #[error("boundary flag disagrees with the decorations (total contact {0})")]
    BoundaryMismatch(String),
    #[error("germ is not in the list of germs with coefficients at most 1/2")]
    NotApplicable,
    #[error("germ is not log terminal")]
    NotLogTerminal,
    #[error("embedding is not a weighted decorated subgraph: {0}")]
    NotASubgraph(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Outcome of the log terminal / log canonical classification of a germ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GermClass {
    LtNoBoundaryRod { chain: Vec<usize> },
    LtNoBoundaryFork { fork: Fork, delta: Rational },
    LtTwig { chain: Vec<usize> },
    LcEllipticCurve { vertex: usize },
    LcCycle { cycle: Vec<usize> },
    LcFork { fork: Fork },
    LcBench { bench: Bench },
    LcHalfBench { half_bench: HalfBench },
    LcSegment { chain: Vec<usize> },
    NotLc,
}

impl GermClass {
    pub fn tag(&self) -> &'static str {
        match self {
            GermClass::LtNoBoundaryRod { .. } => "LT-NoBoundary-Rod",
            GermClass::LtNoBoundaryFork { .. } => "LT-NoBoundary-Fork",
            GermClass::LtTwig { .. } => "LT-Twig",
            GermClass::LcEllipticCurve { .. } => "LC-EllipticCurve",
            GermClass::LcCycle { .. } => "LC-Cycle",
            GermClass::LcFork { .. } => "LC-Fork",
            GermClass::LcBench { .. } => "LC-Bench",
            GermClass::LcHalfBench { .. } => "LC-HalfBench",
            GermClass::LcSegment { .. } => "LC-Segment",
            GermClass::NotLc => "NotLC",
        }
    }

    pub fn is_log_terminal(&self) -> bool {
        matches!(
            self,
            GermClass::LtNoBoundaryRod { .. }
                | GermClass::LtNoBoundaryFork { .. }
                | GermClass::LtTwig { .. }
        )
    }

    pub fn is_log_canonical(&self) -> bool {
        !matches!(self, GermClass::NotLc)
    }
}

impl fmt::Display for GermClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The germ graph together with one pseudo-vertex per boundary contact, so
/// that shape tests can be run relative to `D = E + boundary`.
struct Augmented {
    graph: DualGraph,
    exceptional: VertexSet,
    boundary: VertexSet,
    contact: u32,
}

fn augment(germ: &GermGraph) -> Result<Augmented, ClassifyError> {
    let g = germ.graph();
    let mut vertices: Vec<Vertex> = g.vertices().to_vec();
    let mut edges = g.edges();
    let mut contact = 0u32;
    for v in g.vertices() {
        if v.decoration.is_zero() {
            continue;
        }
        if !v.decoration.is_integer() {
            return Err(ClassifyError::NonIntegralContact(v.id.0.clone()));
        }
        let m: u32 = v
            .decoration
            .to_integer()
            .try_into()
            .map_err(|_| ClassifyError::NonIntegralContact(v.id.0.clone()))?;
        contact += m;
        let id = format!("{}#boundary", v.id.0);
        vertices.push(Vertex::new(id.clone(), 0));
        edges.push(Edge::new(v.id.0.clone(), id, m));
    }
    let graph = DualGraph::new(vertices, edges).expect("augmented germ graph is valid");
    let exceptional: VertexSet = (0..g.len()).collect();
    let boundary: VertexSet = (g.len()..graph.len()).collect();
    Ok(Augmented {
        graph,
        exceptional,
        boundary,
        contact,
    })
}

fn check_minimal_connected(germ: &GermGraph) -> Result<(), ClassifyError> {
    let g = germ.graph();
    if let Some(v) = g
        .vertices()
        .iter()
        .find(|v| v.is_rational() && v.weight < 2)
    {
        return Err(ClassifyError::NotMinimal(v.id.0.clone()));
    }
    if !g.is_connected(&g.all()) {
        return Err(ClassifyError::NotConnected);
    }
    Ok(())
}

/// Log terminal / log canonical classification of a minimal resolution graph.
/// Decorations are read as contacts with a reduced boundary.
pub fn classify_germ(germ: &GermGraph, has_boundary: bool) -> Result<GermClass, ClassifyError> {
    check_minimal_connected(germ)?;
    let aug = augment(germ)?;
    if has_boundary != (aug.contact > 0) {
        return Err(ClassifyError::BoundaryMismatch(aug.contact.to_string()));
    }
    let g = &aug.graph;
    let e = &aug.exceptional;
    let d: VertexSet = e.union(&aug.boundary).copied().collect();
    let rational = e.iter().all(|&v| g.vertex(v).is_rational());

    if !has_boundary {
        if rational {
            if let Some(chain) = chain_order(g, e) {
                return Ok(GermClass::LtNoBoundaryRod { chain });
            }
            if let Some(fork) = as_fork(g, e) {
                let delta = fork_delta(g, &fork);
                if delta > Rational::one() {
                    return Ok(GermClass::LtNoBoundaryFork { fork, delta });
                }
                if delta == Rational::one() && !all_weight_two(g, e.iter().copied()) {
                    return Ok(GermClass::LcFork { fork });
                }
            }
            if is_cycle(g, e) {
                let cycle = e.iter().copied().collect();
                return Ok(GermClass::LcCycle { cycle });
            }
            if let Some(bench) = as_bench(g, e) {
                if !all_weight_two(g, bench.central.iter().copied()) {
                    return Ok(GermClass::LcBench { bench });
                }
            }
        } else if e.len() == 1 && g.vertex(0).genus == 1 {
            return Ok(GermClass::LcEllipticCurve { vertex: 0 });
        }
        return Ok(GermClass::NotLc);
    }

    if is_twig(g, &d, e) {
        let chain = twig_order(g, &d, e).expect("twig has an order");
        return Ok(GermClass::LtTwig { chain });
    }
    if aug.contact == 1 {
        if let Some(half_bench) = as_half_bench(g, &d, e) {
            return Ok(GermClass::LcHalfBench { half_bench });
        }
    }
    if aug.contact == 2 && is_segment(g, &d, e) {
        let chain = chain_order(g, e).expect("segment is a chain");
        return Ok(GermClass::LcSegment { chain });
    }
    Ok(GermClass::NotLc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A_{n}"),
            DynkinType::D(n) => write!(f, "D_{n}"),
            DynkinType::E6 => f.write_str("E_6"),
            DynkinType::E7 => f.write_str("E_7"),
            DynkinType::E8 => f.write_str("E_8"),
        }
    }
}

/// Dynkin type of a connected du Val graph, read off from the twig lengths.
pub fn duval_type(g: &DualGraph) -> Option<DynkinType> {
    let all = g.all();
    let du_val = g
        .vertices()
        .iter()
        .all(|v| v.weight == 2 && v.genus == 0 && v.decoration.is_zero());
    if all.is_empty() || !du_val {
        return None;
    }
    if chain_order(g, &all).is_some() {
        return Some(DynkinType::A(all.len()));
    }
    let fork = as_fork(g, &all)?;
    let mut lens: Vec<usize> = fork.twigs.iter().map(Vec::len).collect();
    lens.sort_unstable();
    match lens[..] {
        [1, 1, k] => Some(DynkinType::D(k + 3)),
        [1, 2, 2] => Some(DynkinType::E6),
        [1, 2, 3] => Some(DynkinType::E7),
        [1, 2, 4] => Some(DynkinType::E8),
        _ => None,
    }
}

/// Result of the epsilon-lc / epsilon-dlt test on a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsVerdict {
    pub eps: Rational,
    pub is_lc: bool,
    pub is_dlt: bool,
    /// Vertex realizing the total coefficient.
    pub witness: Option<(usize, Rational)>,
    /// Contracted vertex with the largest coefficient.
    pub exceptional_witness: Option<(usize, Rational)>,
    /// Every vertex whose coefficient exceeds `1 - eps`, in id order.
    pub violations: Vec<(usize, Rational)>,
    pub may_under_report: bool,
}

/// Contracted curves that stay exceptional on the minimal log resolution.
///
/// Starting from the smooth model, a contracted smooth rational `(-1)`-curve is
/// blown down while it meets the rest of the boundary and exceptional locus in
/// at most two curves, each transversally once. The total transform of the
/// boundary then stays snc.
pub fn minimal_log_resolution(model: &LogSurfaceModel) -> VertexSet {
    let g = model.graph();
    let n = g.len();
    let mut weight: Vec<i64> = (0..n).map(|v| g.weight(v)).collect();
    let mut mult: Vec<Vec<u32>> = (0..n)
        .map(|a| (0..n).map(|b| g.multiplicity(a, b)).collect())
        .collect();
    let mut exceptional = model.contracted().clone();
    let mut total: VertexSet = model
        .boundary_support()
        .union(&exceptional)
        .copied()
        .collect();
    loop {
        let removable = exceptional.iter().copied().find(|&v| {
            if weight[v] != 1 || !g.vertex(v).is_rational() {
                return false;
            }
            let contacts: Vec<usize> = total
                .iter()
                .copied()
                .filter(|&u| u != v && mult[v][u] > 0)
                .collect();
            contacts.len() <= 2 && contacts.iter().all(|&u| mult[v][u] == 1)
        });
        let Some(v) = removable else {
            return exceptional;
        };
        let around: Vec<usize> = (0..n).filter(|&u| u != v && mult[v][u] > 0).collect();
        for &a in &around {
            weight[a] -= i64::from(mult[v][a] * mult[v][a]);
            for &b in &around {
                if a < b {
                    let extra = mult[v][a] * mult[v][b];
                    mult[a][b] += extra;
                    mult[b][a] += extra;
                }
            }
        }
        mult[v].fill(0);
        for row in &mut mult {
            row[v] = 0;
        }
        exceptional.remove(&v);
        total.remove(&v);
    }
}

/// `eps`-lc iff the total coefficient is at most `1 - eps`; `eps`-dlt iff in
/// addition every curve exceptional on the minimal log resolution has
/// coefficient below `1 - eps`.
pub fn eps_check(model: &LogSurfaceModel, eps: &Rational) -> Result<EpsVerdict, ClassifyError> {
    let g = model.graph();
    let bound = Rational::one() - eps;
    let tcf = total_coefficient(model)?;
    let cf = crate::coefficients::coefficients_linear(model)?;
    let exceptional_witness = cf
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then_with(|| g.id(b.0).cmp(g.id(a.0))))
        .map(|(v, c)| (v, c.clone()));
    let mut violations: Vec<(usize, Rational)> = model
        .surviving()
        .into_iter()
        .map(|v| (v, model.boundary_coefficient(v)))
        .chain(cf.iter().map(|(v, c)| (v, c.clone())))
        .filter(|(_, c)| c > &bound)
        .collect();
    violations.sort_by(|a, b| g.id(a.0).cmp(g.id(b.0)));
    let is_lc = tcf.value <= bound;
    let resolution = minimal_log_resolution(model);
    let is_dlt = is_lc
        && cf
            .iter()
            .all(|(v, c)| c < &bound || !resolution.contains(&v));
    Ok(EpsVerdict {
        eps: eps.clone(),
        is_lc,
        is_dlt,
        witness: tcf.witness.map(|v| (v, tcf.value.clone())),
        exceptional_witness,
        violations,
        may_under_report: tcf.may_under_report && eps.is_zero(),
    })
}

/// Cases of germs with coefficients at most one half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfCase {
    /// No boundary: `(-2)`-fork, `(-2)`-rod or rod `[3,2,...,2]`; cf below 1/2.
    NoBoundaryBelow,
    /// Boundary: `(-2)`-twig; cf below 1/2.
    TwigBelow,
    /// No boundary: `[4]`, `[3,2,...,2,3]`, `[2,3,2]` or `<[2];[2],[2],[3,2,...,2]>`.
    NoBoundaryHalf,
    /// Boundary: `(-2)`-segment or twig `[3,2,...,2]`.
    BoundaryHalf,
}

impl HalfCase {
    pub fn tag(&self) -> &'static str {
        match self {
            HalfCase::NoBoundaryBelow => "1a",
            HalfCase::TwigBelow => "1b",
            HalfCase::NoBoundaryHalf => "2a",
            HalfCase::BoundaryHalf => "2b",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfClass {
    pub case: HalfCase,
    /// Closed-form coefficients over `(X, D/2)`.
    pub coefficients: CoefficientVector,
}

/// Shapes for which the coefficients have closed forms when `r <= 1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormulaCase {
    /// `(-2)`-fork or `(-2)`-rod: `cf = 0`.
    MinusTwoForkOrRod,
    /// Rod `[3,(2)_{k-1}]` listed from the `(-3)`-curve: `cf(E_i) = (k+1-i)/(2k+1)`.
    RodThreeTwos(Vec<usize>),
    /// `(-2)`-twig listed from its tip: `cf(E_i) = i r/(k+1)`.
    MinusTwoTwig(Vec<usize>),
    /// `[4]` or `[3,2,...,2,3]`: `cf = E/2`.
    HalfRod,
    /// `[2,3,2]` or `<[2];[2],[2],[3,2,...,2]>`: `cf = E/2 - T_0/4`, `T_0` the `(-2)`-tips.
    HalfMinusQuarterTips(Vec<usize>),
    /// `(-2)`-segment: `cf = r E`.
    MinusTwoSegment,
    /// Twig `[3,2,...,2]` listed from its tip: `cf >= r E`, equality only at `r = 1/2`.
    TwigThreeTwos(Vec<usize>),
}

fn weights(g: &DualGraph, order: &[usize]) -> Vec<i64> {
    order.iter().map(|&v| g.weight(v)).collect()
}

fn is_three_then_twos(w: &[i64]) -> bool {
    w.first() == Some(&3) && w[1..].iter().all(|&x| x == 2)
}

/// Recognizes the shapes of the closed-form coefficient list for a connected
/// exceptional set `e` inside a reduced boundary `d`.
pub fn formula_case(g: &DualGraph, d: &VertexSet, e: &VertexSet) -> Option<FormulaCase> {
    if e.iter().any(|&v| !g.vertex(v).is_rational()) || !e.is_subset(d) {
        return None;
    }
    let isolated = g.branching_in(e, d) == 0;
    let two = all_weight_two(g, e.iter().copied());
    if isolated {
        if let Some(order) = chain_order(g, e) {
            let w = weights(g, &order);
            if two {
                return Some(FormulaCase::MinusTwoForkOrRod);
            }
            let rev: Vec<i64> = w.iter().rev().copied().collect();
            if is_three_then_twos(&w) {
                return Some(FormulaCase::RodThreeTwos(order));
            }
            if is_three_then_twos(&rev) {
                return Some(FormulaCase::RodThreeTwos(order.into_iter().rev().collect()));
            }
            if w == [4]
                || (w.len() >= 2
                    && w[0] == 3
                    && w[w.len() - 1] == 3
                    && w[1..w.len() - 1].iter().all(|&x| x == 2))
            {
                return Some(FormulaCase::HalfRod);
            }
            if w == [2, 3, 2] {
                return Some(FormulaCase::HalfMinusQuarterTips(vec![order[0], order[2]]));
            }
            return None;
        }
        if let Some(f) = as_fork(g, e) {
            if two {
                return Some(FormulaCase::MinusTwoForkOrRod);
            }
            if g.weight(f.center) != 2 {
                return None;
            }
            let mut ones = Vec::new();
            let mut long = None;
            for t in &f.twigs {
                let w = weights(g, t);
                if w == [2] {
                    ones.push(t[0]);
                } else if is_three_then_twos(&w) {
                    long = Some(t);
                }
            }
            if ones.len() >= 2 && long.is_some() {
                return Some(FormulaCase::HalfMinusQuarterTips(ones[..2].to_vec()));
            }
        }
        return None;
    }
    if is_twig(g, d, e) {
        let order = twig_order(g, d, e)?;
        if two {
            return Some(FormulaCase::MinusTwoTwig(order));
        }
        if is_three_then_twos(&weights(g, &order)) {
            return Some(FormulaCase::TwigThreeTwos(order));
        }
        return None;
    }
    if two && is_segment(g, d, e) {
        return Some(FormulaCase::MinusTwoSegment);
    }
    None
}

/// Closed-form coefficients over `(X, rD)` for a recognized shape. For
/// `TwigThreeTwos` the returned vector is the lower bound `r E`.
pub fn closed_form(case: &FormulaCase, e: &VertexSet, r: &Rational) -> CoefficientVector {
    let konst = |c: Rational| CoefficientVector {
        values: e.iter().map(|&v| (v, c.clone())).collect(),
    };
    let half = Rational::new(1.into(), 2.into());
    match case {
        FormulaCase::MinusTwoForkOrRod => konst(Rational::zero()),
        FormulaCase::RodThreeTwos(order) => {
            let k = order.len() as i64;
            CoefficientVector {
                values: order
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v, Rational::new((k - i as i64).into(), (2 * k + 1).into())))
                    .collect(),
            }
        }
        FormulaCase::MinusTwoTwig(order) => {
            let k = order.len() as i64;
            CoefficientVector {
                values: order
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v, r * Rational::new((i as i64 + 1).into(), (k + 1).into())))
                    .collect(),
            }
        }
        FormulaCase::HalfRod => konst(half),
        FormulaCase::HalfMinusQuarterTips(tips) => {
            let mut cv = konst(half);
            for t in tips {
                cv.values.insert(*t, Rational::new(1.into(), 4.into()));
            }
            cv
        }
        FormulaCase::MinusTwoSegment | FormulaCase::TwigThreeTwos(_) => konst(r.clone()),
    }
}

/// Germs with coefficients at most 1/2 for the boundary `D/2`. With `strict`
/// only the cases with coefficients below 1/2 are accepted.
pub fn classify_half(
    germ: &GermGraph,
    has_boundary: bool,
    strict: bool,
) -> Result<HalfClass, ClassifyError> {
    check_minimal_connected(germ)?;
    let aug = augment(germ)?;
    if has_boundary != (aug.contact > 0) {
        return Err(ClassifyError::BoundaryMismatch(aug.contact.to_string()));
    }
    let d: VertexSet = aug.exceptional.union(&aug.boundary).copied().collect();
    let case =
        formula_case(&aug.graph, &d, &aug.exceptional).ok_or(ClassifyError::NotApplicable)?;
    let half_case = match (&case, has_boundary) {
        (FormulaCase::MinusTwoForkOrRod | FormulaCase::RodThreeTwos(_), false) => {
            HalfCase::NoBoundaryBelow
        }
        (FormulaCase::MinusTwoTwig(_), true) => HalfCase::TwigBelow,
        (FormulaCase::HalfRod | FormulaCase::HalfMinusQuarterTips(_), false) => {
            HalfCase::NoBoundaryHalf
        }
        (FormulaCase::MinusTwoSegment | FormulaCase::TwigThreeTwos(_), true) => {
            HalfCase::BoundaryHalf
        }
        _ => return Err(ClassifyError::NotApplicable),
    };
    if strict && matches!(half_case, HalfCase::NoBoundaryHalf | HalfCase::BoundaryHalf) {
        return Err(ClassifyError::NotApplicable);
    }
    let half = Rational::new(1.into(), 2.into());
    Ok(HalfClass {
        case: half_case,
        coefficients: closed_form(&case, &aug.exceptional, &half),
    })
}

/// Outcome of comparing the coefficients of a subgraph with the ambient graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlexeevVerdict {
    /// `cf_F < cf_G` at every vertex of `F`.
    Strict,
    /// `G` is du Val and all coefficients vanish.
    EqualDuVal,
    /// The monotonicity fails at this vertex of `F`.
    Violation {
        vertex: usize,
        sub: Rational,
        ambient: Rational,
    },
}

/// Compares `cf_F` with `cf_G` along `embedding` (`F` vertex `i` maps to `G`
/// vertex `embedding[i]`). Both graphs must be minimal and log terminal, and
/// `F` must be a proper weighted decorated subgraph.
pub fn alexeev_compare(
    f: &GermGraph,
    g: &GermGraph,
    embedding: &[usize],
) -> Result<AlexeevVerdict, ClassifyError> {
    let (fg, gg) = (f.graph(), g.graph());
    if embedding.len() != fg.len() || embedding.iter().any(|&v| v >= gg.len()) {
        return Err(ClassifyError::NotASubgraph(
            "embedding has the wrong shape".into(),
        ));
    }
    let image: VertexSet = embedding.iter().copied().collect();
    if image.len() != embedding.len() {
        return Err(ClassifyError::NotASubgraph(
            "embedding is not injective".into(),
        ));
    }
    let mut proper = image.len() < gg.len();
    for (i, &gi) in embedding.iter().enumerate() {
        let (a, b) = (fg.vertex(i), gg.vertex(gi));
        if a.weight > b.weight || a.decoration > b.decoration || a.genus > b.genus {
            return Err(ClassifyError::NotASubgraph(format!(
                "vertex {} exceeds its image",
                a.id
            )));
        }
        proper |= a.weight < b.weight || a.decoration < b.decoration || a.genus < b.genus;
        for (j, &gj) in embedding.iter().enumerate().skip(i + 1) {
            let (mf, mg) = (fg.multiplicity(i, j), gg.multiplicity(gi, gj));
            if mf > mg {
                return Err(ClassifyError::NotASubgraph(format!(
                    "edge {}-{} exceeds its image",
                    a.id,
                    fg.id(j)
                )));
            }
            proper |= mf < mg;
        }
    }
    if !proper {
        return Err(ClassifyError::NotASubgraph("subgraph is not proper".into()));
    }
    for germ in [f, g] {
        if let Some(v) = germ.graph().vertices().iter().find(|v| v.weight < 2) {
            return Err(ClassifyError::NotMinimal(v.id.0.clone()));
        }
    }
    let (cf_f, cf_g) = (f.coefficients(), g.coefficients());
    if cf_f
        .iter()
        .chain(cf_g.iter())
        .any(|(_, c)| c >= &Rational::one())
    {
        return Err(ClassifyError::NotLogTerminal);
    }
    if g.is_du_val() {
        let all_zero = cf_f.iter().all(|(_, c)| c.is_zero());
        return Ok(if all_zero {
            AlexeevVerdict::EqualDuVal
        } else {
            let (v, c) = cf_f
                .iter()
                .find(|(_, c)| !c.is_zero())
                .expect("some nonzero");
            AlexeevVerdict::Violation {
                vertex: v,
                sub: c.clone(),
                ambient: Rational::zero(),
            }
        });
    }
    for (i, &gi) in embedding.iter().enumerate() {
        let (a, b) = (
            cf_f.get(i).expect("solved").clone(),
            cf_g.get(gi).expect("solved").clone(),
        );
        if a >= b {
            return Ok(AlexeevVerdict::Violation {
                vertex: i,
                sub: a,
                ambient: b,
            });
        }
    }
    Ok(AlexeevVerdict::Strict)
}

/// `d(F) < d(G)` for a subgraph obtained by lowering weights only.
pub fn discriminant_drops(f: &GermGraph, g: &GermGraph) -> bool {
    discriminant(f.graph(), &f.graph().all()) < discriminant(g.graph(), &g.graph().all())
}
