//! Redundant boundary curves and almost log exceptional curves of a peeling,
//! detected numerically on the peeled model and matched against the known
//! case lists for uniform and reduced boundaries on smooth surfaces.

use super::peeling::Peeling;
use super::runs::image_is_smooth;
use super::{curve_verdict, CurveKind, CurveVerdict, MmpError};
use crate::coefficients::coefficients_linear;
use crate::graph::{DualGraph, VertexSet};
use crate::invariants::{discriminant, ChainData};
use crate::model::LogSurfaceModel;
use crate::rational::{int, rat, Rational};
use crate::shapes::{
    all_weight_two, beta, chain_order, is_admissible_vertex, is_rod, is_superfluous, is_twig,
    twig_order,
};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Which case list a tag refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseFamily {
    /// Redundant curves for a uniform boundary, cases 1 to 6.
    Redundant,
    /// Redundant curves for a reduced boundary.
    RedundantReduced,
    /// Redundant curves for `r <= 1/2`: the bound by `1/r + 1/d(Delta)`.
    RedundantLowR,
    /// Almost log exceptional curves for a uniform boundary, cases 1 to 12.
    Ale,
    /// Almost log exceptional curves for a reduced boundary.
    AleReduced,
    /// Almost log exceptional curves for `r = 1/2`, cases 1 to 5.
    AleHalf,
}

impl fmt::Display for CaseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseFamily::Redundant => "redundant",
            CaseFamily::RedundantReduced => "redundant-reduced",
            CaseFamily::RedundantLowR => "redundant-low-r",
            CaseFamily::Ale => "ale",
            CaseFamily::AleReduced => "ale-reduced",
            CaseFamily::AleHalf => "ale-half",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaseTag {
    pub family: CaseFamily,
    pub case: &'static str,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.case)
    }
}

/// Closed-form test for a `(-1)`-curve `L` whose contracted neighbours are
/// admissible twigs `T_1..T_k` met at their last component:
/// `r beta_R(L) <= 2 - k + delta - (1-r)(1 - ind)` with
/// `delta = sum 1/d(T_i)` and `ind = sum ind(T_i^t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwigInequality {
    pub twigs: usize,
    pub delta: Rational,
    pub ind_transposed: Rational,
    /// Contact of `L` with the boundary outside `L` and the twigs.
    pub beta_rest: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
    /// `-1 + ind`.
    pub image_self_int: Rational,
    /// `k - delta - 1 + r(beta_rest - 1) + (r-1) ind`.
    pub image_pairing: Rational,
    pub predicted: CurveKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedundantCurve {
    pub vertex: usize,
    /// The curve on the source model.
    pub source: CurveVerdict,
    /// Its image on the peeled model; `kind` is the kind of redundancy.
    pub image: CurveVerdict,
    pub inequality: Option<TwigInequality>,
    pub cases: Vec<CaseTag>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AleCurve {
    pub vertex: usize,
    pub source: CurveVerdict,
    pub image: CurveVerdict,
    pub kind: CurveKind,
    /// On a smooth source: `A . (B' + cf)` where `B'` is the proper transform
    /// of the peeled boundary and `cf` the coefficient divisor of the peeling.
    pub contact_value: Option<Rational>,
    pub cases: Vec<CaseTag>,
}

/// Boundary components of `D` outside `curve`, with both sides of the
/// peeling. Only built for a smooth source with a uniform coefficient.
struct Local<'a> {
    model: &'a LogSurfaceModel,
    g: &'a DualGraph,
    r: Rational,
    d: VertexSet,
    peeling: &'a Peeling,
    curve: usize,
    /// Connected components of the peeling meeting `curve`.
    e_comps: Vec<VertexSet>,
    e: VertexSet,
    /// `D - E - curve`.
    rest: VertexSet,
}

fn uniform_coefficient(model: &LogSurfaceModel) -> Option<Rational> {
    if let Some(r) = model.uniform_r() {
        return Some(r.clone());
    }
    let mut coeffs = model
        .boundary_support()
        .into_iter()
        .map(|v| model.boundary_coefficient(v));
    let first = coeffs.next()?;
    coeffs.all(|c| c == first).then_some(first)
}

fn contact(g: &DualGraph, v: usize, set: &VertexSet) -> u32 {
    g.neighbors(v)
        .filter(|(j, _)| *j != v && set.contains(j))
        .map(|(_, m)| m)
        .sum()
}

fn contact_sets(g: &DualGraph, a: &VertexSet, b: &VertexSet) -> u32 {
    a.iter().map(|&v| contact(g, v, b)).sum()
}

fn twos(n: usize) -> Vec<i64> {
    vec![2; n]
}

fn cat(parts: &[&[i64]]) -> Vec<i64> {
    parts.concat()
}

impl<'a> Local<'a> {
    fn new(model: &'a LogSurfaceModel, peeling: &'a Peeling, curve: usize) -> Option<Self> {
        if !model.contracted().is_empty() {
            return None;
        }
        let r = uniform_coefficient(model)?;
        let g = model.graph();
        let d = model.boundary_support();
        let e_comps: Vec<VertexSet> = g
            .components(&peeling.exceptional)
            .into_iter()
            .filter(|c| contact(g, curve, c) > 0)
            .collect();
        let e: VertexSet = e_comps.iter().flatten().copied().collect();
        let rest: VertexSet = d
            .iter()
            .copied()
            .filter(|v| *v != curve && !e.contains(v))
            .collect();
        Some(Local {
            model,
            g,
            r,
            d,
            peeling,
            curve,
            e_comps,
            e,
            rest,
        })
    }

    fn with_curve(&self) -> VertexSet {
        let mut s = self.e.clone();
        s.insert(self.curve);
        s
    }

    /// `L + E` as a chain oriented like `pattern`, if it matches.
    fn oriented(&self, pattern: &[i64]) -> Option<Vec<usize>> {
        let order = chain_order(self.g, &self.with_curve())?;
        if order.iter().any(|&v| !self.g.vertex(v).is_rational()) {
            return None;
        }
        let weights: Vec<i64> = order.iter().map(|&v| self.g.weight(v)).collect();
        if weights == pattern {
            return Some(order);
        }
        let rev: Vec<usize> = order.iter().rev().copied().collect();
        let rev_weights: Vec<i64> = rev.iter().map(|&v| self.g.weight(v)).collect();
        (rev_weights == pattern).then_some(rev)
    }

    fn is(&self, pattern: &[i64]) -> bool {
        self.oriented(pattern).is_some()
    }

    fn contracts_smoothly(&self) -> bool {
        self.model
            .with_contracted(self.with_curve())
            .ok()
            .is_some_and(|m| image_is_smooth(&m).unwrap_or(false))
    }

    fn curve_contact(&self, set: &VertexSet) -> Rational {
        int(contact(self.g, self.curve, set).into())
    }

    fn e_meets_rest(&self) -> u32 {
        contact_sets(self.g, &self.e, &self.rest)
    }

    fn r_between(&self, lo: Rational, hi: Rational) -> bool {
        lo <= self.r && self.r <= hi
    }

    /// The closed-form test for contracted admissible twigs met at their end.
    fn twig_inequality(&self) -> Option<TwigInequality> {
        let g = self.g;
        if g.weight(self.curve) != 1 || !g.vertex(self.curve).is_rational() {
            return None;
        }
        let mut delta = Rational::zero();
        let mut ind = Rational::zero();
        for comp in &self.e_comps {
            if !is_twig(g, &self.d, comp) || is_rod(g, &self.d, comp) {
                return None;
            }
            let order = twig_order(g, &self.d, comp)?;
            let last = *order.last()?;
            if contact(g, self.curve, comp) != 1 || g.multiplicity(self.curve, last) != 1 {
                return None;
            }
            let chain = ChainData::new(g, &order).ok()?;
            if !chain.admissible {
                return None;
            }
            delta += &chain.delta;
            ind += chain.reversed(g).inductance;
        }
        let k = int(self.e_comps.len() as i64);
        let one = Rational::one();
        let r = &self.r;
        let beta_rest = self.curve_contact(&self.rest);
        let lhs = r * &beta_rest;
        let rhs = int(2) - &k + &delta - (&one - r) * (&one - &ind);
        let image_self_int = &ind - &one;
        let image_pairing = &k - &delta - &one + r * (&beta_rest - &one) + (r - &one) * &ind;
        let predicted = if !image_self_int.is_negative() {
            CurveKind::None
        } else if lhs < rhs {
            CurveKind::First
        } else if lhs == rhs {
            CurveKind::Second
        } else {
            CurveKind::None
        };
        Some(TwigInequality {
            twigs: self.e_comps.len(),
            delta,
            ind_transposed: ind,
            beta_rest,
            lhs,
            rhs,
            image_self_int,
            image_pairing,
            predicted,
        })
    }

    fn redundant_cases(&self, source: &CurveVerdict, image: &CurveVerdict) -> Vec<CaseTag> {
        let g = self.g;
        let tag = |case| CaseTag {
            family: CaseFamily::Redundant,
            case,
        };
        let mut tags = Vec::new();
        let one = Rational::one();
        let r = &self.r;
        let beta_d = beta(g, &self.d, self.curve);
        let ell_rest = self.curve_contact(&self.rest);
        let er = self.e_meets_rest();
        let m = self.e.len();
        if r.is_one() && beta_d <= 2 {
            tags.push(tag("1"));
        }
        if !r.is_one() && source.kind != CurveKind::None && source.kind == image.kind {
            let whole = self.with_curve();
            if self.contracts_smoothly() {
                tags.push(tag("2a"));
            } else if is_rod(g, &self.d, &whole) || is_twig(g, &self.d, &whole) {
                tags.push(tag("2b"));
            }
        }
        if *r == rat(1, 2)
            && beta_d == 3
            && er == 0
            && (self.is(&[3, 1, 3])
                || self.is(&cat(&[&[1], &twos(m.saturating_sub(1)), &[3]]))
                || self.is(&[3, 1, 2, 3]))
        {
            tags.push(tag("3"));
        }
        if *r == rat(2, 3)
            && beta_d == 3
            && er == 0
            && (self.is(&[2, 1, 4]) || self.is(&[2, 1, 3, 2]))
        {
            tags.push(tag("4"));
        }
        if !r.is_one() && r.is_positive() && self.e_comps.len() == 1 {
            let e = &self.e_comps[0];
            if all_weight_two(g, e.iter().copied()) && is_twig(g, &self.d, e) {
                let x = &ell_rest - one.clone() / r;
                if !x.is_negative() && x <= rat(1, (m + 1) as i64) {
                    tags.push(tag("5"));
                }
            }
        }
        if self.e_comps.len() == 2 && ell_rest.is_one() && self.r_between(rat(1, 2), rat(4, 5)) {
            let mut weights: Vec<i64> = self
                .e_comps
                .iter()
                .filter(|c| c.len() == 1 && is_twig(g, &self.d, c))
                .map(|c| g.weight(*c.first().expect("non-empty")))
                .collect();
            weights.sort();
            if weights == [2, 3] {
                tags.push(tag("6"));
            }
        }
        tags
    }

    fn reduced_redundant_cases(&self) -> Vec<CaseTag> {
        let g = self.g;
        if !self.r.is_one() || g.weight(self.curve) != 1 || !g.vertex(self.curve).is_rational() {
            return Vec::new();
        }
        let tag = |case| CaseTag {
            family: CaseFamily::RedundantReduced,
            case,
        };
        let b = beta(g, &self.d, self.curve);
        let meets_twig = g.neighbors(self.curve).any(|(u, _)| {
            u != self.curve
                && self.d.contains(&u)
                && admissible_twig_through(g, &self.d, self.curve, u)
        });
        match b {
            0 | 1 => vec![tag("3")],
            2 if meets_twig => vec![tag("3")],
            2 => vec![tag("4")],
            _ => Vec::new(),
        }
    }

    fn low_r_cases(&self) -> Vec<CaseTag> {
        let g = self.g;
        let r = &self.r;
        if !r.is_positive() || *r > rat(1, 2) || g.weight(self.curve) != 1 {
            return Vec::new();
        }
        let d_delta = match self.e_comps.as_slice() {
            [] => int(1),
            [e] if all_weight_two(g, e.iter().copied()) && is_twig(g, &self.d, e) => {
                int(discriminant(g, e).try_into().unwrap_or(i64::MAX))
            }
            _ => return Vec::new(),
        };
        let beta_outside = self.curve_contact(&self.rest);
        if beta_outside <= Rational::one() / r + Rational::one() / d_delta {
            vec![CaseTag {
                family: CaseFamily::RedundantLowR,
                case: "bound",
            }]
        } else {
            Vec::new()
        }
    }

    fn ale_cases(&self, source: &CurveVerdict, kind: CurveKind) -> Vec<CaseTag> {
        let g = self.g;
        let tag = |case| CaseTag {
            family: CaseFamily::Ale,
            case,
        };
        let mut tags = Vec::new();
        let one = Rational::one();
        let r = &self.r;
        let half = rat(1, 2);
        let third = rat(1, 3);
        let ad = contact(g, self.curve, &self.d);
        let er = self.e_meets_rest();
        let m = self.e.len();
        let mut with_curve = self.d.clone();
        with_curve.insert(self.curve);
        if is_superfluous(g, &with_curve, self.curve) {
            tags.push(tag("1"));
        }
        let one_twos_three = cat(&[&[1], &twos(m.saturating_sub(1)), &[3]]);
        if ad == 2 && *r == half {
            if let Some(order) = self.oriented(&one_twos_three) {
                let adjacent = VertexSet::from([order[1]]);
                let rest_meets_adjacent = contact_sets(g, &adjacent, &self.rest) > 0;
                if self.curve_contact(&self.rest).is_one() && rest_meets_adjacent {
                    tags.push(tag("2"));
                }
            }
        }
        if ad == 3
            && er == 0
            && m >= 1
            && *r == rat(m as i64, 2 * m as i64 + 1)
            && self.is(&one_twos_three)
        {
            tags.push(tag("3"));
        }
        if ad == 3 && er == 0 {
            let four = (self.is(&[3, 1, 3]) && *r == third)
                || (self.is(&[2, 1, 4]) && *r == half)
                || (m >= 3 && self.is(&cat(&[&[2, 1, 3], &twos(m - 3), &[3]])) && *r == half);
            if four {
                tags.push(tag("4"));
            }
        }
        if *r < one
            && source.kind != CurveKind::None
            && source.kind == kind
            && self.contracts_smoothly()
        {
            tags.push(tag("5"));
        }
        if r.is_positive()
            && *r < one
            && self.e_comps.len() == 1
            && self.is(&cat(&[&[1], &twos(m)]))
        {
            let e = &self.e_comps[0];
            let k = m as i64 + 1;
            let met_at_tip = g
                .neighbors(self.curve)
                .any(|(u, _)| e.contains(&u) && beta(g, &self.d, u) <= 1);
            let s = if is_rod(g, &self.d, e) {
                Some(one.clone())
            } else if is_twig(g, &self.d, e) {
                Some(if met_at_tip {
                    &one - rat(1, k)
                } else {
                    rat(1, k)
                })
            } else {
                None
            };
            if let Some(s) = s {
                let lo = &one / r;
                let hi = &lo + s;
                let x = int(ad.into());
                if lo <= x && x <= hi && !(x == lo && x == hi) {
                    tags.push(tag("6"));
                }
            }
        }
        if ad == 4 && er == 0 && *r == third && self.is(&[2, 1, 3]) {
            tags.push(tag("7"));
        }
        if ad == 3 && m >= 2 {
            let k = m as i64 - 1;
            if let Some(order) = self.oriented(&cat(&[&[2, 1, 3], &twos(m - 2)])) {
                if er == 0 && self.r_between(third.clone(), rat(k + 1, 2 * k + 1)) {
                    tags.push(tag("8"));
                }
                let rest_meets = |v: usize| contact(g, v, &self.rest) > 0;
                if er == 1
                    && (k == 1 || k == 2)
                    && self.r_between(rat(k, 2 * k + 1), rat(2 * (k + 1), 3 * (2 * k + 1)))
                    && rest_meets(order[0])
                {
                    tags.push(tag("9"));
                }
                if er == 1 && *r == half && rest_meets(*order.last().expect("non-empty")) {
                    tags.push(tag("10"));
                }
            }
        }
        if ad == 3 && er == 0 && *r == half && (self.is(&[3, 1, 2, 3, 2]) || self.is(&[4, 1, 2, 2]))
        {
            tags.push(tag("11"));
        }
        if ad == 3 && er == 0 && self.r_between(rat(2, 5), rat(7, 15)) && self.is(&[3, 1, 2, 3]) {
            tags.push(tag("12"));
        }
        tags
    }

    fn ale_reduced_cases(&self) -> Vec<CaseTag> {
        let g = self.g;
        if !self.r.is_one() {
            return Vec::new();
        }
        let tag = |case| CaseTag {
            family: CaseFamily::AleReduced,
            case,
        };
        let ad = contact(g, self.curve, &self.d);
        if ad <= 1 {
            return vec![tag("1")];
        }
        if ad != 2 || self.e_comps.iter().any(|c| contact(g, self.curve, c) != 1) {
            return Vec::new();
        }
        let met = |c: &VertexSet| -> usize {
            g.neighbors(self.curve)
                .map(|(u, _)| u)
                .find(|u| c.contains(u))
                .expect("component meets the curve")
        };
        let is_tip = |v: usize| beta(g, &self.d, v) <= 1;
        let mut tags = Vec::new();
        for (i, e1) in self.e_comps.iter().enumerate() {
            if !is_rod(g, &self.d, e1) || !is_tip(met(e1)) {
                continue;
            }
            tags.push(tag("2"));
            for (j, e2) in self.e_comps.iter().enumerate() {
                if i == j {
                    continue;
                }
                if is_rod(g, &self.d, e2) {
                    tags.push(tag("2b"));
                } else if is_twig(g, &self.d, e2)
                    && (is_tip(met(e2)) || all_weight_two(g, e1.iter().copied()))
                {
                    tags.push(tag("2a"));
                }
            }
        }
        tags.sort();
        tags.dedup();
        tags
    }

    fn ale_half_cases(&self, kind: CurveKind) -> Vec<CaseTag> {
        let g = self.g;
        let Some(dec) = self.peeling.decomposition.as_ref() else {
            return Vec::new();
        };
        if self.r != rat(1, 2) {
            return Vec::new();
        }
        let tag = |case| CaseTag {
            family: CaseFamily::AleHalf,
            case,
        };
        let comps = |s: &VertexSet| g.components(s);
        let delta_comps = comps(&dec.delta);
        let gamma_comps = comps(&dec.gamma);
        let lambda_comps = comps(&dec.lambda);
        let chain_end = |cs: &[VertexSet], v: usize, minus_two_only: bool| {
            cs.iter().any(|c| {
                c.contains(&v)
                    && chain_order(g, c).is_some()
                    && g.degree_in(v, c) <= 1
                    && (!minus_two_only || all_weight_two(g, c.iter().copied()))
            })
        };
        let tip_of_delta = |v| chain_end(&delta_comps, v, false);
        let tip_of_lambda = |v| chain_end(&lambda_comps, v, false);
        let tip_of_gamma_rod = |v| chain_end(&gamma_comps, v, true);
        let middle_223 = |v: usize| {
            lambda_comps.iter().any(|c| {
                c.len() == 3 && c.contains(&v) && g.degree_in(v, c) == 2 && g.weight(v) == 2
            })
        };
        let lambda_three = |v: usize| dec.lambda.contains(&v) && g.weight(v) == 3;
        let single_two = |cs: &[VertexSet], v: usize| {
            cs.iter()
                .any(|c| c.len() == 1 && c.contains(&v) && g.weight(v) == 2)
        };
        let e = dec.union();
        let in_e = |v: usize| e.contains(&v);
        let met: Vec<(usize, u32)> = g
            .neighbors(self.curve)
            .filter(|(u, _)| self.d.contains(u))
            .collect();
        let ad: u32 = met.iter().map(|(_, m)| m).sum();
        let ae: u32 = met.iter().filter(|(u, _)| in_e(*u)).map(|(_, m)| m).sum();
        let mut tags = Vec::new();
        if kind == CurveKind::First {
            if ad <= 1
                && met.iter().filter(|(u, _)| in_e(*u)).all(|&(u, _)| {
                    tip_of_delta(u) || tip_of_lambda(u) || tip_of_gamma_rod(u) || middle_223(u)
                })
            {
                tags.push(tag("1"));
            }
            if ad == 2 && met.len() == 2 {
                let (a, b) = (met[0].0, met[1].0);
                for (t1, t2) in [(a, b), (b, a)] {
                    if !in_e(t1) && (tip_of_delta(t2) || tip_of_lambda(t2) || tip_of_gamma_rod(t2))
                    {
                        tags.push(tag("2a"));
                    }
                    if !in_e(t1) && middle_223(t2) {
                        tags.push(tag("2b"));
                    }
                    if lambda_three(t1) && lambda_three(t2) {
                        tags.push(tag("2c"));
                    }
                    if lambda_three(t1)
                        && (single_two(&delta_comps, t2) || single_two(&gamma_comps, t2))
                    {
                        tags.push(tag("2d"));
                    }
                }
            }
            if ad == 3 && ad - ae == 1 {
                let in_met = |p: &dyn Fn(usize) -> bool| met.iter().any(|&(u, m)| m == 1 && p(u));
                if in_met(&|u| single_two(&gamma_comps, u)) && in_met(&|u| lambda_three(u)) {
                    tags.push(tag("3"));
                }
            }
        }
        if kind == CurveKind::Second {
            if ad == 2 && ae == 0 {
                tags.push(tag("4"));
            }
            if ad == 3 && ae == 1 && met.iter().any(|&(u, _)| in_e(u) && tip_of_gamma_rod(u)) {
                tags.push(tag("5"));
            }
        }
        tags.sort();
        tags.dedup();
        tags
    }
}

/// Whether `u`, a boundary neighbour of `from`, lies on an admissible twig of
/// `D` that runs from a tip of `D` up to `u`, away from `from`.
fn admissible_twig_through(g: &DualGraph, d: &VertexSet, from: usize, u: usize) -> bool {
    let mut prev = from;
    let mut cur = u;
    let mut steps = 0;
    loop {
        if !is_admissible_vertex(g, cur) || g.multiplicity(prev, cur) != 1 {
            return false;
        }
        let b = beta(g, d, cur);
        if b <= 1 {
            return true;
        }
        if b > 2 || steps > d.len() {
            return false;
        }
        let next: Vec<usize> = g
            .neighbors(cur)
            .map(|(j, _)| j)
            .filter(|j| *j != prev && d.contains(j))
            .collect();
        let [n] = next[..] else { return false };
        prev = cur;
        cur = n;
        steps += 1;
    }
}

/// Boundary curves off the peeling with negative `K`-pairing whose image on
/// the peeled model is log exceptional.
pub fn redundant(
    model: &LogSurfaceModel,
    peeling: &Peeling,
) -> Result<Vec<RedundantCurve>, MmpError> {
    let peeled = peeling.peeled();
    let mut out = Vec::new();
    for v in model.surviving() {
        if peeling.exceptional.contains(&v) || !model.in_boundary(v) {
            continue;
        }
        let source = curve_verdict(model, v)?;
        if !source.k_pairing.is_negative() {
            continue;
        }
        let image = curve_verdict(peeled, v)?;
        if image.kind == CurveKind::None {
            continue;
        }
        let local = Local::new(model, peeling, v);
        let inequality = local.as_ref().and_then(Local::twig_inequality);
        let cases = local
            .map(|l| {
                let mut tags = l.redundant_cases(&source, &image);
                tags.extend(l.reduced_redundant_cases());
                tags.extend(l.low_r_cases());
                tags
            })
            .unwrap_or_default();
        out.push(RedundantCurve {
            vertex: v,
            source,
            image,
            inequality,
            cases,
        });
    }
    Ok(out)
}

/// Curves off the boundary whose image on the peeled model is log
/// exceptional; for the second kind the curve must also meet `K` nontrivially.
pub fn almost_log_exceptional(
    model: &LogSurfaceModel,
    peeling: &Peeling,
) -> Result<Vec<AleCurve>, MmpError> {
    let peeled = peeling.peeled();
    let g = model.graph();
    let cf = if model.contracted().is_empty() {
        Some(coefficients_linear(peeled)?)
    } else {
        None
    };
    let mut out = Vec::new();
    for v in model.surviving() {
        if peeling.exceptional.contains(&v) || model.in_boundary(v) {
            continue;
        }
        let image = curve_verdict(peeled, v)?;
        let source = curve_verdict(model, v)?;
        let kind = match image.kind {
            CurveKind::First => CurveKind::First,
            CurveKind::Second if !source.k_pairing.is_zero() => CurveKind::Second,
            _ => continue,
        };
        let contact_value = cf.as_ref().map(|cf| {
            let boundary: Rational = peeled
                .surviving()
                .into_iter()
                .filter(|&b| b != v)
                .map(|b| peeled.boundary_coefficient(b) * int(g.intersection(v, b)))
                .sum();
            let exceptional: Rational = cf.iter().map(|(e, c)| c * int(g.intersection(v, e))).sum();
            boundary + exceptional
        });
        let cases = Local::new(model, peeling, v)
            .map(|l| {
                let mut tags = l.ale_cases(&source, kind);
                tags.extend(l.ale_reduced_cases());
                tags.extend(l.ale_half_cases(kind));
                tags
            })
            .unwrap_or_default();
        out.push(AleCurve {
            vertex: v,
            source,
            image,
            kind,
            contact_value,
            cases,
        });
    }
    Ok(out)
}
