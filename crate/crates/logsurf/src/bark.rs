//! Barks of admissible chains, twigs, rods and forks.

use crate::divisor::Divisor;
use crate::graph::{DualGraph, VertexSet};
use crate::invariants::{ChainData, InvariantError};
use crate::rational::Rational;
use crate::shapes::{all_admissible, as_fork, chain_order, is_rod, is_twig, twig_order, Fork};
use num_traits::One;

/// `Bk' T`: coefficient `d^(i)(T)/d(T)` at `T_i`.
pub fn bark_chain(g: &DualGraph, chain: &ChainData) -> Result<Divisor, InvariantError> {
    if !all_admissible(g, chain.order.iter().copied()) {
        return Err(InvariantError::NotAdmissible);
    }
    let d = Rational::from_integer(chain.d.clone());
    Ok(chain
        .order
        .iter()
        .zip(&chain.upper)
        .map(|(&v, up)| (v, Rational::from_integer(up.clone()) / &d))
        .collect())
}

/// `Bk^T T = Bk'(T reversed)`.
pub fn bark_transposed(g: &DualGraph, chain: &ChainData) -> Result<Divisor, InvariantError> {
    bark_chain(g, &chain.reversed(g))
}

/// How a connected component of the exceptional set sits in the boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Peelable {
    /// Twig of `D` that is not a rod, ordered from its tip of `D`.
    Twig(Vec<usize>),
    /// Rod of `D`, ordered from the end with the smaller id.
    Rod(Vec<usize>),
    Fork(Fork),
}

/// Recognizes an admissible twig, admissible rod or admissible fork of `D`.
pub fn classify_peelable(
    g: &DualGraph,
    d: &VertexSet,
    comp: &VertexSet,
) -> Result<Peelable, InvariantError> {
    let name = || comp.iter().map(|&v| g.id(v)).collect::<Vec<_>>().join("+");
    if !comp.is_subset(d) || !all_admissible(g, comp.iter().copied()) {
        return Err(InvariantError::NotPeelable(name()));
    }
    if is_rod(g, d, comp) {
        return Ok(Peelable::Rod(chain_order(g, comp).expect("rod is a chain")));
    }
    if is_twig(g, d, comp) {
        return Ok(Peelable::Twig(
            twig_order(g, d, comp).expect("twig has an order"),
        ));
    }
    if g.branching_in(comp, d) == 0 {
        if let Some(f) = as_fork(g, comp) {
            if fork_delta(g, &f) > Rational::one() {
                return Ok(Peelable::Fork(f));
            }
        }
    }
    Err(InvariantError::NotPeelable(name()))
}

/// `delta(F) = sum 1/d(T_i)` over the maximal twigs.
pub fn fork_delta(g: &DualGraph, f: &Fork) -> Rational {
    f.twigs
        .iter()
        .map(|t| ChainData::new(g, t).expect("fork twig is a chain").delta)
        .sum()
}

/// The factor `u` of the fork bark.
pub fn fork_factor(g: &DualGraph, f: &Fork) -> Rational {
    let twigs: Vec<ChainData> = f
        .twigs
        .iter()
        .map(|t| ChainData::new(g, t).expect("fork twig is a chain"))
        .collect();
    let delta: Rational = twigs.iter().map(|c| c.delta.clone()).sum();
    let ind_t: Rational = twigs.iter().map(|c| c.reversed(g).inductance).sum();
    (delta - Rational::one()) / (Rational::from_integer(g.weight(f.center).into()) - ind_t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarkDivisor {
    pub divisor: Divisor,
    /// `(center, u)` for every fork component.
    pub fork_factors: Vec<(usize, Rational)>,
}

/// `Bk_D(exc)`, extended additively over connected components.
pub fn bark_d(
    g: &DualGraph,
    d: &VertexSet,
    exc: &VertexSet,
) -> Result<BarkDivisor, InvariantError> {
    let mut divisor = Divisor::zero();
    let mut fork_factors = Vec::new();
    for comp in g.components(exc) {
        match classify_peelable(g, d, &comp)? {
            Peelable::Twig(order) => {
                divisor = divisor + bark_chain(g, &ChainData::new(g, &order)?)?;
            }
            Peelable::Rod(order) => {
                let c = ChainData::new(g, &order)?;
                divisor = divisor + bark_chain(g, &c)? + bark_transposed(g, &c)?;
            }
            Peelable::Fork(f) => {
                let u = fork_factor(g, &f);
                let mut inner = Divisor::vertex(f.center);
                for t in &f.twigs {
                    let c = ChainData::new(g, t)?;
                    inner = inner + bark_transposed(g, &c)?;
                    divisor = divisor + bark_chain(g, &c)?;
                }
                divisor = divisor + inner * u.clone();
                fork_factors.push((f.center, u));
            }
        }
    }
    Ok(BarkDivisor {
        divisor,
        fork_factors,
    })
}

/// Sum of `Bk^T` over the twig components of `exc` that are not rods.
pub fn bark_transposed_twigs(
    g: &DualGraph,
    d: &VertexSet,
    exc: &VertexSet,
) -> Result<Divisor, InvariantError> {
    let mut out = Divisor::zero();
    for comp in g.components(exc) {
        if let Peelable::Twig(order) = classify_peelable(g, d, &comp)? {
            out = out + bark_transposed(g, &ChainData::new(g, &order)?)?;
        }
    }
    Ok(out)
}
