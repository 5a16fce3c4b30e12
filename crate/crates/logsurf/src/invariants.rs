//! Discriminants and chain data.

use crate::graph::{DualGraph, VertexSet};
use crate::linalg;
use crate::rational::Rational;
use crate::shapes::{all_admissible, all_weight_two, is_ordered_chain};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("vertices do not form a chain in the given order")]
    NotAChain,
    #[error("chain is not admissible (needs smooth rational curves of weight at least 2)")]
    NotAdmissible,
    #[error("component {0} is not an admissible twig, rod or fork of the boundary")]
    NotPeelable(String),
    #[error("splitting hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
}

/// `d(S) = det(-Q|S)`; `d(empty) = 1`.
pub fn discriminant(g: &DualGraph, s: &VertexSet) -> BigInt {
    let order: Vec<usize> = s.iter().copied().collect();
    linalg::determinant(&g.negated_form(&order))
}

pub fn discriminant_of(g: &DualGraph, vs: &[usize]) -> BigInt {
    discriminant(g, &vs.iter().copied().collect())
}

/// Discriminant of `D1 + D2` from the pieces, where the only contact between
/// them is at `t1 in D1` and `t2 in D2`.
///
/// With `m = T1.T2` the determinant expansion gives
/// `d(D1)d(D2) - m^2 d(D1-T1)d(D2-T2)`; for simple contact this is the usual
/// splitting formula.
pub fn split_discriminant(
    g: &DualGraph,
    d1: &VertexSet,
    d2: &VertexSet,
    t1: usize,
    t2: usize,
) -> Result<BigInt, InvariantError> {
    if !d1.is_disjoint(d2) {
        return Err(InvariantError::HypothesisViolated(
            "pieces share a component".into(),
        ));
    }
    if !d1.contains(&t1) || !d2.contains(&t2) {
        return Err(InvariantError::HypothesisViolated(
            "contact vertices not in their pieces".into(),
        ));
    }
    for &a in d1 {
        for (b, _) in g.neighbors(a) {
            if d2.contains(&b) && (a, b) != (t1, t2) {
                return Err(InvariantError::HypothesisViolated(format!(
                    "extra contact between {} and {}",
                    g.id(a),
                    g.id(b)
                )));
            }
        }
    }
    let m = BigInt::from(g.multiplicity(t1, t2));
    let less =
        |s: &VertexSet, t: usize| -> VertexSet { s.iter().copied().filter(|&v| v != t).collect() };
    Ok(discriminant(g, d1) * discriminant(g, d2)
        - &m * &m * discriminant(g, &less(d1, t1)) * discriminant(g, &less(d2, t2)))
}

/// Discriminant data of an ordered chain `T = T_1 + ... + T_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainData {
    pub order: Vec<usize>,
    pub d: BigInt,
    /// `d'(T) = d(T - T_1)`.
    pub d_prime: BigInt,
    pub delta: Rational,
    pub inductance: Rational,
    /// `d^(i) = d(T_{i+1} + ... + T_m)` for `i = 1..m`.
    pub upper: Vec<BigInt>,
    /// `d_(i) = d(T_1 + ... + T_{i-1})` for `i = 1..m`.
    pub lower: Vec<BigInt>,
    pub admissible: bool,
}

impl ChainData {
    pub fn new(g: &DualGraph, order: &[usize]) -> Result<Self, InvariantError> {
        if order.is_empty() || !is_ordered_chain(g, order) {
            return Err(InvariantError::NotAChain);
        }
        let m = order.len();
        let upper: Vec<BigInt> = (1..=m).map(|i| discriminant_of(g, &order[i..])).collect();
        let lower: Vec<BigInt> = (1..=m)
            .map(|i| discriminant_of(g, &order[..i - 1]))
            .collect();
        let d = discriminant_of(g, order);
        let d_prime = upper[0].clone();
        let (delta, inductance) = if d.is_zero() {
            (Rational::zero(), Rational::zero())
        } else {
            (
                Rational::new(BigInt::one(), d.clone()),
                Rational::new(d_prime.clone(), d.clone()),
            )
        };
        Ok(ChainData {
            order: order.to_vec(),
            d,
            d_prime,
            delta,
            inductance,
            upper,
            lower,
            admissible: all_admissible(g, order.iter().copied()),
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn tip(&self) -> usize {
        self.order[0]
    }

    /// The same chain in the opposite order.
    pub fn reversed(&self, g: &DualGraph) -> ChainData {
        let rev: Vec<usize> = self.order.iter().rev().copied().collect();
        ChainData::new(g, &rev).expect("reverse of a chain is a chain")
    }

    pub fn is_minus_two(&self, g: &DualGraph) -> bool {
        all_weight_two(g, self.order.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, fork};
    use crate::rational::rat;
    use num_integer::Integer;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn all(g: &DualGraph) -> VertexSet {
        g.all()
    }

    #[test]
    fn discriminant_examples() {
        let g = chain(&[2, 1, 3]);
        assert_eq!(discriminant(&g, &VertexSet::new()), BigInt::one());
        assert_eq!(discriminant(&g, &all(&g)), BigInt::one());
        for k in 1..=6 {
            let mut w = vec![3];
            w.extend(std::iter::repeat_n(2, k - 1));
            let g = chain(&w);
            assert_eq!(discriminant(&g, &all(&g)), BigInt::from(2 * k as i64 + 1));
        }
    }

    #[test]
    fn splitting_examples() {
        let g = chain(&[3, 2]);
        let s = split_discriminant(&g, &[0].into(), &[1].into(), 0, 1).unwrap();
        assert_eq!(s, BigInt::from(5));
        let g = chain(&[2, 2, 2]);
        let s = split_discriminant(&g, &[0].into(), &[1, 2].into(), 0, 1).unwrap();
        assert_eq!(s, BigInt::from(4));
        let g = fork(2, [&[2], &[2], &[2]]);
        let twig: VertexSet = [1].into();
        let rest: VertexSet = [0, 2, 3].into();
        assert_eq!(
            split_discriminant(&g, &rest, &twig, 0, 1).unwrap(),
            BigInt::from(4)
        );
        assert!(split_discriminant(&chain(&[2, 2, 2]), &[0, 2].into(), &[1].into(), 0, 1).is_err());
    }

    #[test]
    fn chain_data_examples() {
        let g = chain(&[3, 2]);
        let c = ChainData::new(&g, &[0, 1]).unwrap();
        assert_eq!(
            (c.d.clone(), c.d_prime.clone()),
            (BigInt::from(5), BigInt::from(2))
        );
        assert_eq!(
            (c.delta.clone(), c.inductance.clone()),
            (rat(1, 5), rat(2, 5))
        );
        assert_eq!(c.reversed(&g).inductance, rat(3, 5));

        for k in 1..=5usize {
            let g = chain(&vec![2; k]);
            let c = ChainData::new(&g, &(0..k).collect::<Vec<_>>()).unwrap();
            assert_eq!(c.delta, rat(1, k as i64 + 1));
            assert_eq!(c.inductance, rat(k as i64, k as i64 + 1));
        }

        let g = chain(&[4]);
        let c = ChainData::new(&g, &[0]).unwrap();
        assert_eq!(
            (c.d_prime.clone(), c.inductance.clone(), c.delta.clone()),
            (BigInt::one(), rat(1, 4), rat(1, 4))
        );
        assert_eq!(ChainData::new(&g, &[]), Err(InvariantError::NotAChain));
        let g = fork(2, [&[2], &[2], &[2]]);
        assert_eq!(
            ChainData::new(&g, &[1, 0, 2, 3]),
            Err(InvariantError::NotAChain)
        );
    }

    fn admissible_chain() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(2i64..=6, 1..=8)
    }

    proptest! {
        #[test]
        fn admissible_chain_invariants(w in admissible_chain()) {
            let g = chain(&w);
            let order: Vec<usize> = (0..w.len()).collect();
            let c = ChainData::new(&g, &order).unwrap();
            prop_assert!(c.admissible);
            prop_assert!(!c.d_prime.is_negative() && c.d_prime < c.d);
            prop_assert!(c.d.gcd(&c.d_prime).is_one());
            let sum = &c.delta + &c.inductance;
            let all_two = w.iter().all(|&x| x == 2);
            prop_assert!(sum <= Rational::one());
            prop_assert_eq!(sum == Rational::one(), all_two);
        }

        #[test]
        fn tip_recursion_matches_bareiss(w in admissible_chain()) {
            // d(T) = w_1 d(T - T_1) - d(T - T_1 - T_2), unrolled from the far end.
            let mut prev = BigInt::one();
            let mut cur = BigInt::from(*w.last().unwrap());
            for &x in w.iter().rev().skip(1) {
                let next = BigInt::from(x) * &cur - &prev;
                prev = cur;
                cur = next;
            }
            let g = chain(&w);
            prop_assert_eq!(discriminant(&g, &g.all()), cur);
        }
    }
}
