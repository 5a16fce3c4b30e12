//! Q-divisors supported on the vertices of a dual graph.

use crate::graph::DualGraph;
use crate::rational::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Divisor(BTreeMap<usize, Rational>);

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn vertex(v: usize) -> Self {
        Self::term(v, Rational::from_integer(1.into()))
    }

    pub fn term(v: usize, c: Rational) -> Self {
        let mut d = Divisor::zero();
        d.set(v, c);
        d
    }

    /// Reduced divisor on the given vertices.
    pub fn reduced(vs: impl IntoIterator<Item = usize>) -> Self {
        vs.into_iter()
            .fold(Divisor::zero(), |acc, v| acc + Divisor::vertex(v))
    }

    pub fn coeff(&self, v: usize) -> Rational {
        self.0.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, v: usize, c: Rational) {
        if c.is_zero() {
            self.0.remove(&v);
        } else {
            self.0.insert(v, c);
        }
    }

    pub fn add_to(&mut self, v: usize, c: &Rational) {
        let new = self.coeff(v) + c;
        self.set(v, new);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().map(|(&v, c)| (v, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Drops the components for which `keep` is false.
    pub fn restricted(&self, mut keep: impl FnMut(usize) -> bool) -> Divisor {
        Divisor(
            self.0
                .iter()
                .filter(|(&v, _)| keep(v))
                .map(|(&v, c)| (v, c.clone()))
                .collect(),
        )
    }

    /// Intersection with a single curve on the smooth model.
    pub fn dot_vertex(&self, g: &DualGraph, v: usize) -> Rational {
        self.iter()
            .map(|(u, c)| c * Rational::from_integer(g.intersection(u, v).into()))
            .sum()
    }

    /// Intersection number on the smooth model.
    pub fn dot(&self, g: &DualGraph, other: &Divisor) -> Rational {
        other.iter().map(|(v, c)| c * self.dot_vertex(g, v)).sum()
    }
}

impl Add for Divisor {
    type Output = Divisor;
    fn add(mut self, rhs: Divisor) -> Divisor {
        for (v, c) in rhs.0 {
            self.add_to(v, &c);
        }
        self
    }
}

impl Sub for Divisor {
    type Output = Divisor;
    fn sub(self, rhs: Divisor) -> Divisor {
        self + rhs * Rational::from_integer((-1).into())
    }
}

impl Mul<Rational> for Divisor {
    type Output = Divisor;
    fn mul(self, k: Rational) -> Divisor {
        if k.is_zero() {
            return Divisor::zero();
        }
        Divisor(self.0.into_iter().map(|(v, c)| (v, c * &k)).collect())
    }
}

impl FromIterator<(usize, Rational)> for Divisor {
    fn from_iter<I: IntoIterator<Item = (usize, Rational)>>(iter: I) -> Self {
        iter.into_iter().fold(Divisor::zero(), |mut d, (v, c)| {
            d.add_to(v, &c);
            d
        })
    }
}
