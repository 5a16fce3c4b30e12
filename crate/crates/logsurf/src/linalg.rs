//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Intersection matrices are integral, so determinants and leading minors stay
//! in `BigInt`. Linear solves scale the right-hand side to integers, eliminate
//! fraction-free and only switch to rationals for back-substitution.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type IntMatrix = Vec<Vec<BigInt>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {rows}x{cols} matrix with right-hand side of length {rhs}")]
    Dimension {
        rows: usize,
        cols: usize,
        rhs: usize,
    },
}

fn check_square(m: &[Vec<BigInt>]) -> usize {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    n
}

/// One Bareiss elimination step on rows below `k` using pivot `a[k][k]`.
fn bareiss_step(a: &mut [Vec<BigInt>], k: usize, prev: &BigInt) {
    let width = a[k].len();
    let (top, rest) = a.split_at_mut(k + 1);
    let pivot_row = &top[k];
    let pivot = &pivot_row[k];
    for row in rest.iter_mut() {
        let factor = row[k].clone();
        for j in (k + 1)..width {
            let v = &row[j] * pivot - &factor * &pivot_row[j];
            row[j] = v / prev;
        }
        row[k] = BigInt::zero();
    }
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = check_square(m);
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        bareiss_step(&mut a, k, &prev);
        prev = a[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

/// Whether a symmetric integer matrix is positive definite.
///
/// Without pivoting the k-th Bareiss pivot is the k-th leading principal
/// minor, so Sylvester's criterion is read off during elimination.
pub fn is_positive_definite(m: &[Vec<BigInt>]) -> bool {
    let n = check_square(m);
    let mut a: IntMatrix = m.to_vec();
    let mut prev = BigInt::one();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        bareiss_step(&mut a, k, &prev);
        prev = a[k][k].clone();
    }
    true
}

/// Leading principal minors `M_1, ..., M_n`, stopping early at a zero minor.
pub fn leading_minors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = check_square(m);
    let mut a: IntMatrix = m.to_vec();
    let mut prev = BigInt::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        minors.push(a[k][k].clone());
        if a[k][k].is_zero() {
            break;
        }
        bareiss_step(&mut a, k, &prev);
        prev = a[k][k].clone();
    }
    minors
}

/// Solves `m x = rhs` exactly.
pub fn solve(m: &[Vec<BigInt>], rhs: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
    let n = check_square(m);
    if rhs.len() != n {
        return Err(LinalgError::Dimension {
            rows: n,
            cols: n,
            rhs: rhs.len(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = rhs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut a: IntMatrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.numer() * (&scale / b.denom()));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let i = (k + 1..n)
                .find(|&i| !a[i][k].is_zero())
                .ok_or(LinalgError::Singular)?;
            a.swap(k, i);
        }
        bareiss_step(&mut a, k, &prev);
        prev = a[k][k].clone();
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(a[i][n].clone());
        for j in (i + 1)..n {
            acc -= Rational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(a[i][i].clone());
    }
    let scale = Rational::from_integer(scale);
    Ok(x.into_iter().map(|v| v / &scale).collect())
}

/// Exact inverse, column by column.
pub fn inverse(m: &[Vec<BigInt>]) -> Result<Vec<Vec<Rational>>, LinalgError> {
    let n = check_square(m);
    let mut inv = vec![vec![Rational::zero(); n]; n];
    for j in 0..n {
        let e: Vec<Rational> = (0..n)
            .map(|i| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let col = solve(m, &e)?;
        for (row, v) in inv.iter_mut().zip(col) {
            row[j] = v;
        }
    }
    Ok(inv)
}

pub fn to_int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    /// Cofactor expansion along the first row; exponential but independent.
    fn laplace(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * laplace(&minor)
            })
            .sum()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(determinant(&to_int_matrix(&[])), BigInt::one());
        assert_eq!(
            determinant(&to_int_matrix(&[vec![3, -1], vec![-1, 2]])),
            BigInt::from(5)
        );
        assert_eq!(
            determinant(&to_int_matrix(&[vec![0, 1], vec![1, 0]])),
            BigInt::from(-1)
        );
        assert_eq!(
            determinant(&to_int_matrix(&[vec![2, 2], vec![2, 2]])),
            BigInt::zero()
        );
    }

    #[test]
    fn solve_simple_system() {
        let m = to_int_matrix(&[vec![3, -1], vec![-1, 2]]);
        let x = solve(&m, &[rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(x, vec![rat(2, 5), rat(1, 5)]);
        let s = to_int_matrix(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(
            solve(&s, &[rat(1, 1), rat(0, 1)]),
            Err(LinalgError::Singular)
        );
    }

    #[test]
    fn positive_definiteness() {
        assert!(is_positive_definite(&to_int_matrix(&[
            vec![2, -1],
            vec![-1, 2]
        ])));
        assert!(!is_positive_definite(&to_int_matrix(&[
            vec![1, -1],
            vec![-1, 1]
        ])));
        assert!(!is_positive_definite(&to_int_matrix(&[
            vec![0, 1],
            vec![1, 5]
        ])));
    }

    fn square(max_n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-4i64..=4, n), n)
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_laplace(m in square(6)) {
            prop_assert_eq!(determinant(&to_int_matrix(&m)), BigInt::from(laplace(&m)));
        }

        #[test]
        fn solve_satisfies_system(m in square(5), b in proptest::collection::vec(-5i64..=5, 5)) {
            let n = m.len();
            let rhs: Vec<Rational> = b[..n].iter().map(|&v| rat(v, 3)).collect();
            let im = to_int_matrix(&m);
            match solve(&im, &rhs) {
                Ok(x) => {
                    for i in 0..n {
                        let lhs: Rational = (0..n).map(|j| rat(m[i][j], 1) * &x[j]).sum();
                        prop_assert_eq!(&lhs, &rhs[i]);
                    }
                }
                Err(e) => {
                    prop_assert_eq!(e, LinalgError::Singular);
                    prop_assert_eq!(laplace(&m), 0);
                }
            }
        }
    }
}
