//! Dense linear solves on augmented matrices `[A | b]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::Scalar;
use crate::Rational;

/// Gauss-Jordan elimination with partial pivoting. `None` when a pivot is
/// negligible.
pub(crate) fn gauss_jordan<S: Scalar>(mut a: Vec<Vec<S>>) -> Option<Vec<S>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r1, &r2| a[r1][col].abs().partial_cmp(&a[r2][col].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .expect("nonempty range");
        if a[pivot][col].is_negligible() {
            return None;
        }
        a.swap(col, pivot);
        let inv = S::one() / a[col][col].clone();
        for c in col..=n {
            a[col][c] = a[col][c].clone() * inv.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let delta = factor.clone() * a[col][c].clone();
                a[r][c] = a[r][c].clone() - delta;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Fraction-free (Bareiss) elimination: rows are scaled to integers, all
/// intermediate entries stay integral minors, and rationals appear only in
/// the back substitution. `None` when the matrix is singular.
pub(crate) fn bareiss(a: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(m[i][i].clone());
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    #[test]
    fn small_systems() {
        // x + y = 3, x - y = 1
        let a = vec![vec![rat(1, 1), rat(1, 1), rat(3, 1)], vec![rat(1, 1), rat(-1, 1), rat(1, 1)]];
        assert_eq!(bareiss(&a), Some(vec![rat(2, 1), rat(1, 1)]));
        assert_eq!(gauss_jordan(a), Some(vec![rat(2, 1), rat(1, 1)]));
        let singular = vec![vec![rat(1, 2), rat(1, 3), rat(1, 1)], vec![rat(3, 2), rat(1, 1), rat(0, 1)]];
        assert_eq!(bareiss(&singular), None);
        assert_eq!(gauss_jordan(singular), None);
        // a zero leading entry needs a row swap
        let swap = vec![vec![rat(0, 1), rat(2, 3), rat(2, 1)], vec![rat(1, 5), rat(0, 1), rat(1, 1)]];
        assert_eq!(bareiss(&swap), Some(vec![rat(5, 1), rat(3, 1)]));
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_gauss_jordan(n in 1usize..6, entries in proptest::collection::vec((-6i64..=6, 1i64..=5), 42)) {
            let a: Vec<Vec<Rational>> = (0..n)
                .map(|i| (0..=n).map(|j| { let (p, q) = entries[i * 7 + j]; rat(p, q) }).collect())
                .collect();
            prop_assert_eq!(bareiss(&a), gauss_jordan(a.clone()));
        }
    }
}
