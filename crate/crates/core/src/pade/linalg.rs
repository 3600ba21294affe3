//! Exact dense linear algebra over `Rational`.
//!
//! Pivoting takes the first nonzero entry of the column, so singularity is
//! decided exactly.

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(mut a: Matrix) -> Rational {
    let n = a.len();
    if n == 0 {
        return Rational::one();
    }
    let mut sign = Rational::one();
    let mut prev_pivot = Rational::one();
    for k in 0..n {
        let Some(pr) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Rational::zero();
        };
        if pr != k {
            a.swap(pr, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v / &prev_pivot;
            }
        }
        prev_pivot = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Solves `a · x = rhs`; `None` when `a` is singular.
pub fn solve(mut a: Matrix, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    for k in 0..n {
        let pr = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(pr, k);
        rhs.swap(pr, k);
        let inv = a[k][k].recip().ok()?;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] * &inv;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= &v;
            }
            let v = &f * &rhs[k];
            rhs[i] -= &v;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let mut acc = rhs[k].clone();
        for j in k + 1..n {
            acc -= &(&a[k][j] * &x[j]);
        }
        x[k] = acc / &a[k][k];
    }
    Some(x)
}
