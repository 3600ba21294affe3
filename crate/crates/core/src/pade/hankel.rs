//! Hankel determinants `H_p^m = det(s_{m+i+j})_{0≤i,j<p}` and the bordered
//! (Hadamard) polynomials built from them.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::linalg::{determinant, Matrix};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::series::PowerSeries;

/// Offset `m` and size `p` of a Hankel window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HankelSpec {
    pub m: usize,
    pub p: usize,
}

impl HankelSpec {
    pub fn new(m: usize, p: usize) -> Self {
        HankelSpec { m, p }
    }

    /// Highest coefficient index the window reads.
    pub fn last_index(&self) -> usize {
        (self.m + 2 * self.p).saturating_sub(2)
    }
}

fn window(series: &PowerSeries, m: i64, p: usize, extra_rows: usize) -> Matrix {
    (0..p + extra_rows)
        .map(|i| (0..p).map(|j| series.coeff_signed(m + (i + j) as i64)).collect())
        .collect()
}

fn check_fits(series: &PowerSeries, m: i64, last_offset: usize) -> Result<()> {
    let needed = m + last_offset as i64;
    if needed > series.order() as i64 {
        return Err(Error::InsufficientCoefficients { needed: needed.max(0) as usize, available: series.order() });
    }
    Ok(())
}

/// Exact `H_p^m`; `H_0^m = 1`.
pub fn hankel_det(series: &PowerSeries, spec: HankelSpec) -> Result<Rational> {
    hankel_det_padded(series, spec.m as i64, spec.p)
}

/// `H_p^m` for any integer offset, reading `s_i = 0` for `i < 0`. Negative
/// offsets are the determinants that govern Padé entries above the
/// diagonal.
pub fn hankel_det_padded(series: &PowerSeries, m: i64, p: usize) -> Result<Rational> {
    if p == 0 {
        return Ok(Rational::from(1));
    }
    check_fits(series, m, 2 * p - 2)?;
    Ok(determinant(window(series, m, p, 0)))
}

/// The degree-`p` polynomial in `u`
///
/// ```text
/// | s_m      …  s_{m+p-1}   1   |
/// | s_{m+1}  …  s_{m+p}     u   |
/// |   ⋮             ⋮       ⋮   |
/// | s_{m+p}  …  s_{m+2p-1}  u^p |  /  H_p^m
/// ```
///
/// Expanding along the last column, the `u^p` cofactor is `H_p^m`, so the
/// result is monic; its constant term is `(−1)^p H_p^{m+1} / H_p^m`.
/// Negative `m` reads `s_i = 0` for `i < 0`.
pub fn hadamard_polynomial(series: &PowerSeries, m: i64, p: usize) -> Result<Polynomial> {
    if p == 0 {
        return Ok(Polynomial::from_ints(&[1]));
    }
    check_fits(series, m, 2 * p - 1)?;
    let rows = window(series, m, p, 1);
    let denom = determinant(rows[..p].to_vec());
    if denom.is_zero() {
        return Err(Error::NonNormalWindow { m, p });
    }
    let inv = denom.recip()?;
    let coeffs = (0..=p)
        .map(|i| {
            let minor: Matrix = rows.iter().enumerate().filter(|&(r, _)| r != i).map(|(_, row)| row.clone()).collect();
            let cofactor = determinant(minor);
            let signed = if (i + p) % 2 == 0 { cofactor } else { -cofactor };
            signed * &inv
        })
        .collect();
    Ok(Polynomial::new(coeffs))
}

/// Grid of `H_p^m` for `0 ≤ m ≤ m_max`, `1 ≤ p ≤ p_max`; `None` where the
/// window runs past the truncation order.
pub fn hankel_grid(series: &PowerSeries, m_max: usize, p_max: usize) -> Vec<Vec<Option<Rational>>> {
    (0..=m_max)
        .map(|m| (1..=p_max).map(|p| hankel_det(series, HankelSpec::new(m, p)).ok()).collect())
        .collect()
}

/// CSV with one row per `m` and one column per `p`; empty cells where the
/// window does not fit.
pub fn hankel_grid_csv(series: &PowerSeries, m_max: usize, p_max: usize) -> String {
    let mut out = String::from("m");
    for p in 1..=p_max {
        out.push_str(&format!(",p={p}"));
    }
    out.push('\n');
    for (m, row) in hankel_grid(series, m_max, p_max).into_iter().enumerate() {
        out.push_str(&m.to_string());
        for cell in row {
            out.push(',');
            if let Some(v) = cell {
                out.push_str(&v.to_string());
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::series::{builtin_series, Builtin};

    fn exp(n: usize) -> PowerSeries {
        builtin_series(&Builtin::Exp, n)
    }

    #[test]
    fn small_determinants() {
        let s = exp(6);
        for m in 0..5 {
            assert_eq!(hankel_det(&s, HankelSpec::new(m, 1)).unwrap(), s.coeff(m).clone());
        }
        assert_eq!(hankel_det(&s, HankelSpec::new(0, 2)).unwrap(), q(-1, 2));
        let g = PowerSeries::from_ints(&[1, 1, 1, 1]);
        assert_eq!(hankel_det(&g, HankelSpec::new(0, 2)).unwrap(), q(0, 1));
        assert_eq!(hankel_det(&g, HankelSpec::new(3, 0)).unwrap(), q(1, 1));
    }

    #[test]
    fn window_must_fit() {
        let s = exp(3);
        assert!(hankel_det(&s, HankelSpec::new(1, 2)).is_ok());
        assert_eq!(
            hankel_det(&s, HankelSpec::new(2, 2)),
            Err(Error::InsufficientCoefficients { needed: 4, available: 3 })
        );
        assert_eq!(HankelSpec::new(2, 2).last_index(), 4);
    }

    #[test]
    fn padded_offsets() {
        let s = exp(4);
        // det [[0, 1], [1, 1]] = -1
        assert_eq!(hankel_det_padded(&s, -1, 2).unwrap(), q(-1, 1));
    }

    #[test]
    fn hadamard_examples() {
        let g = PowerSeries::from_ints(&[1, 1, 1, 1]);
        assert_eq!(hadamard_polynomial(&g, 0, 0).unwrap(), Polynomial::from_ints(&[1]));
        assert_eq!(hadamard_polynomial(&g, 1, 1).unwrap(), Polynomial::from_ints(&[-1, 1]));
        assert_eq!(hadamard_polynomial(&g, 0, 2), Err(Error::NonNormalWindow { m: 0, p: 2 }));
    }

    #[test]
    fn hadamard_monic_with_constant_term() {
        let s = exp(12);
        for m in 0..4i64 {
            for p in 1..4usize {
                let h = hadamard_polynomial(&s, m, p).unwrap();
                assert_eq!(h.degree(), Some(p));
                assert_eq!(h.leading().unwrap(), &q(1, 1));
                let ratio = hankel_det(&s, HankelSpec::new(m as usize + 1, p)).unwrap()
                    / hankel_det(&s, HankelSpec::new(m as usize, p)).unwrap();
                let expected = if p % 2 == 0 { ratio } else { -ratio };
                assert_eq!(h.coeff(0), expected);
            }
        }
    }

    #[test]
    fn hadamard_annihilates_window_columns() {
        let s = exp(12);
        let h = hadamard_polynomial(&s, 2, 3).unwrap();
        for j in 0..3 {
            let dot = (0..=3).fold(q(0, 1), |acc, i| acc + h.coeff(i) * s.coeff(2 + i + j).clone());
            assert_eq!(dot, q(0, 1));
        }
    }

    #[test]
    fn csv_layout() {
        let csv = hankel_grid_csv(&exp(3), 2, 2);
        assert_eq!(csv, "m,p=1,p=2\n0,1,-1/2\n1,1,-1/12\n2,1/2,\n");
    }
}
