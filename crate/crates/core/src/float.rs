//! Floating-point diagnostics of exact objects.
//!
//! The exact kernel never touches floats. Everything here takes a
//! [`FloatContext`] describing the working precision and the near-pole
//! threshold, so a diagnostic can be re-run at another precision without
//! any global state.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub type ComplexF = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    /// IEEE binary32, emulated by rounding every intermediate result.
    Binary32,
    #[default]
    Binary64,
}

impl Precision {
    pub fn from_bits(bits: u32) -> Result<Self> {
        match bits {
            24 => Ok(Precision::Binary32),
            53 => Ok(Precision::Binary64),
            other => Err(Error::UnsupportedPrecision(other)),
        }
    }

    pub fn bits(self) -> u32 {
        match self {
            Precision::Binary32 => 24,
            Precision::Binary64 => 53,
        }
    }
}

pub const DEFAULT_NEAR_POLE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatContext {
    pub precision: Precision,
    /// Relative to the largest denominator coefficient magnitude.
    pub near_pole_eps: f64,
}

impl Default for FloatContext {
    fn default() -> Self {
        FloatContext { precision: Precision::Binary64, near_pole_eps: DEFAULT_NEAR_POLE_EPS }
    }
}

impl FloatContext {
    pub fn with_precision(precision: Precision) -> Self {
        FloatContext { precision, ..Default::default() }
    }

    #[inline]
    pub fn round(&self, x: f64) -> f64 {
        match self.precision {
            // Rounding f64 results to f32 after each basic operation gives
            // exactly the binary32 result (53 >= 2*24 + 2).
            Precision::Binary32 => x as f32 as f64,
            Precision::Binary64 => x,
        }
    }

    #[inline]
    pub fn round_c(&self, z: ComplexF) -> ComplexF {
        ComplexF::new(self.round(z.re), self.round(z.im))
    }

    pub fn add(&self, a: ComplexF, b: ComplexF) -> ComplexF {
        self.round_c(a + b)
    }

    pub fn mul(&self, a: ComplexF, b: ComplexF) -> ComplexF {
        // Component-wise so each real product and sum is rounded.
        let re = self.round(self.round(a.re * b.re) - self.round(a.im * b.im));
        let im = self.round(self.round(a.re * b.im) + self.round(a.im * b.re));
        ComplexF::new(re, im)
    }

    pub fn div(&self, a: ComplexF, b: ComplexF) -> ComplexF {
        match self.precision {
            Precision::Binary64 => a / b,
            Precision::Binary32 => {
                let c32 = num_complex::Complex32::new(a.re as f32, a.im as f32)
                    / num_complex::Complex32::new(b.re as f32, b.im as f32);
                ComplexF::new(c32.re as f64, c32.im as f64)
            }
        }
    }

    /// Polynomial coefficients rounded to the working precision.
    pub fn coeffs(&self, p: &Polynomial) -> Vec<f64> {
        p.coeffs().iter().map(|c| self.round(c.to_f64())).collect()
    }

    /// Horner evaluation at the working precision.
    pub fn eval_poly(&self, p: &Polynomial, z: ComplexF) -> ComplexF {
        self.eval_coeffs(&self.coeffs(p), z)
    }

    pub fn eval_coeffs(&self, coeffs: &[f64], z: ComplexF) -> ComplexF {
        let z = self.round_c(z);
        coeffs.iter().rev().fold(ComplexF::new(0.0, 0.0), |acc, &c| {
            self.add(self.mul(acc, z), ComplexF::new(c, 0.0))
        })
    }

    pub fn check_finite(&self, z: ComplexF, what: &'static str) -> Result<ComplexF> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(z)
        } else {
            Err(Error::NonFinite(what))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary32_rounds() {
        let ctx = FloatContext::with_precision(Precision::Binary32);
        let third = ctx.round(1.0 / 3.0);
        assert_eq!(third, (1.0f32 / 3.0f32) as f64);
        assert_ne!(third, 1.0 / 3.0);
    }

    #[test]
    fn precision_bits() {
        assert_eq!(Precision::from_bits(53).unwrap(), Precision::Binary64);
        assert_eq!(Precision::from_bits(24).unwrap().bits(), 24);
        assert_eq!(Precision::from_bits(113), Err(Error::UnsupportedPrecision(113)));
    }

    #[test]
    fn horner() {
        let ctx = FloatContext::default();
        let p = Polynomial::from_ints(&[1, 2, 3]);
        let v = ctx.eval_poly(&p, ComplexF::new(0.0, 1.0));
        assert_eq!(v, ComplexF::new(-2.0, 2.0));
    }
}
