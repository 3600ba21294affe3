//! Quotients of polynomials with a fixed normalization.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::float::{ComplexF, FloatContext};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// `num / den` with `den ≠ 0`, scaled so that `den(0) = 1` when the
/// denominator does not vanish at the origin and `den` is monic otherwise.
/// Common factors are not cancelled; see [`RationalFunction::reduced`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let d0 = den.coeff(0);
        let scale = if d0.is_zero() { den.leading().unwrap().recip()? } else { d0.recip()? };
        Ok(RationalFunction { num: num.scale(&scale), den: den.scale(&scale) })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// Cancel the polynomial gcd of numerator and denominator.
    pub fn reduced(&self) -> Self {
        if self.num.is_zero() {
            return RationalFunction::polynomial(Polynomial::zero());
        }
        let g = self.num.gcd(&self.den);
        let num = self.num.exact_div(&g).expect("gcd divides");
        let den = self.den.exact_div(&g).expect("gcd divides");
        RationalFunction::new(num, den).expect("nonzero denominator")
    }

    /// Equality as functions: `num_a · den_b = num_b · den_a`.
    pub fn same_function(&self, other: &RationalFunction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn eval(&self, z: &Rational) -> Result<Rational> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.eval(z) / d)
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.den == other.den {
            return RationalFunction::new(&self.num + &other.num, self.den.clone()).unwrap();
        }
        RationalFunction::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .expect("product of nonzero denominators")
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        let neg = RationalFunction { num: -&other.num, den: other.den.clone() };
        self.add(&neg)
    }

    /// Horner evaluation of numerator and denominator at the working
    /// precision. Fails when `|den(z)|` drops below the context's near-pole
    /// threshold, taken relative to the largest denominator coefficient.
    pub fn eval_complex(&self, ctx: &FloatContext, z: ComplexF) -> Result<ComplexF> {
        let den_coeffs = ctx.coeffs(&self.den);
        let scale = den_coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let d = ctx.eval_coeffs(&den_coeffs, z);
        let mag = d.norm();
        if !(mag >= ctx.near_pole_eps * scale) {
            return Err(Error::NearPole { magnitude: mag });
        }
        let n = ctx.eval_poly(&self.num, z);
        ctx.check_finite(ctx.div(n, d), "rational function evaluation")
    }
}

/// Free-function form of [`RationalFunction::eval_complex`].
pub fn eval_rf_complex(rf: &RationalFunction, ctx: &FloatContext, z: ComplexF) -> Result<ComplexF> {
    rf.eval_complex(ctx, z)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn geometric() -> RationalFunction {
        RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[1, -1])).unwrap()
    }

    #[test]
    fn normalization() {
        let rf = RationalFunction::new(Polynomial::from_ints(&[2]), Polynomial::from_ints(&[4, 2])).unwrap();
        assert_eq!(rf.den(), &Polynomial::new(vec![q(1, 1), q(1, 2)]));
        assert_eq!(rf.num(), &Polynomial::new(vec![q(1, 2)]));
        // den(0) = 0: monic instead
        let rf = RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[0, 3])).unwrap();
        assert_eq!(rf.den(), &Polynomial::z());
        assert!(RationalFunction::new(Polynomial::one(), Polynomial::zero()).is_err());
    }

    #[test]
    fn reduce_common_factor() {
        let rf = RationalFunction::new(Polynomial::from_ints(&[1, 1]), Polynomial::from_ints(&[1, 0, -1])).unwrap();
        let r = rf.reduced();
        assert_eq!(r.num(), &Polynomial::one());
        assert_eq!(r.den(), &Polynomial::from_ints(&[1, -1]));
        assert!(r.same_function(&rf));
    }

    #[test]
    fn eval_complex_examples() {
        let ctx = FloatContext::default();
        let g = geometric();
        assert_eq!(g.eval_complex(&ctx, ComplexF::new(0.0, 0.0)).unwrap(), ComplexF::new(1.0, 0.0));
        assert_eq!(g.eval_complex(&ctx, ComplexF::new(0.5, 0.0)).unwrap(), ComplexF::new(2.0, 0.0));
        match g.eval_complex(&ctx, ComplexF::new(1.0, 0.0)) {
            Err(Error::NearPole { magnitude }) => assert_eq!(magnitude, 0.0),
            other => panic!("expected near-pole error, got {other:?}"),
        }
    }
}
