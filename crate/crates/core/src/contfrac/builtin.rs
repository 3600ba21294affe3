use std::str::FromStr;

use num_traits::{One, Zero};

use super::{AlgebraicCF, ContinuedFraction};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Classical algebraic continued fractions, as term generators.
///
/// * `Tan`: `x/(1 − x²/(3 − x²/(5 − ⋯)))`, so `q0 = 0`, `(p1, q1) = (x, 1)`
///   and `(p_k, q_k) = (−x², 2k − 1)` for `k ≥ 2`.
/// * `Exp`: `1 + z/(1 + z/(−2 + z/(−3 + z/(2 + ⋯))))` with every partial
///   numerator `z`. Only the first four partial denominators are the
///   classical displayed ones; later ones continue the pattern obtained from
///   `1 + z/(1 − z/(2 + z/(3 − z/(2 + z/(5 − ⋯)))))` by the equivalence
///   transformation that turns every numerator into `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinCf {
    Tan,
    Exp,
}

impl FromStr for BuiltinCf {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "tan" => Ok(BuiltinCf::Tan),
            "exp" => Ok(BuiltinCf::Exp),
            other => Err(Error::UnknownBuiltin(other.to_string())),
        }
    }
}

impl BuiltinCf {
    pub fn q0(self) -> Polynomial {
        match self {
            BuiltinCf::Tan => Polynomial::zero(),
            BuiltinCf::Exp => Polynomial::one(),
        }
    }

    /// `(p_k, q_k)` for `k ≥ 1`.
    pub fn term(self, k: usize) -> (Polynomial, Polynomial) {
        assert!(k >= 1, "partial terms start at k = 1");
        match self {
            BuiltinCf::Tan => {
                if k == 1 {
                    (Polynomial::z(), Polynomial::one())
                } else {
                    (Polynomial::monomial(-Rational::one(), 2), Polynomial::constant(Rational::from(2 * k as i64 - 1)))
                }
            }
            BuiltinCf::Exp => {
                let magnitude = if k % 2 == 1 { k as i64 } else { 2 };
                let sign = if matches!(k % 4, 0 | 1) { 1 } else { -1 };
                (Polynomial::z(), Polynomial::constant(Rational::from(sign * magnitude)))
            }
        }
    }

    /// True for terms beyond the classical displayed pattern.
    pub fn is_extrapolated(self, k: usize) -> bool {
        matches!(self, BuiltinCf::Exp) && k > 4
    }

    /// The fraction cut after `k` partial terms.
    pub fn truncated(self, k: usize) -> AlgebraicCF {
        ContinuedFraction::new(self.q0(), (1..=k).map(|j| self.term(j)).collect())
    }

    pub fn terms(self) -> impl Iterator<Item = (Polynomial, Polynomial)> {
        (1..).map(move |k| self.term(k))
    }
}

/// Looks up a builtin by name (`tan` or `exp`).
pub fn builtin_algebraic_cf(name: &str) -> Result<BuiltinCf> {
    name.parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::{ComplexF, FloatContext};
    use crate::rational::q;

    #[test]
    fn displayed_terms() {
        let tan = builtin_algebraic_cf("tan").unwrap();
        assert_eq!(tan.q0(), Polynomial::zero());
        assert_eq!(tan.term(1), (Polynomial::z(), Polynomial::one()));
        assert_eq!(tan.term(2), (Polynomial::new(vec![q(0, 1), q(0, 1), q(-1, 1)]), Polynomial::from_ints(&[3])));
        assert_eq!(tan.term(4).1, Polynomial::from_ints(&[7]));

        let exp = builtin_algebraic_cf("exp").unwrap();
        assert_eq!(exp.q0(), Polynomial::one());
        let dens: Vec<Polynomial> = exp.terms().take(4).map(|(_, d)| d).collect();
        assert_eq!(dens, [1, -2, -3, 2].map(|c| Polynomial::from_ints(&[c])));
        assert!(exp.terms().take(12).all(|(p, _)| p == Polynomial::z()));
        assert!(!exp.is_extrapolated(4) && exp.is_extrapolated(5));
        assert!(builtin_algebraic_cf("sin").is_err());
    }

    #[test]
    fn tan_vanishes_at_origin() {
        let ctx = FloatContext::default();
        for k in 0..6 {
            let v = BuiltinCf::Tan.truncated(5).evaluate(&ctx, ComplexF::new(0.0, 0.0), k).unwrap();
            assert_eq!(v, ComplexF::new(0.0, 0.0));
        }
    }
}
