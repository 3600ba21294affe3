//! Continued fractions `q0 + p1/(q1 + p2/(q2 + ⋯))` with numeric or
//! polynomial partial terms.
//!
//! Convergents follow the three-term recurrences
//! `A_k = q_k A_{k-1} + p_k A_{k-2}`, `B_k = q_k B_{k-1} + p_k B_{k-2}`
//! seeded with `A_{-1} = 1, A_0 = q_0, B_{-1} = 0, B_0 = 1`.

mod builtin;
mod doc;
mod expand;

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::float::{ComplexF, FloatContext};
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::rational::Rational;

pub use builtin::{builtin_algebraic_cf, BuiltinCf};
pub use doc::CfDoc;
pub use expand::{euclid_cf, sqrt_cf};

/// Scalar domain of partial terms: exact rationals or polynomials.
pub trait CfTerm: Clone + PartialEq + Debug + Zero + One {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// Exact quotient, `None` if `rhs` is zero or does not divide.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
    fn eval_float(&self, ctx: &FloatContext, z: ComplexF) -> ComplexF;
}

impl CfTerm for Rational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.recip().ok().map(|r| self * &r)
    }
    fn eval_float(&self, ctx: &FloatContext, _z: ComplexF) -> ComplexF {
        ComplexF::new(ctx.round(self.to_f64()), 0.0)
    }
}

impl CfTerm for Polynomial {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        self.exact_div(rhs)
    }
    fn eval_float(&self, ctx: &FloatContext, z: ComplexF) -> ComplexF {
        ctx.eval_poly(self, z)
    }
}

/// A finite continued fraction. Every stored partial numerator is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuedFraction<T> {
    q0: T,
    partials: Vec<(T, T)>,
}

pub type NumericCF = ContinuedFraction<Rational>;
pub type AlgebraicCF = ContinuedFraction<Polynomial>;

/// Numerator and denominator of the convergent `A_k / B_k`, unreduced.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergentPair<T> {
    pub a: T,
    pub b: T,
}

impl<T> ConvergentPair<T> {
    pub fn new(a: T, b: T) -> Self {
        ConvergentPair { a, b }
    }
}

impl ConvergentPair<Rational> {
    /// `A/B` in lowest terms; a zero `B` is a degeneracy.
    pub fn value(&self) -> Result<Rational> {
        Ok(&self.a * &self.b.recip()?)
    }
}

impl ConvergentPair<Polynomial> {
    pub fn to_rational_function(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.a.clone(), self.b.clone())
    }
}

impl<T: CfTerm> ContinuedFraction<T> {
    /// Builds the fraction, cutting it at the first zero partial numerator.
    pub fn new(q0: T, partials: Vec<(T, T)>) -> Self {
        let mut partials = partials;
        if let Some(cut) = partials.iter().position(|(p, _)| p.is_zero()) {
            partials.truncate(cut);
        }
        ContinuedFraction { q0, partials }
    }

    pub fn q0(&self) -> &T {
        &self.q0
    }

    /// `(p_k, q_k)` for `k = 1..=len`, stored from index 0.
    pub fn partials(&self) -> &[(T, T)] {
        &self.partials
    }

    pub fn len(&self) -> usize {
        self.partials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partials.is_empty()
    }

    /// `(p_k, q_k)` with 1-based `k`.
    pub fn partial(&self, k: usize) -> Option<&(T, T)> {
        k.checked_sub(1).and_then(|i| self.partials.get(i))
    }

    /// Convergent pairs `0..=k` by forward recurrence.
    pub fn convergents_upto(&self, k: usize) -> Result<Vec<ConvergentPair<T>>> {
        if k > self.len() {
            return Err(Error::IndexOutOfRange { index: k, max: self.len() });
        }
        let mut out = Vec::with_capacity(k + 1);
        let (mut a_prev, mut b_prev) = (T::one(), T::zero());
        let (mut a, mut b) = (self.q0.clone(), T::one());
        out.push(ConvergentPair::new(a.clone(), b.clone()));
        for (p, q) in self.partials.iter().take(k) {
            let a_next = q.mul_ref(&a).add_ref(&p.mul_ref(&a_prev));
            let b_next = q.mul_ref(&b).add_ref(&p.mul_ref(&b_prev));
            a_prev = std::mem::replace(&mut a, a_next);
            b_prev = std::mem::replace(&mut b, b_next);
            out.push(ConvergentPair::new(a.clone(), b.clone()));
        }
        Ok(out)
    }

    pub fn convergents(&self) -> Vec<ConvergentPair<T>> {
        self.convergents_upto(self.len()).expect("in range")
    }

    /// `(A_k, B_k)` for `0 ≤ k ≤ len`.
    pub fn convergent(&self, k: usize) -> Result<ConvergentPair<T>> {
        Ok(self.convergents_upto(k)?.pop().expect("nonempty"))
    }

    /// Value of convergent `k` at `z`, evaluated bottom-up:
    /// `t_k = q_k`, `t_{j-1} = q_{j-1} + p_j / t_j`.
    pub fn evaluate(&self, ctx: &FloatContext, z: ComplexF, k: usize) -> Result<ComplexF> {
        if k > self.len() {
            return Err(Error::IndexOutOfRange { index: k, max: self.len() });
        }
        let q_at = |j: usize| -> ComplexF {
            if j == 0 {
                self.q0.eval_float(ctx, z)
            } else {
                self.partials[j - 1].1.eval_float(ctx, z)
            }
        };
        let mut t = q_at(k);
        for j in (1..=k).rev() {
            if !(t.norm() >= ctx.near_pole_eps) {
                return Err(Error::IndeterminateTruncation(j));
            }
            let p = self.partials[j - 1].0.eval_float(ctx, z);
            t = ctx.add(q_at(j - 1), ctx.div(p, t));
        }
        ctx.check_finite(t, "continued fraction evaluation")
    }

    /// Value of convergent `k` at `z` as `A_k(z) / B_k(z)` from the exact
    /// forward recurrence.
    pub fn evaluate_forward(&self, ctx: &FloatContext, z: ComplexF, k: usize) -> Result<ComplexF> {
        let pair = self.convergent(k)?;
        let b = pair.b.eval_float(ctx, z);
        if !(b.norm() >= ctx.near_pole_eps) {
            return Err(Error::NearPole { magnitude: b.norm() });
        }
        ctx.check_finite(ctx.div(pair.a.eval_float(ctx, z), b), "convergent evaluation")
    }
}

/// `evaluate_cf` in free-function form.
pub fn evaluate_cf<T: CfTerm>(cf: &ContinuedFraction<T>, ctx: &FloatContext, z: ComplexF, k: usize) -> Result<ComplexF> {
    cf.evaluate(ctx, z, k)
}

/// Recovers the partial terms from a sequence of convergent pairs, used as
/// presented (not reduced). Step `k` solves
/// `q_k A_{k-1} + p_k A_{k-2} = A_k`, `q_k B_{k-1} + p_k B_{k-2} = B_k`.
pub fn cf_from_convergents<T: CfTerm>(pairs: &[ConvergentPair<T>]) -> Result<ContinuedFraction<T>> {
    let first = pairs.first().ok_or(Error::EmptyInput("no convergents given"))?;
    if !first.b.is_one() {
        return Err(Error::NonUnitLeadingDenominator);
    }
    let mut partials = Vec::with_capacity(pairs.len() - 1);
    let seed = ConvergentPair::new(T::one(), T::zero());
    for k in 1..pairs.len() {
        let prev2 = if k == 1 { &seed } else { &pairs[k - 2] };
        let (prev, cur) = (&pairs[k - 1], &pairs[k]);
        let (q_num, p_num, det) = cramer(prev2, prev, cur);
        if det.is_zero() {
            return Err(Error::DegenerateConvergents(k));
        }
        let q = q_num.div_exact(&det).ok_or(Error::NonPolynomialPartial(k))?;
        let p = p_num.div_exact(&det).ok_or(Error::NonPolynomialPartial(k))?;
        if p.is_zero() {
            return Err(Error::DegenerateConvergents(k));
        }
        partials.push((p, q));
    }
    Ok(ContinuedFraction { q0: first.a.clone(), partials })
}

/// Cramer numerators and determinant for one inverse step.
fn cramer<T: CfTerm>(prev2: &ConvergentPair<T>, prev: &ConvergentPair<T>, cur: &ConvergentPair<T>) -> (T, T, T) {
    let det = prev.a.mul_ref(&prev2.b).sub_ref(&prev2.a.mul_ref(&prev.b));
    let q_num = cur.a.mul_ref(&prev2.b).sub_ref(&prev2.a.mul_ref(&cur.b));
    let p_num = prev.a.mul_ref(&cur.b).sub_ref(&cur.a.mul_ref(&prev.b));
    (q_num, p_num, det)
}

/// An algebraic continued fraction whose convergents reproduce a sequence of
/// rational functions as values. Convergent `offset + j` equals
/// `fractions[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionCf {
    pub cf: AlgebraicCF,
    pub offset: usize,
}

impl FractionCf {
    /// The fraction reproduced by convergent `offset + j`.
    pub fn fraction(&self, j: usize) -> Result<RationalFunction> {
        self.cf.convergent(self.offset + j)?.to_rational_function()
    }
}

/// Builds an algebraic continued fraction from given rational functions.
///
/// Polynomial partials generally force a rescaling of each pair: step `k`
/// uses `(λ_k U_k, λ_k V_k)` with the smallest polynomial `λ_k` that clears
/// the Cramer quotients (`λ_k = 1` whenever the pair as presented already
/// works). A first fraction with nonconstant denominator cannot be
/// convergent 0, so it becomes convergent 1 of a fraction with `q0 = 0`,
/// `p1 = U_0`, `q1 = V_0`.
pub fn cf_from_fractions(fractions: &[RationalFunction]) -> Result<FractionCf> {
    let first = fractions.first().ok_or(Error::EmptyInput("no fractions given"))?;
    let mut pairs: Vec<ConvergentPair<Polynomial>> = Vec::with_capacity(fractions.len() + 1);
    let mut partials = Vec::new();
    let offset;
    let q0;
    if first.den().is_one() {
        offset = 0;
        q0 = first.num().clone();
        pairs.push(ConvergentPair::new(first.num().clone(), Polynomial::one()));
    } else {
        if first.num().is_zero() {
            return Err(Error::DegenerateConvergents(1));
        }
        offset = 1;
        q0 = Polynomial::zero();
        pairs.push(ConvergentPair::new(Polynomial::zero(), Polynomial::one()));
        pairs.push(ConvergentPair::new(first.num().clone(), first.den().clone()));
        partials.push((first.num().clone(), first.den().clone()));
    }
    let seed = ConvergentPair::new(Polynomial::one(), Polynomial::zero());
    for (j, rf) in fractions.iter().enumerate().skip(1) {
        let k = offset + j;
        let prev2 = if k == 1 { &seed } else { &pairs[k - 2] };
        let prev = &pairs[k - 1];
        let raw = ConvergentPair::new(rf.num().clone(), rf.den().clone());
        let (q_num, p_num, det) = cramer(prev2, prev, &raw);
        if det.is_zero() || p_num.is_zero() {
            return Err(Error::DegenerateConvergents(k));
        }
        let (lambda, q, p) = match (q_num.exact_div(&det), p_num.exact_div(&det)) {
            (Some(q), Some(p)) => (Polynomial::one(), q, p),
            _ => {
                let g = q_num.gcd(&p_num).gcd(&det);
                let lambda = det.exact_div(&g).expect("gcd divides");
                (lambda, q_num.exact_div(&g).expect("gcd divides"), p_num.exact_div(&g).expect("gcd divides"))
            }
        };
        partials.push((p, q));
        pairs.push(ConvergentPair::new(&lambda * &raw.a, &lambda * &raw.b));
    }
    Ok(FractionCf { cf: ContinuedFraction::new(q0, partials), offset })
}

/// `A_k B_{k-1} − A_{k-1} B_k` for `k ≥ 1`.
pub fn convergent_determinant<T: CfTerm>(pairs: &[ConvergentPair<T>], k: usize) -> T {
    pairs[k].a.mul_ref(&pairs[k - 1].b).sub_ref(&pairs[k - 1].a.mul_ref(&pairs[k].b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn simple(q0: i64, terms: &[i64]) -> NumericCF {
        ContinuedFraction::new(q(q0, 1), terms.iter().map(|&t| (q(1, 1), q(t, 1))).collect())
    }

    #[test]
    fn convergent_105_24() {
        let cf = simple(4, &[2, 1, 2]);
        let c = cf.convergent(3).unwrap();
        assert_eq!((c.a.clone(), c.b.clone()), (q(35, 1), q(8, 1)));
        assert_eq!(c.value().unwrap(), q(105, 24));
        let c0 = cf.convergent(0).unwrap();
        assert_eq!((c0.a, c0.b), (q(4, 1), q(1, 1)));
        assert!(matches!(cf.convergent(4), Err(Error::IndexOutOfRange { index: 4, max: 3 })));
    }

    #[test]
    fn seed_gives_b1_equal_q1() {
        let cf = ContinuedFraction::new(q(2, 1), vec![(q(3, 1), q(5, 1))]);
        let c = cf.convergent(1).unwrap();
        assert_eq!(c.b, q(5, 1));
        assert_eq!(c.a, q(5 * 2 + 3, 1));
    }

    #[test]
    fn sqrt3_first_convergent() {
        let c = simple(1, &[1, 2]).convergent(1).unwrap();
        assert_eq!(c.value().unwrap(), q(2, 1));
    }

    #[test]
    fn zero_numerator_terminates() {
        let cf = ContinuedFraction::new(q(1, 1), vec![(q(1, 1), q(2, 1)), (q(0, 1), q(3, 1)), (q(1, 1), q(1, 1))]);
        assert_eq!(cf.len(), 1);
    }

    #[test]
    fn inverse_of_euclid() {
        let cf = simple(4, &[2, 1, 2]);
        let back = cf_from_convergents(&cf.convergents()).unwrap();
        assert_eq!(back, cf);
        let single = cf_from_convergents(&[ConvergentPair::new(q(7, 1), q(1, 1))]).unwrap();
        assert_eq!(single, ContinuedFraction::new(q(7, 1), vec![]));
    }

    #[test]
    fn inverse_errors() {
        let pairs = vec![ConvergentPair::new(q(1, 1), q(1, 1)), ConvergentPair::new(q(2, 1), q(2, 1)), ConvergentPair::new(q(3, 1), q(4, 1))];
        // repeated value: p_1 = 0
        assert_eq!(cf_from_convergents(&pairs), Err(Error::DegenerateConvergents(1)));
        assert_eq!(cf_from_convergents(&[ConvergentPair::new(q(1, 1), q(2, 1))]), Err(Error::NonUnitLeadingDenominator));
        assert!(cf_from_convergents::<Rational>(&[]).is_err());
    }

    #[test]
    fn backward_matches_exact_value() {
        let ctx = FloatContext::default();
        let cf = simple(4, &[2, 1, 2]);
        let v = cf.evaluate(&ctx, ComplexF::new(0.0, 0.0), 3).unwrap();
        assert_eq!(v.re, 35.0 / 8.0);
    }

    #[test]
    fn indeterminate_level_reported() {
        let ctx = FloatContext::default();
        // 1 + 1/(1 + 1/(-1)): the innermost q is -1, then 1 + 1/(-1) = 0.
        let cf = simple(1, &[1, -1]);
        assert_eq!(cf.evaluate(&ctx, ComplexF::new(0.0, 0.0), 2), Err(Error::IndeterminateTruncation(1)));
    }

    fn random_cf() -> impl Strategy<Value = NumericCF> {
        let term = prop_oneof![-9i64..=-1, 1i64..=9];
        (-9i64..=9, prop::collection::vec((term.clone(), term), 0..=8)).prop_map(|(q0, parts)| {
            ContinuedFraction::new(q(q0, 1), parts.into_iter().map(|(p, t)| (q(p, 1), q(t, 1))).collect())
        })
    }

    proptest! {
        #[test]
        fn determinant_identity(cf in random_cf()) {
            let pairs = cf.convergents();
            let mut prod = Rational::one();
            for k in 1..pairs.len() {
                prod = &prod * &cf.partial(k).unwrap().0;
                let sign = if (k - 1) % 2 == 0 { Rational::one() } else { -Rational::one() };
                prop_assert_eq!(convergent_determinant(&pairs, k), &sign * &prod);
            }
        }

        #[test]
        fn inverse_round_trip(cf in random_cf()) {
            let pairs = cf.convergents();
            let nondegenerate = (1..pairs.len()).all(|k| {
                let prev2 = if k == 1 { ConvergentPair::new(Rational::one(), Rational::zero()) } else { pairs[k - 2].clone() };
                !(&pairs[k - 1].a * &prev2.b - &prev2.a * &pairs[k - 1].b).is_zero()
            });
            prop_assume!(nondegenerate);
            prop_assert_eq!(cf_from_convergents(&pairs).unwrap(), cf);
        }
    }
}
