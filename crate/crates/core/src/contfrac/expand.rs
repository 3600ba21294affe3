use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ContinuedFraction, NumericCF};
use crate::rational::Rational;

/// Regular expansion of a rational by Euclid's algorithm: all partial
/// numerators are one and the last convergent is `x` itself.
pub fn euclid_cf(x: &Rational) -> NumericCF {
    let q0 = x.floor();
    let mut rem = x - &q0;
    let mut partials = Vec::new();
    while !rem.is_zero() {
        let inv = rem.recip().expect("nonzero remainder");
        let a = inv.floor();
        rem = &inv - &a;
        partials.push((Rational::one(), a));
    }
    ContinuedFraction::new(q0, partials)
}

/// First `terms` terms (`q0` included) of the regular expansion of `√n`,
/// by the integer surd iteration `(P + √n)/Q`. Perfect squares give the
/// integer root alone.
pub fn sqrt_cf(n: u64, terms: usize) -> NumericCF {
    let n = BigInt::from(n);
    let a0 = n.sqrt();
    if terms == 0 {
        return ContinuedFraction::new(Rational::from(a0), vec![]);
    }
    if &a0 * &a0 == n {
        return ContinuedFraction::new(Rational::from(a0), vec![]);
    }
    let (mut p, mut qd, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let mut partials = Vec::with_capacity(terms - 1);
    for _ in 1..terms {
        p = &a * &qd - &p;
        qd = (&n - &p * &p) / &qd;
        debug_assert!(qd.is_positive());
        a = (&a0 + &p) / &qd;
        partials.push((Rational::one(), Rational::from(a.clone())));
    }
    ContinuedFraction::new(Rational::from(a0), partials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn terms(cf: &NumericCF) -> Vec<Rational> {
        std::iter::once(cf.q0().clone()).chain(cf.partials().iter().map(|(_, t)| t.clone())).collect()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn euclid_examples() {
        assert_eq!(terms(&euclid_cf(&q(105, 24))), ints(&[4, 2, 1, 2]));
        assert_eq!(terms(&euclid_cf(&q(7, 1))), ints(&[7]));
        assert_eq!(terms(&euclid_cf(&q(1, 3))), ints(&[0, 3]));
        assert_eq!(terms(&euclid_cf(&q(-7, 3))), ints(&[-3, 1, 2]));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(terms(&sqrt_cf(3, 5)), ints(&[1, 1, 2, 1, 2]));
        assert_eq!(terms(&sqrt_cf(4, 9)), ints(&[2]));
        assert_eq!(terms(&sqrt_cf(2, 4)), ints(&[1, 2, 2, 2]));
        assert_eq!(terms(&sqrt_cf(7, 6)), ints(&[2, 1, 1, 1, 4, 1]));
    }

    #[test]
    fn sqrt3_period() {
        let cf = sqrt_cf(3, 60);
        for (i, (_, t)) in cf.partials().iter().enumerate() {
            assert_eq!(*t, q(if i % 2 == 0 { 1 } else { 2 }, 1));
        }
    }

    proptest! {
        #[test]
        fn euclid_round_trip(n in -10_000i64..10_000, d in 1i64..5_000) {
            let x = q(n, d);
            let cf = euclid_cf(&x);
            prop_assert_eq!(cf.convergent(cf.len()).unwrap().value().unwrap(), x);
            for (p, t) in cf.partials() {
                prop_assert!(p.is_one());
                prop_assert!(t.is_integer() && *t >= Rational::one());
            }
        }
    }
}
