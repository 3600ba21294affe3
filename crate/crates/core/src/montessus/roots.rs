//! Roots of exact polynomials, returned in floating point.
//!
//! The polynomial is first split into square-free factors (exactly), then
//! rational roots are peeled off exactly by the rational root test, and
//! whatever is left goes through Aberth–Ehrlich simultaneous iteration with
//! a Newton polish. Each root appears as many times as its multiplicity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::float::ComplexF;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Largest |integer coefficient| for which divisors are enumerated.
const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// Residual tolerance: `|V(root)| ≤ RESIDUAL_TOL · Σ |c_i| |root|^i`.
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    pub value: ComplexF,
    pub multiplicity: usize,
    /// Found by the exact rational root test.
    pub exact: bool,
}

/// All complex roots of `p` with multiplicity. Constant and zero
/// polynomials have none.
pub fn find_roots(p: &Polynomial) -> Vec<Root> {
    let mut out = Vec::new();
    for (factor, mult) in p.square_free() {
        let (rational, rest) = split_rational_roots(&factor);
        out.extend(rational.into_iter().map(|r| Root { value: ComplexF::new(r.to_f64(), 0.0), multiplicity: mult, exact: true }));
        if rest.degree().unwrap_or(0) > 0 {
            let coeffs: Vec<f64> = rest.coeffs().iter().map(Rational::to_f64).collect();
            out.extend(aberth(&coeffs).into_iter().map(|z| Root { value: z, multiplicity: mult, exact: false }));
        }
    }
    out
}

/// Roots expanded by multiplicity.
pub fn root_values(p: &Polynomial) -> Vec<ComplexF> {
    find_roots(p).into_iter().flat_map(|r| std::iter::repeat(r.value).take(r.multiplicity)).collect()
}

/// Largest relative residual over the given roots.
pub fn max_relative_residual(p: &Polynomial, roots: &[ComplexF]) -> f64 {
    let coeffs: Vec<f64> = p.coeffs().iter().map(Rational::to_f64).collect();
    roots
        .iter()
        .map(|&z| {
            let (v, scale) = horner_with_scale(&coeffs, z);
            if scale == 0.0 { 0.0 } else { v.norm() / scale }
        })
        .fold(0.0, f64::max)
}

fn horner_with_scale(coeffs: &[f64], z: ComplexF) -> (ComplexF, f64) {
    let r = z.norm();
    let mut v = ComplexF::new(0.0, 0.0);
    let mut s = 0.0;
    for &c in coeffs.iter().rev() {
        v = v * z + c;
        s = s * r + c.abs();
    }
    (v, s)
}

fn integer_coefficients(p: &Polynomial) -> Vec<BigInt> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_SEARCH_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Exact rational roots of a square-free polynomial and the cofactor left
/// after dividing them out.
fn split_rational_roots(p: &Polynomial) -> (Vec<Rational>, Polynomial) {
    let mut roots = Vec::new();
    let mut rest = p.clone();
    if rest.coeff(0).is_zero() {
        roots.push(Rational::zero());
        rest = rest.exact_div(&Polynomial::z()).expect("z divides");
    }
    if rest.degree().unwrap_or(0) == 0 {
        return (roots, rest);
    }
    let ints = integer_coefficients(&rest);
    let (Some(num_divs), Some(den_divs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return (roots, rest);
    };
    for b in &den_divs {
        for a in &num_divs {
            for sign in [1, -1] {
                if rest.degree().unwrap_or(0) == 0 {
                    return (roots, rest);
                }
                let cand = Rational::new(a * sign, b.clone()).expect("nonzero divisor");
                if roots.contains(&cand) || !rest.eval(&cand).is_zero() {
                    continue;
                }
                let linear = Polynomial::new(vec![-cand.clone(), Rational::one()]);
                rest = rest.exact_div(&linear).expect("root divides");
                roots.push(cand);
            }
        }
    }
    (roots, rest)
}

/// Aberth–Ehrlich iteration on a polynomial with simple roots.
fn aberth(coeffs: &[f64]) -> Vec<ComplexF> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return vec![ComplexF::new(-monic[0], 0.0)];
    }
    let deriv: Vec<f64> = (1..=n).map(|i| monic[i] * i as f64).collect();
    let eval = |c: &[f64], z: ComplexF| c.iter().rev().fold(ComplexF::new(0.0, 0.0), |acc, &a| acc * z + a);

    // Cauchy bound for the starting circle; the angular offset avoids
    // symmetric configurations.
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let start = radius.min(1e6) * 0.5;
    let mut z: Vec<ComplexF> = (0..n)
        .map(|k| ComplexF::from_polar(start, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();

    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let pz = eval(&monic, z[i]);
            let dz = eval(&deriv, z[i]);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / dz;
            let sum: ComplexF = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (ComplexF::new(1.0, 0.0) - ratio * sum);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // Newton polish.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let dz = eval(&deriv, *zi);
            if dz.norm() == 0.0 {
                break;
            }
            let step = eval(&monic, *zi) / dz;
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            *zi -= step;
        }
        // Snap tiny imaginary parts of real roots.
        if zi.im.abs() <= 1e-14 * zi.norm() {
            zi.im = 0.0;
        }
    }
    z
}
