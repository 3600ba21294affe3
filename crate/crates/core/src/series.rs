//! Truncated power series with exact coefficients.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::rational::Rational;

/// The variable a series is expanded in. Moment series are stored as plain
/// coefficient lists in `w = 1/z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Variable {
    #[default]
    #[serde(rename = "z")]
    Z,
    #[serde(rename = "1/z")]
    InvZ,
}

/// Coefficients `s_0 ..= s_N`; the truncation order `N` is `coeffs.len() - 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
    variable: Variable,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyInput("power series needs at least one coefficient"));
        }
        Ok(PowerSeries { coeffs, variable: Variable::Z })
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        PowerSeries::new(coeffs.iter().map(|&c| Rational::from(c)).collect()).expect("nonempty")
    }

    pub fn with_variable(mut self, variable: Variable) -> Self {
        self.variable = variable;
        self
    }

    pub fn variable(&self) -> Variable {
        self.variable
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    /// `s_i` with the convention `s_i = 0` for negative `i`. Panics past the
    /// truncation order.
    pub fn coeff_signed(&self, i: i64) -> Rational {
        if i < 0 {
            Rational::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn ensure_order(&self, needed: usize) -> Result<()> {
        if self.order() < needed {
            return Err(Error::InsufficientCoefficients { needed, available: self.order() });
        }
        Ok(())
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        self.ensure_order(order)?;
        Ok(PowerSeries { coeffs: self.coeffs[..=order].to_vec(), variable: self.variable })
    }

    /// Partial sum `s_0 + … + s_degree z^degree`.
    pub fn partial_sum(&self, degree: usize) -> Polynomial {
        Polynomial::new(self.coeffs.iter().take(degree + 1).cloned().collect())
    }

    /// Coefficient-wise sum, truncated to the shorter order.
    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.coeffs.len().min(other.coeffs.len());
        PowerSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
            variable: self.variable,
        }
    }

    /// Product with a polynomial, truncated to this series' order.
    pub fn mul_poly(&self, p: &Polynomial) -> PowerSeries {
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        for (j, c) in p.coeffs().iter().enumerate().take(n) {
            if c.is_zero() {
                continue;
            }
            for i in 0..n - j {
                out[i + j] += &(c * &self.coeffs[i]);
            }
        }
        PowerSeries { coeffs: out, variable: self.variable }
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// Taylor expansion of `rf` at the origin through `z^order`, by the
/// long-division recurrence `num_k = Σ_j den_j · s_{k-j}`.
pub fn series_of_rational_function(rf: &RationalFunction, order: usize) -> Result<PowerSeries> {
    let den = rf.den();
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Err(Error::SeriesUndefinedAtOrigin);
    }
    let inv = d0.recip()?;
    let mut s: Vec<Rational> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = rf.num().coeff(k);
        for (j, dj) in den.coeffs().iter().enumerate().skip(1).take(k) {
            acc -= &(dj * &s[k - j]);
        }
        s.push(acc * &inv);
    }
    PowerSeries::new(s)
}

/// Named series generators with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    /// `s_i = 1/i!`
    Exp,
    /// `s_i = a^i`, the expansion of `1/(1 - a z)`.
    Geometric(Rational),
}

impl FromStr for Builtin {
    type Err = Error;

    /// Accepts `exp`, `geometric` (ratio 1) and `geometric(a)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "exp" {
            return Ok(Builtin::Exp);
        }
        if t == "geometric" {
            return Ok(Builtin::Geometric(Rational::one()));
        }
        if let Some(arg) = t.strip_prefix("geometric(").and_then(|r| r.strip_suffix(')')) {
            return Ok(Builtin::Geometric(arg.parse()?));
        }
        Err(Error::UnknownBuiltin(s.to_string()))
    }
}

impl Builtin {
    /// The builtin as a rational function, when it is one.
    pub fn as_rational_function(&self) -> Option<RationalFunction> {
        match self {
            Builtin::Exp => None,
            Builtin::Geometric(a) => Some(
                RationalFunction::new(Polynomial::one(), Polynomial::new(vec![Rational::one(), -a]))
                    .expect("nonzero denominator"),
            ),
        }
    }
}

pub fn builtin_series(builtin: &Builtin, order: usize) -> PowerSeries {
    let coeffs = match builtin {
        Builtin::Exp => {
            let mut out = Vec::with_capacity(order + 1);
            let mut term = Rational::one();
            out.push(term.clone());
            for i in 1..=order {
                term = term / Rational::from(i as i64);
                out.push(term.clone());
            }
            out
        }
        Builtin::Geometric(a) => {
            let mut out = Vec::with_capacity(order + 1);
            let mut term = Rational::one();
            for _ in 0..=order {
                out.push(term.clone());
                term = term * a;
            }
            out
        }
    };
    PowerSeries::new(coeffs).expect("nonempty")
}

/// The formal series `c_0/z − c_1/z² + c_2/z³ − ⋯` of a moment sequence,
/// stored in the variable `w = 1/z` with coefficient `(−1)^n c_n` at index
/// `n`. The overall factor `1/z` (an index shift by one) is not stored: the
/// true expansion is `w · Σ (−1)^n c_n w^n`.
pub fn series_from_moments(moments: &[Rational]) -> Result<PowerSeries> {
    if moments.is_empty() {
        return Err(Error::EmptyInput("moment list is empty"));
    }
    let coeffs = moments
        .iter()
        .enumerate()
        .map(|(n, c)| if n % 2 == 0 { c.clone() } else { -c })
        .collect();
    Ok(PowerSeries::new(coeffs)?.with_variable(Variable::InvZ))
}

/// `c_n = n!` for `n < count`: the moments behind `1! − 2! + 3! − ⋯`.
pub fn factorial_moments(count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut f = Rational::one();
    for n in 0..count {
        if n > 0 {
            f = f * Rational::from(n as i64);
        }
        out.push(f.clone());
    }
    out
}
