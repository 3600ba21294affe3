//! Row-convergence experiments on meromorphic test functions.
//!
//! A test function is a rational part (which carries every pole) plus an
//! entire part with exact rational Taylor coefficients. The experiment
//! walks a Padé row of fixed rank `p`, tracks how the denominator roots
//! approach the `p` smallest poles and measures the sup error on a grid.

mod config;
mod experiment;
mod grid;
mod matching;
mod roots;

pub use config::{ExperimentConfig, PoleDecl};
pub use experiment::{run_row_experiment, telescoped_row_series, ConvergenceReport, RateEstimates, RowRecord};
pub use grid::{Grid, GridSpec};
pub use matching::{pole_match, Assignment, Matching};
pub use roots::{find_roots, max_relative_residual, root_values, Root, RESIDUAL_TOL};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::doc::SeriesDoc;
use crate::error::{Error, Result};
use crate::float::{ComplexF, FloatContext};
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::rational::Rational;
use crate::series::{builtin_series, series_of_rational_function, Builtin, PowerSeries};

/// Relative margin required for `|α_p| < |α_{p+1}|`.
pub const GAP_TOL: f64 = 1e-9;

/// `c · exp(z) + poly(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntirePart {
    pub exp_coeff: Rational,
    pub poly: Polynomial,
}

impl EntirePart {
    pub fn zero() -> Self {
        EntirePart { exp_coeff: Rational::zero(), poly: Polynomial::zero() }
    }

    pub fn exp() -> Self {
        EntirePart { exp_coeff: Rational::one(), poly: Polynomial::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.exp_coeff.is_zero() && self.poly.is_zero()
    }

    pub fn taylor(&self, order: usize) -> PowerSeries {
        let exp = builtin_series(&Builtin::Exp, order);
        let coeffs = (0..=order).map(|i| &(&self.exp_coeff * exp.coeff(i)) + &self.poly.coeff(i)).collect();
        PowerSeries::new(coeffs).expect("nonempty")
    }

    pub fn eval(&self, ctx: &FloatContext, z: ComplexF) -> ComplexF {
        let mut v = ComplexF::new(0.0, 0.0);
        if !self.exp_coeff.is_zero() {
            let e = ctx.round_c(ctx.round_c(z).exp());
            v = ctx.mul(ComplexF::new(ctx.round(self.exp_coeff.to_f64()), 0.0), e);
        }
        if !self.poly.is_zero() {
            v = ctx.add(v, ctx.eval_poly(&self.poly, z));
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pole {
    pub location: ComplexF,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeromorphicSpec {
    /// Stored reduced, so its denominator's roots are exactly the poles.
    rational_part: RationalFunction,
    entire_part: EntirePart,
    declared_poles: Option<Vec<Pole>>,
}

impl MeromorphicSpec {
    pub fn new(rational_part: RationalFunction, entire_part: EntirePart, declared_poles: Option<Vec<Pole>>) -> Result<Self> {
        let rational_part = rational_part.reduced();
        if rational_part.den().coeff(0).is_zero() {
            return Err(Error::SeriesUndefinedAtOrigin);
        }
        if let Some(decl) = &declared_poles {
            let total: usize = decl.iter().map(|p| p.multiplicity).sum();
            let deg = rational_part.den().degree().unwrap_or(0);
            if total != deg {
                return Err(Error::InvalidSpec(format!(
                    "declared pole multiplicities sum to {total}, denominator degree is {deg}"
                )));
            }
        }
        Ok(MeromorphicSpec { rational_part, entire_part, declared_poles })
    }

    pub fn rational(rf: RationalFunction) -> Result<Self> {
        Self::new(rf, EntirePart::zero(), None)
    }

    /// Split a series document into parts: `rational` documents and
    /// geometric builtins go to the rational part, `exp` and explicit lists
    /// (read as polynomials) to the entire part.
    pub fn from_doc(doc: &SeriesDoc, declared_poles: Option<Vec<Pole>>) -> Result<Self> {
        let mut rational = RationalFunction::polynomial(Polynomial::zero());
        let mut entire = EntirePart::zero();
        collect_parts(doc, &mut rational, &mut entire)?;
        Self::new(rational, entire, declared_poles)
    }

    pub fn rational_part(&self) -> &RationalFunction {
        &self.rational_part
    }

    pub fn entire_part(&self) -> &EntirePart {
        &self.entire_part
    }

    pub fn declared_poles(&self) -> Option<&[Pole]> {
        self.declared_poles.as_deref()
    }

    /// Poles sorted by modulus, then real and imaginary part. Declared poles
    /// win over computed ones.
    pub fn poles(&self) -> Vec<Pole> {
        let mut poles = match &self.declared_poles {
            Some(d) => d.clone(),
            None => find_roots(self.rational_part.den())
                .into_iter()
                .map(|r| Pole { location: r.value, multiplicity: r.multiplicity })
                .collect(),
        };
        poles.sort_by(|a, b| {
            a.location
                .norm()
                .total_cmp(&b.location.norm())
                .then(a.location.re.total_cmp(&b.location.re))
                .then(a.location.im.total_cmp(&b.location.im))
        });
        poles
    }

    /// Float value of `f` from its parts.
    pub fn eval(&self, ctx: &FloatContext, z: ComplexF) -> Result<ComplexF> {
        let r = self.rational_part.eval_complex(ctx, z)?;
        if self.entire_part.is_zero() {
            return Ok(r);
        }
        ctx.check_finite(ctx.add(r, self.entire_part.eval(ctx, z)), "test function")
    }
}

fn collect_parts(doc: &SeriesDoc, rational: &mut RationalFunction, entire: &mut EntirePart) -> Result<()> {
    match doc {
        SeriesDoc::Explicit { coeffs } => {
            entire.poly = &entire.poly + &Polynomial::new(coeffs.clone());
        }
        SeriesDoc::Builtin { name } => match name.parse::<Builtin>()? {
            Builtin::Exp => entire.exp_coeff = &entire.exp_coeff + &Rational::one(),
            g => *rational = rational.add(&g.as_rational_function().expect("geometric is rational")),
        },
        SeriesDoc::Rational { .. } => *rational = rational.add(&doc.rational_function()?),
        SeriesDoc::Sum { parts } => {
            if parts.is_empty() {
                return Err(Error::EmptyInput("sum has no parts"));
            }
            for part in parts {
                collect_parts(part, rational, entire)?;
            }
        }
    }
    Ok(())
}

/// Exact Taylor coefficients of `f` through `z^order`.
pub fn taylor_of_meromorphic(spec: &MeromorphicSpec, order: usize) -> Result<PowerSeries> {
    let r = series_of_rational_function(&spec.rational_part, order)?;
    Ok(r.add(&spec.entire_part.taylor(order)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleOrderingCheck {
    pub p: usize,
    /// `|α_i|`, ascending, each pole repeated by multiplicity.
    pub moduli: Vec<f64>,
    pub gap_ok: bool,
}

impl PoleOrderingCheck {
    /// `|α_{p+1}|`, or `None` when there are only `p` poles.
    pub fn next_modulus(&self) -> Option<f64> {
        self.moduli.get(self.p).copied()
    }
}

pub fn pole_ordering_check(spec: &MeromorphicSpec, p: usize) -> PoleOrderingCheck {
    check_moduli(&spec.poles(), p)
}

fn check_moduli(poles: &[Pole], p: usize) -> PoleOrderingCheck {
    let mut moduli: Vec<f64> =
        poles.iter().flat_map(|pole| std::iter::repeat(pole.location.norm()).take(pole.multiplicity)).collect();
    moduli.sort_by(f64::total_cmp);
    let gap_ok = match (p, moduli.len()) {
        (_, n) if p > n => false,
        (0, _) => true,
        (_, n) if p == n => true,
        _ => moduli[p] - moduli[p - 1] > GAP_TOL * moduli[p],
    };
    PoleOrderingCheck { p, moduli, gap_ok }
}

/// The first `p` pole slots: `(index into poles, slots)`.
pub(crate) fn expected_slots(poles: &[Pole], p: usize) -> Vec<(usize, usize)> {
    let mut left = p;
    let mut out = Vec::new();
    for (i, pole) in poles.iter().enumerate() {
        if left == 0 {
            break;
        }
        let take = pole.multiplicity.min(left);
        out.push((i, take));
        left -= take;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(num), Polynomial::from_ints(den)).unwrap()
    }

    fn pole(re: f64, m: usize) -> Pole {
        Pole { location: ComplexF::new(re, 0.0), multiplicity: m }
    }

    #[test]
    fn taylor_examples() {
        let geo = MeromorphicSpec::rational(rf(&[1], &[1, -1])).unwrap();
        assert_eq!(taylor_of_meromorphic(&geo, 3).unwrap(), PowerSeries::from_ints(&[1, 1, 1, 1]));

        let exp = MeromorphicSpec::new(RationalFunction::polynomial(Polynomial::zero()), EntirePart::exp(), None).unwrap();
        assert_eq!(taylor_of_meromorphic(&exp, 2).unwrap().coeffs(), &[q(1, 1), q(1, 1), q(1, 2)]);

        let both = MeromorphicSpec::new(rf(&[1], &[1, -1]), EntirePart::exp(), None).unwrap();
        assert_eq!(taylor_of_meromorphic(&both, 3).unwrap().coeffs(), &[q(2, 1), q(2, 1), q(3, 2), q(7, 6)]);
    }

    #[test]
    fn from_doc_splits_parts() {
        let doc = SeriesDoc::from_json(
            r#"{"kind":"sum","parts":[{"kind":"builtin","name":"exp"},{"kind":"builtin","name":"geometric"},
                {"kind":"explicit","coeffs":["0","1"]}]}"#,
        )
        .unwrap();
        let spec = MeromorphicSpec::from_doc(&doc, None).unwrap();
        assert_eq!(spec.rational_part(), &rf(&[1], &[1, -1]));
        assert_eq!(spec.entire_part().poly, Polynomial::from_ints(&[0, 1]));
        assert_eq!(taylor_of_meromorphic(&spec, 1).unwrap(), doc.to_series(1).unwrap());
    }

    #[test]
    fn spec_invariants() {
        assert!(MeromorphicSpec::rational(rf(&[1], &[0, 1])).is_err());
        let bad = MeromorphicSpec::new(rf(&[1], &[1, -1]), EntirePart::zero(), Some(vec![pole(1.0, 2)]));
        assert!(matches!(bad, Err(Error::InvalidSpec(_))));
        // Common factors cancel before poles are counted.
        let s = MeromorphicSpec::rational(rf(&[1, 1], &[1, 0, -1])).unwrap();
        assert_eq!(s.poles(), vec![pole(1.0, 1)]);
    }

    #[test]
    fn ordering_examples() {
        let c = check_moduli(&[pole(1.0 / 3.0, 1), pole(0.5, 1)], 2);
        assert!(c.gap_ok);
        assert_eq!(c.next_modulus(), None);

        assert!(!check_moduli(&[pole(1.0, 1), pole(-1.0, 1)], 1).gap_ok);

        let double = [pole(0.5, 2)];
        assert!(check_moduli(&double, 2).gap_ok);
        assert!(!check_moduli(&double, 1).gap_ok);
        assert!(!check_moduli(&double, 3).gap_ok);
        assert_eq!(check_moduli(&double, 2).moduli, vec![0.5, 0.5]);
    }

    #[test]
    fn computed_poles_sorted() {
        // 1/((1 - z)(1 + z)(1 - 3z))
        let den = &Polynomial::from_ints(&[1, 0, -1]) * &Polynomial::from_ints(&[1, -3]);
        let s = MeromorphicSpec::new(RationalFunction::new(Polynomial::one(), den).unwrap(), EntirePart::zero(), None).unwrap();
        let locs: Vec<f64> = s.poles().iter().map(|p| p.location.re).collect();
        assert_eq!(locs, vec![1.0 / 3.0, -1.0, 1.0]);
        let c = pole_ordering_check(&s, 1);
        assert!(c.gap_ok);
        assert!(!pole_ordering_check(&s, 2).gap_ok);
    }

    #[test]
    fn slots_split_multiplicity() {
        let poles = [pole(0.5, 2), pole(1.0, 1)];
        assert_eq!(expected_slots(&poles, 1), vec![(0, 1)]);
        assert_eq!(expected_slots(&poles, 3), vec![(0, 2), (1, 1)]);
        assert_eq!(expected_slots(&poles, 5), vec![(0, 2), (1, 1)]);
    }
}
