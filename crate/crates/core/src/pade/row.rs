use std::ops::RangeInclusive;

use num_traits::Zero;

use super::{pade_approximant, PadeEntry};
use crate::contfrac::{cf_from_fractions, FractionCf};
use crate::error::{Error, Result};
use crate::ratfunc::RationalFunction;
use crate::rational::Rational;
use crate::series::PowerSeries;

/// The row of rank `p`: `[n/p]` for every `n` in `n_range`.
pub fn row_sequence(series: &PowerSeries, p: usize, n_range: RangeInclusive<usize>) -> Result<Vec<PadeEntry>> {
    series.ensure_order(n_range.end() + p)?;
    let mut out: Vec<PadeEntry> = Vec::new();
    for n in n_range {
        let e = pade_approximant(series, n, p)?;
        if let Some(rf) = e.fraction() {
            debug_assert!(rf.num().degree().map_or(true, |d| d <= n));
            debug_assert!(rf.den().degree().map_or(true, |d| d <= p));
        }
        // Consecutive row entries [n/p], [n+1/p] step once along the row:
        // (n + 1) + p = n + p + 1.
        if let Some(prev) = out.last() {
            debug_assert_eq!(prev.l + prev.m + 1, e.l + e.m);
        }
        out.push(e);
    }
    Ok(out)
}

fn normal_fractions(series: &PowerSeries, p: usize, n_range: RangeInclusive<usize>) -> Result<Vec<RationalFunction>> {
    row_sequence(series, p, n_range)?
        .into_iter()
        .map(|e| match e.fraction() {
            Some(rf) if e.normal => Ok(rf.clone()),
            _ => Err(Error::RowNotNormal { n: e.l, p }),
        })
        .collect()
}

/// The algebraic continued fraction whose convergents run through the row
/// of rank `p`. Convergent `offset + j` equals the `j`-th entry of the range
/// as a rational function (see [`cf_from_fractions`]).
pub fn row_to_cf(series: &PowerSeries, p: usize, n_range: RangeInclusive<usize>) -> Result<FractionCf> {
    cf_from_fractions(&normal_fractions(series, p, n_range)?)
}

/// Exact partial sums at `z` of the telescoping series
/// `U^0/V^0 + (U^1/V^1 − U^0/V^0) + (U^2/V^2 − U^1/V^1) + ⋯` over the row.
pub fn telescoped_partial_sums(
    series: &PowerSeries,
    p: usize,
    n_range: RangeInclusive<usize>,
    z: &Rational,
) -> Result<Vec<Rational>> {
    let values = normal_fractions(series, p, n_range)?
        .iter()
        .map(|rf| rf.eval(z))
        .collect::<Result<Vec<_>>>()?;
    let mut sums = Vec::with_capacity(values.len());
    let mut acc = Rational::zero();
    let mut prev = Rational::zero();
    for v in values {
        acc = &acc + &(&v - &prev);
        sums.push(acc.clone());
        prev = v;
    }
    Ok(sums)
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
    fn exp_row_one() {
        let row = row_sequence(&exp(8), 1, 0..=2).unwrap();
        assert_eq!(row.len(), 3);
        for e in &row {
            assert!(e.normal);
            assert_eq!(e.fraction().unwrap().den().degree(), Some(1));
        }
    }

    #[test]
    fn row_zero_is_taylor() {
        let s = exp(6);
        for e in row_sequence(&s, 0, 0..=5).unwrap() {
            assert_eq!(e.fraction().unwrap().num(), &s.partial_sum(e.l));
        }
    }

    #[test]
    fn even_series_row_has_blocks() {
        let s = PowerSeries::from_ints(&[1, 0, 1, 0, 1, 0, 1, 0]);
        let row = row_sequence(&s, 1, 0..=4).unwrap();
        assert!(row.iter().any(PadeEntry::is_block));
        assert!(matches!(row_to_cf(&s, 1, 0..=4), Err(Error::RowNotNormal { n: 0, p: 1 })));
    }

    #[test]
    fn exp_row_cf_round_trip() {
        let s = exp(8);
        let row = row_sequence(&s, 1, 0..=3).unwrap();
        let rcf = row_to_cf(&s, 1, 0..=3).unwrap();
        assert_eq!(rcf.offset, 1);
        for (j, e) in row.iter().enumerate() {
            assert!(rcf.fraction(j).unwrap().same_function(e.fraction().unwrap()));
        }
    }

    #[test]
    fn taylor_row_cf_telescopes() {
        let s = exp(6);
        let rcf = row_to_cf(&s, 0, 0..=5).unwrap();
        assert_eq!(rcf.offset, 0);
        for j in 0..=5 {
            assert_eq!(rcf.fraction(j).unwrap().num(), &s.partial_sum(j));
        }
    }

    #[test]
    fn telescoping_is_exact() {
        let s = exp(10);
        let z = q(1, 4);
        let sums = telescoped_partial_sums(&s, 1, 0..=8, &z).unwrap();
        for (j, e) in row_sequence(&s, 1, 0..=8).unwrap().iter().enumerate() {
            assert_eq!(sums[j], e.fraction().unwrap().eval(&z).unwrap());
        }
    }
}
