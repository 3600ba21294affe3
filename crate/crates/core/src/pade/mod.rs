//! Padé approximants `[L/M]`, the Padé table with its block structure,
//! Hankel determinants, Hadamard polynomials and row sequences.
//!
//! `[L/M]` is computed from the linear system of the order condition
//! `f − [L/M] = O(z^{L+M+1})` with the denominator normalized to
//! `den(0) = 1`:
//!
//! ```text
//! Σ_{j=1..M} b_j s_{L+i−j} = −s_{L+i},   i = 1..M     (s_k = 0 for k < 0)
//! ```
//!
//! A singular system yields a block marker instead of a fraction.

mod hankel;
pub(crate) mod linalg;
mod row;
mod table;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::rational::Rational;
use crate::series::{series_of_rational_function, PowerSeries};

pub use hankel::{hadamard_polynomial, hankel_det, hankel_det_padded, hankel_grid, hankel_grid_csv, HankelSpec};
pub use row::{row_sequence, row_to_cf, telescoped_partial_sums};
pub use table::{pade_table, PadeTable};

/// First disagreement between a series and a fraction's expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contact {
    /// Index of the first coefficient that differs.
    DisagreeAt(usize),
    /// Every coefficient through the truncation order agrees.
    AgreeThrough(usize),
}

impl Contact {
    /// Lower bound on the index of the first disagreement.
    pub fn first_difference_at_least(self) -> usize {
        match self {
            Contact::DisagreeAt(k) => k,
            Contact::AgreeThrough(n) => n + 1,
        }
    }
}

/// Order of contact between `series` and `rf`; `rf` must be analytic at 0.
pub fn order_of_contact(series: &PowerSeries, rf: &RationalFunction) -> Result<Contact> {
    let expansion = series_of_rational_function(rf, series.order())?;
    Ok(series
        .coeffs()
        .iter()
        .zip(expansion.coeffs())
        .position(|(a, b)| a != b)
        .map_or(Contact::AgreeThrough(series.order()), Contact::DisagreeAt))
}

/// Square region `[l, l+size) × [m, m+size)` of the table sharing one
/// fraction. When `bounded` is false the fraction agreed with the series up
/// to its truncation order, so `size` is only a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockRegion {
    pub l: usize,
    pub m: usize,
    pub size: usize,
    pub bounded: bool,
}

impl BlockRegion {
    pub fn contains(&self, l: usize, m: usize) -> bool {
        (self.l..self.l + self.size).contains(&l) && (self.m..self.m + self.size).contains(&m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMarker {
    /// Size `M` of the singular system that defined the entry.
    pub singular_order: usize,
    /// The block holding the entry, if it could be located.
    pub region: Option<BlockRegion>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PadeValue {
    Fraction(RationalFunction),
    Block(BlockMarker),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadeEntry {
    pub l: usize,
    pub m: usize,
    pub value: PadeValue,
    /// All governing Hankel determinants are nonzero. Determinants that need
    /// coefficients past the truncation order are not consulted.
    pub normal: bool,
}

impl PadeEntry {
    pub fn fraction(&self) -> Option<&RationalFunction> {
        match &self.value {
            PadeValue::Fraction(rf) => Some(rf),
            PadeValue::Block(_) => None,
        }
    }

    pub fn is_block(&self) -> bool {
        matches!(self.value, PadeValue::Block(_))
    }
}

/// Solves the `M × M` system; `None` when it is singular.
pub(crate) fn solve_entry(series: &PowerSeries, l: usize, m: usize) -> Option<RationalFunction> {
    let den = if m == 0 {
        Polynomial::one()
    } else {
        let a = (0..m)
            .map(|i| (0..m).map(|j| series.coeff_signed(l as i64 + i as i64 - j as i64)).collect())
            .collect();
        let rhs = (0..m).map(|i| -series.coeff(l + i + 1)).collect();
        let b = linalg::solve(a, rhs)?;
        Polynomial::new(std::iter::once(Rational::one()).chain(b).collect())
    };
    let num = series.mul_poly(&den).coeffs().iter().take(l + 1).cloned().collect();
    Some(RationalFunction::new(Polynomial::new(num), den).expect("den(0) = 1"))
}

/// The block generated by a fraction satisfying the order condition: its
/// reduced form with exact degrees `(l, m)` and first disagreement at
/// `l + m + size` fills `[l, l+size) × [m, m+size)`.
pub(crate) fn block_of(series: &PowerSeries, rf: &RationalFunction) -> BlockRegion {
    let r = rf.reduced();
    let l = r.num().degree().unwrap_or(0);
    let m = r.den().degree().unwrap_or(0);
    let contact = order_of_contact(series, &r).expect("den(0) = 1");
    let first = contact.first_difference_at_least();
    BlockRegion {
        l,
        m,
        size: first.saturating_sub(l + m).max(1),
        bounded: matches!(contact, Contact::DisagreeAt(_)),
    }
}

/// Normality of `[L/M]` from `H_M^{L−M+1}`, `H_M^{L−M+2}`, `H_{M+1}^{L−M}`
/// and `H_{M+1}^{L−M+1}` (zero-padded offsets).
pub(crate) fn is_normal(series: &PowerSeries, l: usize, m: usize) -> bool {
    let (li, mi) = (l as i64, m as i64);
    [(li - mi + 1, m), (li - mi + 2, m), (li - mi, m + 1), (li - mi + 1, m + 1)]
        .into_iter()
        .filter_map(|(off, p)| hankel_det_padded(series, off, p).ok())
        .all(|d| !d.is_zero())
}

fn locate_block(series: &PowerSeries, l: usize, m: usize) -> Option<BlockRegion> {
    let mut candidates: Vec<(usize, usize)> =
        (0..=l).flat_map(|i| (0..=m).map(move |j| (i, j))).filter(|&c| c != (l, m)).collect();
    candidates.sort_by_key(|&(i, j)| ((l - i).max(m - j), std::cmp::Reverse(i + j)));
    candidates.into_iter().find_map(|(i, j)| {
        let rf = solve_entry(series, i, j)?;
        let region = block_of(series, &rf);
        region.contains(l, m).then_some(region)
    })
}

/// `[L/M]` of `series`, which must be known through `z^{L+M}`.
pub fn pade_approximant(series: &PowerSeries, l: usize, m: usize) -> Result<PadeEntry> {
    series.ensure_order(l + m)?;
    let value = match solve_entry(series, l, m) {
        Some(rf) => PadeValue::Fraction(rf),
        None => PadeValue::Block(BlockMarker { singular_order: m, region: locate_block(series, l, m) }),
    };
    let normal = !matches!(value, PadeValue::Block(_)) && is_normal(series, l, m);
    Ok(PadeEntry { l, m, value, normal })
}
