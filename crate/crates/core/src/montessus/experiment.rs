use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde_json::{json, Value};

use super::grid::{Grid, GridSpec};
use super::matching::{pole_match, Matching};
use super::roots::{max_relative_residual, root_values, RESIDUAL_TOL};
use super::{expected_slots, pole_ordering_check, taylor_of_meromorphic, MeromorphicSpec, Pole, PoleOrderingCheck};
use crate::error::{Error, Result};
use crate::float::{ComplexF, FloatContext};
use crate::pade::{pade_approximant, row_sequence, PadeValue};
use crate::ratfunc::RationalFunction;
use crate::series::PowerSeries;

#[derive(Debug, Clone, PartialEq)]
pub struct RowRecord {
    pub n: usize,
    pub denominator_roots: Vec<ComplexF>,
    pub matching: Matching,
    /// Largest pairwise distance between roots matched to the same pole,
    /// for poles with more than one slot.
    pub cluster_diameters: Vec<(usize, f64)>,
    /// `None` for block entries.
    pub sup_error: Option<f64>,
    pub max_residual: Option<f64>,
    pub flags: Vec<String>,
}

impl RowRecord {
    /// `(pole, distance)` for every filled slot.
    pub fn matched_distances(&self) -> Vec<(usize, f64)> {
        self.matching.assignments.iter().map(|a| (a.pole, a.distance)).collect()
    }

    /// Worst distance over the slots of `pole`.
    pub fn distance_to(&self, pole: usize) -> Option<f64> {
        self.matching.distances_for(pole).reduce(f64::max)
    }

    pub fn is_block(&self) -> bool {
        self.flags.iter().any(|f| f == "block")
    }
}

/// Geometric ratios from a least-squares fit of `ln(error)` against `n`
/// over the last half of the range. Diagnostic only.
#[derive(Debug, Clone, PartialEq)]
pub struct RateEstimates {
    pub poles: Vec<(usize, Option<f64>)>,
    pub sup_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub p: usize,
    pub n_range: (usize, usize),
    pub precision_bits: u32,
    pub poles: Vec<Pole>,
    /// `(pole index, slots)` of the poles the row should find.
    pub expected: Vec<(usize, usize)>,
    pub check: PoleOrderingCheck,
    pub hypothesis_violation: bool,
    pub grid: GridSpec,
    pub grid_points: usize,
    pub grid_excluded: usize,
    pub records: Vec<RowRecord>,
    pub rates: RateEstimates,
    pub flags: Vec<String>,
}

const HYPOTHESIS_FLAG: &str = "hypothesis-violated: |alpha_p| < |alpha_{p+1}| does not hold";

pub fn run_row_experiment(
    spec: &MeromorphicSpec,
    p: usize,
    n_range: RangeInclusive<usize>,
    grid: &GridSpec,
    ctx: &FloatContext,
) -> Result<ConvergenceReport> {
    let (n_min, n_max) = (*n_range.start(), *n_range.end());
    if n_min > n_max {
        return Err(Error::InvalidSpec(format!("empty range {n_min}..={n_max}")));
    }
    let poles = spec.poles();
    let check = pole_ordering_check(spec, p);
    if let Some(next) = check.next_modulus() {
        if grid.radius >= next {
            return Err(Error::InvalidSpec(format!(
                "grid radius {} is not inside |alpha_{{p+1}}| = {next}",
                grid.radius
            )));
        }
    }
    let locations: Vec<ComplexF> = poles.iter().map(|p| p.location).collect();
    let built = grid.build(&locations)?;
    let expected = expected_slots(&poles, p);
    let targets: Vec<(ComplexF, usize)> = expected.iter().map(|&(i, k)| (poles[i].location, k)).collect();
    let series = taylor_of_meromorphic(spec, n_max + p)?;

    let mut flags = Vec::new();
    if !check.gap_ok {
        flags.push(HYPOTHESIS_FLAG.to_string());
    }
    if built.excluded > 0 {
        flags.push(format!("exclusion disks removed {} grid points", built.excluded));
    }

    let f_values = sample_function(spec, &built, ctx);
    let ns: Vec<usize> = n_range.collect();
    let records = std::thread::scope(|scope| {
        let handles: Vec<_> = ns
            .iter()
            .map(|&n| {
                let (series, built, f_values, targets) = (&series, &built, &f_values, &targets);
                scope.spawn(move || row_record(series, n, p, built, f_values, targets, ctx))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("row worker panicked")).collect::<Result<Vec<_>>>()
    })?;

    let rates = estimate_rates(&records, &expected);
    Ok(ConvergenceReport {
        p,
        n_range: (n_min, n_max),
        precision_bits: ctx.precision.bits(),
        poles,
        expected,
        hypothesis_violation: !check.gap_ok,
        check,
        grid: grid.clone(),
        grid_points: built.points.len(),
        grid_excluded: built.excluded,
        records,
        rates,
        flags,
    })
}

/// `f` at each grid point; points where `f` itself cannot be evaluated are
/// `None` and skipped by every record.
fn sample_function(spec: &MeromorphicSpec, grid: &Grid, ctx: &FloatContext) -> Vec<Option<ComplexF>> {
    grid.points.iter().map(|&z| spec.eval(ctx, z).ok()).collect()
}

fn row_record(
    series: &PowerSeries,
    n: usize,
    p: usize,
    grid: &Grid,
    f_values: &[Option<ComplexF>],
    targets: &[(ComplexF, usize)],
    ctx: &FloatContext,
) -> Result<RowRecord> {
    let entry = pade_approximant(series, n, p)?;
    let rf = match &entry.value {
        PadeValue::Fraction(rf) => rf,
        PadeValue::Block(_) => {
            return Ok(RowRecord {
                n,
                denominator_roots: Vec::new(),
                matching: pole_match(&[], targets),
                cluster_diameters: Vec::new(),
                sup_error: None,
                max_residual: None,
                flags: vec!["block".to_string()],
            })
        }
    };
    let mut flags = Vec::new();
    let roots: Vec<ComplexF> = root_values(rf.den()).into_iter().map(|z| ctx.round_c(z)).collect();
    let residual = max_relative_residual(rf.den(), &roots);
    if residual > RESIDUAL_TOL {
        flags.push(format!("root residual {residual:e} above tolerance"));
    }
    let matching = pole_match(&roots, targets);
    if !matching.unmatched.is_empty() {
        flags.push("unmatched pole".to_string());
    }
    if !matching.spurious.is_empty() {
        flags.push(format!("{} spurious root(s)", matching.spurious.len()));
    }
    let cluster_diameters = targets
        .iter()
        .enumerate()
        .filter(|(_, &(_, k))| k > 1)
        .map(|(i, _)| {
            let members: Vec<ComplexF> =
                matching.assignments.iter().filter(|a| a.pole == i).map(|a| roots[a.root]).collect();
            let diam = members
                .iter()
                .flat_map(|a| members.iter().map(move |b| (a - b).norm()))
                .fold(0.0, f64::max);
            (i, diam)
        })
        .collect();

    let (sup, skipped) = sup_error(rf, grid, f_values, ctx);
    if skipped > 0 {
        flags.push(format!("near-pole: {skipped} grid point(s) skipped"));
    }
    Ok(RowRecord {
        n,
        denominator_roots: roots,
        matching,
        cluster_diameters,
        sup_error: sup,
        max_residual: Some(residual),
        flags,
    })
}

fn sup_error(rf: &RationalFunction, grid: &Grid, f_values: &[Option<ComplexF>], ctx: &FloatContext) -> (Option<f64>, usize) {
    let mut sup: Option<f64> = None;
    let mut skipped = 0;
    for (&z, fv) in grid.points.iter().zip(f_values) {
        match (fv, rf.eval_complex(ctx, z)) {
            (Some(f), Ok(r)) => {
                let e = ctx.round((f - r).norm());
                sup = Some(sup.map_or(e, |s| s.max(e)));
            }
            _ => skipped += 1,
        }
    }
    (sup, skipped)
}

/// Least-squares slope of `ln y` against `n`, returned as `exp(slope)`.
/// Zero and non-finite values are left out; fewer than two points give
/// `None`.
fn geometric_ratio(points: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(_, y)| *y > 0.0 && y.is_finite()).map(|&(n, y)| (n as f64, y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some((sxy / sxx).exp())
}

fn estimate_rates(records: &[RowRecord], expected: &[(usize, usize)]) -> RateEstimates {
    let tail = &records[records.len() / 2..];
    let poles = (0..expected.len())
        .map(|slot| {
            let pts: Vec<(usize, f64)> = tail.iter().filter_map(|r| r.distance_to(slot).map(|d| (r.n, d))).collect();
            (expected[slot].0, geometric_ratio(&pts))
        })
        .collect();
    let sup: Vec<(usize, f64)> = tail.iter().filter_map(|r| r.sup_error.map(|e| (r.n, e))).collect();
    RateEstimates { poles, sup_error: geometric_ratio(&sup) }
}

fn complex_json(z: &ComplexF) -> Value {
    json!([z.re, z.im])
}

fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl ConvergenceReport {
    /// Distances of pole slot `slot` across the records (`None` where the
    /// slot went unfilled).
    pub fn distances(&self, slot: usize) -> Vec<Option<f64>> {
        self.records.iter().map(|r| r.distance_to(slot)).collect()
    }

    pub fn sup_errors(&self) -> Vec<Option<f64>> {
        self.records.iter().map(|r| r.sup_error).collect()
    }

    pub fn to_json(&self) -> Value {
        let records: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "denominator_roots": r.denominator_roots.iter().map(complex_json).collect::<Vec<_>>(),
                    "matched_distances": r.matching.assignments.iter()
                        .map(|a| json!({"pole": a.pole, "root": a.root, "distance": a.distance}))
                        .collect::<Vec<_>>(),
                    "spurious_roots": r.matching.spurious,
                    "unmatched_poles": r.matching.unmatched.iter()
                        .map(|&(p, k)| json!({"pole": p, "missing": k})).collect::<Vec<_>>(),
                    "cluster_diameters": r.cluster_diameters.iter()
                        .map(|&(p, d)| json!({"pole": p, "diameter": d})).collect::<Vec<_>>(),
                    "sup_error": r.sup_error,
                    "max_root_residual": r.max_residual,
                    "flags": r.flags,
                })
            })
            .collect();
        json!({
            "p": self.p,
            "n_min": self.n_range.0,
            "n_max": self.n_range.1,
            "precision": self.precision_bits,
            "poles": self.poles.iter()
                .map(|p| json!({"location": complex_json(&p.location), "multiplicity": p.multiplicity}))
                .collect::<Vec<_>>(),
            "expected": self.expected.iter()
                .map(|&(i, k)| json!({"pole": i, "slots": k})).collect::<Vec<_>>(),
            "pole_ordering": {"p": self.check.p, "moduli": self.check.moduli, "gap_ok": self.check.gap_ok},
            "hypothesis_violation": self.hypothesis_violation,
            "grid": {
                "radius": self.grid.radius,
                "rim_points": self.grid.rim_points,
                "interior_circles": self.grid.interior_circles,
                "interior_points": self.grid.interior_points,
                "exclusion_radius": self.grid.exclusion(),
                "points_used": self.grid_points,
                "points_excluded": self.grid_excluded,
            },
            "records": records,
            "rates": {
                "poles": self.rates.poles.iter()
                    .map(|&(p, r)| json!({"pole": p, "ratio": r})).collect::<Vec<_>>(),
                "sup_error": self.rates.sup_error,
            },
            "flags": self.flags,
        })
    }

    /// One line per denominator root, plus one per unfilled pole slot and
    /// one per block entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,root_re,root_im,matched_pole,distance,sup_error,flag\n");
        for r in &self.records {
            let sup = r.sup_error.map(csv_float).unwrap_or_default();
            let flag = r.flags.join(";");
            if r.is_block() {
                let _ = writeln!(out, "{},,,,,,{}", r.n, flag);
                continue;
            }
            for (i, z) in r.denominator_roots.iter().enumerate() {
                let (pole, dist) = match r.matching.assignments.iter().find(|a| a.root == i) {
                    Some(a) => (a.pole.to_string(), csv_float(a.distance)),
                    None => ("spurious".to_string(), String::new()),
                };
                let _ = writeln!(out, "{},{},{},{},{},{},{}", r.n, csv_float(z.re), csv_float(z.im), pole, dist, sup, flag);
            }
            for &(p, k) in &r.matching.unmatched {
                for _ in 0..k {
                    let _ = writeln!(out, "{},,,{},,{},unmatched", r.n, p, sup);
                }
            }
        }
        out
    }
}

/// Float partial sums at `z` of the telescoping series along the row:
/// sum `k` is `R_0(z) + Σ_{j≤k} (R_j(z) − R_{j−1}(z))`.
pub fn telescoped_row_series(
    series: &PowerSeries,
    p: usize,
    n_range: RangeInclusive<usize>,
    z: ComplexF,
    ctx: &FloatContext,
) -> Result<Vec<ComplexF>> {
    let mut sums = Vec::new();
    let mut acc = ComplexF::new(0.0, 0.0);
    let mut prev = ComplexF::new(0.0, 0.0);
    for e in row_sequence(series, p, n_range)? {
        let rf = match e.fraction() {
            Some(rf) if e.normal => rf,
            _ => return Err(Error::RowNotNormal { n: e.l, p }),
        };
        let v = rf.eval_complex(ctx, z)?;
        acc = ctx.add(acc, ctx.round_c(v - prev));
        sums.push(acc);
        prev = v;
    }
    Ok(sums)
}
