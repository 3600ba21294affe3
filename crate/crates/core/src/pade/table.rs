use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::{block_of, is_normal, solve_entry, BlockMarker, BlockRegion, PadeEntry, PadeValue};
use crate::error::Result;
use crate::ratfunc::RationalFunction;
use crate::series::PowerSeries;

/// Entries `[L/M]` for `0 ≤ L ≤ l_max`, `0 ≤ M ≤ m_max`.
#[derive(Debug, Clone)]
pub struct PadeTable {
    pub l_max: usize,
    pub m_max: usize,
    entries: BTreeMap<(usize, usize), PadeEntry>,
    /// Regions of size two or more, each with its shared (reduced) fraction.
    blocks: Vec<(BlockRegion, RationalFunction)>,
}

impl PadeTable {
    pub fn entry(&self, l: usize, m: usize) -> Option<&PadeEntry> {
        self.entries.get(&(l, m))
    }

    pub fn entries(&self) -> impl Iterator<Item = &PadeEntry> {
        self.entries.values()
    }

    pub fn blocks(&self) -> &[(BlockRegion, RationalFunction)] {
        &self.blocks
    }

    pub fn block_markers(&self) -> impl Iterator<Item = &PadeEntry> {
        self.entries.values().filter(|e| e.is_block())
    }

    pub fn all_normal(&self) -> bool {
        self.entries.values().all(|e| e.normal)
    }

    /// Structural check that every block is a square: each cell of a block
    /// region inside the table is either a marker pointing at that region or
    /// a fraction equal to the shared one, and every marker has a region.
    pub fn blocks_are_square(&self) -> bool {
        let markers_placed = self.block_markers().all(|e| match &e.value {
            PadeValue::Block(BlockMarker { region: Some(r), .. }) => {
                r.contains(e.l, e.m) && self.blocks.iter().any(|(b, _)| b == r)
            }
            _ => false,
        });
        let regions_filled = self.blocks.iter().all(|(r, shared)| {
            (r.l..r.l + r.size).all(|l| {
                (r.m..r.m + r.size).all(|m| match self.entry(l, m).map(|e| &e.value) {
                    None => true,
                    Some(PadeValue::Fraction(rf)) => rf.same_function(shared),
                    Some(PadeValue::Block(BlockMarker { region, .. })) => region.as_ref() == Some(r),
                })
            })
        });
        markers_placed && regions_filled
    }

    /// `{"L,M": {"num": [...], "den": [...], "normal": bool} | {"block": [Lmin, Mmin, size]}}`
    /// plus a `blocks` list recording each shared fraction once.
    pub fn to_json(&self) -> Value {
        let mut entries = Map::new();
        for e in self.entries.values() {
            let v = match &e.value {
                PadeValue::Fraction(rf) => json!({
                    "num": rf.num().coeffs(),
                    "den": rf.den().coeffs(),
                    "normal": e.normal,
                }),
                PadeValue::Block(BlockMarker { region: Some(r), .. }) => json!({"block": [r.l, r.m, r.size]}),
                PadeValue::Block(BlockMarker { region: None, .. }) => json!({"block": null}),
            };
            entries.insert(format!("{},{}", e.l, e.m), v);
        }
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|(r, rf)| {
                json!({
                    "origin": [r.l, r.m],
                    "size": r.size,
                    "bounded": r.bounded,
                    "num": rf.num().coeffs(),
                    "den": rf.den().coeffs(),
                })
            })
            .collect();
        json!({"Lmax": self.l_max, "Mmax": self.m_max, "entries": entries, "blocks": blocks})
    }

    /// One line per entry: `L,M,kind,num,den` with coefficients joined by `;`.
    pub fn to_csv(&self) -> String {
        let join = |rf: &RationalFunction, den: bool| {
            let p = if den { rf.den() } else { rf.num() };
            p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
        };
        let mut out = String::from("L,M,kind,num,den\n");
        for e in self.entries.values() {
            match &e.value {
                PadeValue::Fraction(rf) => {
                    let kind = if e.normal { "normal" } else { "fraction" };
                    out.push_str(&format!("{},{},{},{},{}\n", e.l, e.m, kind, join(rf, false), join(rf, true)));
                }
                PadeValue::Block(_) => out.push_str(&format!("{},{},block,,\n", e.l, e.m)),
            }
        }
        out
    }
}

/// Every `[L/M]` up to `(l_max, m_max)`; the series must be known through
/// `z^{l_max + m_max}`.
pub fn pade_table(series: &PowerSeries, l_max: usize, m_max: usize) -> Result<PadeTable> {
    series.ensure_order(l_max + m_max)?;
    let mut solved = BTreeMap::new();
    for l in 0..=l_max {
        for m in 0..=m_max {
            solved.insert((l, m), solve_entry(series, l, m));
        }
    }

    let mut blocks: Vec<(BlockRegion, RationalFunction)> = Vec::new();
    for rf in solved.values().flatten() {
        let region = block_of(series, rf);
        if region.size > 1 && !blocks.iter().any(|(r, _)| r.l == region.l && r.m == region.m) {
            blocks.push((region, rf.reduced()));
        }
    }
    blocks.sort_by_key(|(r, _)| (r.l, r.m));

    let entries = solved
        .into_iter()
        .map(|((l, m), rf)| {
            let value = match rf {
                Some(rf) => PadeValue::Fraction(rf),
                None => PadeValue::Block(BlockMarker {
                    singular_order: m,
                    region: blocks.iter().map(|(r, _)| *r).find(|r| r.contains(l, m)),
                }),
            };
            let normal = !matches!(value, PadeValue::Block(_)) && is_normal(series, l, m);
            ((l, m), PadeEntry { l, m, value, normal })
        })
        .collect();

    Ok(PadeTable { l_max, m_max, entries, blocks })
}
