use serde::Serialize;

use crate::float::ComplexF;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assignment {
    pub root: usize,
    pub pole: usize,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Matching {
    pub assignments: Vec<Assignment>,
    /// Roots left over once every pole slot is filled.
    pub spurious: Vec<usize>,
    /// `(pole, missing slots)` for poles that did not get enough roots.
    pub unmatched: Vec<(usize, usize)>,
}

impl Matching {
    pub fn distances_for(&self, pole: usize) -> impl Iterator<Item = f64> + '_ {
        self.assignments.iter().filter(move |a| a.pole == pole).map(|a| a.distance)
    }
}

/// Greedy nearest assignment of roots to pole slots. A pole of
/// multiplicity `k` has `k` slots. Pairs are taken in order of increasing
/// distance, ties going to the lower root index and then the lower pole.
pub fn pole_match(roots: &[ComplexF], expected: &[(ComplexF, usize)]) -> Matching {
    let mut pairs: Vec<(f64, usize, usize)> = roots
        .iter()
        .enumerate()
        .flat_map(|(r, z)| expected.iter().enumerate().map(move |(p, (w, _))| ((z - w).norm(), r, p)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut free_slots: Vec<usize> = expected.iter().map(|&(_, m)| m).collect();
    let mut root_used = vec![false; roots.len()];
    let mut assignments = Vec::new();
    for (distance, root, pole) in pairs {
        if root_used[root] || free_slots[pole] == 0 {
            continue;
        }
        root_used[root] = true;
        free_slots[pole] -= 1;
        assignments.push(Assignment { root, pole, distance });
    }
    assignments.sort_by_key(|a| (a.pole, a.root));
    Matching {
        assignments,
        spurious: (0..roots.len()).filter(|&r| !root_used[r]).collect(),
        unmatched: free_slots.iter().enumerate().filter(|&(_, &k)| k > 0).map(|(p, &k)| (p, k)).collect(),
    }
}
