use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::transactions::Itemset;

use super::{Algorithm, MiningResult, Supported};

/// Differences in one `(level, k)` list between run `a` and run `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassDiff {
    pub level: usize,
    pub k: usize,
    pub only_a: Vec<Supported>,
    pub only_b: Vec<Supported>,
    /// `(itemset, support in a, support in b)`.
    pub support_mismatch: Vec<(Itemset, u64, u64)>,
}

/// Counter differences, `b - a`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CounterDelta {
    pub passes: i64,
    pub candidates_generated: i64,
    pub support_computations: i64,
    pub constraint_checks: i64,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub a: Algorithm,
    pub b: Algorithm,
    /// Non-empty differences in L[l,k].
    pub frequent: Vec<PassDiff>,
    /// Non-empty differences in the constraint-filtered lists.
    pub filtered: Vec<PassDiff>,
    pub counters: CounterDelta,
}

impl Comparison {
    pub fn is_identical(&self) -> bool {
        self.frequent.is_empty() && self.filtered.is_empty()
    }

    /// Same filtered itemsets and supports at every `(level, k)`.
    pub fn filtered_identical(&self) -> bool {
        self.filtered.is_empty()
    }

    /// Filtered itemsets of `a` that `b` lacks.
    pub fn filtered_missing_from_b(&self) -> impl Iterator<Item = &Supported> {
        self.filtered.iter().flat_map(|d| d.only_a.iter())
    }

    pub fn filtered_missing_from_a(&self) -> impl Iterator<Item = &Supported> {
        self.filtered.iter().flat_map(|d| d.only_b.iter())
    }
}

type PassLists<'a> = BTreeMap<(usize, usize), &'a [Supported]>;

fn lists(r: &MiningResult, filtered: bool) -> PassLists<'_> {
    r.levels
        .iter()
        .flat_map(|l| {
            l.passes.iter().map(move |p| {
                let list = if filtered { &p.filtered } else { &p.frequent };
                ((l.level, p.k), list.as_slice())
            })
        })
        .collect()
}

fn diff(a: &PassLists<'_>, b: &PassLists<'_>) -> Vec<PassDiff> {
    let keys: BTreeSet<&(usize, usize)> = a.keys().chain(b.keys()).collect();
    let mut out = Vec::new();
    for &(level, k) in keys {
        let la: BTreeMap<&Itemset, u64> = a
            .get(&(level, k))
            .map(|l| l.iter().map(|(s, n)| (s, *n)).collect())
            .unwrap_or_default();
        let lb: BTreeMap<&Itemset, u64> = b
            .get(&(level, k))
            .map(|l| l.iter().map(|(s, n)| (s, *n)).collect())
            .unwrap_or_default();
        let mut d = PassDiff {
            level,
            k,
            only_a: Vec::new(),
            only_b: Vec::new(),
            support_mismatch: Vec::new(),
        };
        for (s, &na) in &la {
            match lb.get(s) {
                None => d.only_a.push(((*s).clone(), na)),
                Some(&nb) if nb != na => d.support_mismatch.push(((*s).clone(), na, nb)),
                Some(_) => {}
            }
        }
        for (s, &nb) in &lb {
            if !la.contains_key(s) {
                d.only_b.push(((*s).clone(), nb));
            }
        }
        if !(d.only_a.is_empty() && d.only_b.is_empty() && d.support_mismatch.is_empty()) {
            out.push(d);
        }
    }
    out
}

/// Compares two runs pass by pass. A pass missing from one run counts as an
/// empty list there.
pub fn compare_runs(a: &MiningResult, b: &MiningResult) -> Comparison {
    let delta = |x: u64, y: u64| y as i64 - x as i64;
    Comparison {
        a: a.algorithm,
        b: b.algorithm,
        frequent: diff(&lists(a, false), &lists(b, false)),
        filtered: diff(&lists(a, true), &lists(b, true)),
        counters: CounterDelta {
            passes: delta(a.counters.passes, b.counters.passes),
            candidates_generated: delta(a.counters.candidates_generated, b.counters.candidates_generated),
            support_computations: delta(a.counters.support_computations, b.counters.support_computations),
            constraint_checks: delta(a.counters.constraint_checks, b.counters.constraint_checks),
            elapsed_ms: b.elapsed_ms - a.elapsed_ms,
        },
    }
}

fn write_diffs(f: &mut fmt::Formatter<'_>, title: &str, diffs: &[PassDiff], a: Algorithm, b: Algorithm) -> fmt::Result {
    if diffs.is_empty() {
        return writeln!(f, "{title}: identical");
    }
    writeln!(f, "{title}:")?;
    for d in diffs {
        writeln!(f, "  L[{}, {}]", d.level, d.k)?;
        for (s, n) in &d.only_a {
            writeln!(f, "    only in {a}: {s} support {n}")?;
        }
        for (s, n) in &d.only_b {
            writeln!(f, "    only in {b}: {s} support {n}")?;
        }
        for (s, na, nb) in &d.support_mismatch {
            writeln!(f, "    support differs: {s} {na} vs {nb}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "a = {}, b = {}", self.a, self.b)?;
        write_diffs(f, "frequent", &self.frequent, self.a, self.b)?;
        write_diffs(f, "filtered", &self.filtered, self.a, self.b)?;
        let c = &self.counters;
        writeln!(
            f,
            "counters (b - a): passes {:+}, candidates {:+}, support computations {:+}, constraint checks {:+}, elapsed {:+.3} ms",
            c.passes, c.candidates_generated, c.support_computations, c.constraint_checks, c.elapsed_ms
        )
    }
}
