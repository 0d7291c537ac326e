//! Multi-level frequent itemset mining under existence constraints.
//!
//! Every level of the hierarchy is mined independently with Apriori, using
//! its own minimum support. Three ways of bringing the constraint in:
//!
//! * [`mine_basic`] counts every candidate and filters the frequent
//!   itemsets afterwards. Complete.
//! * [`mine_test_and_generate`] drops candidates that fail the constraint
//!   before counting them. Cheaper, but **incomplete**: an itemset failing
//!   the constraint can still be needed to generate a larger one that
//!   satisfies it.
//! * [`mine_mlc_prune`] takes the constraint split into removed items and a
//!   negation-free part, prunes the hierarchy and the database first, then
//!   mines and filters on the negation-free part.

mod apriori;
mod compare;
mod report;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::constraints::{Constraint, SplitConstraint};
use crate::error::{Error, Result};
use crate::taxonomy::{ConceptHierarchy, ItemCode};
use crate::transactions::{Itemset, Transaction, TransactionDatabase};

use apriori::{Encoded, Gate, LevelIndex};

pub use compare::{compare_runs, Comparison, CounterDelta, PassDiff};
pub use report::CSV_HEADER;

/// An itemset with its absolute support.
pub type Supported = (Itemset, u64);

/// Minimum support for one level, as given by the user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    Absolute(u64),
    /// Percentage of the number of transactions, in `(0, 100]`.
    Percent(f64),
}

impl Threshold {
    /// `ceil(pct × |T|)` for percentages, never below 1.
    pub fn resolve(self, n_transactions: usize) -> u64 {
        match self {
            Threshold::Absolute(n) => n,
            Threshold::Percent(p) => {
                let exact = p * n_transactions as f64 / 100.0;
                // Shave float noise so 30% of 3000 is 900, not 901.
                ((exact - 1e-9).ceil() as u64).max(1)
            }
        }
    }
}

impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidThreshold(s.to_string());
        if let Some(pct) = s.strip_suffix('%') {
            let p: f64 = pct.trim().parse().map_err(|_| bad())?;
            if !(p > 0.0 && p <= 100.0) {
                return Err(bad());
            }
            Ok(Threshold::Percent(p))
        } else {
            let n: u64 = s.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok(Threshold::Absolute(n))
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Absolute(n) => write!(f, "{n}"),
            Threshold::Percent(p) => write!(f, "{p}%"),
        }
    }
}

/// One threshold per level, level 1 first.
#[derive(Debug, Clone, PartialEq)]
pub struct MinSupTable {
    thresholds: Vec<Threshold>,
}

impl MinSupTable {
    pub fn new(thresholds: Vec<Threshold>) -> Result<Self> {
        for t in &thresholds {
            match *t {
                Threshold::Absolute(0) => return Err(Error::InvalidThreshold("0".into())),
                Threshold::Percent(p) if !(p > 0.0 && p <= 100.0) => {
                    return Err(Error::InvalidThreshold(format!("{p}%")))
                }
                _ => {}
            }
        }
        Ok(MinSupTable { thresholds })
    }

    pub fn absolute(counts: Vec<u64>) -> Result<Self> {
        Self::new(counts.into_iter().map(Threshold::Absolute).collect())
    }

    /// Comma-separated thresholds, e.g. `5,4,3` or `30%,20%,10%`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(MinSupTable { thresholds: Vec::new() });
        }
        Self::new(text.split(',').map(str::parse).collect::<Result<_>>()?)
    }

    pub fn len(&self) -> usize {
        self.thresholds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thresholds.is_empty()
    }

    pub fn thresholds(&self) -> &[Threshold] {
        &self.thresholds
    }

    /// Absolute counts for levels `1..=max_level`.
    pub fn resolve(&self, max_level: usize, n_transactions: usize) -> Result<Vec<u64>> {
        if self.thresholds.len() != max_level {
            return Err(Error::ThresholdCount {
                expected: max_level,
                found: self.thresholds.len(),
            });
        }
        Ok(self.thresholds.iter().map(|t| t.resolve(n_transactions)).collect())
    }
}

impl fmt::Display for MinSupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.thresholds.iter().map(Threshold::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Basic,
    TestAndGenerate,
    MlcPrune,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Basic => "basic",
            Algorithm::TestAndGenerate => "test-and-generate",
            Algorithm::MlcPrune => "mlc-prune",
        })
    }
}

/// Work counters; machine-independent, unlike the elapsed time.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub passes: u64,
    pub candidates_generated: u64,
    /// Candidates whose support was counted.
    pub support_computations: u64,
    pub constraint_checks: u64,
    pub frequent: u64,
    pub filtered: u64,
}

/// One `(level, k)` pass: `frequent` is L[l,k], `filtered` the subset
/// satisfying the constraint, with identical supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassResult {
    pub k: usize,
    pub candidates: u64,
    pub counted: u64,
    pub frequent: Vec<Supported>,
    pub filtered: Vec<Supported>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelResult {
    pub level: usize,
    pub passes: Vec<PassResult>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MiningResult {
    pub algorithm: Algorithm,
    /// False for test-and-generate, which can miss qualifying itemsets.
    pub complete: bool,
    /// Flat form of the constraint that was applied.
    pub constraint: String,
    /// Split form, for mlc-prune runs.
    pub neg: Option<String>,
    pub aff: Option<String>,
    pub minsup: Vec<u64>,
    pub transactions: usize,
    pub max_level: usize,
    pub levels: Vec<LevelResult>,
    pub counters: Counters,
    pub elapsed_ms: f64,
}

impl MiningResult {
    fn pass(&self, level: usize, k: usize) -> Option<&PassResult> {
        self.levels
            .iter()
            .find(|l| l.level == level)
            .and_then(|l| l.passes.iter().find(|p| p.k == k))
    }

    /// L[l,k]; empty when the pass never ran.
    pub fn frequent(&self, level: usize, k: usize) -> &[Supported] {
        self.pass(level, k).map_or(&[], |p| &p.frequent)
    }

    /// L[l,k] restricted to itemsets satisfying the constraint.
    pub fn filtered(&self, level: usize, k: usize) -> &[Supported] {
        self.pass(level, k).map_or(&[], |p| &p.filtered)
    }

    /// Union over k of the filtered itemsets of one level.
    pub fn level_union(&self, level: usize) -> Vec<Supported> {
        self.levels
            .iter()
            .filter(|l| l.level == level)
            .flat_map(|l| l.passes.iter().flat_map(|p| p.filtered.iter().cloned()))
            .collect()
    }

    /// Every `(level, k)` with at least one frequent itemset.
    pub fn nonempty_passes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.levels.iter().flat_map(|l| {
            l.passes
                .iter()
                .filter(|p| !p.frequent.is_empty())
                .map(move |p| (l.level, p.k))
        })
    }

    /// Equal itemsets and supports everywhere, ignoring timing and
    /// bookkeeping.
    pub fn same_itemsets(&self, other: &MiningResult) -> bool {
        compare_runs(self, other).is_identical()
    }
}

fn check_items<'a>(h: &ConceptHierarchy, items: impl IntoIterator<Item = &'a ItemCode>) -> Result<()> {
    for item in items {
        if !h.contains(item) {
            return Err(Error::UnknownItem(item.to_string()));
        }
    }
    Ok(())
}

/// L[l,1]: frequent single items of level `level`.
pub fn get_1_itemsets(
    h: &ConceptHierarchy,
    db: &TransactionDatabase,
    level: usize,
    minsup: &MinSupTable,
) -> Result<Vec<Supported>> {
    let thresholds = minsup.resolve(h.max_level(), db.len())?;
    let index = LevelIndex::new(&Encoded::new(h, db), h.items_at_level(level)?);
    Ok(apriori::frequent_singletons(&index, thresholds[level - 1]))
}

/// Apriori candidate generation over same-level itemsets of one size.
pub fn get_candidate_set(prev: &[Itemset]) -> Result<Vec<Itemset>> {
    let Some(first) = prev.first() else {
        return Ok(Vec::new());
    };
    if prev.iter().any(|s| s.level() != first.level()) {
        return Err(Error::MixedLevels);
    }
    if prev.iter().any(|s| s.len() != first.len()) {
        return Err(Error::InvalidParameter("itemsets of different sizes".into()));
    }
    let mut rows: Vec<Vec<ItemCode>> = prev.iter().map(|s| s.items().to_vec()).collect();
    rows.sort();
    rows.dedup();
    apriori::apriori_gen(&rows)
        .into_iter()
        .map(Itemset::new)
        .collect()
}

/// The candidates supported by `t`, in input order.
pub fn get_subsets(candidates: &[Itemset], t: &Transaction) -> Result<Vec<Itemset>> {
    let Some(first) = candidates.first() else {
        return Ok(Vec::new());
    };
    let level = first.level();
    if candidates.iter().any(|s| s.level() != level) {
        return Err(Error::MixedLevels);
    }
    if candidates.iter().any(|s| s.len() != first.len()) {
        return Err(Error::InvalidParameter("itemsets of different sizes".into()));
    }
    let mut vocab: Vec<&ItemCode> = candidates.iter().flat_map(|s| s.items()).collect();
    vocab.sort();
    vocab.dedup();
    let id = |c: &ItemCode| vocab.binary_search(&c).map(|i| i as u32).ok();
    let ids: Vec<Vec<u32>> = candidates
        .iter()
        .map(|s| s.items().iter().map(|c| id(c).unwrap()).collect())
        .collect();
    let mut row: Vec<u32> = t
        .items()
        .iter()
        .filter(|c| c.level() >= level)
        .filter_map(|c| id(&c.truncate(level)))
        .collect();
    row.sort_unstable();
    row.dedup();
    let trie = apriori::CandidateTrie::new(&ids);
    let mut hits = Vec::new();
    trie.matches(&row, &mut hits);
    hits.sort_unstable();
    Ok(hits.into_iter().map(|i| candidates[i as usize].clone()).collect())
}

/// `items` minus those equal to or below a member of the sorted `neg`.
fn outside_branches(mut items: Vec<ItemCode>, neg: &[ItemCode]) -> Vec<ItemCode> {
    // Path order puts descendants right after their ancestor, so keeping the
    // top-most members leaves the nearest one at or before `x` as the only
    // possible ancestor of `x`.
    let mut tops: Vec<&ItemCode> = Vec::new();
    for g in neg {
        if !tops.last().is_some_and(|t| t.is_self_or_ancestor_of(g)) {
            tops.push(g);
        }
    }
    items.retain(|x| {
        let at = tops.partition_point(|g| *g <= x);
        at == 0 || !tops[at - 1].is_self_or_ancestor_of(x)
    });
    items
}

fn run_flat(
    algorithm: Algorithm,
    h: &ConceptHierarchy,
    db: &TransactionDatabase,
    minsup: &MinSupTable,
    ct: &Constraint,
) -> Result<MiningResult> {
    let start = Instant::now();
    check_items(h, ct.literals().map(|l| &l.item))?;
    let thresholds = minsup.resolve(h.max_level(), db.len())?;
    let enc = Encoded::new(h, db);
    let mut counters = Counters::default();
    let mut levels = Vec::with_capacity(h.max_level());
    for level in 1..=h.max_level() {
        let index = LevelIndex::new(&enc, h.items_at_level(level)?);
        let gate = match algorithm {
            Algorithm::TestAndGenerate => Gate::PreFilter(ct),
            _ => Gate::PostFilter(ct),
        };
        let passes = apriori::mine_level(&index, thresholds[level - 1], gate, &mut counters);
        levels.push(LevelResult { level, passes });
    }
    Ok(MiningResult {
        algorithm,
        complete: algorithm != Algorithm::TestAndGenerate,
        constraint: ct.to_string(),
        neg: None,
        aff: None,
        minsup: thresholds,
        transactions: db.len(),
        max_level: h.max_level(),
        levels,
        counters,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Generate-and-test: mine each level, then keep the frequent itemsets
/// that satisfy `ct`.
pub fn mine_basic(
    h: &ConceptHierarchy,
    db: &TransactionDatabase,
    minsup: &MinSupTable,
    ct: &Constraint,
) -> Result<MiningResult> {
    run_flat(Algorithm::Basic, h, db, minsup, ct)
}

/// Test-and-generate: candidates failing `ct` are discarded before their
/// support is counted and never seed the next pass. The result is a subset
/// of [`mine_basic`]'s filtered output, often a strict one.
pub fn mine_test_and_generate(
    h: &ConceptHierarchy,
    db: &TransactionDatabase,
    minsup: &MinSupTable,
    ct: &Constraint,
) -> Result<MiningResult> {
    run_flat(Algorithm::TestAndGenerate, h, db, minsup, ct)
}

/// When the database is pruned of the negated items.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum PruneSchedule {
    /// Level `l` sees the database without the items below removed items of
    /// level `l` or higher up. Ancestors of a removed item keep their full
    /// support, so the result matches [`mine_basic`] with the flattened
    /// constraint.
    #[default]
    PerLevel,
    /// Remove every negated item once, before mining any level. Ancestors of
    /// a negated item then lose the support contributed by its branch.
    UpFront,
}

/// Prune-then-mine with a split constraint, using [`PruneSchedule::PerLevel`].
pub fn mine_mlc_prune(
    h: &ConceptHierarchy,
    db: &TransactionDatabase,
    minsup: &MinSupTable,
    sc: &SplitConstraint,
) -> Result<MiningResult> {
    mine_mlc_prune_with(h, db, minsup, sc, PruneSchedule::PerLevel)
}

pub fn mine_mlc_prune_with(
    h: &ConceptHierarchy,
    db: &TransactionDatabase,
    minsup: &MinSupTable,
    sc: &SplitConstraint,
    schedule: PruneSchedule,
) -> Result<MiningResult> {
    let start = Instant::now();
    check_items(h, sc.neg().iter().chain(sc.aff().literals().map(|l| &l.item)))?;
    let thresholds = minsup.resolve(h.max_level(), db.len())?;
    // Mining reads the pruned hierarchy only through its per-level item
    // lists, which are those of `h` minus the removed branches. Projecting
    // the database onto them drops exactly the items below removed items of
    // that level or higher up, so the per-level schedule needs no pruned
    // copy of the database.
    let up_front;
    let source = match schedule {
        PruneSchedule::UpFront => {
            up_front = db.prune(h, sc.neg())?;
            &up_front
        }
        PruneSchedule::PerLevel => db,
    };
    // Terminals under a removed root count towards no remaining item.
    let removed_roots: Vec<ItemCode> = sc.neg().iter().filter(|g| g.level() == 1).cloned().collect();
    let enc = Encoded::with_terminals(outside_branches(h.terminal_items(), &removed_roots), source);
    let mut counters = Counters::default();
    let mut levels = Vec::with_capacity(h.max_level());
    for level in 1..=h.max_level() {
        let index = LevelIndex::new(&enc, outside_branches(h.items_at_level(level)?, sc.neg()));
        let passes = apriori::mine_level(&index, thresholds[level - 1], Gate::PostFilter(sc.aff()), &mut counters);
        levels.push(LevelResult { level, passes });
    }
    Ok(MiningResult {
        algorithm: Algorithm::MlcPrune,
        complete: true,
        constraint: sc.to_flat().to_string(),
        neg: Some(sc.neg_text()),
        aff: Some(sc.aff().to_string()),
        minsup: thresholds,
        transactions: db.len(),
        max_level: h.max_level(),
        levels,
        counters,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}
