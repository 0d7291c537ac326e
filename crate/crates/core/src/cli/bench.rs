//! Synthetic benchmark sweeps comparing basic and mlc-prune.
//!
//! Each grid point generates its own hierarchy and database from a seed
//! derived from the point's shape, then runs mlc-prune with a split
//! constraint and basic with its flattened equivalent, `reps` times each.

use std::fmt::Write as _;

use crate::constraints::SplitConstraint;
use crate::error::{Error, Result};
use crate::miner::{mine_basic, mine_mlc_prune, Algorithm, Counters, MinSupTable, MiningResult};
use crate::taxonomy::{ConceptHierarchy, Fanout, ItemCode};
use crate::transactions::TransactionDatabase;

pub const BENCH_CSV_HEADER: &str = "transactions,roots,levels,minsup,neg,algorithm,reps,elapsed_ms_median,\
passes,candidates_generated,support_computations,constraint_checks,frequent,filtered";

/// What gets removed at each grid point.
#[derive(Debug, Clone, PartialEq)]
pub enum NegSpec {
    /// The first `ceil(fraction × roots)` roots, at least one.
    RootFraction(f64),
    /// Explicit `neg` and `aff` texts, resolved against each generated
    /// hierarchy.
    Text { neg: String, aff: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub roots: Vec<u32>,
    pub minsups: Vec<MinSupTable>,
    pub levels: usize,
    pub fanout: Fanout,
    pub mean_items: f64,
    pub reps: usize,
    pub seed: u64,
    pub neg: NegSpec,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![3000, 4000, 5000, 6000],
            roots: vec![10],
            minsups: vec![MinSupTable::parse("30%,20%,10%").expect("valid")],
            levels: 3,
            fanout: Fanout { min: 2, max: 4 },
            mean_items: 8.0,
            reps: 3,
            seed: 42,
            neg: NegSpec::RootFraction(0.5),
        }
    }
}

impl BenchConfig {
    /// Grid points in sweep order: sizes, then roots, then thresholds.
    pub fn points(&self) -> Vec<(usize, u32, &MinSupTable)> {
        let mut out = Vec::new();
        for &n in &self.sizes {
            for &r in &self.roots {
                for m in &self.minsups {
                    out.push((n, r, m));
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidParameter("reps must be at least 1".into()));
        }
        if self.roots.contains(&0) {
            return Err(Error::InvalidParameter("roots must be positive".into()));
        }
        if let Some(m) = self.minsups.iter().find(|m| m.len() != self.levels) {
            return Err(Error::ThresholdCount {
                expected: self.levels,
                found: m.len(),
            });
        }
        if let NegSpec::RootFraction(f) = self.neg {
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::InvalidParameter(format!("prune fraction {f} not in (0, 1]")));
            }
        }
        Ok(())
    }
}

/// One `(grid point, algorithm)` measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub transactions: usize,
    pub roots: u32,
    pub levels: usize,
    pub minsup: String,
    pub neg: String,
    pub algorithm: Algorithm,
    pub reps: usize,
    pub elapsed_ms_median: f64,
    pub elapsed_ms: Vec<f64>,
    pub counters: Counters,
}

/// Seed for a `(size, roots)` point, shared by every threshold and algorithm.
pub fn point_seed(seed: u64, transactions: usize, roots: u32) -> u64 {
    seed ^ (transactions as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (roots as u64).rotate_left(32)
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

fn split_for(h: &ConceptHierarchy, roots: u32, spec: &NegSpec) -> Result<SplitConstraint> {
    match spec {
        NegSpec::RootFraction(f) => {
            let n = ((f * roots as f64).ceil() as u32).clamp(1, roots);
            let neg = (1..=n).map(|r| ItemCode::new(&[r])).collect::<Result<Vec<_>>>()?;
            SplitConstraint::new(neg, crate::Constraint::tautology())
        }
        NegSpec::Text { neg, aff } => SplitConstraint::parse(neg, aff, h),
    }
}

/// Runs the whole grid. An empty grid yields no rows.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for (n, roots, minsup) in cfg.points() {
        let seed = point_seed(cfg.seed, n, roots);
        let h = ConceptHierarchy::generate(roots, cfg.fanout, cfg.levels, seed)?;
        let db = TransactionDatabase::generate(&h, n, cfg.mean_items, seed)?;
        let sc = split_for(&h, roots, &cfg.neg)?;
        let flat = sc.to_flat();

        let mut basic: Vec<MiningResult> = Vec::with_capacity(cfg.reps);
        let mut prune: Vec<MiningResult> = Vec::with_capacity(cfg.reps);
        // Interleave so drift in machine load hits both alike.
        for _ in 0..cfg.reps {
            basic.push(mine_basic(&h, &db, minsup, &flat)?);
            prune.push(mine_mlc_prune(&h, &db, minsup, &sc)?);
        }
        for runs in [basic, prune] {
            let times: Vec<f64> = runs.iter().map(|r| r.elapsed_ms).collect();
            let first = &runs[0];
            rows.push(BenchRow {
                transactions: n,
                roots,
                levels: cfg.levels,
                minsup: minsup.to_string(),
                neg: sc.neg_text(),
                algorithm: first.algorithm,
                reps: cfg.reps,
                elapsed_ms_median: median(&times),
                elapsed_ms: times,
                counters: first.counters,
            });
        }
    }
    Ok(rows)
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(BENCH_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let c = &r.counters;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{:.3},{},{},{},{},{},{}",
            r.transactions,
            r.roots,
            r.levels,
            quote(&r.minsup),
            quote(&r.neg),
            r.algorithm,
            r.reps,
            r.elapsed_ms_median,
            c.passes,
            c.candidates_generated,
            c.support_computations,
            c.constraint_checks,
            c.frequent,
            c.filtered
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_is_header_only() {
        let cfg = BenchConfig {
            sizes: vec![],
            ..BenchConfig::default()
        };
        let rows = run_bench(&cfg).unwrap();
        assert!(rows.is_empty());
        assert_eq!(bench_csv(&rows), format!("{BENCH_CSV_HEADER}\n"));
    }

    #[test]
    fn small_grid() {
        let cfg = BenchConfig {
            sizes: vec![200, 300],
            roots: vec![4],
            reps: 1,
            ..BenchConfig::default()
        };
        let rows = run_bench(&cfg).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].algorithm, Algorithm::Basic);
        assert_eq!(rows[1].algorithm, Algorithm::MlcPrune);
        assert_eq!(rows[1].neg, "NOT 1 AND NOT 2");
        assert!(rows[1].counters.support_computations < rows[0].counters.support_computations);
        let csv = bench_csv(&rows);
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.lines().nth(1).unwrap().starts_with("200,4,3,\"30%,20%,10%\",NOT 1 AND NOT 2,basic,1,"));
    }

    #[test]
    fn invalid_grids() {
        let bad_reps = BenchConfig {
            reps: 0,
            ..BenchConfig::default()
        };
        assert!(run_bench(&bad_reps).is_err());
        let bad_minsup = BenchConfig {
            minsups: vec![MinSupTable::parse("5,4").unwrap()],
            ..BenchConfig::default()
        };
        assert!(matches!(run_bench(&bad_minsup), Err(Error::ThresholdCount { .. })));
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0]), 2.5);
    }
}
