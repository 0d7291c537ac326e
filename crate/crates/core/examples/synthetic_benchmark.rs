// Synthetic data and a small timing grid, basic against mlc-prune.

use mlc_mine::cli::{bench_csv, run_bench, BenchConfig, NegSpec};
use mlc_mine::{ConceptHierarchy, Fanout, MinSupTable, Result, TransactionDatabase};

pub fn run() -> Result<()> {
    let h = ConceptHierarchy::generate(10, Fanout { min: 2, max: 4 }, 3, 42)?;
    let db = TransactionDatabase::generate(&h, 1000, 8.0, 42)?;
    let mean = db.item_count() as f64 / db.len() as f64;
    println!("{} items, {} transactions, {mean:.2} items each", h.len(), db.len());

    // Each point pins its own seed, so both algorithms see the same data.
    let cfg = BenchConfig {
        sizes: vec![1000, 2000],
        roots: vec![10, 20],
        minsups: vec![MinSupTable::parse("10%,5%,2%")?],
        reps: 3,
        neg: NegSpec::RootFraction(0.5),
        ..BenchConfig::default()
    };
    let rows = run_bench(&cfg)?;
    for pair in rows.chunks(2) {
        let (b, p) = (&pair[0], &pair[1]);
        println!(
            "n={} roots={}: support computations {} -> {}, median {:.2} ms -> {:.2} ms",
            b.transactions,
            b.roots,
            b.counters.support_computations,
            p.counters.support_computations,
            b.elapsed_ms_median,
            p.elapsed_ms_median
        );
    }
    print!("{}", bench_csv(&rows));
    Ok(())
}

fn main() -> Result<()> {
    run()
}
