// Removing negated branches before counting, and why the removal has to
// happen level by level.

use mlc_mine::{
    compare_runs, mine_basic, mine_mlc_prune, mine_mlc_prune_with, sample, PruneSchedule, Result, SplitConstraint,
};

pub fn run() -> Result<()> {
    let h = sample::hierarchy();
    let db = sample::database();
    let minsup = sample::minsup();
    let sc = SplitConstraint::parse("NOT 3**", "11* OR 2**", &h)?;
    println!("neg {}, aff {}, flattened {}", sc.neg_text(), sc.aff(), sc.to_flat());

    let pruned = db.prune(&h, sc.neg())?;
    println!("pruned database holds {} of {} item occurrences", pruned.item_count(), db.item_count());

    let prune = mine_mlc_prune(&h, &db, &minsup, &sc)?;
    let basic = mine_basic(&h, &db, &minsup, &sc.to_flat())?;
    let cmp = compare_runs(&basic, &prune);
    assert!(cmp.filtered_identical());
    println!(
        "same results; support computations {} vs {}",
        basic.counters.support_computations, prune.counters.support_computations
    );
    for level in 1..=h.max_level() {
        let sets = prune.level_union(level);
        let shown: Vec<String> = sets.iter().map(|(s, n)| format!("{} {n}", s.display(h.max_level()))).collect();
        println!("level {level}: {}", shown.join(", "));
    }

    // Dropping 11* before level 1 also takes its support away from 1**.
    let sc = SplitConstraint::parse("NOT 11*", "1**", &h)?;
    let per_level = mine_mlc_prune(&h, &db, &minsup, &sc)?;
    let up_front = mine_mlc_prune_with(&h, &db, &minsup, &sc, PruneSchedule::UpFront)?;
    let support = |r: &mlc_mine::MiningResult| r.filtered(1, 1).first().map_or(0, |(_, n)| *n);
    println!("support of 1**: per level {}, up front {}", support(&per_level), support(&up_front));
    Ok(())
}

fn main() -> Result<()> {
    run()
}
