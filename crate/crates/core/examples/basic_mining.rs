// Level-by-level mining with the constraint checked after counting.

use mlc_mine::{mine_basic, sample, Constraint, Result};

pub fn run() -> Result<()> {
    let h = sample::hierarchy();
    let db = sample::database();
    let minsup = sample::minsup();
    let ct = Constraint::parse("(NOT 3** AND 11*) OR 2**", &h)?;
    println!("{} transactions, minsup {minsup}, constraint {ct}", db.len());

    let r = mine_basic(&h, &db, &minsup, &ct)?;
    for level in &r.levels {
        for pass in &level.passes {
            if pass.frequent.is_empty() {
                continue;
            }
            println!(
                "L[{},{}]: {} frequent, {} pass the constraint",
                level.level,
                pass.k,
                pass.frequent.len(),
                pass.filtered.len()
            );
            for (set, support) in &pass.filtered {
                println!("    {} {support}", set.display(h.max_level()));
            }
        }
    }
    let c = r.counters;
    println!(
        "{} passes, {} candidates, {} support computations",
        c.passes, c.candidates_generated, c.support_computations
    );
    Ok(())
}

fn main() -> Result<()> {
    run()
}
