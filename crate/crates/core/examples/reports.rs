// JSON and CSV reports, reloading them, and comparing two runs.

use mlc_mine::{compare_runs, mine_basic, mine_test_and_generate, sample, Constraint, MiningResult, Result};

pub fn run() -> Result<()> {
    let h = sample::hierarchy();
    let db = sample::database();
    let ct = Constraint::parse(sample::CONSTRAINT, &h)?;
    let basic = mine_basic(&h, &db, &sample::minsup(), &ct)?;

    let json = basic.to_json()?;
    println!("{}", json.lines().take(12).collect::<Vec<_>>().join("\n"));
    let back = MiningResult::from_json(&json)?;
    assert!(compare_runs(&basic, &back).is_identical());

    let csv = basic.to_csv();
    for line in csv.lines().filter(|l| l.starts_with("2,2,") || l.starts_with("level")) {
        println!("{line}");
    }

    let tag = mine_test_and_generate(&h, &db, &sample::minsup(), &ct)?;
    let tag = MiningResult::from_json(&tag.to_json()?)?;
    print!("{}", compare_runs(&back, &tag));
    Ok(())
}

fn main() -> Result<()> {
    run()
}
