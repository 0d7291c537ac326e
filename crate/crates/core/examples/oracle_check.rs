// Cross-checking the miner against plain enumeration of every itemset.

use mlc_mine::oracle::{oracle_filtered, oracle_frequent};
use mlc_mine::{mine_basic, sample, Constraint, Result};

pub fn run() -> Result<()> {
    let h = sample::hierarchy();
    let db = sample::database();
    let ct = Constraint::parse(sample::CONSTRAINT, &h)?;
    let r = mine_basic(&h, &db, &sample::minsup(), &ct)?;
    let thresholds = sample::minsup().resolve(h.max_level(), db.len())?;

    for (level, &m) in (1..=h.max_level()).zip(&thresholds) {
        for k in 1.. {
            let frequent = oracle_frequent(&h, &db, level, k, m)?;
            if frequent.is_empty() {
                break;
            }
            let filtered = oracle_filtered(&h, &db, level, k, m, &ct)?;
            assert_eq!(r.frequent(level, k), frequent.as_slice());
            assert_eq!(r.filtered(level, k), filtered.as_slice());
            println!("L[{level},{k}]: {} frequent, {} filtered, miner agrees", frequent.len(), filtered.len());
        }
    }

    // Enumeration refuses jobs that would not finish.
    let big = mlc_mine::ConceptHierarchy::generate(50, mlc_mine::Fanout::fixed(4), 3, 1)?;
    let none = mlc_mine::TransactionDatabase::generate(&big, 0, 1.0, 1)?;
    println!("{}", oracle_frequent(&big, &none, 3, 4, 1).unwrap_err());
    Ok(())
}

fn main() -> Result<()> {
    run()
}
