//! Brute-force reference miner for tests.
//!
//! Enumerates every k-subset of a level and counts each by scanning the whole
//! database with the prefix test. Shares nothing with the miner beyond
//! [`Transaction::supports`](crate::Transaction::supports) and constraint
//! evaluation, so agreement between the two is meaningful.

use itertools::Itertools;

use crate::constraints::Constraint;
use crate::error::{Error, Result};
use crate::miner::Supported;
use crate::taxonomy::ConceptHierarchy;
use crate::transactions::{Itemset, TransactionDatabase};

/// Refuse to enumerate more than this many combinations.
pub const COMBINATION_LIMIT: u128 = 1_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Every frequent k-itemset of `level`, with supports, in canonical order.
pub fn oracle_frequent(
    h: &ConceptHierarchy,
    db: &TransactionDatabase,
    level: usize,
    k: usize,
    minsup: u64,
) -> Result<Vec<Supported>> {
    let items = h.items_at_level(level)?;
    if k == 0 {
        return Err(Error::InvalidParameter("itemset size must be at least 1".into()));
    }
    let n = binomial(items.len(), k);
    if n > COMBINATION_LIMIT {
        return Err(Error::CombinationLimit {
            n: items.len(),
            k,
            limit: COMBINATION_LIMIT as u64,
        });
    }
    let mut out = Vec::new();
    for combo in items.into_iter().combinations(k) {
        let support = db
            .transactions()
            .iter()
            .filter(|t| combo.iter().all(|x| t.supports(x)))
            .count() as u64;
        if support >= minsup {
            out.push((Itemset::new(combo)?, support));
        }
    }
    out.sort();
    Ok(out)
}

/// [`oracle_frequent`] restricted to itemsets satisfying `ct`.
pub fn oracle_filtered(
    h: &ConceptHierarchy,
    db: &TransactionDatabase,
    level: usize,
    k: usize,
    minsup: u64,
    ct: &Constraint,
) -> Result<Vec<Supported>> {
    let mut all = oracle_frequent(h, db, level, k, minsup)?;
    all.retain(|(s, _)| ct.holds(s));
    Ok(all)
}
