//! A small grocery dataset: a three-level taxonomy (category, kind, brand)
//! with three roots of two kinds each, and eight transactions over its
//! twelve brands. Handy for docs, examples and tests.

use crate::miner::MinSupTable;
use crate::taxonomy::ConceptHierarchy;
use crate::transactions::TransactionDatabase;

pub const HIERARCHY_TSV: &str = include_str!("../data/grocery.hierarchy.tsv");
pub const TRANSACTIONS_TSV: &str = include_str!("../data/grocery.transactions.tsv");

/// Flat constraint: brands other than fruit under 2% milk, or any bread.
pub const CONSTRAINT: &str = "(NOT 3** AND 11*) OR 2**";
/// Split form used with pruning: drop fruit, keep 2% milk or bread.
pub const NEG: &str = "NOT 3**";
pub const AFF: &str = "11* OR 2**";

pub fn hierarchy() -> ConceptHierarchy {
    ConceptHierarchy::parse_tsv(HIERARCHY_TSV).expect("bundled hierarchy is valid")
}

pub fn database() -> TransactionDatabase {
    TransactionDatabase::parse_tsv(&hierarchy(), TRANSACTIONS_TSV).expect("bundled transactions are valid")
}

/// Absolute thresholds 5, 4 and 3 for levels 1, 2 and 3.
pub fn minsup() -> MinSupTable {
    MinSupTable::absolute(vec![5, 4, 3]).expect("positive thresholds")
}
