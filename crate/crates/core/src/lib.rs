//! Multi-level frequent itemset mining under existence constraints.
//!
//! Items live in a [`ConceptHierarchy`] and are named by their positional
//! path: `1.2.1` (or `121` when every ordinal is a single digit) is the
//! first child of the second child of root `1`. Transactions hold terminal
//! items only; a transaction supports a higher-level item when one of its
//! items lies below it.
//!
//! Each level is mined on its own with Apriori and its own minimum support.
//! An existence [`Constraint`] in disjunctive normal form decides which
//! frequent itemsets are reported. [`mine_basic`] filters afterwards,
//! [`mine_test_and_generate`] filters candidates first (and may miss
//! results), and [`mine_mlc_prune`] drops negated branches from every level
//! before counting it.
//!
//! ```
//! use mlc_mine::{mine_basic, sample, Constraint};
//!
//! let h = sample::hierarchy();
//! let db = sample::database();
//! let ct = Constraint::parse("(NOT 3** AND 11*) OR 2**", &h).unwrap();
//! let r = mine_basic(&h, &db, &sample::minsup(), &ct).unwrap();
//! for (set, support) in r.filtered(2, 2) {
//!     println!("{} {support}", set.display(h.max_level()));
//! }
//! ```

pub mod cli;
pub mod constraints;
mod error;
pub mod miner;
pub mod oracle;
pub mod sample;
pub mod taxonomy;
pub mod transactions;

pub use constraints::{
    evaluate_affirmation, evaluate_constraint, evaluate_literal, filter_frequent, parse_constraint,
    parse_split_constraint, split_to_flat, Conjunction, Constraint, Literal, SplitConstraint,
};
pub use error::{Error, Result};
pub use miner::{
    compare_runs, get_1_itemsets, get_candidate_set, get_subsets, mine_basic, mine_mlc_prune, mine_mlc_prune_with,
    mine_test_and_generate, Algorithm, Comparison, Counters, LevelResult, MinSupTable, MiningResult, PassResult,
    PruneSchedule, Supported, Threshold,
};
pub use taxonomy::{ConceptHierarchy, Fanout, ItemCode, ROOT};
pub use transactions::{itemset_support, transaction_supports, Itemset, Transaction, TransactionDatabase};
