//! Random small instances shared by the property tests and the acceptance
//! runner.
#![allow(dead_code)]

use mlc_mine::{
    oracle, Conjunction, ConceptHierarchy, Constraint, Fanout, ItemCode, Literal, MinSupTable, MiningResult,
    SplitConstraint, Supported, TransactionDatabase,
};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Instance {
    pub h: ConceptHierarchy,
    pub db: TransactionDatabase,
    pub minsup: Vec<u64>,
}

impl Instance {
    pub fn table(&self) -> MinSupTable {
        MinSupTable::absolute(self.minsup.clone()).unwrap()
    }
}

/// At most 3 roots, fanout 1-3 and 3 levels (27 terminals), up to 50
/// transactions of 1-5 items, thresholds 2..=max(2, n/3).
pub fn random_instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let roots = rng.random_range(1..=3);
    let levels = rng.random_range(1..=3);
    let fanout = Fanout {
        min: 1,
        max: rng.random_range(1..=3),
    };
    let h = ConceptHierarchy::generate(roots, fanout, levels, rng.random()).unwrap();
    let terminals = h.terminal_items();
    let n = rng.random_range(0..=50);
    let records: Vec<(String, Vec<ItemCode>)> = (0..n)
        .map(|tid| {
            let size = rng.random_range(1..=5usize.min(terminals.len()));
            let items = sample(&mut rng, terminals.len(), size)
                .into_iter()
                .map(|i| terminals[i].clone())
                .collect();
            (tid.to_string(), items)
        })
        .collect();
    let db = TransactionDatabase::from_records(&h, records).unwrap();
    let top = (n as u64 / 3).max(2);
    let minsup = (0..levels).map(|_| rng.random_range(2..=top)).collect();
    Instance { h, db, minsup }
}

fn random_item(rng: &mut ChaCha8Rng, h: &ConceptHierarchy) -> ItemCode {
    let all: Vec<&ItemCode> = h.iter().collect();
    all[rng.random_range(0..all.len())].clone()
}

/// Up to 3 conjunctions of up to 3 literals over any level, about a third
/// of them negated. Literals that would conflict are dropped.
pub fn random_constraint(seed: u64, h: &ConceptHierarchy) -> Constraint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut conjunctions = Vec::new();
    for _ in 0..rng.random_range(1..=3) {
        let mut lits: Vec<Literal> = Vec::new();
        for _ in 0..rng.random_range(1..=3) {
            let item = random_item(&mut rng, h);
            let lit = Literal {
                item,
                negated: rng.random_bool(0.35),
            };
            if !lits.iter().any(|l| l.item == lit.item) {
                lits.push(lit);
            }
        }
        conjunctions.push(Conjunction::new(lits).unwrap());
    }
    Constraint::new(conjunctions).unwrap()
}

/// Up to 2 removed items and up to 3 positive conjunctions avoiding them.
/// Affirmation literals may sit above a removed item.
pub fn random_split(seed: u64, h: &ConceptHierarchy) -> SplitConstraint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let neg: Vec<ItemCode> = (0..rng.random_range(0..=2)).map(|_| random_item(&mut rng, h)).collect();
    let allowed: Vec<&ItemCode> = h
        .iter()
        .filter(|x| !neg.iter().any(|g| g.is_self_or_ancestor_of(x)))
        .collect();
    let mut conjunctions = Vec::new();
    if !allowed.is_empty() && rng.random_bool(0.8) {
        for _ in 0..rng.random_range(1..=3) {
            let lits = (0..rng.random_range(1..=3))
                .map(|_| Literal::pos(allowed[rng.random_range(0..allowed.len())].clone()))
                .collect();
            conjunctions.push(Conjunction::new(lits).unwrap());
        }
    }
    let aff = if conjunctions.is_empty() {
        Constraint::tautology()
    } else {
        Constraint::new(conjunctions).unwrap()
    };
    SplitConstraint::new(neg, aff).unwrap()
}

/// Oracle lists for every `(level, k)` up to the first empty k.
pub fn oracle_lists(inst: &Instance, ct: &Constraint) -> Vec<(usize, usize, Vec<Supported>, Vec<Supported>)> {
    let mut out = Vec::new();
    for level in 1..=inst.h.max_level() {
        for k in 1.. {
            let frequent = oracle::oracle_frequent(&inst.h, &inst.db, level, k, inst.minsup[level - 1]).unwrap();
            if frequent.is_empty() {
                break;
            }
            let filtered = oracle::oracle_filtered(&inst.h, &inst.db, level, k, inst.minsup[level - 1], ct).unwrap();
            out.push((level, k, frequent, filtered));
        }
    }
    out
}

/// Describes the first disagreement between a run and the oracle.
pub fn check_against_oracle(inst: &Instance, ct: &Constraint, r: &MiningResult) -> Result<(), String> {
    let expected = oracle_lists(inst, ct);
    for (level, k, frequent, filtered) in &expected {
        let mut got = r.frequent(*level, *k).to_vec();
        got.sort();
        if &got != frequent {
            return Err(format!("L[{level},{k}]: miner {got:?}, oracle {frequent:?}"));
        }
        let mut got = r.filtered(*level, *k).to_vec();
        got.sort();
        if &got != filtered {
            return Err(format!("filtered L[{level},{k}]: miner {got:?}, oracle {filtered:?}"));
        }
    }
    // Nothing beyond what the oracle found.
    for (level, k) in r.nonempty_passes() {
        if !expected.iter().any(|(l, kk, _, _)| *l == level && *kk == k) {
            return Err(format!("miner reports L[{level},{k}], oracle has none"));
        }
    }
    Ok(())
}

/// Filtered lists of two runs agree at every `(level, k)`.
pub fn same_filtered(a: &MiningResult, b: &MiningResult) -> Result<(), String> {
    let cmp = mlc_mine::compare_runs(a, b);
    if cmp.filtered_identical() {
        Ok(())
    } else {
        Err(cmp.to_string())
    }
}

/// Test-and-generate output contained in basic's, supports included.
pub fn subset_of(tag: &MiningResult, basic: &MiningResult) -> Result<(), String> {
    let cmp = mlc_mine::compare_runs(basic, tag);
    let extra: Vec<_> = cmp.filtered_missing_from_a().collect();
    let mismatched: Vec<_> = cmp.filtered.iter().flat_map(|d| d.support_mismatch.iter()).collect();
    if extra.is_empty() && mismatched.is_empty() {
        Ok(())
    } else {
        Err(format!("extra {extra:?}, support mismatches {mismatched:?}"))
    }
}
