//! Level-wise Apriori over one abstraction level.
//!
//! Items of the level are mapped to dense ids in canonical order, and every
//! transaction is projected to the sorted ids of its generalizations at that
//! level. Candidates are id vectors; their supports are counted by walking a
//! prefix trie with each projected transaction.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use crate::constraints::Constraint;
use crate::taxonomy::{ConceptHierarchy, ItemCode};
use crate::transactions::{Itemset, TransactionDatabase};

use super::{Counters, PassResult};

/// Transactions as sorted terminal ids, built once per run.
pub(crate) struct Encoded {
    terminals: Vec<ItemCode>,
    rows: Vec<Vec<u32>>,
}

impl Encoded {
    /// Items of `db` that are not terminals of `h` are dropped.
    pub(crate) fn new(h: &ConceptHierarchy, db: &TransactionDatabase) -> Self {
        Self::with_terminals(h.terminal_items(), db)
    }

    /// Keeps only `terminals`, which must be in path order.
    pub(crate) fn with_terminals(terminals: Vec<ItemCode>, db: &TransactionDatabase) -> Self {
        let ids: HashMap<&ItemCode, u32> = terminals.iter().enumerate().map(|(i, c)| (c, i as u32)).collect();
        let rows = db
            .transactions()
            .iter()
            .map(|t| t.items().iter().filter_map(|c| ids.get(c).copied()).collect())
            .collect();
        Encoded { terminals, rows }
    }
}

pub(crate) struct LevelIndex {
    items: Vec<ItemCode>,
    rows: Vec<Vec<u32>>,
}

impl LevelIndex {
    /// Projects every transaction onto `items`, which must be sorted and of
    /// one level. Terminals below none of them disappear.
    pub(crate) fn new(enc: &Encoded, items: Vec<ItemCode>) -> Self {
        const NONE: u32 = u32::MAX;
        let Some(level) = items.first().map(ItemCode::level) else {
            return LevelIndex {
                items,
                rows: vec![Vec::new(); enc.rows.len()],
            };
        };
        // Terminals and items are both in path order, so one merge maps
        // every terminal to the item above it.
        let mut slot = vec![NONE; enc.terminals.len()];
        let mut at = 0;
        for (t, code) in enc.terminals.iter().enumerate() {
            if code.level() < level {
                continue;
            }
            let prefix = &code.path()[..level];
            while at < items.len() && items[at].path() < prefix {
                at += 1;
            }
            if at < items.len() && items[at].path() == prefix {
                slot[t] = at as u32;
            }
        }
        let rows = enc
            .rows
            .iter()
            .map(|r| {
                let mut row: Vec<u32> = Vec::with_capacity(r.len());
                for &t in r {
                    let id = slot[t as usize];
                    if id != NONE && row.last() != Some(&id) {
                        row.push(id);
                    }
                }
                debug_assert!(row.windows(2).all(|w| w[0] < w[1]));
                row
            })
            .collect();
        LevelIndex { items, rows }
    }

    #[cfg(test)]
    pub(crate) fn rows(&self) -> Vec<Vec<ItemCode>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&i| self.items[i as usize].clone()).collect())
            .collect()
    }

    pub(crate) fn itemset(&self, ids: &[u32]) -> Itemset {
        Itemset::new(ids.iter().map(|&i| self.items[i as usize].clone()).collect())
            .expect("ids index one level")
    }

    fn count(&self, candidates: &[Vec<u32>]) -> Vec<u64> {
        let mut counts = vec![0u64; candidates.len()];
        match candidates.first().map(Vec::len) {
            None => {}
            Some(1) => {
                let mut slot = vec![usize::MAX; self.items.len()];
                for (i, c) in candidates.iter().enumerate() {
                    slot[c[0] as usize] = i;
                }
                for row in &self.rows {
                    for &id in row {
                        if let Some(c) = counts.get_mut(slot[id as usize]) {
                            *c += 1;
                        }
                    }
                }
            }
            Some(_) => {
                let trie = CandidateTrie::new(candidates);
                let mut hits = Vec::new();
                for row in &self.rows {
                    hits.clear();
                    trie.matches(row, &mut hits);
                    for &h in &hits {
                        counts[h as usize] += 1;
                    }
                }
            }
        }
        counts
    }
}

/// L[l,1] alone.
pub(crate) fn frequent_singletons(index: &LevelIndex, minsup: u64) -> Vec<(Itemset, u64)> {
    let singles: Vec<Vec<u32>> = (0..index.items.len() as u32).map(|i| vec![i]).collect();
    let counts = index.count(&singles);
    singles
        .iter()
        .zip(counts)
        .filter(|&(_, n)| n >= minsup)
        .map(|(ids, n)| (index.itemset(ids), n))
        .collect()
}

/// Prefix trie over equal-length sorted candidates.
pub(crate) struct CandidateTrie {
    nodes: Vec<TrieNode>,
    depth: usize,
}

#[derive(Default)]
struct TrieNode {
    // Sorted by item id.
    children: Vec<(u32, u32)>,
    leaf: Option<u32>,
}

impl CandidateTrie {
    pub(crate) fn new(candidates: &[Vec<u32>]) -> Self {
        let depth = candidates.first().map_or(0, Vec::len);
        let mut nodes = vec![TrieNode::default()];
        for (idx, cand) in candidates.iter().enumerate() {
            debug_assert_eq!(cand.len(), depth);
            let mut at = 0usize;
            for &item in cand {
                let next = match nodes[at].children.binary_search_by_key(&item, |&(k, _)| k) {
                    Ok(pos) => nodes[at].children[pos].1 as usize,
                    Err(pos) => {
                        let new = nodes.len();
                        nodes.push(TrieNode::default());
                        nodes[at].children.insert(pos, (item, new as u32));
                        new
                    }
                };
                at = next;
            }
            nodes[at].leaf = Some(idx as u32);
        }
        CandidateTrie { nodes, depth }
    }

    /// Pushes the index of every candidate contained in the sorted `row`.
    pub(crate) fn matches(&self, row: &[u32], hits: &mut Vec<u32>) {
        if self.depth > 0 && row.len() >= self.depth {
            self.walk(0, row, 0, hits);
        }
    }

    fn walk(&self, node: usize, row: &[u32], depth: usize, hits: &mut Vec<u32>) {
        let children = &self.nodes[node].children;
        // Leave room for the remaining depth.
        let last_start = row.len() - (self.depth - depth);
        for (i, &item) in row[..=last_start].iter().enumerate() {
            if let Ok(pos) = children.binary_search_by_key(&item, |&(k, _)| k) {
                let child = children[pos].1 as usize;
                if depth + 1 == self.depth {
                    if let Some(leaf) = self.nodes[child].leaf {
                        hits.push(leaf);
                    }
                } else {
                    self.walk(child, &row[i + 1..], depth + 1, hits);
                }
            }
        }
    }
}

/// Apriori join on the first k-2 members followed by the subset prune.
/// `prev` must be sorted and hold equal-length, internally sorted sets.
pub(crate) fn apriori_gen<T: Ord + Clone + Hash>(prev: &[Vec<T>]) -> Vec<Vec<T>> {
    let Some(width) = prev.first().map(Vec::len) else {
        return Vec::new();
    };
    let known: HashSet<&[T]> = prev.iter().map(Vec::as_slice).collect();
    let shared = width - 1;
    let mut out = Vec::new();
    for (i, a) in prev.iter().enumerate() {
        for b in prev[i + 1..].iter().take_while(|b| b[..shared] == a[..shared]) {
            let mut cand = a.clone();
            cand.push(b[shared].clone());
            let all_subsets_known = (0..cand.len().saturating_sub(2)).all(|skip| {
                let sub: Vec<T> = cand
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, x)| x.clone())
                    .collect();
                known.contains(sub.as_slice())
            });
            if all_subsets_known {
                out.push(cand);
            }
        }
    }
    out
}

/// How a pass treats the constraint.
#[derive(Clone, Copy)]
pub(crate) enum Gate<'a> {
    /// Count every candidate, filter frequent sets afterwards.
    PostFilter(&'a Constraint),
    /// Drop failing candidates before counting.
    PreFilter(&'a Constraint),
}

/// Runs every pass of one level.
pub(crate) fn mine_level(index: &LevelIndex, minsup: u64, gate: Gate<'_>, counters: &mut Counters) -> Vec<PassResult> {
    let mut passes = Vec::new();
    let mut candidates: Vec<Vec<u32>> = (0..index.items.len() as u32).map(|i| vec![i]).collect();
    let mut k = 1;
    while !candidates.is_empty() {
        let generated = candidates.len() as u64;
        counters.candidates_generated += generated;
        counters.passes += 1;
        if let Gate::PreFilter(ct) = gate {
            counters.constraint_checks += generated;
            candidates.retain(|c| ct.holds(&index.itemset(c)));
        }
        let counted = candidates.len() as u64;
        counters.support_computations += counted;
        let counts = index.count(&candidates);

        let mut frequent_ids = Vec::new();
        let mut frequent = Vec::new();
        let mut filtered = Vec::new();
        for (ids, support) in candidates.into_iter().zip(counts) {
            if support < minsup {
                continue;
            }
            let set = index.itemset(&ids);
            let keep = match gate {
                Gate::PostFilter(ct) => {
                    counters.constraint_checks += 1;
                    ct.holds(&set)
                }
                Gate::PreFilter(_) => true,
            };
            if keep {
                filtered.push((set.clone(), support));
            }
            frequent.push((set, support));
            frequent_ids.push(ids);
        }
        counters.frequent += frequent.len() as u64;
        counters.filtered += filtered.len() as u64;
        passes.push(PassResult {
            k,
            candidates: generated,
            counted,
            frequent,
            filtered,
        });
        candidates = apriori_gen(&frequent_ids);
        k += 1;
    }
    passes
}
