//! Transactions, itemsets and support counting under the hierarchy.
//!
//! A transaction holds terminal items only, yet it supports every ancestor
//! of those items too: `{111, 212}` supports `11*`, `1**`, `21*` and `2**`.

use std::collections::HashSet;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::taxonomy::{ConceptHierarchy, ItemCode};

/// A transaction: an id plus a duplicate-free set of terminal items, kept
/// in lexicographic path order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    tid: String,
    items: Vec<ItemCode>,
}

impl Transaction {
    pub fn new(tid: impl Into<String>, mut items: Vec<ItemCode>) -> Self {
        items.sort();
        items.dedup();
        Transaction {
            tid: tid.into(),
            items,
        }
    }

    pub fn tid(&self) -> &str {
        &self.tid
    }

    pub fn items(&self) -> &[ItemCode] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// True iff some item equals `x` or descends from it.
    pub fn supports(&self, x: &ItemCode) -> bool {
        // Descendants of x sort right after x.
        let at = self.items.partition_point(|i| i < x);
        self.items.get(at).is_some_and(|i| x.is_self_or_ancestor_of(i))
    }

    pub fn supports_all(&self, s: &Itemset) -> bool {
        s.items().iter().all(|x| self.supports(x))
    }
}

/// A non-empty set of items sharing one level, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Itemset {
    items: Vec<ItemCode>,
}

impl Itemset {
    pub fn new(mut items: Vec<ItemCode>) -> Result<Self> {
        let first = items.first().ok_or(Error::EmptyItemset)?;
        let level = first.level();
        if items.iter().any(|i| i.level() != level) {
            return Err(Error::MixedLevels);
        }
        items.sort();
        items.dedup();
        Ok(Itemset { items })
    }

    /// Parses a comma-separated list of codes, e.g. `"11*, 21*"`.
    pub fn parse(text: &str) -> Result<Self> {
        let items = text
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<Vec<ItemCode>>>()?;
        Itemset::new(items)
    }

    pub fn level(&self) -> usize {
        self.items[0].level()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn items(&self) -> &[ItemCode] {
        &self.items
    }

    pub fn contains(&self, x: &ItemCode) -> bool {
        self.items.binary_search(x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Itemset) -> bool {
        self.items.iter().all(|x| other.contains(x))
    }

    /// `{11*, 21*}` style rendering.
    pub fn display(&self, max_level: usize) -> String {
        let inner: Vec<String> = self.items.iter().map(|c| c.starred(max_level)).collect();
        format!("{{{}}}", inner.join(", "))
    }
}

impl fmt::Display for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.items.iter().map(ItemCode::to_string).collect();
        write!(f, "{{{}}}", inner.join(", "))
    }
}

/// Ordered list of transactions with unique ids, validated against a
/// hierarchy at load time.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransactionDatabase {
    transactions: Vec<Transaction>,
}

impl TransactionDatabase {
    /// Validates records against `h`: ids unique, every item a terminal node.
    pub fn from_records<I, T>(h: &ConceptHierarchy, records: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, Vec<ItemCode>)>,
        T: Into<String>,
    {
        let mut seen = HashSet::new();
        let mut transactions = Vec::new();
        for (tid, items) in records {
            let t = Transaction::new(tid, items);
            if !seen.insert(t.tid.clone()) {
                return Err(Error::DuplicateTid(t.tid));
            }
            for item in &t.items {
                if !h.contains(item) {
                    return Err(Error::UnknownItem(item.to_string()));
                }
                if !h.is_terminal(item) {
                    return Err(Error::NonTerminalItem {
                        tid: t.tid.clone(),
                        item: h.display(item),
                    });
                }
            }
            transactions.push(t);
        }
        Ok(TransactionDatabase { transactions })
    }

    /// Parses `TID<TAB>code,code,...` lines; `#` starts a comment line.
    pub fn parse_tsv(h: &ConceptHierarchy, text: &str) -> Result<Self> {
        let mut records = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (tid, rest) = line.split_once('\t').unwrap_or((line, ""));
            let tid = tid.trim();
            if tid.is_empty() {
                return Err(Error::Format {
                    line: i + 1,
                    message: "missing transaction id".into(),
                });
            }
            let items = rest
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<ItemCode>().map_err(|_| Error::Format {
                        line: i + 1,
                        message: format!("invalid item code `{s}`"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            records.push((tid.to_string(), items));
        }
        Self::from_records(h, records)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for t in &self.transactions {
            out.push_str(&t.tid);
            out.push('\t');
            let items: Vec<String> = t.items.iter().map(ItemCode::to_string).collect();
            out.push_str(&items.join(","));
            out.push('\n');
        }
        out
    }

    /// Deterministic synthetic database. Transaction sizes are Poisson with
    /// mean `mean_items`, clamped to `[1, #terminal items]`; items are drawn
    /// uniformly without replacement.
    pub fn generate(h: &ConceptHierarchy, n_transactions: usize, mean_items: f64, seed: u64) -> Result<Self> {
        let terminals = h.terminal_items();
        if terminals.is_empty() {
            return Err(Error::InvalidParameter("hierarchy has no terminal items".into()));
        }
        let sizes = Poisson::new(mean_items)
            .map_err(|_| Error::InvalidParameter(format!("mean items per transaction `{mean_items}`")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let transactions = (1..=n_transactions)
            .map(|tid| {
                let size = (sizes.sample(&mut rng) as usize).clamp(1, terminals.len());
                let items = rand::seq::index::sample(&mut rng, terminals.len(), size)
                    .into_iter()
                    .map(|i| terminals[i].clone())
                    .collect();
                Transaction::new(tid.to_string(), items)
            })
            .collect();
        Ok(TransactionDatabase { transactions })
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn get(&self, tid: &str) -> Option<&Transaction> {
        self.transactions.iter().find(|t| t.tid == tid)
    }

    /// Total number of item occurrences.
    pub fn item_count(&self) -> usize {
        self.transactions.iter().map(|t| t.items.len()).sum()
    }

    /// Number of transactions supporting every member of `s`.
    pub fn support(&self, s: &Itemset) -> u64 {
        self.transactions.iter().filter(|t| t.supports_all(s)).count() as u64
    }

    /// Removes from every transaction the items equal to or below any item
    /// of `neg`. Emptied transactions are kept so `len()` is unchanged.
    pub fn prune(&self, h: &ConceptHierarchy, neg: &[ItemCode]) -> Result<Self> {
        for g in neg {
            if !h.contains(g) {
                return Err(Error::UnknownItem(g.to_string()));
            }
        }
        if neg.is_empty() {
            return Ok(self.clone());
        }
        let neg: HashSet<&[u32]> = neg.iter().map(ItemCode::path).collect();
        let removed = |c: &ItemCode| (1..=c.level()).any(|l| neg.contains(&c.path()[..l]));
        let transactions = self
            .transactions
            .iter()
            .map(|t| Transaction {
                tid: t.tid.clone(),
                items: t.items.iter().filter(|c| !removed(c)).cloned().collect(),
            })
            .collect();
        Ok(TransactionDatabase { transactions })
    }
}

/// Whether `t` supports `x`, checking that `x` belongs to `h`.
pub fn transaction_supports(h: &ConceptHierarchy, t: &Transaction, x: &ItemCode) -> Result<bool> {
    if !h.contains(x) {
        return Err(Error::UnknownItem(x.to_string()));
    }
    Ok(t.supports(x))
}

/// Support of `s` in `db`, checking that every member belongs to `h`.
pub fn itemset_support(h: &ConceptHierarchy, db: &TransactionDatabase, s: &Itemset) -> Result<u64> {
    if let Some(x) = s.items().iter().find(|x| !h.contains(x)) {
        return Err(Error::UnknownItem(x.to_string()));
    }
    Ok(db.support(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn code(s: &str) -> ItemCode {
        s.parse().unwrap()
    }

    fn set(s: &str) -> Itemset {
        Itemset::parse(s).unwrap()
    }

    #[test]
    fn loads_sample() {
        let db = sample::database();
        assert_eq!(db.len(), 8);
        let t1 = db.get("1").unwrap();
        assert_eq!(t1.items(), &set("111, 212, 221, 312, 321").items);
    }

    #[test]
    fn load_errors() {
        let h = sample::hierarchy();
        assert!(TransactionDatabase::parse_tsv(&h, "").unwrap().is_empty());
        assert!(matches!(
            TransactionDatabase::parse_tsv(&h, "1\t1.1\n"),
            Err(Error::NonTerminalItem { .. })
        ));
        assert!(matches!(
            TransactionDatabase::parse_tsv(&h, "1\t4.1.1\n"),
            Err(Error::UnknownItem(_))
        ));
        assert!(matches!(
            TransactionDatabase::parse_tsv(&h, "1\t1.1.1\n1\t1.1.2\n"),
            Err(Error::DuplicateTid(_))
        ));
        assert!(matches!(
            TransactionDatabase::parse_tsv(&h, "1\t1.1.1,x\n"),
            Err(Error::Format { line: 1, .. })
        ));
        let dup = TransactionDatabase::parse_tsv(&h, "1\t1.1.1,1.1.1,112\n").unwrap();
        assert_eq!(dup.transactions()[0].items().len(), 2);
    }

    #[test]
    fn support_semantics() {
        let h = sample::hierarchy();
        let db = sample::database();
        let t1 = db.get("1").unwrap();
        let t6 = db.get("6").unwrap();
        assert!(transaction_supports(&h, t1, &code("11*")).unwrap());
        assert!(!transaction_supports(&h, t6, &code("11*")).unwrap());
        assert!(transaction_supports(&h, t1, &code("111")).unwrap());
        assert!(transaction_supports(&h, t1, &code("4")).is_err());

        assert_eq!(itemset_support(&h, &db, &set("11*, 21*")).unwrap(), 7);
        assert_eq!(itemset_support(&h, &db, &set("11*, 32*")).unwrap(), 7);
        assert_eq!(itemset_support(&h, &db, &set("12*, 21*")).unwrap(), 5);
        assert_eq!(itemset_support(&h, &db, &set("111")).unwrap(), 5);
    }

    #[test]
    fn itemset_validation() {
        assert!(matches!(Itemset::new(vec![]), Err(Error::EmptyItemset)));
        assert!(matches!(Itemset::parse("11*, 1**"), Err(Error::MixedLevels)));
        let s = set("21*, 11*, 21*");
        assert_eq!(s.len(), 2);
        assert_eq!(s.display(3), "{11*, 21*}");
        assert_eq!(s.to_string(), "{1.1, 2.1}");
    }

    #[test]
    fn pruning_keeps_ids_and_length() {
        let h = sample::hierarchy();
        let db = sample::database();
        let p = db.prune(&h, &[code("3**")]).unwrap();
        assert_eq!(p.len(), 8);
        assert_eq!(p.get("1").unwrap().items(), &set("111, 212, 221").items);
        assert_eq!(p.get("4").unwrap().items(), &set("212, 111, 122, 211").items);
        assert_eq!(db.prune(&h, &[]).unwrap(), db);
        assert!(db.prune(&h, &[code("9")]).is_err());

        let all = db.prune(&h, &[code("1"), code("2"), code("3")]).unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.transactions().iter().all(Transaction::is_empty));
    }

    #[test]
    fn generation() {
        let h = ConceptHierarchy::generate(10, crate::Fanout { min: 2, max: 4 }, 3, 1).unwrap();
        let a = TransactionDatabase::generate(&h, 3000, 8.0, 5).unwrap();
        let b = TransactionDatabase::generate(&h, 3000, 8.0, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3000);
        assert!(TransactionDatabase::generate(&h, 0, 8.0, 5).unwrap().is_empty());
        let reloaded = TransactionDatabase::parse_tsv(&h, &a.to_tsv()).unwrap();
        assert_eq!(reloaded, a);
        assert!(TransactionDatabase::generate(&h, 1, 0.0, 5).is_err());
    }

    #[test]
    fn generated_size_tracks_mean() {
        let h = ConceptHierarchy::generate(10, crate::Fanout { min: 2, max: 4 }, 3, 1).unwrap();
        for seed in 0..5 {
            let db = TransactionDatabase::generate(&h, 5000, 8.0, seed).unwrap();
            let total = db.item_count() as f64;
            assert!((total - 40_000.0).abs() <= 2_000.0, "seed {seed}: {total}");
        }
    }
}
