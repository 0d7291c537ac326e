//! Concept hierarchies (taxonomies) and positional item codes.
//!
//! An item is identified by the path of child ordinals leading to it from the
//! implicit level-0 root: the second child of the first root is `[1, 2]`,
//! printed `1.2` (dotted) or `12*` (starred, in a three-level hierarchy).
//! The length of the path is the item's abstraction level.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::Bound;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Parent token that attaches an edge to the implicit level-0 root.
pub const ROOT: &str = "ROOT";

/// Positional path identifying an item at any abstraction level.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ItemCode(SmallVec<[u32; 4]>);

impl ItemCode {
    pub fn new(path: &[u32]) -> Result<Self> {
        if path.is_empty() || path.contains(&0) {
            return Err(Error::InvalidCode(format!("{path:?}")));
        }
        Ok(ItemCode(SmallVec::from_slice(path)))
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn path(&self) -> &[u32] {
        &self.0
    }

    pub fn parent(&self) -> Option<ItemCode> {
        (self.level() > 1).then(|| ItemCode(SmallVec::from_slice(&self.0[..self.level() - 1])))
    }

    pub fn child(&self, ordinal: u32) -> ItemCode {
        debug_assert!(ordinal >= 1);
        let mut path = self.0.clone();
        path.push(ordinal);
        ItemCode(path)
    }

    /// Generalization of this code to `level` (`level <= self.level()`).
    pub fn truncate(&self, level: usize) -> ItemCode {
        ItemCode(SmallVec::from_slice(&self.0[..level]))
    }

    /// Strict-prefix test.
    pub fn is_ancestor_of(&self, other: &ItemCode) -> bool {
        self.level() < other.level() && other.0.starts_with(&self.0)
    }

    /// True iff `other` is this item or one of its descendants.
    pub fn is_self_or_ancestor_of(&self, other: &ItemCode) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Starred notation (`11*`, `1**`) when every ordinal is a single
    /// digit; dotted otherwise.
    pub fn starred(&self, max_level: usize) -> String {
        if self.0.iter().any(|&o| o > 9) {
            return self.to_string();
        }
        let mut s: String = self.0.iter().map(|o| char::from(b'0' + *o as u8)).collect();
        for _ in self.level()..max_level {
            s.push('*');
        }
        s
    }

    /// Whether `token` is shaped like a code rather than a label.
    pub(crate) fn looks_like_code(token: &str) -> bool {
        !token.is_empty()
            && token.starts_with(|c: char| c.is_ascii_digit())
            && token.chars().all(|c| c.is_ascii_digit() || c == '.' || c == '*')
    }
}

impl fmt::Display for ItemCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, o) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{o}")?;
        }
        // `12` alone would read back as 1.2.
        if self.0.len() == 1 && self.0[0] > 9 {
            f.write_str(".")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ItemCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ItemCode({self})")
    }
}

impl std::borrow::Borrow<[u32]> for ItemCode {
    fn borrow(&self) -> &[u32] {
        &self.0
    }
}

impl FromStr for ItemCode {
    type Err = Error;

    /// Accepts dotted (`1.1.2`, `12.` for a lone multi-digit ordinal),
    /// digit (`112`) and starred (`11*`) forms.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidCode(s.to_string());
        let s = s.trim();
        if s.contains('.') {
            let path = s
                .strip_suffix('.')
                .unwrap_or(s)
                .split('.')
                .map(|p| p.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            return ItemCode::new(&path).map_err(|_| bad());
        }
        let digits = s.trim_end_matches('*');
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let path: Vec<u32> = digits.bytes().map(|b| u32::from(b - b'0')).collect();
        ItemCode::new(&path).map_err(|_| bad())
    }
}

impl Serialize for ItemCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ItemCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    label: Option<String>,
    children: Vec<ItemCode>,
}

/// A rooted forest of items. Immutable once built; pruning returns a copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptHierarchy {
    // BTreeMap order on paths is a preorder walk of the forest.
    nodes: BTreeMap<ItemCode, Node>,
    labels: HashMap<String, ItemCode>,
    max_level: usize,
}

/// Range of children per internal node for [`ConceptHierarchy::generate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fanout {
    pub min: u32,
    pub max: u32,
}

impl Fanout {
    pub fn fixed(n: u32) -> Self {
        Fanout { min: n, max: n }
    }
}

impl FromStr for Fanout {
    type Err = Error;

    /// `"3"` or `"2-4"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("fanout `{s}`"));
        let (lo, hi) = match s.split_once('-') {
            Some((lo, hi)) => (lo, hi),
            None => (s, s),
        };
        let min = lo.trim().parse().map_err(|_| bad())?;
        let max = hi.trim().parse().map_err(|_| bad())?;
        Ok(Fanout { min, max })
    }
}

impl ConceptHierarchy {
    /// Builds a hierarchy from `(parent, child)` label pairs; the parent
    /// [`ROOT`] marks level-1 items. Ordinals follow the order in which each
    /// child first appears.
    pub fn build<I, P, C>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (P, C)>,
        P: AsRef<str>,
        C: AsRef<str>,
    {
        let mut parent_of: HashMap<String, String> = HashMap::new();
        let mut children: HashMap<String, Vec<String>> = HashMap::new();
        for (parent, child) in edges {
            let (parent, child) = (parent.as_ref(), child.as_ref());
            if child == ROOT {
                return Err(Error::InvalidParameter(format!("{ROOT} cannot be a child")));
            }
            if parent == child {
                return Err(Error::Cycle(child.to_string()));
            }
            match parent_of.get(child) {
                Some(p) if p == parent => {
                    return Err(Error::DuplicateChild {
                        parent: parent.to_string(),
                        child: child.to_string(),
                    })
                }
                Some(p) => {
                    return Err(Error::MultipleParents {
                        child: child.to_string(),
                        first: p.clone(),
                        second: parent.to_string(),
                    })
                }
                None => {}
            }
            parent_of.insert(child.to_string(), parent.to_string());
            children.entry(parent.to_string()).or_default().push(child.to_string());
        }

        // Every label must reach ROOT through its parent chain.
        let mut attached: HashSet<&str> = HashSet::new();
        for start in parent_of.keys() {
            let mut seen: HashSet<&str> = HashSet::new();
            let mut cur = start.as_str();
            loop {
                if cur == ROOT || attached.contains(cur) {
                    break;
                }
                if !seen.insert(cur) {
                    return Err(Error::Cycle(cur.to_string()));
                }
                match parent_of.get(cur) {
                    Some(p) => cur = p,
                    None => return Err(Error::Unattached(cur.to_string())),
                }
            }
            attached.extend(seen);
        }

        let mut h = ConceptHierarchy {
            nodes: BTreeMap::new(),
            labels: HashMap::new(),
            max_level: 0,
        };
        let mut stack: Vec<(String, Option<ItemCode>)> = vec![(ROOT.to_string(), None)];
        while let Some((label, code)) = stack.pop() {
            let kids = children.get(&label).map(Vec::as_slice).unwrap_or_default();
            let mut kid_codes = Vec::with_capacity(kids.len());
            for (i, kid) in kids.iter().enumerate() {
                let ordinal = i as u32 + 1;
                let kid_code = match &code {
                    Some(c) => c.child(ordinal),
                    None => ItemCode::new(&[ordinal])?,
                };
                kid_codes.push(kid_code.clone());
                stack.push((kid.clone(), Some(kid_code)));
            }
            if let Some(code) = code {
                h.max_level = h.max_level.max(code.level());
                h.labels.insert(label.clone(), code.clone());
                h.nodes.insert(
                    code,
                    Node {
                        label: Some(label),
                        children: kid_codes,
                    },
                );
            }
        }
        Ok(h)
    }

    /// Parses the tab-separated edge format (`parent<TAB>child`, `#` comments).
    pub fn parse_tsv(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (parent, child) = line.split_once('\t').ok_or_else(|| Error::Format {
                line: i + 1,
                message: "expected `parent<TAB>child`".into(),
            })?;
            if child.contains('\t') || parent.trim().is_empty() || child.trim().is_empty() {
                return Err(Error::Format {
                    line: i + 1,
                    message: "expected exactly two non-empty fields".into(),
                });
            }
            edges.push((parent.trim().to_string(), child.trim().to_string()));
        }
        Self::build(edges)
    }

    /// Writes the edge format, one edge per node in preorder. Unlabelled
    /// nodes are written under their dotted code.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for code in self.nodes.keys() {
            let parent = match code.parent() {
                Some(p) => self.display_label(&p),
                None => ROOT.to_string(),
            };
            out.push_str(&parent);
            out.push('\t');
            out.push_str(&self.display_label(code));
            out.push('\n');
        }
        out
    }

    fn display_label(&self, code: &ItemCode) -> String {
        self.label(code).map(str::to_string).unwrap_or_else(|| code.to_string())
    }

    /// Deterministic synthetic hierarchy: `roots` level-1 items, every
    /// internal node gets a uniform number of children in `fanout`, all
    /// leaves at depth `levels`.
    pub fn generate(roots: u32, fanout: Fanout, levels: usize, seed: u64) -> Result<Self> {
        if roots == 0 || levels == 0 {
            return Err(Error::InvalidParameter("roots and levels must be positive".into()));
        }
        if fanout.min == 0 || fanout.min > fanout.max {
            return Err(Error::InvalidParameter(format!(
                "fanout range {}-{} must satisfy 1 <= min <= max",
                fanout.min, fanout.max
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut h = ConceptHierarchy {
            nodes: BTreeMap::new(),
            labels: HashMap::new(),
            max_level: levels,
        };
        let mut frontier: Vec<ItemCode> = (1..=roots).map(|r| ItemCode::new(&[r]).unwrap()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for code in frontier {
                let children: Vec<ItemCode> = if code.level() < levels {
                    let n = rng.random_range(fanout.min..=fanout.max);
                    (1..=n).map(|o| code.child(o)).collect()
                } else {
                    Vec::new()
                };
                next.extend(children.iter().cloned());
                let label = format!("i{code}");
                h.labels.insert(label.clone(), code.clone());
                h.nodes.insert(
                    code,
                    Node {
                        label: Some(label),
                        children,
                    },
                );
            }
            frontier = next;
        }
        Ok(h)
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, code: &ItemCode) -> bool {
        self.nodes.contains_key(code)
    }

    /// All nodes in preorder.
    pub fn iter(&self) -> impl Iterator<Item = &ItemCode> {
        self.nodes.keys()
    }

    pub fn roots(&self) -> impl Iterator<Item = &ItemCode> {
        self.nodes.keys().filter(|c| c.level() == 1)
    }

    pub fn children(&self, code: &ItemCode) -> Result<&[ItemCode]> {
        Ok(&self.node(code)?.children)
    }

    pub fn label(&self, code: &ItemCode) -> Option<&str> {
        self.nodes.get(code).and_then(|n| n.label.as_deref())
    }

    /// Resolves a label or a code token (dotted, digit or starred form).
    pub fn resolve(&self, token: &str) -> Result<ItemCode> {
        if let Some(code) = self.labels.get(token) {
            return Ok(code.clone());
        }
        if ItemCode::looks_like_code(token) {
            let code: ItemCode = token.parse()?;
            if self.contains(&code) {
                return Ok(code);
            }
        }
        Err(Error::UnknownItem(token.to_string()))
    }

    /// Terminal items are those on the deepest level.
    pub fn is_terminal(&self, code: &ItemCode) -> bool {
        code.level() == self.max_level && self.contains(code)
    }

    pub fn terminal_items(&self) -> Vec<ItemCode> {
        self.nodes
            .keys()
            .filter(|c| c.level() == self.max_level)
            .cloned()
            .collect()
    }

    fn node(&self, code: &ItemCode) -> Result<&Node> {
        self.nodes
            .get(code)
            .ok_or_else(|| Error::UnknownItem(code.to_string()))
    }

    fn check(&self, code: &ItemCode) -> Result<()> {
        self.node(code).map(|_| ())
    }

    /// All strict descendants of `code`, in preorder.
    pub fn descendants_of(&self, code: &ItemCode) -> Result<Vec<ItemCode>> {
        self.check(code)?;
        Ok(self
            .nodes
            .range::<ItemCode, _>((Bound::Excluded(code), Bound::Unbounded))
            .map(|(c, _)| c)
            .take_while(|c| code.is_ancestor_of(c))
            .cloned()
            .collect())
    }

    /// True iff `y` is `x` or one of its descendants.
    pub fn is_self_or_descendant(&self, x: &ItemCode, y: &ItemCode) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.is_self_or_ancestor_of(y))
    }

    /// Removes every item of `neg` together with its descendants. Surviving
    /// codes are not renumbered and `max_level` is kept.
    pub fn prune(&self, neg: &[ItemCode]) -> Result<Self> {
        for g in neg {
            self.check(g)?;
        }
        let removed = |c: &ItemCode| neg.iter().any(|g| g.is_self_or_ancestor_of(c));
        let nodes: BTreeMap<ItemCode, Node> = self
            .nodes
            .iter()
            .filter(|(c, _)| !removed(c))
            .map(|(c, n)| {
                let node = Node {
                    label: n.label.clone(),
                    children: n.children.iter().filter(|k| !removed(k)).cloned().collect(),
                };
                (c.clone(), node)
            })
            .collect();
        let labels = self
            .labels
            .iter()
            .filter(|(_, c)| nodes.contains_key(*c))
            .map(|(l, c)| (l.clone(), c.clone()))
            .collect();
        Ok(ConceptHierarchy {
            nodes,
            labels,
            max_level: self.max_level,
        })
    }

    /// Codes of length `level` in lexicographic path order.
    pub fn items_at_level(&self, level: usize) -> Result<Vec<ItemCode>> {
        if level == 0 || level > self.max_level {
            return Err(Error::LevelOutOfRange {
                level,
                max_level: self.max_level,
            });
        }
        Ok(self.nodes.keys().filter(|c| c.level() == level).cloned().collect())
    }

    /// Starred display of a code using this hierarchy's depth.
    pub fn display(&self, code: &ItemCode) -> String {
        code.starred(self.max_level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn code(s: &str) -> ItemCode {
        s.parse().unwrap()
    }

    fn codes(list: &[&str]) -> Vec<ItemCode> {
        list.iter().map(|s| code(s)).collect()
    }

    #[test]
    fn code_forms() {
        assert_eq!(code("1.1.2"), code("112"));
        assert_eq!(code("11*"), ItemCode::new(&[1, 1]).unwrap());
        assert_eq!(code("1**").level(), 1);
        assert_eq!(code("12.3").path(), &[12, 3]);
        assert_eq!(code("11*").starred(3), "11*");
        assert_eq!(code("12.3").starred(3), "12.3");
        let twelve = ItemCode::new(&[12]).unwrap();
        assert_eq!(twelve.to_string(), "12.");
        assert_eq!(code("12."), twelve);
        assert_eq!(code("12"), code("1.2"));
        for bad in ["", "*", ".", "1.0", "10*x", "a1", "1..2", "1.2..", "0"] {
            assert!(bad.parse::<ItemCode>().is_err(), "{bad}");
        }
    }

    #[test]
    fn sample_hierarchy_layout() {
        let h = sample::hierarchy();
        assert_eq!(h.max_level(), 3);
        assert_eq!(h.items_at_level(1).unwrap(), codes(&["1", "2", "3"]));
        assert_eq!(
            h.items_at_level(2).unwrap(),
            codes(&["11*", "12*", "21*", "22*", "31*", "32*"])
        );
        assert_eq!(h.items_at_level(3).unwrap().len(), 12);
        assert!(h.contains(&code("111")));
        assert_eq!(h.resolve("dairyland 2% milk").unwrap(), code("111"));
        assert_eq!(h.resolve("3.2.2").unwrap(), code("322"));
        assert!(matches!(h.resolve("4**"), Err(Error::UnknownItem(_))));
    }

    #[test]
    fn build_edge_cases() {
        let empty = ConceptHierarchy::build(Vec::<(&str, &str)>::new()).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.max_level(), 0);
        assert!(empty.items_at_level(1).is_err());

        let one = ConceptHierarchy::build([(ROOT, "milk")]).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.max_level(), 1);
        assert_eq!(one.resolve("milk").unwrap(), code("1"));
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            ConceptHierarchy::build([(ROOT, "a"), (ROOT, "a")]),
            Err(Error::DuplicateChild { .. })
        ));
        assert!(matches!(
            ConceptHierarchy::build([(ROOT, "a"), (ROOT, "b"), ("a", "c"), ("b", "c")]),
            Err(Error::MultipleParents { .. })
        ));
        assert!(matches!(
            ConceptHierarchy::build([(ROOT, "a"), ("b", "c"), ("c", "b")]),
            Err(Error::Cycle(_))
        ));
        assert!(matches!(ConceptHierarchy::build([("a", "a")]), Err(Error::Cycle(_))));
        assert!(matches!(
            ConceptHierarchy::build([("x", "y")]),
            Err(Error::Unattached(_))
        ));
    }

    #[test]
    fn edge_order_does_not_need_parents_first() {
        let h = ConceptHierarchy::build([("a", "a1"), (ROOT, "a"), (ROOT, "b"), ("a", "a2")]).unwrap();
        assert_eq!(h.resolve("a2").unwrap(), code("1.2"));
        assert_eq!(h.resolve("b").unwrap(), code("2"));
    }

    #[test]
    fn descendants() {
        let h = sample::hierarchy();
        assert_eq!(
            h.descendants_of(&code("3**")).unwrap(),
            codes(&["31*", "311", "312", "32*", "321", "322"])
        );
        assert!(h.descendants_of(&code("111")).unwrap().is_empty());
        assert_eq!(h.descendants_of(&code("11*")).unwrap(), codes(&["111", "112"]));
        assert!(h.descendants_of(&code("4**")).is_err());
    }

    #[test]
    fn self_or_descendant() {
        let h = sample::hierarchy();
        assert!(h.is_self_or_descendant(&code("11*"), &code("111")).unwrap());
        assert!(h.is_self_or_descendant(&code("11*"), &code("11*")).unwrap());
        assert!(!h.is_self_or_descendant(&code("11*"), &code("1**")).unwrap());
        assert!(h.is_self_or_descendant(&code("11*"), &code("9")).is_err());
    }

    #[test]
    fn pruning() {
        let h = sample::hierarchy();
        let p = h.prune(&codes(&["3**"])).unwrap();
        assert_eq!(p.len(), 14);
        assert_eq!(p.items_at_level(1).unwrap(), codes(&["1**", "2**"]));
        assert_eq!(p.max_level(), 3);
        assert_eq!(h.prune(&[]).unwrap(), h);
        let all = h.prune(&codes(&["1**", "2**", "3**"])).unwrap();
        assert!(all.is_empty());
        assert!(all.items_at_level(1).unwrap().is_empty());
        assert!(h.prune(&codes(&["4"])).is_err());

        let q = h.prune(&codes(&["1.1"])).unwrap();
        assert_eq!(q.children(&code("1")).unwrap(), &codes(&["12*"])[..]);
        assert!(q.resolve("dairyland 2% milk").is_err());
    }

    #[test]
    fn tsv_round_trip() {
        let h = sample::hierarchy();
        let again = ConceptHierarchy::parse_tsv(&h.to_tsv()).unwrap();
        assert_eq!(again, h);
        let err = ConceptHierarchy::parse_tsv("ROOT milk\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 1, .. }));
    }

    #[test]
    fn generation() {
        let a = ConceptHierarchy::generate(10, Fanout { min: 2, max: 4 }, 3, 7).unwrap();
        let b = ConceptHierarchy::generate(10, Fanout { min: 2, max: 4 }, 3, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.roots().count(), 10);
        assert_eq!(a.max_level(), 3);
        assert!(a.iter().all(|c| c.level() == 3 || !a.children(c).unwrap().is_empty()));

        let wide = ConceptHierarchy::generate(50, Fanout { min: 2, max: 4 }, 3, 7).unwrap();
        assert_eq!(wide.items_at_level(1).unwrap().len(), 50);
        assert_eq!(ConceptHierarchy::parse_tsv(&wide.to_tsv()).unwrap(), wide);

        let single = ConceptHierarchy::generate(1, Fanout::fixed(1), 1, 0).unwrap();
        assert_eq!(single.len(), 1);

        assert!(ConceptHierarchy::generate(0, Fanout::fixed(1), 1, 0).is_err());
        assert!(ConceptHierarchy::generate(1, Fanout::fixed(1), 0, 0).is_err());
        assert!(ConceptHierarchy::generate(1, Fanout { min: 3, max: 2 }, 2, 0).is_err());
    }

    #[test]
    fn fanout_parse() {
        assert_eq!("3".parse::<Fanout>().unwrap(), Fanout::fixed(3));
        assert_eq!("2-4".parse::<Fanout>().unwrap(), Fanout { min: 2, max: 4 });
        assert!("x".parse::<Fanout>().is_err());
    }
}
