//! Existence constraints in disjunctive normal form.
//!
//! A literal names a taxonomy item, optionally negated. Against an itemset,
//! a positive literal holds when some member is the item or one of its
//! descendants; a negative literal holds when no member is. A constraint
//! holds when every literal of at least one conjunction holds.

mod parser;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::taxonomy::{ConceptHierarchy, ItemCode};
use crate::transactions::Itemset;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub item: ItemCode,
    pub negated: bool,
}

impl Literal {
    pub fn pos(item: ItemCode) -> Self {
        Literal { item, negated: false }
    }

    pub fn neg(item: ItemCode) -> Self {
        Literal { item, negated: true }
    }

    pub fn holds(&self, s: &Itemset) -> bool {
        let present = s.items().iter().any(|m| self.item.is_self_or_ancestor_of(m));
        present != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "NOT {}", self.item)
        } else {
            write!(f, "{}", self.item)
        }
    }
}

/// A conjunction of literals, duplicate-free, in first-appearance order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Conjunction(Vec<Literal>);

impl Conjunction {
    pub fn new(literals: Vec<Literal>) -> Result<Self> {
        let mut out: Vec<Literal> = Vec::with_capacity(literals.len());
        for lit in literals {
            if out.iter().any(|l| l.item == lit.item && l.negated != lit.negated) {
                return Err(Error::ConflictingLiteral(lit.item.to_string()));
            }
            if !out.contains(&lit) {
                out.push(lit);
            }
        }
        Ok(Conjunction(out))
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn holds(&self, s: &Itemset) -> bool {
        self.0.iter().all(|l| l.holds(s))
    }
}

/// A disjunction of conjunctions. The tautology is represented as a single
/// empty conjunction and prints as the empty string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    conjunctions: Vec<Conjunction>,
}

impl Constraint {
    pub fn new(conjunctions: Vec<Conjunction>) -> Result<Self> {
        if conjunctions.is_empty() {
            return Err(Error::InvalidParameter("a constraint needs at least one conjunction".into()));
        }
        if conjunctions.len() > 1 && conjunctions.iter().any(|c| c.0.is_empty()) {
            return Err(Error::InvalidParameter("empty conjunction inside a disjunction".into()));
        }
        Ok(Constraint { conjunctions })
    }

    /// Builds from nested literal lists, validating each conjunction.
    pub fn from_literals(conjunctions: Vec<Vec<Literal>>) -> Result<Self> {
        Self::new(conjunctions.into_iter().map(Conjunction::new).collect::<Result<_>>()?)
    }

    /// The constraint every itemset satisfies.
    pub fn tautology() -> Self {
        Constraint {
            conjunctions: vec![Conjunction(Vec::new())],
        }
    }

    pub fn is_tautology(&self) -> bool {
        self.conjunctions.len() == 1 && self.conjunctions[0].0.is_empty()
    }

    pub fn conjunctions(&self) -> &[Conjunction] {
        &self.conjunctions
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.conjunctions.iter().flat_map(|c| c.0.iter())
    }

    pub fn has_negation(&self) -> bool {
        self.literals().any(|l| l.negated)
    }

    pub fn holds(&self, s: &Itemset) -> bool {
        self.conjunctions.iter().any(|c| c.holds(s))
    }

    /// Parses `conj OR conj ...` with `AND`, `NOT` (or `NON`) and
    /// parentheses; items are codes or labels resolved against `h`. The
    /// empty string parses to the tautology.
    pub fn parse(text: &str, h: &ConceptHierarchy) -> Result<Self> {
        parser::parse_constraint(text, h)
    }
}

impl fmt::Display for Constraint {
    /// Canonical form: dotted codes, multi-literal conjunctions parenthesised
    /// when there is more than one conjunction.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = self.conjunctions.len() > 1;
        for (i, conj) in self.conjunctions.iter().enumerate() {
            if i > 0 {
                f.write_str(" OR ")?;
            }
            let paren = wrap && conj.0.len() > 1;
            if paren {
                f.write_str("(")?;
            }
            for (j, lit) in conj.0.iter().enumerate() {
                if j > 0 {
                    f.write_str(" AND ")?;
                }
                write!(f, "{lit}")?;
            }
            if paren {
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

pub fn parse_constraint(text: &str, h: &ConceptHierarchy) -> Result<Constraint> {
    Constraint::parse(text, h)
}

pub fn evaluate_literal(s: &Itemset, e: &Literal) -> bool {
    e.holds(s)
}

pub fn evaluate_constraint(s: &Itemset, ct: &Constraint) -> bool {
    ct.holds(s)
}

/// Keeps the entries whose itemset satisfies `ct`, preserving order.
pub fn filter_frequent<T: Clone>(sets: &[(Itemset, T)], ct: &Constraint) -> Vec<(Itemset, T)> {
    sets.iter().filter(|(s, _)| ct.holds(s)).cloned().collect()
}

/// A constraint split into items to remove before mining (`neg`) and a
/// negation-free DNF checked afterwards (`aff`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitConstraint {
    neg: Vec<ItemCode>,
    aff: Constraint,
}

impl SplitConstraint {
    pub fn new(neg: impl IntoIterator<Item = ItemCode>, aff: Constraint) -> Result<Self> {
        let neg: Vec<ItemCode> = neg.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(l) = aff.literals().find(|l| l.negated) {
            return Err(Error::NegationInAffirmation(l.item.to_string()));
        }
        for l in aff.literals() {
            if let Some(g) = neg.iter().find(|g| g.is_self_or_ancestor_of(&l.item)) {
                return Err(Error::SubsumedAffirmation {
                    literal: l.item.to_string(),
                    neg: g.to_string(),
                });
            }
        }
        Ok(SplitConstraint { neg, aff })
    }

    /// `neg_text` lists the removed items, separated by `AND` or commas,
    /// each optionally written `NOT item`. `aff_text` is a negation-free
    /// constraint; empty means every frequent itemset qualifies.
    pub fn parse(neg_text: &str, aff_text: &str, h: &ConceptHierarchy) -> Result<Self> {
        let neg = parser::parse_negation_list(neg_text, h)?;
        let aff = parser::parse_constraint(aff_text, h)?;
        Self::new(neg, aff)
    }

    pub fn neg(&self) -> &[ItemCode] {
        &self.neg
    }

    pub fn aff(&self) -> &Constraint {
        &self.aff
    }

    /// True iff `s` has no member equal to or below a removed item.
    pub fn negation_holds(&self, s: &Itemset) -> bool {
        s.items()
            .iter()
            .all(|m| !self.neg.iter().any(|g| g.is_self_or_ancestor_of(m)))
    }

    /// The equivalent flat constraint: every `NOT g` appended to each
    /// affirmation conjunction.
    pub fn to_flat(&self) -> Constraint {
        let negs = self.neg.iter().cloned().map(Literal::neg);
        let conjunctions = self
            .aff
            .conjunctions
            .iter()
            .map(|c| {
                let mut lits = c.0.clone();
                lits.extend(negs.clone());
                Conjunction(lits)
            })
            .collect();
        Constraint { conjunctions }
    }

    /// `NOT a AND NOT b` form of the removed items.
    pub fn neg_text(&self) -> String {
        self.neg.iter().map(|g| format!("NOT {g}")).collect::<Vec<_>>().join(" AND ")
    }
}

pub fn parse_split_constraint(neg_text: &str, aff_text: &str, h: &ConceptHierarchy) -> Result<SplitConstraint> {
    SplitConstraint::parse(neg_text, aff_text, h)
}

/// Positive-only evaluation used after pruning.
pub fn evaluate_affirmation(s: &Itemset, aff: &Constraint) -> bool {
    debug_assert!(!aff.has_negation());
    aff.holds(s)
}

pub fn split_to_flat(sc: &SplitConstraint) -> Constraint {
    sc.to_flat()
}
