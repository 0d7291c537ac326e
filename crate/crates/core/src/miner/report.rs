//! JSON and CSV renderings of a [`MiningResult`].
//!
//! The JSON report stores each pass's frequent itemsets once, flagging the
//! ones that satisfy the constraint; reading it back rebuilds both lists.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::taxonomy::ItemCode;
use crate::transactions::Itemset;

use super::{Algorithm, Counters, LevelResult, MiningResult, PassResult};

pub const SCHEMA_ID: &str = "mlc-mine/report/v1";
pub const CSV_HEADER: &str = "level,k,itemset,support,passes_constraint";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Report {
    schema: String,
    algorithm: Algorithm,
    complete: bool,
    constraint: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    neg: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    aff: Option<String>,
    minsup: Vec<u64>,
    transactions: usize,
    max_level: usize,
    counters: Counters,
    elapsed_ms: f64,
    levels: Vec<LevelRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LevelRecord {
    level: usize,
    passes: Vec<PassRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PassRecord {
    k: usize,
    candidates: u64,
    counted: u64,
    itemsets: Vec<ItemsetRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ItemsetRecord {
    items: Vec<ItemCode>,
    display: String,
    support: u64,
    passes_constraint: bool,
}

impl MiningResult {
    fn to_report(&self) -> Report {
        let levels = self
            .levels
            .iter()
            .map(|l| LevelRecord {
                level: l.level,
                passes: l
                    .passes
                    .iter()
                    .map(|p| PassRecord {
                        k: p.k,
                        candidates: p.candidates,
                        counted: p.counted,
                        itemsets: p
                            .frequent
                            .iter()
                            .map(|(s, n)| ItemsetRecord {
                                items: s.items().to_vec(),
                                display: s.display(self.max_level),
                                support: *n,
                                passes_constraint: p.filtered.iter().any(|(f, _)| f == s),
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect();
        Report {
            schema: SCHEMA_ID.to_string(),
            algorithm: self.algorithm,
            complete: self.complete,
            constraint: self.constraint.clone(),
            neg: self.neg.clone(),
            aff: self.aff.clone(),
            minsup: self.minsup.clone(),
            transactions: self.transactions,
            max_level: self.max_level,
            counters: self.counters,
            elapsed_ms: self.elapsed_ms,
            levels,
        }
    }

    fn from_report(r: Report) -> Result<Self> {
        if r.schema != SCHEMA_ID {
            return Err(crate::Error::InvalidParameter(format!("unsupported report schema `{}`", r.schema)));
        }
        let mut levels = Vec::with_capacity(r.levels.len());
        for l in r.levels {
            let mut passes = Vec::with_capacity(l.passes.len());
            for p in l.passes {
                let mut frequent = Vec::with_capacity(p.itemsets.len());
                let mut filtered = Vec::new();
                for rec in p.itemsets {
                    let set = Itemset::new(rec.items)?;
                    if rec.passes_constraint {
                        filtered.push((set.clone(), rec.support));
                    }
                    frequent.push((set, rec.support));
                }
                passes.push(PassResult {
                    k: p.k,
                    candidates: p.candidates,
                    counted: p.counted,
                    frequent,
                    filtered,
                });
            }
            levels.push(LevelResult { level: l.level, passes });
        }
        Ok(MiningResult {
            algorithm: r.algorithm,
            complete: r.complete,
            constraint: r.constraint,
            neg: r.neg,
            aff: r.aff,
            minsup: r.minsup,
            transactions: r.transactions,
            max_level: r.max_level,
            levels,
            counters: r.counters,
            elapsed_ms: r.elapsed_ms,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_report())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_report(serde_json::from_str(text)?)
    }

    /// One row per frequent itemset: `level,k,itemset,support,passes_constraint`,
    /// members separated by spaces.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for l in &self.levels {
            for p in &l.passes {
                for (s, n) in &p.frequent {
                    let members: Vec<String> = s.items().iter().map(|c| c.starred(self.max_level)).collect();
                    let passes = p.filtered.iter().any(|(f, _)| f == s);
                    out.push_str(&format!("{},{},{},{},{}\n", l.level, p.k, members.join(" "), n, passes));
                }
            }
        }
        out
    }
}
