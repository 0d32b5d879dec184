use std::collections::BTreeMap;

use serde::Serialize;

use super::{subsets, HarnessError, ParamsSummary};
use crate::gf::{ExtElem, Field};
use crate::pir::{gen_queries, server_answer, Answer, AnswerMode, Database, FieldRng, QuerySet, SchemeParams};

/// Cap on the number of databases enumerated.
pub const MAX_THRESHOLD_DATABASES: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub servers: Vec<usize>,
    pub answers: Vec<String>,
    pub db_a: Vec<Vec<String>>,
    pub db_b: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub params: ParamsSummary,
    pub seed: u64,
    pub iota: usize,
    pub databases_enumerated: u64,
    /// `r − 1 − 2b`.
    pub below_size: usize,
    pub subsets_below: usize,
    /// Subsets of size `r − 1 − 2b` whose honest answers fail to pin down
    /// file `iota`.
    pub subsets_ambiguous: usize,
    pub witness: Option<Witness>,
    /// `r − 2b`.
    pub at_size: usize,
    pub subsets_at: usize,
    /// Subsets of size `r − 2b` whose honest answers always determine file
    /// `iota`.
    pub subsets_determined: usize,
}

impl ThresholdReport {
    pub fn passed(&self) -> bool {
        self.subsets_ambiguous == self.subsets_below && self.subsets_determined == self.subsets_at
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// For one fixed query, enumerate every database and group them by the
/// honest full-mode answers of each server subset. Below `r − 2b` answers
/// some group mixes different target files; at `r − 2b` none does.
pub fn threshold_search(params: &SchemeParams, iota: usize, seed: u64) -> Result<ThresholdReport, HarnessError> {
    let ext = params.ext();
    let cells = params.m * params.delta;
    let total = (ext.order() as u128)
        .checked_pow(cells as u32)
        .filter(|&n| n <= MAX_THRESHOLD_DATABASES)
        .ok_or_else(|| {
            HarnessError::GuardExceeded(format!(
                "(q^s)^(mΔ) databases exceeds {MAX_THRESHOLD_DATABASES}"
            ))
        })? as u64;
    let queries = gen_queries(params, iota, &mut FieldRng::new(seed))?;

    // answers[d][j] for database index d and zero-based server j
    let mut answers = Vec::with_capacity(total as usize);
    let mut targets = Vec::with_capacity(total as usize);
    for d in 0..total {
        let db = database_at(params, d);
        answers.push(full_answers(params, &queries, &db)?);
        targets.push(db.file(iota)?.to_vec());
    }

    let below = params.r - 1 - 2 * params.b;
    let at = params.r - 2 * params.b;
    let below_sets = subsets(params.k, below);
    let at_sets = subsets(params.k, at);
    let mut report = ThresholdReport {
        params: ParamsSummary::of(params),
        seed,
        iota,
        databases_enumerated: total,
        below_size: below,
        subsets_below: below_sets.len(),
        subsets_ambiguous: 0,
        witness: None,
        at_size: at,
        subsets_at: at_sets.len(),
        subsets_determined: 0,
    };
    for set in &below_sets {
        if let Some((a, b)) = ambiguous_pair(set, &answers, &targets) {
            report.subsets_ambiguous += 1;
            if report.witness.is_none() {
                report.witness = Some(Witness {
                    servers: set.clone(),
                    answers: set.iter().map(|&j| ext.format_elem(&answers[a][j - 1])).collect(),
                    db_a: database_at(params, a as u64).rows(ext),
                    db_b: database_at(params, b as u64).rows(ext),
                });
            }
        }
    }
    for set in &at_sets {
        if ambiguous_pair(set, &answers, &targets).is_none() {
            report.subsets_determined += 1;
        }
    }
    Ok(report)
}

fn database_at(params: &SchemeParams, mut index: u64) -> Database {
    let ext = params.ext();
    let order = ext.order();
    let entries = (0..params.m * params.delta)
        .map(|_| {
            let x = ext.from_index(index % order);
            index /= order;
            x
        })
        .collect();
    Database::new(params.m, params.delta, entries).expect("shape matches")
}

fn full_answers(params: &SchemeParams, queries: &QuerySet, db: &Database) -> Result<Vec<ExtElem>, HarnessError> {
    (1..=params.k)
        .map(|j| match server_answer(params, j, queries.query(j), db, AnswerMode::Full)? {
            Answer::Full(a) => Ok(a),
            Answer::Trace(_) => unreachable!("full request"),
        })
        .collect()
}

/// Two databases with identical answers on `set` but different targets.
fn ambiguous_pair(set: &[usize], answers: &[Vec<ExtElem>], targets: &[Vec<ExtElem>]) -> Option<(usize, usize)> {
    let mut first_seen: BTreeMap<Vec<ExtElem>, usize> = BTreeMap::new();
    for (d, ans) in answers.iter().enumerate() {
        let view: Vec<ExtElem> = set.iter().map(|&j| ans[j - 1]).collect();
        match first_seen.get(&view) {
            Some(&other) if targets[other] != targets[d] => return Some((other, d)),
            Some(_) => {}
            None => {
                first_seen.insert(view, d);
            }
        }
    }
    None
}

impl Database {
    fn rows(&self, ext: &crate::gf::ExtField) -> Vec<Vec<String>> {
        (0..self.files())
            .map(|i| (0..self.delta()).map(|c| ext.format_elem(&self.get(i, c))).collect())
            .collect()
    }
}
