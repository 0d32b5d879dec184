use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::HarnessError;
use crate::gf::Field;
use crate::pir::{server_answer, Answer, AnswerMode, Database, FieldRng, SchemeParams, SymbolArray};

/// Everything a byzantine server sees when choosing its response.
pub struct AdversaryView<'a> {
    pub params: &'a SchemeParams,
    pub server: usize,
    pub query: &'a SymbolArray,
    pub db: &'a Database,
    pub mode: AnswerMode,
    pub honest: Answer,
}

type CustomFn = dyn Fn(&AdversaryView<'_>, &mut FieldRng) -> Answer + Send + Sync;

/// How a byzantine server picks its (wrong) answer.
#[derive(Clone)]
pub enum Strategy {
    /// Honest answer plus a uniformly random nonzero offset.
    RandomSymbol,
    /// Honest answer plus a fixed base-field offset (embedded in full mode).
    FixedOffset(u32),
    /// Answers the query faithfully against a shifted database, so the
    /// lie is a consistent function of the query.
    QueryAware,
    Custom(Arc<CustomFn>),
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::RandomSymbol => f.write_str("RandomSymbol"),
            Strategy::FixedOffset(c) => write!(f, "FixedOffset({c})"),
            Strategy::QueryAware => f.write_str("QueryAware"),
            Strategy::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl Strategy {
    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(&AdversaryView<'_>, &mut FieldRng) -> Answer + Send + Sync + 'static,
    {
        Strategy::Custom(Arc::new(f))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::RandomSymbol => "random-symbol",
            Strategy::FixedOffset(_) => "fixed-offset",
            Strategy::QueryAware => "query-aware",
            Strategy::Custom(_) => "custom",
        }
    }

    pub(crate) fn respond(&self, view: &AdversaryView<'_>, rng: &mut FieldRng) -> Answer {
        let ext = view.params.ext();
        let base = view.params.base();
        match self {
            Strategy::RandomSymbol => match view.honest {
                Answer::Full(a) => Answer::Full(ext.add(&a, &rng.nonzero_element(ext))),
                Answer::Trace(a) => Answer::Trace(base.add(&a, &rng.nonzero_element(base))),
            },
            Strategy::FixedOffset(c) => {
                let c = base.from_int(*c as u64);
                match view.honest {
                    Answer::Full(a) => Answer::Full(ext.add(&a, &ext.embed(c))),
                    Answer::Trace(a) => Answer::Trace(base.add(&a, &c)),
                }
            }
            Strategy::QueryAware => {
                let mut shifted = view.db.clone();
                for row in 0..shifted.files() {
                    for col in 0..shifted.delta() {
                        let x = shifted.get(row, col);
                        shifted.set(row, col, ext.add(&x, &ext.one()));
                    }
                }
                server_answer(view.params, view.server, view.query, &shifted, view.mode)
                    .expect("shapes were validated for the honest answer")
            }
            Strategy::Custom(f) => f(view, rng),
        }
    }
}

/// Which servers lie and which collude.
#[derive(Debug, Clone)]
pub struct AdversaryModel {
    /// One-based server ids.
    pub byzantine_set: BTreeSet<usize>,
    pub strategy: Strategy,
    /// One-based server ids pooling their queries; only the privacy audit
    /// acts on this set.
    pub collusion_set: BTreeSet<usize>,
}

impl Default for AdversaryModel {
    fn default() -> Self {
        Self::honest()
    }
}

impl AdversaryModel {
    pub fn honest() -> Self {
        Self {
            byzantine_set: BTreeSet::new(),
            strategy: Strategy::RandomSymbol,
            collusion_set: BTreeSet::new(),
        }
    }

    pub fn byzantine(servers: impl IntoIterator<Item = usize>, strategy: Strategy) -> Self {
        Self {
            byzantine_set: servers.into_iter().collect(),
            strategy,
            collusion_set: BTreeSet::new(),
        }
    }

    pub fn with_collusion(mut self, servers: impl IntoIterator<Item = usize>) -> Self {
        self.collusion_set = servers.into_iter().collect();
        self
    }

    pub fn is_byzantine(&self, server: usize) -> bool {
        self.byzantine_set.contains(&server)
    }

    /// Set sizes within `(b, t)`. Oversized sets are still runnable so the
    /// failure side of the decoder can be exercised.
    pub fn within_bounds(&self, params: &SchemeParams) -> bool {
        self.byzantine_set.len() <= params.b && self.collusion_set.len() <= params.t
    }

    pub fn validate(&self, params: &SchemeParams) -> Result<(), HarnessError> {
        let out_of_range = |set: &BTreeSet<usize>| set.iter().copied().find(|&j| j == 0 || j > params.k);
        if let Some(j) = out_of_range(&self.byzantine_set).or(out_of_range(&self.collusion_set)) {
            return Err(HarnessError::InvalidAdversary(format!(
                "server id {j} outside [1, {}]",
                params.k
            )));
        }
        Ok(())
    }
}
