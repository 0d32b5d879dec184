use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{AdversaryModel, HarnessError, Request, ServerNode};
use crate::gf::Field;
use crate::pir::{
    capacity, capacity_finite, gen_queries, retrieve_from_k, retrieve_from_r, Answer, AnswerMode, Database,
    FieldRng, PirError, Retrieved, SchemeParams,
};

/// The integer parameters and field of an instance, as echoed in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamsSummary {
    pub k: usize,
    pub t: usize,
    pub b: usize,
    pub r: usize,
    pub delta: usize,
    pub s: usize,
    pub m: usize,
    pub q: u64,
    pub field: String,
}

impl ParamsSummary {
    pub fn of(params: &SchemeParams) -> Self {
        Self {
            k: params.k,
            t: params.t,
            b: params.b,
            r: params.r,
            delta: params.delta,
            s: params.s,
            m: params.m,
            q: params.q(),
            field: params.field_description(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SessionStatus {
    Ok,
    ByzantineBudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionReport {
    pub params: ParamsSummary,
    pub iota: usize,
    pub mode: AnswerMode,
    pub seed: u64,
    pub status: SessionStatus,
    /// `None` when decoding failed.
    pub retrieved_file: Option<Vec<String>>,
    pub ground_truth_match: bool,
    /// One-based ids of the servers whose answers the decoder corrected.
    pub identified_error_positions: Vec<usize>,
    pub byzantine_set: Vec<usize>,
    pub collusion_set: Vec<usize>,
    pub strategy: String,
    pub adversary_within_bounds: bool,
    pub responders: Vec<usize>,
    /// Base-field symbols downloaded.
    pub downloaded_symbols: u64,
    /// Base-field symbols in one file.
    pub file_symbols: u64,
    pub downloaded_bits: f64,
    pub file_bits: f64,
    /// `file_symbols / downloaded_symbols`, reduced.
    pub measured_rate: String,
    pub capacity_asymptotic: String,
    pub capacity_finite_m: f64,
    pub rate_equals_capacity: bool,
    pub error: Option<String>,
}

impl SessionReport {
    pub fn measured_rate_ratio(&self) -> Ratio<u64> {
        Ratio::new(self.file_symbols, self.downloaded_symbols)
    }

    pub fn succeeded(&self) -> bool {
        self.status == SessionStatus::Ok && self.ground_truth_match
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// One complete retrieval: queries, (possibly corrupted) answers,
/// decoding, and accounting. Deterministic in `seed`.
pub fn run_session(
    params: &SchemeParams,
    db: &Database,
    iota: usize,
    adversary: &AdversaryModel,
    mode: AnswerMode,
    seed: u64,
) -> Result<SessionReport, HarnessError> {
    db.check_shape(params)?;
    adversary.validate(params)?;
    let queries = gen_queries(params, iota, &mut FieldRng::derive(seed, 0))?;

    let responders: Vec<usize> = match mode {
        AnswerMode::Trace => (1..=params.k).collect(),
        AnswerMode::Full => (1..=params.r).collect(),
    };
    let mut responses = Vec::with_capacity(responders.len());
    for &j in &responders {
        let mut node = if adversary.is_byzantine(j) {
            ServerNode::byzantine(j, params, db, adversary.strategy.clone(), FieldRng::derive(seed, j as u64))
        } else {
            ServerNode::honest(j, params, db)
        };
        let req = Request {
            query: queries.query(j).clone(),
            mode,
        };
        responses.push(node.handle(&req)?);
    }

    let downloaded_symbols: u64 = responses
        .iter()
        .map(|r| r.answer.symbols(params) as u64)
        .sum();
    let outcome: Result<Retrieved, PirError> = match mode {
        AnswerMode::Trace => {
            let answers: Vec<u32> = responses
                .iter()
                .map(|r| match r.answer {
                    Answer::Trace(a) => a,
                    Answer::Full(_) => unreachable!("trace request"),
                })
                .collect();
            retrieve_from_k(params, &answers)
        }
        AnswerMode::Full => {
            let answers: Vec<_> = responses
                .iter()
                .map(|r| match r.answer {
                    Answer::Full(a) => (r.server, a),
                    Answer::Trace(_) => unreachable!("full request"),
                })
                .collect();
            retrieve_from_r(params, &answers)
        }
    };

    let truth = db.file(iota)?;
    let ext = params.ext();
    let (status, retrieved_file, ground_truth_match, identified, error) = match outcome {
        Ok(got) => {
            let matched = got.file == truth;
            let file = got.file.iter().map(|x| ext.format_elem(x)).collect();
            (SessionStatus::Ok, Some(file), matched, got.error_servers, None)
        }
        Err(e @ PirError::ByzantineBudgetExceeded { .. }) => {
            (SessionStatus::ByzantineBudgetExceeded, None, false, Vec::new(), Some(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };

    let file_symbols = params.file_symbols() as u64;
    let log_q = (params.q() as f64).log2();
    let rate = Ratio::new(file_symbols, downloaded_symbols);
    let cap = capacity(params.t, params.b, params.k)?;
    let cap_m = capacity_finite(params.t, params.b, params.k, params.m)?;
    Ok(SessionReport {
        params: ParamsSummary::of(params),
        iota,
        mode,
        seed,
        status,
        retrieved_file,
        ground_truth_match,
        identified_error_positions: identified,
        byzantine_set: adversary.byzantine_set.iter().copied().collect(),
        collusion_set: adversary.collusion_set.iter().copied().collect(),
        strategy: if adversary.byzantine_set.is_empty() {
            "honest".into()
        } else {
            adversary.strategy.name().into()
        },
        adversary_within_bounds: adversary.within_bounds(params),
        responders,
        downloaded_symbols,
        file_symbols,
        downloaded_bits: downloaded_symbols as f64 * log_q,
        file_bits: file_symbols as f64 * log_q,
        measured_rate: rate.to_string(),
        capacity_asymptotic: cap.to_string(),
        capacity_finite_m: cap_m.to_f64().unwrap_or(f64::NAN),
        rate_equals_capacity: rate == cap,
        error,
    })
}
