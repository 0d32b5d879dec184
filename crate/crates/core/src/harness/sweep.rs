use serde::Serialize;

use super::{binomial, subsets, HarnessError, ParamsSummary};
use crate::gf::{ExtElem, Field};
use crate::pir::{
    gen_queries, retrieve_from_k, retrieve_from_r, server_answer, Answer, AnswerMode, Database, FieldRng, PirError,
    SchemeParams,
};

/// Cap on `C(n, |𝓑|)·(alphabet − 1)^|𝓑|·m` for one query seed.
pub const MAX_EXHAUSTIVE_CASES: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScope {
    /// Every byzantine set of the configured size, every nonzero
    /// corruption, every target index.
    Exhaustive,
    Randomized(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub scope: SweepScope,
    pub seed: u64,
    /// Independent query draws in exhaustive scope.
    pub query_seeds: usize,
    /// Defaults to `b`.
    pub byzantine_size: Option<usize>,
    pub mode: AnswerMode,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            scope: SweepScope::Exhaustive,
            seed: 0xC0DE_C0DE,
            query_seeds: 1,
            byzantine_size: None,
            mode: AnswerMode::Trace,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub case: u64,
    pub query_seed: u64,
    pub iota: usize,
    pub byzantine_set: Vec<usize>,
    pub offsets: Vec<String>,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub params: ParamsSummary,
    pub seed: u64,
    pub scope: String,
    pub mode: AnswerMode,
    pub byzantine_size: usize,
    pub cases_total: u64,
    pub cases_failed: u64,
    pub decode_failures: u64,
    pub wrong_files: u64,
    /// At most the first 64 failing cases.
    pub failures: Vec<SweepFailure>,
    pub max_tv_distance: Option<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.cases_failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

const MAX_RECORDED: usize = 64;

/// Corrupt every combination of answers allowed by `config` and check that
/// the planted file comes back. A case fails on a decode error or on a
/// wrong file; nothing is counted as a pass without the ground-truth check.
pub fn byzantine_sweep(params: &SchemeParams, db: &Database, config: &SweepConfig) -> Result<SweepReport, HarnessError> {
    db.check_shape(params)?;
    let size = config.byzantine_size.unwrap_or(params.b);
    let responders = match config.mode {
        AnswerMode::Trace => params.k,
        AnswerMode::Full => params.r,
    };
    if size > responders {
        return Err(HarnessError::InvalidAdversary(format!(
            "{size} byzantine servers but only {responders} responders"
        )));
    }
    let alphabet = match config.mode {
        AnswerMode::Trace => params.q(),
        AnswerMode::Full => params.ext().order(),
    };
    let mut report = SweepReport {
        params: ParamsSummary::of(params),
        seed: config.seed,
        scope: match config.scope {
            SweepScope::Exhaustive => "exhaustive".into(),
            SweepScope::Randomized(n) => format!("randomized({n})"),
        },
        mode: config.mode,
        byzantine_size: size,
        cases_total: 0,
        cases_failed: 0,
        decode_failures: 0,
        wrong_files: 0,
        failures: Vec::new(),
        max_tv_distance: None,
    };
    let runner = CaseRunner { params, db, mode: config.mode, responders };

    match config.scope {
        SweepScope::Exhaustive => {
            let per_seed = (alphabet as u128 - 1)
                .checked_pow(size as u32)
                .map(|c| c * binomial(responders, size) * params.m as u128);
            match per_seed {
                Some(c) if c <= MAX_EXHAUSTIVE_CASES => {}
                _ => {
                    return Err(HarnessError::GuardExceeded(format!(
                        "C({responders},{size})·({alphabet}−1)^{size}·m exceeds {MAX_EXHAUSTIVE_CASES}; use a randomized sweep"
                    )))
                }
            }
            let sets = subsets(responders, size);
            let combos = (alphabet - 1).pow(size as u32);
            for s in 0..config.query_seeds.max(1) {
                let query_seed = FieldRng::derive(config.seed, s as u64).next_u64();
                for iota in 1..=params.m {
                    let honest = runner.honest_answers(iota, query_seed)?;
                    for set in &sets {
                        for combo in 0..combos {
                            let mut idx = combo;
                            let offsets: Vec<u64> = (0..size)
                                .map(|_| {
                                    let v = 1 + idx % (alphabet - 1);
                                    idx /= alphabet - 1;
                                    v
                                })
                                .collect();
                            runner.check(&mut report, &honest, query_seed, iota, set, &offsets)?;
                        }
                    }
                }
            }
        }
        SweepScope::Randomized(n) => {
            let mut rng = FieldRng::derive(config.seed, u64::MAX);
            for _ in 0..n {
                let query_seed = rng.next_u64();
                let iota = 1 + rng.below(params.m as u64) as usize;
                let mut pool: Vec<usize> = (1..=responders).collect();
                for i in 0..size {
                    let pick = i + rng.below((pool.len() - i) as u64) as usize;
                    pool.swap(i, pick);
                }
                let mut set = pool[..size].to_vec();
                set.sort_unstable();
                let offsets: Vec<u64> = (0..size).map(|_| 1 + rng.below(alphabet - 1)).collect();
                let honest = runner.honest_answers(iota, query_seed)?;
                runner.check(&mut report, &honest, query_seed, iota, &set, &offsets)?;
            }
        }
    }
    Ok(report)
}

struct CaseRunner<'a> {
    params: &'a SchemeParams,
    db: &'a Database,
    mode: AnswerMode,
    responders: usize,
}

impl CaseRunner<'_> {
    fn honest_answers(&self, iota: usize, query_seed: u64) -> Result<Vec<Answer>, PirError> {
        let qs = gen_queries(self.params, iota, &mut FieldRng::new(query_seed))?;
        (1..=self.responders)
            .map(|j| server_answer(self.params, j, qs.query(j), self.db, self.mode))
            .collect()
    }

    /// Apply offsets (field indices, nonzero) at the one-based `set` and
    /// decode.
    fn check(
        &self,
        report: &mut SweepReport,
        honest: &[Answer],
        query_seed: u64,
        iota: usize,
        set: &[usize],
        offsets: &[u64],
    ) -> Result<(), PirError> {
        let ext = self.params.ext();
        let base = self.params.base();
        let mut answers = honest.to_vec();
        for (&j, &off) in set.iter().zip(offsets) {
            answers[j - 1] = match answers[j - 1] {
                Answer::Trace(a) => Answer::Trace(base.add(&a, &base.from_index(off))),
                Answer::Full(a) => Answer::Full(ext.add(&a, &ext.from_index(off))),
            };
        }
        let outcome = match self.mode {
            AnswerMode::Trace => {
                let a: Vec<u32> = answers
                    .iter()
                    .map(|x| match x {
                        Answer::Trace(v) => *v,
                        Answer::Full(_) => unreachable!(),
                    })
                    .collect();
                retrieve_from_k(self.params, &a)
            }
            AnswerMode::Full => {
                let a: Vec<(usize, ExtElem)> = answers
                    .iter()
                    .enumerate()
                    .map(|(i, x)| match x {
                        Answer::Full(v) => (i + 1, *v),
                        Answer::Trace(_) => unreachable!(),
                    })
                    .collect();
                retrieve_from_r(self.params, &a)
            }
        };
        report.cases_total += 1;
        let failure = match outcome {
            Ok(got) if got.file == self.db.file(iota)? => None,
            Ok(_) => {
                report.wrong_files += 1;
                Some("wrong file".to_string())
            }
            Err(e @ PirError::ByzantineBudgetExceeded { .. }) => {
                report.decode_failures += 1;
                Some(e.to_string())
            }
            Err(e) => return Err(e),
        };
        if let Some(outcome) = failure {
            report.cases_failed += 1;
            if report.failures.len() < MAX_RECORDED {
                let fmt = |off: &u64| match self.mode {
                    AnswerMode::Trace => off.to_string(),
                    AnswerMode::Full => ext.format_elem(&ext.from_index(*off)),
                };
                report.failures.push(SweepFailure {
                    case: report.cases_total,
                    query_seed,
                    iota,
                    byzantine_set: set.to_vec(),
                    offsets: offsets.iter().map(fmt).collect(),
                    outcome,
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pir::SetupRequest;

    fn instance(k: usize, t: usize, b: usize, r: usize, m: usize) -> (SchemeParams, Database) {
        let p = SchemeParams::setup(&SetupRequest::new(k, t, b, r, m)).unwrap();
        let db = Database::random(&p, &mut FieldRng::new(7));
        (p, db)
    }

    #[test]
    fn exhaustive_single_corruptions() {
        let (p, db) = instance(4, 1, 1, 4, 3);
        let rep = byzantine_sweep(&p, &db, &SweepConfig::default()).unwrap();
        assert_eq!(rep.cases_total, 72);
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn exhaustive_full_mode() {
        let (p, db) = instance(4, 1, 1, 4, 2);
        let cfg = SweepConfig { mode: AnswerMode::Full, ..SweepConfig::default() };
        let rep = byzantine_sweep(&p, &db, &cfg).unwrap();
        assert_eq!(rep.cases_total, 2 * 4 * 6);
        assert!(rep.passed());
    }

    #[test]
    fn one_too_many_is_reported() {
        let (p, db) = instance(4, 1, 1, 4, 2);
        let cfg = SweepConfig { byzantine_size: Some(2), ..SweepConfig::default() };
        let rep = byzantine_sweep(&p, &db, &cfg).unwrap();
        assert_eq!(rep.cases_total, 2 * 6 * 36);
        assert!(rep.cases_failed > 0);
        assert_eq!(rep.cases_failed, rep.decode_failures + rep.wrong_files);
        assert!(!rep.failures.is_empty());
    }

    #[test]
    fn honest_only_when_b_is_zero() {
        let (p, db) = instance(3, 1, 0, 2, 3);
        let rep = byzantine_sweep(&p, &db, &SweepConfig::default()).unwrap();
        assert_eq!(rep.cases_total, 3);
        assert!(rep.passed());
    }

    #[test]
    fn randomized_two_byzantine() {
        let p = SchemeParams::setup(&SetupRequest::new(7, 1, 2, 6, 3).with_q(11)).unwrap();
        let db = Database::random(&p, &mut FieldRng::new(1));
        let cfg = SweepConfig { scope: SweepScope::Randomized(500), ..SweepConfig::default() };
        let rep = byzantine_sweep(&p, &db, &cfg).unwrap();
        assert_eq!(rep.cases_total, 500);
        assert!(rep.passed());
    }

    #[test]
    fn guard_is_enforced() {
        let p = SchemeParams::setup(&SetupRequest::new(4, 1, 1, 4, 50_000)).unwrap();
        let db = Database::zeros(&p);
        assert!(matches!(
            byzantine_sweep(&p, &db, &SweepConfig::default()),
            Err(HarnessError::GuardExceeded(_))
        ));
    }

    #[test]
    fn deterministic() {
        let (p, db) = instance(7, 1, 1, 5, 2);
        let cfg = SweepConfig { scope: SweepScope::Randomized(50), ..SweepConfig::default() };
        assert_eq!(byzantine_sweep(&p, &db, &cfg).unwrap(), byzantine_sweep(&p, &db, &cfg).unwrap());
    }
}
