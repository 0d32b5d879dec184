//! The acceptance suite: ten end-to-end checks with pinned tolerances and
//! wall-clock limits, shared by the `acceptance` test target and the
//! `bpir selftest` command.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::gf::{ExtElem, ExtField, Field, Poly, PrimeField};
use crate::harness::{
    byzantine_sweep, comparison_table, privacy_audit, run_session, subsets, threshold_search, AdversaryModel,
    AuditMode, Strategy, SweepConfig, TableRequest,
};
use crate::pir::{
    capacity, capacity_finite, gen_queries, retrieve_from_r, server_answer, validate_optimality, Answer,
    AnswerMode, Database, FieldRng, OptimalityReport, SchemeParams, SetupRequest,
};
use crate::rscodes::{grs_decode, GrsCode, OracleDecoder};

/// Fixed seed of the whole suite.
pub const SEED: u64 = 0xC0DE_C0DE;

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: Option<u128>,
}

impl Outcome {
    /// `PASS  3 title (12 ms): detail`.
    pub fn line(&self) -> String {
        let limit = match self.limit_ms {
            Some(l) => format!(", limit {l} ms"),
            None => String::new(),
        };
        format!(
            "{} {:>2} {} ({} ms{limit}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed_ms,
            self.detail
        )
    }
}

type Check = fn() -> Result<String, String>;

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Option<Duration>,
    check: Check,
}

const SECS_5: Option<Duration> = Some(Duration::from_secs(5));
const SECS_30: Option<Duration> = Some(Duration::from_secs(30));

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, title: "exhaustive byzantine correctness", limit: SECS_5, check: exhaustive_byzantine },
    Criterion { id: 2, title: "extension-field correctness", limit: SECS_30, check: extension_sessions },
    Criterion { id: 3, title: "download rate equals capacity", limit: None, check: rate_equals_capacity },
    Criterion { id: 4, title: "finite-m capacity convergence", limit: None, check: finite_capacity },
    Criterion { id: 5, title: "t-privacy", limit: SECS_5, check: privacy },
    Criterion { id: 6, title: "decoder oracle equivalence", limit: None, check: oracle_equivalence },
    Criterion { id: 7, title: "dual-code identities", limit: None, check: dual_code },
    Criterion { id: 8, title: "trace reconstruction identity", limit: None, check: reconstruction },
    Criterion { id: 9, title: "file-size optimality and comparison table", limit: None, check: optimality_and_table },
    Criterion { id: 10, title: "retrieval threshold", limit: SECS_30, check: retrieval_threshold },
];

pub fn ids() -> impl Iterator<Item = u8> {
    CRITERIA.iter().map(|c| c.id)
}

/// Run one criterion; `None` for an unknown id.
pub fn run(id: u8) -> Option<Outcome> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let result = (c.check)();
    let elapsed = start.elapsed();
    let over = c.limit.is_some_and(|l| elapsed > l);
    let (passed, mut detail) = match result {
        Ok(d) => (!over, d),
        Err(d) => (false, d),
    };
    if over {
        detail = format!("{detail}; runtime limit exceeded");
    }
    Some(Outcome {
        id: c.id,
        title: c.title,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: c.limit.map(|l| l.as_millis()),
    })
}

pub fn run_all() -> Vec<Outcome> {
    ids().filter_map(run).collect()
}

fn setup(k: usize, t: usize, b: usize, r: usize, m: usize) -> Result<SchemeParams, String> {
    SchemeParams::setup(&SetupRequest::new(k, t, b, r, m)).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exhaustive_byzantine() -> Result<String, String> {
    let p = setup(4, 1, 1, 4, 3)?;
    ensure((p.delta, p.s, p.q()) == (1, 1, 7), || format!("unexpected shape Δ={} s={} q={}", p.delta, p.s, p.q()))?;
    let db = Database::random(&p, &mut FieldRng::derive(SEED, 1));
    let cfg = SweepConfig { seed: SEED, query_seeds: 10, ..SweepConfig::default() };
    let rep = byzantine_sweep(&p, &db, &cfg).map_err(|e| e.to_string())?;
    ensure(rep.cases_total == 720, || format!("{} cases, expected 720", rep.cases_total))?;
    ensure(rep.passed(), || format!("{} of 720 cases failed: {:?}", rep.cases_failed, rep.failures.first()))?;
    Ok("720/720 cases recovered the planted file (10 query seeds × 72)".into())
}

fn extension_sessions() -> Result<String, String> {
    let p = setup(7, 1, 1, 5, 4)?;
    ensure((p.delta, p.s, p.q()) == (2, 2, 7), || format!("unexpected shape Δ={} s={} q={}", p.delta, p.s, p.q()))?;
    let mut rng = FieldRng::derive(SEED, 2);
    let db = Database::random(&p, &mut rng);
    let mut corrupted = 0;
    for i in 0..1000u64 {
        let iota = 1 + rng.below(p.m as u64) as usize;
        let adv = if i % 4 == 0 {
            AdversaryModel::honest()
        } else {
            let server = 1 + rng.below(p.k as u64) as usize;
            let strategy = match i % 4 {
                1 => Strategy::RandomSymbol,
                2 => Strategy::FixedOffset(1 + rng.below(p.q() - 1) as u32),
                _ => Strategy::QueryAware,
            };
            AdversaryModel::byzantine([server], strategy)
        };
        let rep = run_session(&p, &db, iota, &adv, AnswerMode::Trace, rng.next_u64()).map_err(|e| e.to_string())?;
        ensure(rep.succeeded(), || format!("session {i} failed: {:?}", rep.error))?;
        corrupted += usize::from(!rep.identified_error_positions.is_empty());
    }
    Ok(format!("1000/1000 sessions exact, {corrupted} with a corrected answer"))
}

fn rate_equals_capacity() -> Result<String, String> {
    let tuples: [(usize, usize, usize, usize, Option<u64>); 6] = [
        (4, 1, 1, 4, None),
        (7, 1, 1, 5, None),
        (9, 2, 1, 5, None),
        (8, 2, 0, 5, None),
        (3, 1, 0, 2, None),
        (7, 1, 2, 6, Some(11)),
    ];
    let mut seen = Vec::new();
    for (k, t, b, r, q) in tuples {
        let mut req = SetupRequest::new(k, t, b, r, 3);
        req.q = q;
        let p = SchemeParams::setup(&req).map_err(|e| e.to_string())?;
        let db = Database::random(&p, &mut FieldRng::derive(SEED, 3));
        let adv = if b > 0 { AdversaryModel::byzantine([1], Strategy::RandomSymbol) } else { AdversaryModel::honest() };
        let rep = run_session(&p, &db, 2, &adv, AnswerMode::Trace, SEED).map_err(|e| e.to_string())?;
        let cap = capacity(t, b, k).map_err(|e| e.to_string())?;
        let expect = Ratio::new((k - 2 * b - t) as u64, k as u64);
        ensure(rep.succeeded(), || format!("(t,b,k)=({t},{b},{k}) session failed"))?;
        // bits carry the same log q factor on both sides
        ensure(rep.measured_rate_ratio() == cap && cap == expect, || {
            format!("(t,b,k)=({t},{b},{k}): rate {} vs capacity {cap}", rep.measured_rate)
        })?;
        seen.push(format!("({t},{b},{k})→{cap}"));
    }
    Ok(format!("exact: {}", seen.join(", ")))
}

fn finite_capacity() -> Result<String, String> {
    let values: Vec<BigRational> = (1..=100)
        .map(|m| capacity_finite(1, 1, 5, m))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let limit = BigRational::new(BigInt::from(2), BigInt::from(5));
    ensure(values.windows(2).all(|w| w[1] < w[0]), || "C_m is not strictly decreasing".into())?;
    ensure(values.iter().all(|c| *c > limit), || "C_m dropped below 2/5".into())?;
    let gap = (&values[99] - &limit).abs();
    let tol = BigRational::new(BigInt::from(1), BigInt::from(1_000_000_000));
    ensure(gap < tol, || format!("|C_100 − 2/5| = {gap} ≥ 1e-9"))?;
    ensure(!gap.is_zero(), || "C_100 equals the limit exactly".into())?;
    Ok(format!("C_1 = {}, strictly decreasing to 2/5, |C_100 − 2/5| < 1e-9", values[0]))
}

fn privacy() -> Result<String, String> {
    let p = setup(4, 1, 1, 4, 2)?;
    let rep = privacy_audit(&p, None, AuditMode::Exhaustive).map_err(|e| e.to_string())?;
    ensure(rep.subsets_checked == 4, || format!("{} subsets audited", rep.subsets_checked))?;
    ensure(rep.passed() && rep.max_tv() == Some(Ratio::new(0, 1)), || {
        format!("exhaustive audit: max TV {:?}", rep.max_tv_distance)
    })?;
    let p2 = setup(7, 1, 1, 5, 4)?;
    let rep2 = privacy_audit(&p2, None, AuditMode::TransferMatrix).map_err(|e| e.to_string())?;
    ensure(rep2.passed() && rep2.cases_total == 7, || format!("transfer audit: {:?}", rep2.failures))?;
    Ok("TV = 0 for all 4 single servers; 7/7 transfer matrices full rank".into())
}

fn oracle_equivalence() -> Result<String, String> {
    let agree = |code: &GrsCode<PrimeField>, oracle: &OracleDecoder<PrimeField>, word: &[u32]| {
        let a = grs_decode(code, word).ok();
        let b = oracle.decode(word).ok();
        a == b
    };

    let f7 = PrimeField::new(7).map_err(|e| e.to_string())?;
    let code = GrsCode::new(f7, vec![1, 2, 3, 4, 5], vec![3, 1, 6, 2, 5], 3).map_err(|e| e.to_string())?;
    let oracle = OracleDecoder::new(&code).map_err(|e| e.to_string())?;
    let mut exhaustive = 0u64;
    for m in 0..343u32 {
        let msg = Poly::new(&f7, vec![m % 7, (m / 7) % 7, m / 49]);
        let cw = code.encode(&msg).map_err(|e| e.to_string())?;
        ensure(agree(&code, &oracle, &cw), || format!("disagree on codeword {cw:?}"))?;
        exhaustive += 1;
        for pos in 0..5 {
            for off in 1..7 {
                let mut w = cw.clone();
                w[pos] = (w[pos] + off) % 7;
                ensure(agree(&code, &oracle, &w), || format!("disagree on {w:?}"))?;
                exhaustive += 1;
            }
        }
    }

    let f11 = PrimeField::new(11).map_err(|e| e.to_string())?;
    let mut rng = FieldRng::derive(SEED, 6);
    let points: Vec<u32> = (0..7).collect();
    let mults: Vec<u32> = (0..7).map(|_| rng.nonzero_element(&f11)).collect();
    let code = GrsCode::new(f11, points, mults, 5).map_err(|e| e.to_string())?;
    let oracle = OracleDecoder::new(&code).map_err(|e| e.to_string())?;
    for _ in 0..10_000 {
        let msg = Poly::new(&f11, (0..5).map(|_| rng.element(&f11)).collect());
        let mut w = code.encode(&msg).map_err(|e| e.to_string())?;
        if rng.below(4) != 0 {
            let pos = rng.below(7) as usize;
            w[pos] = f11.add(&w[pos], &rng.nonzero_element(&f11));
        }
        ensure(agree(&code, &oracle, &w), || format!("disagree on {w:?}"))?;
    }
    Ok(format!("{exhaustive} exhaustive words over F_7 and 10000 random words over F_11 agree"))
}

fn dual_code() -> Result<String, String> {
    let mut words = 0;
    for (req, label) in [(SetupRequest::new(4, 1, 1, 4, 3), 71u64), (SetupRequest::new(7, 1, 1, 5, 4), 72)] {
        let p = SchemeParams::setup(&req).map_err(|e| e.to_string())?;
        let ext = *p.ext();
        let pts: Vec<ExtElem> = p.omega_alpha().iter().chain(p.beta_ext()).copied().collect();
        let mult: Vec<ExtElem> = p.u().iter().chain(p.v()).copied().collect();
        let rs = GrsCode::reed_solomon(ext, pts.clone(), p.r - 2 * p.b).map_err(|e| e.to_string())?;
        let mut polys: Vec<Poly<u32>> = (0..p.delta)
            .flat_map(|i| (0..p.s).map(move |d| (i, d)))
            .map(|(i, d)| p.recovery_word_poly(i, d))
            .collect();
        polys.extend((0..2 * p.b).map(|e| p.check_poly(e)));
        let duals: Vec<Vec<ExtElem>> = polys
            .iter()
            .map(|h| pts.iter().zip(&mult).map(|(x, m)| ext.mul(m, &ext.eval_base_poly(h, x))).collect())
            .collect();
        let mut rng = FieldRng::derive(SEED, label);
        for _ in 0..1000 {
            let msg = Poly::new(&ext, (0..rs.dim()).map(|_| rng.element(&ext)).collect());
            let cw = rs.encode(&msg).map_err(|e| e.to_string())?;
            for (n, d) in duals.iter().enumerate() {
                let dot = d.iter().zip(&cw).fold(ext.zero(), |acc, (a, c)| ext.add(&acc, &ext.mul(a, c)));
                ensure(ext.is_zero(&dot), || format!("word {n} at k={} not orthogonal", p.k))?;
            }
        }
        words += duals.len();
    }
    Ok(format!("{words} dual words × 1000 codewords, all inner products zero"))
}

fn reconstruction() -> Result<String, String> {
    let p = setup(7, 1, 1, 5, 1)?;
    let ext: &ExtField = p.ext();
    ensure(ext.order() == 49, || format!("field order {}", ext.order()))?;
    let pair = p.dual_pair();
    let mut count = 0;
    for x in ext.elements() {
        let sum = pair.theta.iter().zip(&pair.eta).fold(ext.zero(), |acc, (th, eta)| {
            let tr = ext.trace(&ext.mul(eta, &x));
            ext.add(&acc, &ext.mul(th, &ext.embed(tr)))
        });
        ensure(sum == x, || format!("reconstruction fails at {}", ext.format_elem(&x)))?;
        count += 1;
    }
    Ok(format!("x = Σ θ_δ Tr(η_δ x) for all {count} elements of F_49"))
}

fn optimality_and_table() -> Result<String, String> {
    let tuples = [(4, 1, 1, 4), (7, 1, 1, 5), (9, 2, 1, 5), (8, 2, 0, 5), (3, 1, 0, 2), (5, 1, 1, 4), (11, 1, 2, 7)];
    for (k, t, b, r) in tuples {
        let p = setup(k, t, b, r, 1)?;
        let rep = validate_optimality(&p);
        ensure(rep.all() && p.s * p.delta == k - 2 * b - t && (k - 2 * b - t) % (r - 2 * b - t) == 0, || {
            format!("({k},{t},{b},{r}) flags {rep:?}")
        })?;
    }
    ensure(SchemeParams::setup(&SetupRequest::new(4, 1, 1, 5, 1)).is_err(), || "(4,1,1,5) accepted by setup".into())?;
    let counter = OptimalityReport::evaluate(4, 1, 1, 5, 2, 1);
    ensure(!counter.divisibility && !counter.file_size_optimal && !counter.all(), || {
        format!("(4,1,1,5) not rejected: {counter:?}")
    })?;

    // (file, cost, rate) per scheme, worked out by hand from the formulas
    type Row = [(u64, u64, &'static str); 4];
    type Tuple = (usize, usize, usize, usize, usize);
    let expected: [(Tuple, Row); 2] = [
        ((4, 1, 1, 4, 1), [(3, 4, "3/4"), (1, 4, "1/4"), (9, 12, "3/4"), (1, 4, "1/4")]),
        ((7, 1, 1, 5, 2), [(12, 14, "6/7"), (8, 14, "4/7"), (48, 56, "6/7"), (16, 28, "4/7")]),
    ];
    for ((k, t, b, r, l), row) in expected {
        let table = comparison_table(&[TableRequest { k, t, b, r, q: None }], l, SEED)
            .map_err(|e| e.to_string())?
            .remove(0);
        for (col, (file, cost, rate)) in table.columns.iter().zip(row) {
            ensure(col.file_symbols == file && col.download_symbols == cost && col.rate == rate, || {
                format!(
                    "({k},{t},{b},{r}) l={l} {}: got ({}, {}, {})",
                    col.scheme, col.file_symbols, col.download_symbols, col.rate
                )
            })?;
            ensure(col.cells[0].contains(&format!("= {file}·log2(7)")), || format!("file cell {}", col.cells[0]))?;
            ensure(col.cells[2].contains(&format!("= {cost}·log2(7)")), || format!("cost cell {}", col.cells[2]))?;
            if let Some(m) = &col.measured {
                ensure(m.matches_formula, || format!("{} measured {m:?}", col.scheme))?;
            }
        }
        ensure(table.columns[1].measured.is_some(), || "byzantine scheme not measured".into())?;
    }
    Ok(format!("{} setups optimal, (4,1,1,5) rejected, both tables match", tuples.len()))
}

fn retrieval_threshold() -> Result<String, String> {
    let p = setup(4, 1, 1, 4, 3)?;
    let ext = *p.ext();
    let db = Database::random(&p, &mut FieldRng::derive(SEED, 10));
    let mut cases = 0u64;
    for set in subsets(p.k, p.r) {
        for iota in 1..=p.m {
            for qs in 0..3u64 {
                let queries = gen_queries(&p, iota, &mut FieldRng::derive(SEED, 100 + qs)).map_err(|e| e.to_string())?;
                let honest: Vec<(usize, ExtElem)> = set
                    .iter()
                    .map(|&j| match server_answer(&p, j, queries.query(j), &db, AnswerMode::Full) {
                        Ok(Answer::Full(a)) => Ok((j, a)),
                        Ok(Answer::Trace(_)) => Err("trace answer to a full query".to_string()),
                        Err(e) => Err(e.to_string()),
                    })
                    .collect::<Result<_, _>>()?;
                let truth = db.file(iota).map_err(|e| e.to_string())?;
                // no corruption, then every single-position corruption
                let mut words = vec![honest.clone()];
                for pos in 0..honest.len() {
                    for off in 1..ext.order() {
                        let mut w = honest.clone();
                        w[pos].1 = ext.add(&w[pos].1, &ext.from_index(off));
                        words.push(w);
                    }
                }
                for w in words {
                    let got = retrieve_from_r(&p, &w).map_err(|e| format!("{set:?} ι={iota}: {e}"))?;
                    ensure(got.file == truth, || format!("{set:?} ι={iota}: wrong file"))?;
                    cases += 1;
                }
            }
        }
    }
    let rep = threshold_search(&p, 1, SEED).map_err(|e| e.to_string())?;
    ensure(rep.passed() && rep.witness.is_some(), || {
        format!(
            "threshold: {}/{} ambiguous below, {}/{} determined at r−2b",
            rep.subsets_ambiguous, rep.subsets_below, rep.subsets_determined, rep.subsets_at
        )
    })?;
    Ok(format!(
        "{cases} r-subset decodes exact; {} databases: every {}-subset ambiguous, every {}-subset determined",
        rep.databases_enumerated, rep.below_size, rep.at_size
    ))
}
