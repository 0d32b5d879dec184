//! `bpir`: command-line front end to the PIR core and its test harness.
//!
//! Exit codes: 0 success, 1 a verification did not hold, 2 invalid
//! parameters or flags, 3 byzantine budget exceeded, 4 I/O or parse error,
//! 5 exhaustive guard exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bpir_core::acceptance;
use bpir_core::harness::{
    threshold_search, AuditMode, HarnessError, SweepConfig, SweepScope, TableRequest,
};
use bpir_core::pir::FieldRng;
use bpir_core::{
    byzantine_sweep, comparison_table, privacy_audit, run_session, validate_optimality, AdversaryModel,
    AnswerMode, Database, PirError, SchemeParams, SetupRequest, Strategy,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

const DEFAULT_SEED: u64 = 0xC0DE_C0DE;

#[derive(Parser)]
#[command(name = "bpir", version, about = "Byzantine-resistant multi-server PIR toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the scheme parameters and optimality flags.
    Params(ParamArgs),
    /// Run one retrieval session against simulated servers.
    Run(RunArgs),
    /// Sweep corruption patterns and check every retrieval.
    Sweep(SweepArgs),
    /// Audit what a coalition of servers learns about the target index.
    Audit(AuditArgs),
    /// Print the comparison table of the four schemes.
    Table(TableArgs),
    /// Check that r − 2b honest full answers are needed and suffice.
    Threshold(ThresholdArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Out {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Trace,
    Full,
}

impl From<ModeArg> for AnswerMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Trace => AnswerMode::Trace,
            ModeArg::Full => AnswerMode::Full,
        }
    }
}

#[derive(Args, Clone)]
struct ParamArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    b: usize,
    #[arg(long)]
    r: usize,
    /// Number of files.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Prime override for the base field.
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, value_enum, default_value_t = Out::Json)]
    out: Out,
}

impl ParamArgs {
    fn request(&self, m: usize) -> SetupRequest {
        let mut req = SetupRequest::new(self.k, self.t, self.b, self.r, m);
        req.q = self.q;
        req
    }
}

#[derive(Args)]
struct DbArgs {
    /// Database file, one file per line.
    #[arg(long, conflicts_with = "random_db")]
    db: Option<PathBuf>,
    /// Draw the database from the seed.
    #[arg(long)]
    random_db: bool,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    db: DbArgs,
    #[arg(long, default_value_t = 1)]
    iota: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Trace)]
    mode: ModeArg,
    /// Comma-separated byzantine server ids.
    #[arg(long, value_delimiter = ',')]
    byzantine: Vec<usize>,
    /// `random`, `offset:N` or `query-aware`.
    #[arg(long, default_value = "random")]
    strategy: String,
    /// Comma-separated colluding server ids, echoed in the report.
    #[arg(long, value_delimiter = ',')]
    collusion: Vec<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    db: DbArgs,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Trace)]
    mode: ModeArg,
    /// Enumerate every corruption (the default).
    #[arg(long, conflicts_with = "randomized")]
    exhaustive: bool,
    /// Number of random cases instead of the exhaustive enumeration.
    #[arg(long)]
    randomized: Option<usize>,
    #[arg(long, default_value_t = 1)]
    query_seeds: usize,
    /// Size of the byzantine set; defaults to b.
    #[arg(long)]
    byzantine_size: Option<usize>,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Enumerate all blinding draws; otherwise check the transfer matrices.
    #[arg(long)]
    exhaustive: bool,
    /// Comma-separated coalition; defaults to every t-subset.
    #[arg(long, value_delimiter = ',')]
    coalition: Vec<usize>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Repetitions of the basic scheme.
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 1)]
    iota: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct SelftestArgs {
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
    #[arg(long, value_enum, default_value_t = Out::Text)]
    out: Out,
}

/// A one-line failure with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(code: u8, kind: &'static str, message: impl Into<String>) -> Self {
        Self { code, kind, message: message.into() }
    }
}

impl From<PirError> for Failure {
    fn from(e: PirError) -> Self {
        let (code, kind) = match &e {
            PirError::InvalidParameters(_) | PirError::IndexOutOfRange { .. } => (2, "invalid-parameters"),
            PirError::ByzantineBudgetExceeded { .. } => (3, "byzantine-budget-exceeded"),
            PirError::Parse { .. } => (4, "parse"),
            _ => (1, "internal"),
        };
        Self::new(code, kind, e.to_string())
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Pir(p) => p.into(),
            HarnessError::GuardExceeded(m) => Self::new(5, "guard-exceeded", m),
            HarnessError::InvalidAdversary(m) => Self::new(2, "invalid-adversary", m),
        }
    }
}

/// Stdout text plus the exit code to finish with.
type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Params(a) => cmd_params(&a),
        Command::Run(a) => cmd_run(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Audit(a) => cmd_audit(&a),
        Command::Table(a) => cmd_table(&a),
        Command::Threshold(a) => cmd_threshold(&a),
        Command::Selftest(a) => cmd_selftest(&a),
    };
    match result {
        Ok((stdout, code)) => {
            print!("{stdout}");
            if !stdout.ends_with('\n') {
                println!();
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}: {}", f.kind, f.message.replace('\n', " "));
            ExitCode::from(f.code)
        }
    }
}

fn no_csv(out: Out) -> Result<(), Failure> {
    if out == Out::Csv {
        return Err(Failure::new(2, "invalid-flags", "csv output is only available for `table`"));
    }
    Ok(())
}

fn cmd_params(a: &ParamArgs) -> Outcome {
    no_csv(a.out)?;
    let params = SchemeParams::setup(&a.request(a.m))?;
    let opt = validate_optimality(&params);
    let text = match a.out {
        Out::Json => {
            let doc = serde_json::to_value(params.to_document()).expect("document serializes");
            serde_json::to_string_pretty(&json!({ "params": doc, "optimality": opt })).expect("serializes")
        }
        _ => format!(
            "k={} t={} b={} r={} m={}\nΔ={} s={} q={}\nfield {}\nbalanced={} rate_optimal={} file_size_optimal={} divisibility={} lower_bound_satisfied={}\n",
            params.k,
            params.t,
            params.b,
            params.r,
            params.m,
            params.delta,
            params.s,
            params.q(),
            params.field_description(),
            opt.balanced,
            opt.rate_optimal,
            opt.file_size_optimal,
            opt.divisibility,
            opt.lower_bound_satisfied
        ),
    };
    Ok((text, 0))
}

/// Parameters and database together; with `--db` the file count comes from
/// the file.
fn load(params: &ParamArgs, db: &DbArgs, seed: u64) -> Result<(SchemeParams, Database), Failure> {
    match (&db.db, db.random_db) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::new(4, "io", format!("{}: {e}", path.display())))?;
            let m = text.lines().filter(|l| !l.trim().is_empty()).count().max(1);
            let p = SchemeParams::setup(&params.request(m))?;
            let parsed = Database::parse(&text, p.ext(), p.delta)?;
            if parsed.files() != p.m {
                return Err(Failure::new(4, "parse", format!("expected {} files, found {}", p.m, parsed.files())));
            }
            Ok((p, parsed))
        }
        (None, true) => {
            let p = SchemeParams::setup(&params.request(params.m))?;
            let d = Database::random(&p, &mut FieldRng::derive(seed, u64::MAX - 1));
            Ok((p, d))
        }
        (None, false) => Err(Failure::new(2, "invalid-flags", "one of --db or --random-db is required")),
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, Failure> {
    match s {
        "random" => Ok(Strategy::RandomSymbol),
        "query-aware" => Ok(Strategy::QueryAware),
        _ => s
            .strip_prefix("offset:")
            .and_then(|n| n.parse().ok())
            .map(Strategy::FixedOffset)
            .ok_or_else(|| Failure::new(2, "invalid-flags", format!("unknown strategy {s:?}"))),
    }
}

fn cmd_run(a: &RunArgs) -> Outcome {
    no_csv(a.params.out)?;
    let (params, db) = load(&a.params, &a.db, a.seed)?;
    let adversary = if a.byzantine.is_empty() {
        AdversaryModel::honest()
    } else {
        AdversaryModel::byzantine(a.byzantine.iter().copied(), parse_strategy(&a.strategy)?)
    }
    .with_collusion(a.collusion.iter().copied());
    let rep = run_session(&params, &db, a.iota, &adversary, a.mode.into(), a.seed)?;
    let code = if rep.succeeded() { 0 } else { 3 };
    let text = match a.params.out {
        Out::Json => rep.to_json(),
        _ => format!(
            "status {:?}\nfile {}\nground truth match {}\ncorrected servers {:?}\nrate {} (capacity {})\n",
            rep.status,
            rep.retrieved_file.as_ref().map_or("-".into(), |f| f.join(" ")),
            rep.ground_truth_match,
            rep.identified_error_positions,
            rep.measured_rate,
            rep.capacity_asymptotic
        ),
    };
    Ok((text, code))
}

fn cmd_sweep(a: &SweepArgs) -> Outcome {
    no_csv(a.params.out)?;
    let (params, db) = load(&a.params, &a.db, a.seed)?;
    let cfg = SweepConfig {
        scope: match a.randomized {
            Some(n) => SweepScope::Randomized(n),
            None => SweepScope::Exhaustive,
        },
        seed: a.seed,
        query_seeds: a.query_seeds,
        byzantine_size: a.byzantine_size,
        mode: a.mode.into(),
    };
    let rep = byzantine_sweep(&params, &db, &cfg)?;
    let code = match (rep.passed(), rep.byzantine_size > params.b) {
        (true, _) => 0,
        (false, true) => 3,
        (false, false) => 1,
    };
    let text = match a.params.out {
        Out::Json => rep.to_json(),
        _ => format!(
            "{} sweep, |B|={}: {} cases, {} failed ({} decode failures, {} wrong files)\n",
            rep.scope, rep.byzantine_size, rep.cases_total, rep.cases_failed, rep.decode_failures, rep.wrong_files
        ),
    };
    Ok((text, code))
}

fn cmd_audit(a: &AuditArgs) -> Outcome {
    no_csv(a.params.out)?;
    let m = a.params.m.max(2);
    let params = SchemeParams::setup(&a.params.request(m))?;
    let mode = if a.exhaustive { AuditMode::Exhaustive } else { AuditMode::TransferMatrix };
    let coalition = (!a.coalition.is_empty()).then_some(a.coalition.as_slice());
    let rep = privacy_audit(&params, coalition, mode)?;
    let code = if rep.passed() { 0 } else { 1 };
    let text = match a.params.out {
        Out::Json => rep.to_json(),
        _ => format!(
            "{} subsets, {} cases, {} failed, max TV {}\n{}\n",
            rep.subsets_checked,
            rep.cases_total,
            rep.cases_failed,
            rep.max_tv_distance.as_deref().unwrap_or("-"),
            rep.verdict
        ),
    };
    Ok((text, code))
}

fn cmd_table(a: &TableArgs) -> Outcome {
    let p = &a.params;
    let req = TableRequest { k: p.k, t: p.t, b: p.b, r: p.r, q: p.q };
    let table = comparison_table(&[req], a.l, a.seed)?.remove(0);
    let text = match p.out {
        Out::Json => serde_json::to_string_pretty(&table).expect("table serializes"),
        Out::Csv => table.to_csv(),
        Out::Text => table.to_text(),
    };
    Ok((text, 0))
}

fn cmd_threshold(a: &ThresholdArgs) -> Outcome {
    no_csv(a.params.out)?;
    let params = SchemeParams::setup(&a.params.request(a.params.m))?;
    let rep = threshold_search(&params, a.iota, a.seed)?;
    let code = if rep.passed() { 0 } else { 1 };
    let text = match a.params.out {
        Out::Json => rep.to_json(),
        _ => format!(
            "{} databases; {}/{} subsets of size {} ambiguous; {}/{} subsets of size {} determined\n",
            rep.databases_enumerated,
            rep.subsets_ambiguous,
            rep.subsets_below,
            rep.below_size,
            rep.subsets_determined,
            rep.subsets_at,
            rep.at_size
        ),
    };
    Ok((text, code))
}

fn cmd_selftest(a: &SelftestArgs) -> Outcome {
    no_csv(a.out)?;
    let ids: Vec<u8> = if a.only.is_empty() { acceptance::ids().collect() } else { a.only.clone() };
    let mut outcomes = Vec::new();
    for id in ids {
        let o = acceptance::run(id).ok_or_else(|| Failure::new(2, "invalid-flags", format!("no criterion {id}")))?;
        outcomes.push(o);
    }
    let code = if outcomes.iter().all(|o| o.passed) { 0 } else { 1 };
    let text = match a.out {
        Out::Json => serde_json::to_string_pretty(&outcomes).expect("outcomes serialize"),
        _ => outcomes.iter().map(|o| o.line() + "\n").collect(),
    };
    Ok((text, code))
}
