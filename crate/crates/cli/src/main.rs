//! `matkls`: compute and verify Kazhdan-Lusztig invariants of matroids, and
//! scan families of matroids for coefficient properties.
//!
//! Exit codes: 0 when everything holds, 1 when an identity or conjecture is
//! falsified (the witness is printed), 2 on usage or input errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use matkls::invariants::{
    constant_term_holds, defining_residuals, invariants, multiplicativity, relations_check, ClosedShape,
};
use matkls::lab::{scan_with, write_line, Check, Family, ReportLine, ScanOptions};
use matkls::{Error, LatticeConfig, Matroid, MatroidSpec, Method, Polynomial};

/// Ground sets up to this size are cross-checked by every method by default.
const ALL_METHODS_MAX_GROUND: usize = 12;

#[derive(Parser)]
#[command(name = "matkls", version, about = "Kazhdan-Lusztig invariants of matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute chi, P, Q and Qhat of one matroid.
    Compute {
        #[command(flatten)]
        input: MatroidInput,
        /// Comma-separated subset of P,Q,Qhat,chi; all invariants when absent.
        #[arg(long, value_delimiter = ',')]
        quantity: Vec<Quantity>,
        /// Defaults to `all` for ground sets of at most 12 elements and to
        /// `closed` otherwise.
        #[arg(long)]
        method: Option<MethodArg>,
        #[arg(long)]
        pretty: bool,
    },
    /// Check identities on one matroid.
    Verify {
        #[command(flatten)]
        input: MatroidInput,
        /// Comma-separated subset of eq1.1,eq1.2,thm1.3,prop2.4,lemma3.1;
        /// all when absent.
        #[arg(long, value_delimiter = ',')]
        identity: Vec<Identity>,
        #[arg(long)]
        pretty: bool,
    },
    /// Run coefficient checks over a family, one JSON line per matroid and a
    /// final summary line.
    Scan(ScanArgs),
    /// Closed-form P, Q, Qhat and chi of the uniform matroid U(m,d).
    ClosedForm {
        #[arg(long, default_value = "uniform")]
        family: ClosedFamily,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',')]
        quantity: Vec<Quantity>,
        #[arg(long)]
        pretty: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MatroidInput {
    /// Matroid spec as inline JSON.
    #[arg(long)]
    matroid: Option<String>,
    /// Path to a file holding a matroid spec.
    #[arg(long)]
    matroid_file: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    family: FamilyKind,
    /// Bound on both m and d for the uniform family.
    #[arg(long)]
    max_md: Option<usize>,
    #[arg(long)]
    max_m: Option<usize>,
    #[arg(long)]
    max_d: Option<usize>,
    /// Bound on n for the boolean family.
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    min_vertices: usize,
    #[arg(long)]
    max_vertices: Option<usize>,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 8)]
    ground_size: usize,
    #[arg(long, default_value_t = 3)]
    rank: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated subset of nonnegativity,log_concavity,real_roots,constant_term.
    #[arg(long, value_delimiter = ',', value_parser = parse_check)]
    check: Vec<Check>,
    /// Append-only result cache, reused across runs.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    pretty: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Quantity {
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
    #[value(name = "Qhat")]
    Qhat,
    #[value(name = "chi")]
    Chi,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Recursion,
    Kls,
    Closed,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Identity {
    #[value(name = "eq1.1")]
    Eq11,
    #[value(name = "eq1.2")]
    Eq12,
    #[value(name = "thm1.3")]
    Thm13,
    #[value(name = "prop2.4")]
    Prop24,
    #[value(name = "lemma3.1")]
    Lemma31,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Uniform,
    Boolean,
    Graphic,
    BasesRandom,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosedFamily {
    Uniform,
}

fn parse_check(s: &str) -> Result<Check, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    /// Falsified; the payload is the witness, already formatted.
    Falsified(String),
    Usage(String),
    /// Output already written.
    Exit(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MethodDisagreement { .. } => Failure::Falsified(json!({ "error": e.to_string() }).to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Falsified(witness)) => {
            let _ = writeln!(io::stdout(), "{witness}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Exit(code)) => ExitCode::from(code),
    }
}

fn emit<T: Serialize>(value: &T, pretty: bool) -> Result<(), Failure> {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) }
        .map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(io::stdout(), "{text}")?;
    Ok(())
}

fn read_matroid(input: &MatroidInput) -> Result<Matroid, Failure> {
    let text = match (&input.matroid, &input.matroid_file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => return Err(Failure::Usage("no matroid given".into())),
    };
    let spec: MatroidSpec =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("malformed matroid spec: {e}")))?;
    Ok(Matroid::from_spec(&spec)?)
}

fn quantities(
    selected: &[Quantity],
    p: Polynomial,
    q: Polynomial,
    qhat: Polynomial,
    chi: Polynomial,
) -> Map<String, Value> {
    let mut selected = selected.to_vec();
    if selected.is_empty() {
        selected = vec![Quantity::P, Quantity::Q, Quantity::Qhat, Quantity::Chi];
    }
    let mut out = Map::new();
    for s in selected {
        let (name, value) = match s {
            Quantity::P => ("P", &p),
            Quantity::Q => ("Q", &q),
            Quantity::Qhat => ("Qhat", &qhat),
            Quantity::Chi => ("chi", &chi),
        };
        out.insert(name.into(), serde_json::to_value(value).expect("polynomials serialize"));
    }
    out
}

fn run(command: Command) -> Result<(), Failure> {
    let config = LatticeConfig::from_env();
    match command {
        Command::Compute { input, quantity, method, pretty } => {
            let m = read_matroid(&input)?;
            let method = match method {
                Some(MethodArg::Recursion) => Method::Recursion,
                Some(MethodArg::Kls) => Method::Kls,
                Some(MethodArg::Closed) => Method::ClosedForm,
                Some(MethodArg::All) => Method::All,
                None if m.ground_size() <= ALL_METHODS_MAX_GROUND => Method::All,
                None => Method::ClosedForm,
            };
            let b = invariants(&m, method, &config)?;
            if quantity.is_empty() {
                emit(&b, pretty)
            } else {
                emit(&quantities(&quantity, b.p, b.q, b.qhat, b.chi), pretty)
            }
        }
        Command::Verify { input, identity, pretty } => verify(&read_matroid(&input)?, identity, &config, pretty),
        Command::Scan(args) => scan(args, config),
        Command::ClosedForm { family: ClosedFamily::Uniform, m, d, quantity, pretty } => {
            let u = Matroid::uniform(m, d)?;
            let shape = ClosedShape::detect(&u).ok_or_else(|| Failure::Usage("no closed form".into()))?;
            let (chi, p, q) = shape.invariants()?;
            let qhat = q.signed(d);
            let mut out = quantities(&quantity, p, q, qhat, chi);
            out.insert("matroid".into(), serde_json::to_value(u.spec()).expect("specs serialize"));
            emit(&out, pretty)
        }
    }
}

fn verify(m: &Matroid, mut identities: Vec<Identity>, config: &LatticeConfig, pretty: bool) -> Result<(), Failure> {
    if identities.is_empty() {
        identities = vec![Identity::Eq11, Identity::Eq12, Identity::Thm13, Identity::Prop24, Identity::Lemma31];
    }
    identities.sort();
    identities.dedup();
    let mut verdicts = Map::new();
    let mut holds = true;
    for id in identities {
        let (name, value, ok) = match id {
            Identity::Eq11 => {
                let r = defining_residuals(m, config)?;
                ("eq1.1", json!({ "holds": r.kl_defining }), r.kl_defining)
            }
            Identity::Eq12 => {
                let r = defining_residuals(m, config)?;
                let ok = r.inverse_kl_defining && r.inverse_kl_expansion;
                let v = json!({
                    "defining": r.inverse_kl_defining,
                    "expansion": r.inverse_kl_expansion,
                    "holds": ok,
                });
                ("eq1.2", v, ok)
            }
            Identity::Thm13 => {
                let r = relations_check(m, config)?;
                let mut v = serde_json::to_value(r).expect("verdicts serialize");
                v["holds"] = r.all().into();
                ("thm1.3", v, r.all())
            }
            Identity::Prop24 => {
                let b = invariants(m, Method::Recursion, config)?;
                let ok = constant_term_holds(&b);
                let v = json!({
                    "qhat_constant": b.qhat.constant_term().to_string(),
                    "chi_at_zero": b.chi.constant_term().to_string(),
                    "holds": ok,
                });
                ("prop2.4", v, ok)
            }
            Identity::Lemma31 => {
                let (left, right) = match m.summands() {
                    Some((l, r)) => (l.clone(), r.clone()),
                    None => (m.clone(), m.clone()),
                };
                let r = multiplicativity(&left, &right, config)?;
                let mut v = serde_json::to_value(r).expect("verdicts serialize");
                v["holds"] = r.all().into();
                v["left"] = serde_json::to_value(left.spec()).expect("specs serialize");
                v["right"] = serde_json::to_value(right.spec()).expect("specs serialize");
                ("lemma3.1", v, r.all())
            }
        };
        holds &= ok;
        verdicts.insert(name.into(), value);
    }
    let out = json!({ "matroid": m.spec(), "verdicts": verdicts, "holds": holds });
    emit(&out, pretty)?;
    if holds {
        Ok(())
    } else {
        Err(Failure::Exit(1))
    }
}

fn required(value: Option<usize>, flag: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("{flag} is required for this family")))
}

fn scan(args: ScanArgs, config: LatticeConfig) -> Result<(), Failure> {
    let family = match args.family {
        FamilyKind::Uniform => Family::Uniform {
            max_m: required(args.max_m.or(args.max_md), "--max-md or --max-m")?,
            max_d: required(args.max_d.or(args.max_md), "--max-md or --max-d")?,
        },
        FamilyKind::Boolean => Family::Boolean { max_n: required(args.max_n, "--max-n")? },
        FamilyKind::Graphic => Family::GraphicConnectedSimple {
            min_vertices: args.min_vertices,
            max_vertices: required(args.max_vertices, "--max-vertices")?,
        },
        FamilyKind::BasesRandom => Family::BasesRandom {
            count: args.count,
            ground_size: args.ground_size,
            rank: args.rank,
            seed: args.seed,
        },
    };
    let checks = if args.check.is_empty() { Check::ALL.to_vec() } else { args.check };
    let options = ScanOptions { config, workers: args.workers, cache: args.cache };
    let stdout = io::stdout();
    let pretty = args.pretty;
    let report = scan_with(&family, &checks, &options, |r| {
        let line = ReportLine::Record(r.clone());
        let mut out = stdout.lock();
        if pretty {
            let text = serde_json::to_string_pretty(&line).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(out, "{text}")?;
            Ok(())
        } else {
            write_line(&mut out, &line)
        }
    })?;
    emit(&ReportLine::Summary(report.summary.clone()), pretty)?;
    if report.summary.falsified() {
        let w = serde_json::to_value(&report.summary.first_counterexample).expect("witnesses serialize");
        eprintln!("falsified: {w}");
        return Err(Failure::Exit(1));
    }
    if report.summary.errors > 0 {
        eprintln!("{} matroids could not be computed", report.summary.errors);
        return Err(Failure::Exit(2));
    }
    Ok(())
}
