use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ears_core::config::{descriptor_json, parse_config, parse_vector_json, semilattice_config, EarsConfig};
use ears_core::ears::{irc, trim, verify_axioms, EarsDescriptor};
use ears_core::fixtures::PaperFixtures;
use ears_core::presentation::{
    conjugation_obstruction, coxeter_presentation_decision, evaluate, CoxeterDecision, ObstructionOutcome,
};
use ears_core::weyl::{anisotropic_orbits, minimality, orbit_closed_form, MinimalityVerdict, DEFAULT_BUDGET, DEFAULT_DEPTH};
use ears_core::Error;

#[derive(Parser)]
#[command(name = "ears", version, about = "Extended affine root systems and their Weyl groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Radical coordinate bound for windowed checks.
    #[arg(long, global = true, default_value_t = 4)]
    window: i64,
    /// Maximal word length in certificate searches.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    /// Maximal number of group elements kept by a search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Input config (JSON).
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a config and print the canonical descriptor.
    Construct,
    /// Check the axioms on a window.
    Verify,
    /// Orbit of one root, or all anisotropic orbits.
    Orbits {
        /// Root as a JSON array, e.g. "[1,1,1,1,0,0,0]".
        #[arg(long)]
        root: Option<String>,
    },
    /// Decide minimality, with a certificate for removable orbits.
    Minimality,
    /// Coxeter presentation and presentation by conjugation.
    Presentation,
    /// Trim a system of type BC.
    Trim,
    /// Isotropic root closure of the anisotropic roots.
    Irc,
    /// Golden checks on the worked examples.
    PaperExamples,
}

/// Failures mapped to exit codes.
enum Failure {
    Golden(Value),
    Constraint(String),
    Parse(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnknownType(_) | Error::InvalidRank { .. } => Failure::Parse(e.to_string()),
            other => Failure::Constraint(other.to_string()),
        }
    }
}

fn read_input(opts: &Opts) -> Result<String, Failure> {
    let path = opts
        .input
        .as_ref()
        .ok_or_else(|| Failure::Parse("--in PATH is required".into()))?;
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load(opts: &Opts) -> Result<EarsDescriptor, Failure> {
    let cfg: EarsConfig = parse_config(&read_input(opts)?)?;
    cfg.parsed_type().map_err(|e| Failure::Parse(e.to_string()))?;
    Ok(cfg.to_descriptor()?)
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn construct_cmd(opts: &Opts) -> Result<Value, Failure> {
    let r = load(opts)?;
    Ok(serde_json::from_str(&descriptor_json(&r)).expect("valid json"))
}

fn verify_cmd(opts: &Opts) -> Result<Value, Failure> {
    let r = load(opts)?;
    let report = verify_axioms(&r, opts.window);
    let out = to_json(&report);
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Constraint(serde_json::to_string_pretty(&out).expect("json")))
    }
}

fn orbits_cmd(opts: &Opts, root: Option<&str>) -> Result<Value, Failure> {
    let r = load(opts)?;
    match root {
        Some(text) => {
            let v: Value = serde_json::from_str(text).map_err(|e| Failure::Parse(e.to_string()))?;
            let alpha = parse_vector_json(&v)?;
            Ok(to_json(&orbit_closed_form(&r, &alpha)?))
        }
        None => Ok(to_json(&anisotropic_orbits(&r)?)),
    }
}

fn minimality_cmd(opts: &Opts) -> Result<Value, Failure> {
    let r = load(opts)?;
    Ok(match minimality(&r, opts.depth, opts.budget)? {
        MinimalityVerdict::Minimal => json!({ "verdict": "minimal" }),
        MinimalityVerdict::NotMinimal { orbit, certificate } => json!({
            "verdict": "not_minimal",
            "orbit": to_json(&orbit),
            "certificate": to_json(&certificate),
            "certificate_verified": certificate.verify(r.space()),
        }),
        MinimalityVerdict::Unknown { orbits } => json!({
            "verdict": "unknown",
            "depth": opts.depth,
            "orbits": to_json(&orbits),
        }),
    })
}

fn presentation_cmd(opts: &Opts) -> Result<Value, Failure> {
    let r = load(opts)?;
    let coxeter = match coxeter_presentation_decision(&r)? {
        CoxeterDecision::Yes => json!({ "decision": "yes" }),
        CoxeterDecision::No(w) => json!({
            "decision": "no",
            "roots": to_json(&w.roots),
            "word": to_json(&w.word),
            "word_is_identity": evaluate(&w.word, r.space())?.matrix.is_identity(),
        }),
    };
    let conjugation = match conjugation_obstruction(&r, opts.depth, opts.budget)? {
        ObstructionOutcome::NoneFound => json!({ "status": "none_found" }),
        ObstructionOutcome::Obstruction { orbit, word, parity } => json!({
            "status": "obstruction",
            "orbit": to_json(&orbit),
            "word": to_json(&word),
            "odd_orbits": to_json(&parity),
            "word_is_identity": evaluate(&word, r.space())?.matrix.is_identity(),
        }),
        ObstructionOutcome::Inconclusive { orbits } => json!({
            "status": "inconclusive",
            "orbits": to_json(&orbits),
        }),
    };
    Ok(json!({ "nullity": r.nullity(), "coxeter": coxeter, "conjugation": conjugation }))
}

fn trim_cmd(opts: &Opts) -> Result<Value, Failure> {
    let r = trim(&load(opts)?)?;
    Ok(serde_json::from_str(&descriptor_json(&r)).expect("valid json"))
}

fn irc_cmd(opts: &Opts) -> Result<Value, Failure> {
    let r = load(opts)?;
    Ok(json!({ "isotropic": to_json(&semilattice_config(&irc(&r)?)) }))
}

fn paper_examples_cmd(opts: &Opts) -> Result<Value, Failure> {
    let fixtures = match &opts.input {
        None => PaperFixtures::default(),
        Some(_) => serde_json::from_str(&read_input(opts)?).map_err(|e| Failure::Parse(e.to_string()))?,
    };
    let report = fixtures.report()?;
    let out = to_json(&report);
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Golden(out))
    }
}

fn emit(opts: &Opts, value: &Value) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("json");
    text.push('\n');
    match &opts.out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("EARS_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // only fails if a pool was already built
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let opts = &cli.opts;
    let result = match &cli.command {
        Command::Construct => construct_cmd(opts),
        Command::Verify => verify_cmd(opts),
        Command::Orbits { root } => orbits_cmd(opts, root.as_deref()),
        Command::Minimality => minimality_cmd(opts),
        Command::Presentation => presentation_cmd(opts),
        Command::Trim => trim_cmd(opts),
        Command::Irc => irc_cmd(opts),
        Command::PaperExamples => paper_examples_cmd(opts),
    };
    match result {
        Ok(value) => match emit(opts, &value) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(3)
            }
        },
        Err(Failure::Golden(report)) => {
            let _ = emit(opts, &report);
            eprintln!("golden mismatch");
            ExitCode::from(1)
        }
        Err(Failure::Constraint(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            ExitCode::from(3)
        }
    }
}
