//! `genshift` command-line front end.
//!
//! Exit codes: 0 ok, 2 parse/usage, 3 integrity, 4 not in ℓ², 5 witness
//! precondition, 6 oracle disagreement, 1 anything else.

use std::io;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::compact_witness::witness_sequence;
use crate::dense_oracle::DEFAULT_SEED;
use crate::domain_analysis::{divergence_witness, domain_report, Closedness, DomainReport, MSet};
use crate::error::Error;
use crate::gen_shift::{apply, classify, ClassificationReport, OperatorNorm, Verdict, DEFAULT_WINDOW};
use crate::index_domain::{fiber_report, BoundVerdict, FiberCard, FiberReport, IndexMap, IndexSet, MapSpec};
use crate::sparse_vec::{parse_vector, SparseVector};
use crate::sweep::{exhaustive_agreement, random_agreement, Execution, SweepSummary};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INTEGRITY: i32 = 3;
pub const EXIT_NOT_IN_L2: i32 = 4;
pub const EXIT_WITNESS: i32 = 5;
pub const EXIT_DISAGREEMENT: i32 = 6;

#[derive(Debug, Parser)]
#[command(name = "genshift", version, about = "Generalized shift operators on l2: analysis, application, witnesses and oracle checks")]
pub struct Cli {
    /// Seed for every randomized procedure.
    #[arg(long, global = true, env = "GENSHIFT_SEED")]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    Compact,
    Divergence,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fiber report, classification and domain report for a map file.
    Analyze {
        map: PathBuf,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: u64,
    },
    /// Apply the shift of a map to a vector.
    Apply { map: PathBuf, vector: PathBuf },
    /// Non-compactness or divergence witnesses.
    Witness {
        map: PathBuf,
        #[arg(long, value_enum)]
        kind: WitnessKind,
        /// Number of separated vectors (compact).
        #[arg(long, default_value_t = 3)]
        count: usize,
        /// Truncation length (divergence).
        #[arg(long = "K", visible_alias = "k", default_value_t = 16)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: u64,
    },
    /// Cross-check structural verdicts against the dense oracle.
    OracleCheck {
        #[arg(long)]
        n: u64,
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        exhaustive: bool,
        /// Number of random maps.
        #[arg(long)]
        random: Option<u64>,
        /// Disable the thread pool.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::IndexSetTooSmall(_)
        | Error::LengthMismatch { .. }
        | Error::ImageOutOfRange { .. }
        | Error::OutOfDomain { .. }
        | Error::DomainMismatch { .. }
        | Error::DuplicateEntry(_) => EXIT_PARSE,
        Error::Integrity(_) => EXIT_INTEGRITY,
        Error::NotInL2 { .. } => EXIT_NOT_IN_L2,
        _ => EXIT_OTHER,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::new(exit_code(&e), e.to_string())
    }
}

/// JSON formatter writing every float with 17 significant digits.
struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FullPrecision);
    serde::Serialize::serialize(value, &mut ser).expect("serializing a Value cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_map(path: &Path) -> Result<(MapSpec, IndexMap), CliError> {
    let spec: MapSpec = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let map = spec.build()?;
    Ok((spec, map))
}

fn domain_json(d: IndexSet) -> Value {
    match d {
        IndexSet::Finite(n) => json!({"kind": "finite", "size": n}),
        IndexSet::Countable => json!({"kind": "countable"}),
    }
}

fn card_json(c: FiberCard) -> Value {
    match c {
        FiberCard::Finite(n) => json!(n),
        FiberCard::Infinite => json!("infinite"),
    }
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::True => json!(true),
        Verdict::False => json!(false),
        Verdict::WindowOnly(why) => json!({"window_only": why}),
    }
}

fn fiber_report_json(r: &FiberReport) -> Value {
    let verdict = match r.verdict {
        BoundVerdict::Certified(n) => json!({"kind": "certified", "bound": n}),
        BoundVerdict::CertifiedUnbounded => json!({"kind": "certified_unbounded"}),
        BoundVerdict::WindowOnly { observed, window } => {
            json!({"kind": "window_only", "observed": observed, "window": window})
        }
    };
    json!({
        "cardinalities": r.cardinalities.iter().map(|&(a, c)| json!([a, card_json(c)])).collect::<Vec<_>>(),
        "sup": card_json(r.sup),
        "verdict": verdict,
        "m_set": r.m_set,
    })
}

fn norm_json(n: &OperatorNorm) -> Value {
    match *n {
        OperatorNorm::Exact(v) => json!(v),
        OperatorNorm::Infinite => json!("infinite"),
        OperatorNorm::WindowOnly { lower_bound, window } => {
            json!({"window_only_lower_bound": lower_bound, "window": window})
        }
    }
}

fn classification_json(r: &ClassificationReport) -> Value {
    json!({
        "maps_into_l2": verdict_json(&r.maps_into_l2),
        "operator_norm": norm_json(&r.operator_norm),
        "sigma_injective": verdict_json(&r.sigma_injective),
        "sigma_surjective": verdict_json(&r.sigma_surjective),
        "isometry": verdict_json(&r.isometry),
        "compact": verdict_json(&r.compact),
    })
}

fn domain_report_json(r: &DomainReport) -> Value {
    let m = match &r.m {
        MSet::Exact(members) => json!({"kind": "exact", "members": members}),
        MSet::Windowed { members, window, excluded } => {
            json!({"kind": "windowed", "members": members, "window": window, "excluded": excluded})
        }
    };
    let witness = match &r.closedness {
        Closedness::NotClosed { witness } => json!(witness),
        _ => Value::Null,
    };
    json!({
        "m": m,
        "closed": verdict_json(&r.closed),
        "uniform_bound_on_m": r.uniform_bound_on_m.map(card_json),
        "characterization_holds": verdict_json(&r.characterization_holds),
        "continuous_on_domain": verdict_json(&r.continuous_on_domain),
        "unbounded_witness": witness,
    })
}

pub fn vector_json(v: &SparseVector) -> Value {
    json!(v.to_entries())
}

pub fn analyze(spec: &MapSpec, map: &IndexMap, window: u64) -> Result<Value, Error> {
    let window = window.max(1);
    let fibers = fiber_report(map, window)?;
    let classification = classify(map, window, window)?;
    let domain = domain_report(map, window)?;
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "map": spec,
        "domain": domain_json(map.domain()),
        "fiber_report": fiber_report_json(&fibers),
        "classification": classification_json(&classification),
        "domain_report": domain_report_json(&domain),
    }))
}

fn witness_error(e: Error) -> CliError {
    match e {
        Error::Unsupported(_) | Error::SearchExhausted { .. } => CliError::new(EXIT_WITNESS, e.to_string()),
        other => other.into(),
    }
}

fn sweep_json(n: u64, mode: &str, seed: u64, s: &SweepSummary) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "n": n,
        "mode": mode,
        "seed": seed,
        "maps_checked": s.maps_checked,
        "disagreements": s.disagreements.len(),
        "offending": s.disagreements.iter().map(|d| json!({"images": d.images, "reason": d.reason})).collect::<Vec<_>>(),
    })
}

/// Runs a parsed command and returns what goes to standard output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let value = match &cli.command {
        Command::Analyze { map, window } => {
            let (spec, map) = load_map(map)?;
            analyze(&spec, &map, *window)?
        }
        Command::Apply { map, vector } => {
            let (_, map) = load_map(map)?;
            let x = parse_vector(map.domain(), &read(vector)?)
                .map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", vector.display())))?;
            match apply(&map, &x) {
                Ok(y) => vector_json(&y),
                Err(Error::NotInL2 { index }) => {
                    return Err(CliError::new(
                        EXIT_NOT_IN_L2,
                        format!("not in l2: fiber of index {index} is infinite"),
                    ))
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Witness { map, kind, count, k, window } => {
            let (spec, map) = load_map(map)?;
            match kind {
                WitnessKind::Compact => {
                    let w = witness_sequence(&map, *count, *window).map_err(witness_error)?;
                    let sep = w.min_separation_sq();
                    json!({
                        "schema_version": SCHEMA_VERSION,
                        "kind": "compact",
                        "map": spec,
                        "indices": w.indices,
                        "fiber_sizes": w.fiber_sizes,
                        "vectors": w.vectors.iter().map(vector_json).collect::<Vec<_>>(),
                        "min_separation_sq": {"num": sep.numer(), "den": sep.denom()},
                        "min_separation": w.min_separation(),
                        "separated": w.is_separated(),
                    })
                }
                WitnessKind::Divergence => {
                    let w = divergence_witness(&map, *k).map_err(witness_error)?;
                    json!({
                        "schema_version": SCHEMA_VERSION,
                        "kind": "divergence",
                        "map": spec,
                        "K": k,
                        "indices": w.indices,
                        "fiber_sizes": w.fiber_sizes,
                        "vector": vector_json(&w.vector),
                        "vector_norm_sq": w.vector_norm_sq,
                        "image_norm_sq_lower_bound": w.image_norm_sq_lower_bound,
                        "harmonic_bound_certified": w.certifies_harmonic_bound(),
                    })
                }
            }
        }
        Command::OracleCheck { n, exhaustive, random, sequential } => {
            let exec = if *sequential { Execution::Sequential } else { Execution::Parallel };
            let (mode, summary) = match (exhaustive, random) {
                (true, _) => ("exhaustive", exhaustive_agreement(*n, seed, exec)),
                (false, Some(r)) => ("random", random_agreement(*n, *r, seed, exec)),
                (false, None) => return Err(CliError::new(EXIT_PARSE, "pass --exhaustive or --random R")),
            };
            let summary = summary.map_err(|e| CliError::new(EXIT_PARSE, e.to_string()))?;
            let out = sweep_json(*n, mode, seed, &summary);
            if !summary.passed() {
                return Err(CliError::new(EXIT_DISAGREEMENT, to_json(&out)));
            }
            out
        }
    };
    Ok(to_json(&value) + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("genshift").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn floats_use_seventeen_digits() {
        let text = to_json(&json!({"a": 2f64.sqrt(), "b": 1.0, "c": [0.1]}));
        assert_eq!(text, r#"{"a":1.4142135623730951e0,"b":1.0000000000000000e0,"c":[1.0000000000000001e-1]}"#);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["a"].as_f64(), Some(2f64.sqrt()));
        assert_eq!(back["c"][0].as_f64(), Some(0.1));
    }

    #[test]
    fn argument_parsing() {
        let c = cli(&["witness", "m.json", "--kind", "divergence", "--K", "8"]);
        assert!(matches!(c.command, Command::Witness { k: 8, kind: WitnessKind::Divergence, .. }));
        let c = cli(&["--seed", "9", "oracle-check", "--n", "3", "--exhaustive"]);
        assert_eq!(c.seed, Some(9));
        assert!(Cli::try_parse_from(["genshift", "oracle-check", "--n", "3"]).is_err());
        assert!(Cli::try_parse_from(["genshift", "oracle-check", "--n", "3", "--exhaustive", "--random", "4"]).is_err());
    }

    #[test]
    fn oracle_check_in_process() {
        let out = run(&cli(&["oracle-check", "--n", "3", "--exhaustive"])).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["maps_checked"], 27);
        assert_eq!(v["disagreements"], 0);
        let err = run(&cli(&["oracle-check", "--n", "9", "--exhaustive"])).unwrap_err();
        assert_eq!(err.code, EXIT_PARSE);
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::Integrity("x".into())), EXIT_INTEGRITY);
        assert_eq!(exit_code(&Error::NotInL2 { index: 1 }), EXIT_NOT_IN_L2);
        assert_eq!(witness_error(Error::Unsupported("x".into())).code, EXIT_WITNESS);
        assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_PARSE);
    }
}
