//! `jok`: command-line access to the Jordan algebra kernels.
//!
//! Every subcommand writes one JSON document to standard output. Exit codes:
//! 0 success, 1 usage error, 2 violated precondition, 3 numerical failure,
//! 4 verification failure.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use jok_core::algebra::{make_algebra, AlgebraSpec, Element};
use jok_core::correspondence::{catalog_spec, correspondence_report, render_tables, stable_range, theta_descriptor};
use jok_core::correspondence::{GroupSpec, StableRange, TensorProblem};
use jok_core::error::JordanError;
use jok_core::peirce::{frobenius_components_closed_form, frobenius_map, n_t_element, peirce_system};
use jok_core::spectral::{char_poly, determinant, signature_of, spectral_decompose, Signature};
use jok_core::verify::run_suite;

#[derive(Parser, Debug)]
#[command(name = "jok", version, about = "Euclidean Jordan algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Algebra as FAMILY:PARAM (symR, hermC, hermH, spin, albert)
    #[arg(long, global = true)]
    algebra: Option<AlgebraSpec>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, default_value_t = 1000)]
    trials: usize,

    /// Cluster / zero tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Input JSON file (standard input when absent)
    #[arg(long = "in", global = true)]
    input: Option<std::path::PathBuf>,

    /// Human-readable output
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbit signature of an element
    Classify,
    /// Eigenvalues, idempotents and characteristic polynomial of an element
    Spectral,
    /// Peirce dimensions of an idempotent, optionally decomposing "x"
    Peirce,
    /// Frobenius transformation data for {"idempotent", "t", "x", "x_prime"?, "z"?}
    Frobenius,
    /// Correspondence report for a tensor product of singular representations
    Tensor {
        /// Group, e.g. E7, sp:5, u:3, ostar:3, o2:7, I4:7
        #[arg(long)]
        group: GroupSpec,
        /// Orbit signatures as P,M
        #[arg(long, num_args = 1.., required = true)]
        signatures: Vec<Signature>,
        /// Label of the representation π
        #[arg(long, default_value = "π")]
        pi: String,
    },
    /// The group table and the dual-space table
    Table {
        #[arg(long, value_enum)]
        name: Option<TableName>,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableName {
    Groups,
    Xpq,
}

enum Failure {
    Usage(String),
    Core(JordanError),
    Verify(String),
}

impl From<JordanError> for Failure {
    fn from(e: JordanError) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Core(e) => match e {
                JordanError::InvalidParameter(_) => 1,
                e if e.is_numerical() => 3,
                JordanError::InvariantViolation(_) => 3,
                _ => 2,
            },
            Failure::Verify(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => format!("usage error: {m}"),
            Failure::Core(e) => e.to_string(),
            Failure::Verify(m) => m.clone(),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(f) = configure_threads() {
        eprintln!("{}", f.message());
        return ExitCode::from(f.exit_code());
    }
    match run(&cli) {
        Ok(out) => {
            print_stdout(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Verify(report)) => {
            print_stdout(&report);
            eprintln!("verification failed");
            ExitCode::from(4)
        }
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

// A closed pipe on the reader side is not an error worth reporting.
fn print_stdout(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("JOK_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n >= 1)
        .ok_or_else(|| Failure::Usage(format!("JOK_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot configure thread pool: {e}")))
}

fn run(cli: &Cli) -> Outcome {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::Usage(format!("--tol must be positive and finite, got {}", cli.tol)));
    }
    if cli.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    match &cli.command {
        Command::Classify => classify(cli),
        Command::Spectral => spectral(cli),
        Command::Peirce => peirce(cli),
        Command::Frobenius => frobenius(cli),
        Command::Tensor { group, signatures, pi } => tensor(cli, *group, signatures, pi),
        Command::Table { name } => table(cli, *name),
        Command::Verify { suite } => verify(cli, suite),
    }
}

fn emit<T: Serialize>(cli: &Cli, value: &T) -> Outcome {
    let out = if cli.pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    out.map_err(|e| Failure::Usage(format!("cannot serialize output: {e}")))
}

fn read_input(cli: &Cli) -> Result<Value, Failure> {
    let text = match &cli.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("input is not valid JSON: {e}")))
}

/// An element given either as `{"algebra", "coords"}` or as a bare coordinate
/// array together with `--algebra`.
fn parse_element(cli: &Cli, value: &Value, what: &str) -> Result<Element, Failure> {
    let element = if value.is_array() {
        let spec = cli
            .algebra
            .ok_or_else(|| Failure::Usage(format!("{what} is a bare coordinate array; --algebra is required")))?;
        let coords: Vec<f64> = serde_json::from_value(value.clone())
            .map_err(|e| Failure::Usage(format!("{what}: coordinates must be numbers: {e}")))?;
        Element::new(&make_algebra(spec.family, spec.param)?, coords)?
    } else {
        serde_json::from_value::<Element>(value.clone()).map_err(|e| Failure::Usage(format!("{what}: {e}")))?
    };
    if let Some(spec) = cli.algebra {
        if spec != element.algebra().spec() {
            return Err(JordanError::AlgebraMismatch {
                left: spec.to_string(),
                right: element.algebra().spec().to_string(),
            }
            .into());
        }
    }
    Ok(element)
}

fn field<'a>(value: &'a Value, key: &str) -> Option<&'a Value> {
    value.as_object().and_then(|o| o.get(key))
}

fn required<'a>(value: &'a Value, key: &str) -> Result<&'a Value, Failure> {
    field(value, key).ok_or_else(|| Failure::Usage(format!("input is missing the field {key:?}")))
}

fn classify(cli: &Cli) -> Outcome {
    let x = parse_element(cli, &read_input(cli)?, "input")?;
    #[derive(Serialize)]
    struct Out {
        signature: Signature,
    }
    let signature = signature_of(&x, cli.tol)?;
    emit(cli, &Out { signature })
}

fn spectral(cli: &Cli) -> Outcome {
    let x = parse_element(cli, &read_input(cli)?, "input")?;
    let dec = spectral_decompose(&x, cli.tol)?;
    let coeffs = char_poly(&x).coeffs;
    let det = determinant(&x);
    if !det.is_finite() || coeffs.iter().any(|c| !c.is_finite()) {
        return Err(JordanError::NumericalFailure("characteristic polynomial overflows f64".into()).into());
    }
    #[derive(Serialize)]
    struct Out {
        eigenvalues: Vec<f64>,
        multiplicities: Vec<usize>,
        idempotents: Vec<Element>,
        char_poly: Vec<f64>,
        determinant: f64,
        signature: Signature,
        warnings: Vec<String>,
    }
    emit(
        cli,
        &Out {
            char_poly: coeffs,
            determinant: det,
            signature: signature_of(&x, cli.tol)?,
            eigenvalues: dec.eigenvalues,
            multiplicities: dec.multiplicities,
            idempotents: dec.idempotents,
            warnings: dec.warnings,
        },
    )
}

fn peirce(cli: &Cli) -> Outcome {
    let input = read_input(cli)?;
    let (c, x) = match field(&input, "idempotent") {
        Some(c) => (
            parse_element(cli, c, "idempotent")?,
            field(&input, "x").map(|x| parse_element(cli, x, "x")).transpose()?,
        ),
        None => (parse_element(cli, &input, "idempotent")?, None),
    };
    let system = peirce_system(&c)?;
    #[derive(Serialize)]
    struct Out<'a> {
        idempotent: &'a Element,
        dims: [usize; 3],
        #[serde(skip_serializing_if = "Option::is_none")]
        components: Option<[Element; 3]>,
    }
    let components = x.map(|x| system.components(&x)).transpose()?.map(|(a, b, c)| [a, b, c]);
    emit(cli, &Out { idempotent: &system.idempotent, dims: system.dims, components })
}

fn frobenius(cli: &Cli) -> Outcome {
    let input = read_input(cli)?;
    let c = parse_element(cli, required(&input, "idempotent")?, "idempotent")?;
    let t = required(&input, "t")?
        .as_f64()
        .ok_or_else(|| Failure::Usage("field \"t\" must be a number".into()))?;
    let x = parse_element(cli, required(&input, "x")?, "x")?;
    let x_prime = match field(&input, "x_prime") {
        Some(v) => parse_element(cli, v, "x_prime")?,
        None => x.scale(-0.5),
    };
    let n_t = n_t_element(&c, t, &x)?;
    let components = frobenius_components_closed_form(&c, &x_prime, t, &x)?;
    let z_matrix = match field(&input, "z") {
        Some(v) => {
            let z = parse_element(cli, v, "z")?;
            let m = frobenius_map(&c, &z)?.into_matrix();
            Some((0..m.nrows()).map(|i| m.row(i).iter().copied().collect::<Vec<f64>>()).collect::<Vec<_>>())
        }
        None => None,
    };
    #[derive(Serialize)]
    struct Out {
        n_t: Element,
        x_prime: Element,
        components: jok_core::peirce::FrobeniusComponents,
        #[serde(skip_serializing_if = "Option::is_none")]
        tau_matrix: Option<Vec<Vec<f64>>>,
    }
    emit(cli, &Out { n_t, x_prime, components, tau_matrix: z_matrix })
}

fn tensor(cli: &Cli, group: GroupSpec, signatures: &[Signature], pi: &str) -> Outcome {
    let group = catalog_spec(group)?;
    let problem = TensorProblem::new(group, signatures.to_vec())?;
    let report = correspondence_report(&problem);
    let theta = if stable_range(&problem) == StableRange::Violated {
        None
    } else {
        Some(theta_descriptor(&problem, pi)?)
    };
    #[derive(Serialize)]
    struct Out<'a> {
        group: &'a jok_core::correspondence::GroupDescriptor,
        signatures: &'a [Signature],
        report: jok_core::correspondence::CorrespondenceReport,
        theta: Option<jok_core::correspondence::ThetaDescriptor>,
    }
    emit(cli, &Out { group: &problem.group, signatures: &problem.signatures, report, theta })
}

fn table(cli: &Cli, name: Option<TableName>) -> Outcome {
    let (groups, xpq) = render_tables();
    if cli.pretty {
        let text = match name {
            Some(TableName::Groups) => groups,
            Some(TableName::Xpq) => xpq,
            None => format!("{groups}\n{xpq}"),
        };
        return Ok(text.trim_end_matches('\n').to_string());
    }
    #[derive(Serialize)]
    struct Out {
        #[serde(skip_serializing_if = "Option::is_none")]
        groups_table: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        xpq_table: Option<String>,
    }
    let out = match name {
        Some(TableName::Groups) => Out { groups_table: Some(groups), xpq_table: None },
        Some(TableName::Xpq) => Out { groups_table: None, xpq_table: Some(xpq) },
        None => Out { groups_table: Some(groups), xpq_table: Some(xpq) },
    };
    serde_json::to_string(&out).map_err(|e| Failure::Usage(e.to_string()))
}

fn verify(cli: &Cli, suite: &str) -> Outcome {
    let report = run_suite(suite, cli.seed, cli.trials)?;
    let text = if cli.pretty {
        let mut lines: Vec<String> = report
            .checks
            .iter()
            .map(|c| {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let notes = if c.notes.is_empty() { String::new() } else { format!("  [{}]", c.notes.join("; ")) };
                format!("{status} {} ({} samples, {} failures){notes}", c.name, c.samples, c.failures)
            })
            .collect();
        lines.push(format!("suite {}: {} passed, {} failed", report.suite, report.passed, report.failed));
        lines.join("\n")
    } else {
        serde_json::to_string(&report).map_err(|e| Failure::Usage(e.to_string()))?
    };
    if report.all_passed() {
        Ok(text)
    } else {
        Err(Failure::Verify(text))
    }
}
