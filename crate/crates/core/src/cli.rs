//! `addcyc` command-line driver. Each subcommand is a thin adapter over a
//! library call; `--json` prints the library value as pretty JSON.
//!
//! Exit codes: 0 success, 1 verification or computation failure, 2 usage
//! error (bad arguments or unreadable input files).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::additive_code::{AdditiveCyclicCode, CodeDescriptor};
use crate::cyclotomic::CosetStructure;
use crate::distance::{default_threads, distance, DistanceOptions, DEFAULT_BUDGET};
use crate::error::Error;
use crate::quantum::{nearly_self_orthogonal_params, stabilizer_params, QuantumParams};
use crate::search::{run_search_to_file, SearchConfig};
use crate::symplectic::{classify_orthogonality, dual};
use crate::tables::verify_tables;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "addcyc", version, about = "Additive cyclic codes over F_{p^2} and the quantum codes they yield")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cyclotomic cosets, factors of x^n - 1, pairing and idempotents.
    Cosets {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        json: bool,
    },
    /// Dimension, linearity, canonical generators and components of a code.
    Info {
        code: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Writes the symplectic dual's descriptor.
    Dual {
        code: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// The value e = dim C - dim(C ∩ C^⊥s) with its bucket decomposition.
    Classify {
        code: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Minimum distance by exhaustive enumeration, or the cyclic bound.
    Distance {
        code: PathBuf,
        /// log2 of the largest number of combinations to enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u32,
        #[arg(long)]
        bound_only: bool,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Quantum code parameters.
    Quantum {
        code: PathBuf,
        /// Defaults to `nso` for p = 2 and `stabilizer` otherwise.
        #[arg(long, value_enum)]
        construction: Option<ConstructionArg>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u32,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Enumerates codes with bounded e; results are appended as JSON lines.
    Search {
        /// JSON, or TOML when the extension is `.toml`.
        config: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        resume: bool,
    },
    /// Checks the shipped record table.
    VerifyTables {
        /// A row, a range `a-b`, or a comma list of either.
        #[arg(long, default_value = "1-10")]
        rows: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u32,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstructionArg {
    Stabilizer,
    Nso,
}

/// A failed command: the message and its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_FAILURE, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_FAILURE, message: e.to_string() }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

#[derive(Debug, Serialize)]
pub struct ComponentRow {
    pub index: usize,
    pub coset: Vec<usize>,
    pub factor: Vec<u32>,
    pub paired_with: usize,
    pub form: String,
    /// Coefficients of `s` for an omega form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<u32>>,
    pub dim: usize,
}

#[derive(Debug, Serialize)]
pub struct InfoReport {
    pub descriptor: CodeDescriptor,
    pub dimension: usize,
    pub linear: bool,
    pub components: Vec<ComponentRow>,
}

pub fn info_report(code: &AdditiveCyclicCode) -> InfoReport {
    let cs = code.structure();
    let components = code
        .components()
        .iter()
        .enumerate()
        .map(|(i, form)| ComponentRow {
            index: i,
            coset: cs.coset(i).to_vec(),
            factor: cs.factor(i).coeffs().to_vec(),
            paired_with: cs.pair_of(i),
            form: form.label().to_string(),
            s: match form {
                crate::additive_code::ComponentForm::Omega(s) => Some(s.coeffs().to_vec()),
                _ => None,
            },
            dim: cs.coset_size(i) * form.generator_count(),
        })
        .collect();
    InfoReport { descriptor: code.descriptor(), dimension: code.dimension(), linear: code.is_linear(), components }
}

fn read_descriptor(path: &Path) -> std::result::Result<AdditiveCyclicCode, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let desc = CodeDescriptor::from_json(&text).map_err(|e| {
        Failure::usage(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column()))
    })?;
    desc.validate().map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    AdditiveCyclicCode::from_descriptor(&desc).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn parse_rows(list: &str) -> std::result::Result<Vec<usize>, Failure> {
    let bad = || Failure::usage(format!("--rows: cannot parse `{list}` (expected e.g. 1-10 or 1,3,5)"));
    let mut rows = Vec::new();
    for part in list.split(',') {
        let part = part.trim();
        match part.split_once('-') {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|_| bad())?;
                let b: usize = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                rows.extend(a..=b);
            }
            None => rows.push(part.parse().map_err(|_| bad())?),
        }
    }
    if let Some(&r) = rows.iter().find(|&&r| !(1..=10).contains(&r)) {
        return Err(Failure::usage(format!("--rows: row {r} is not in 1..=10")));
    }
    Ok(rows)
}

fn options(budget: u32, threads: Option<usize>) -> DistanceOptions {
    DistanceOptions { budget, threads: threads.unwrap_or_else(default_threads).max(1) }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn coeffs(c: &[u32]) -> String {
    let inner: Vec<String> = c.iter().map(u32::to_string).collect();
    format!("[{}]", inner.join(","))
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |d| d.to_string())
}

fn quantum_text(q: &QuantumParams) -> String {
    let mut s = String::new();
    let d = q.d_exact.map_or_else(|| format!(">={}", q.d_low), |d| d.to_string());
    let _ = writeln!(s, "[[{}, {}, {}]]_{}", q.n, q.k, d, q.p);
    let _ = writeln!(s, "construction  {:?}", q.provenance.construction);
    let _ = writeln!(s, "d_low         {}", q.d_low);
    let _ = writeln!(s, "d_exact       {}", opt(q.d_exact));
    let _ = writeln!(s, "method        {:?}", q.distance_method);
    let _ = writeln!(s, "pure          {}", q.pure.map_or_else(|| "unknown".to_string(), |b| b.to_string()));
    if let Some(r) = q.r {
        let _ = writeln!(s, "r             {r}");
    }
    s
}

fn execute(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Cosets { n, p, json: as_json } => {
            let cs = CosetStructure::build(n, p).map_err(|e| Failure::usage(e.to_string()))?;
            let dump = cs.dump();
            if as_json {
                writeln!(out, "{}", json(&dump))?;
            } else {
                writeln!(out, "n = {n}, p = {p}, {} cosets", dump.cosets.len())?;
                for i in 0..dump.cosets.len() {
                    writeln!(
                        out,
                        "{i:>3}  pair {:>3}  Z = {:?}  f = {}",
                        dump.pairing[i],
                        dump.cosets[i],
                        coeffs(&dump.factors[i])
                    )?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Info { code, json: as_json } => {
            let code = read_descriptor(&code)?;
            let report = info_report(&code);
            if as_json {
                writeln!(out, "{}", json(&report))?;
            } else {
                let d = &report.descriptor;
                writeln!(out, "n = {}, p = {}, dim = {}, linear = {}", d.n, d.p, report.dimension, report.linear)?;
                writeln!(out, "g = {}", coeffs(&d.g))?;
                writeln!(out, "k = {}", coeffs(&d.k))?;
                writeln!(out, "h = {}", coeffs(&d.h))?;
                for c in &report.components {
                    let s = c.s.as_deref().map(|s| format!(" s = {}", coeffs(s))).unwrap_or_default();
                    writeln!(out, "{:>3}  Z = {:?}  {}{}  dim {}", c.index, c.coset, c.form, s, c.dim)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Dual { code, output } => {
            let code = read_descriptor(&code)?;
            let d = dual(&code).descriptor();
            std::fs::write(&output, d.to_json() + "\n")
                .map_err(|e| Failure::usage(format!("{}: {e}", output.display())))?;
            writeln!(out, "{}", d.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Classify { code, json: as_json } => {
            let code = read_descriptor(&code)?;
            let report = classify_orthogonality(&code)?;
            if as_json {
                writeln!(out, "{}", json(&report))?;
            } else {
                writeln!(out, "dim {}  dim(C ∩ C^⊥s) {}  e {}", report.dim, report.dim_intersection, report.e)?;
                writeln!(out, "self-orthogonal {}  self-dual {}", report.is_self_orthogonal, report.is_self_dual)?;
                for b in report.buckets.iter().filter(|b| b.cost > 0) {
                    writeln!(out, "  {:<3} cosets {:?} cost {}", b.bucket.label(), b.cosets, b.cost)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Distance { code, budget, bound_only, threads, json: as_json } => {
            let code = read_descriptor(&code)?;
            let result = distance(&code, options(budget, threads), bound_only)?;
            if as_json {
                writeln!(out, "{}", json(&result))?;
            } else {
                writeln!(out, "d = {}  bound = {}  method {:?}", opt(result.value), opt(result.bound), result.method)?;
                if let Some(w) = &result.witness {
                    writeln!(out, "witness a = {}  b = {}", coeffs(&w.a), coeffs(&w.b))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Quantum { code, construction, budget, threads, json: as_json } => {
            let code = read_descriptor(&code)?;
            let opts = options(budget, threads);
            let construction = construction.unwrap_or(if code.p() == 2 {
                ConstructionArg::Nso
            } else {
                ConstructionArg::Stabilizer
            });
            let q = match construction {
                ConstructionArg::Stabilizer => stabilizer_params(&code, opts)?,
                ConstructionArg::Nso => nearly_self_orthogonal_params(&code, opts)?,
            };
            if as_json {
                writeln!(out, "{}", json(&q))?;
            } else {
                write!(out, "{}", quantum_text(&q))?;
            }
            Ok(EXIT_OK)
        }
        Command::Search { config, output, resume } => {
            let cfg = SearchConfig::load(&config).map_err(|e| Failure::usage(e.to_string()))?;
            let summary = run_search_to_file(&cfg, &output, resume)
                .map_err(|e| Failure { code: EXIT_FAILURE, message: format!("{e:#}") })?;
            writeln!(
                out,
                "{} leaves, {} records, {}",
                summary.leaves,
                summary.emitted,
                if summary.complete { "complete" } else { "stopped at time budget" }
            )?;
            Ok(EXIT_OK)
        }
        Command::VerifyTables { rows, budget, threads, json: as_json } => {
            let rows = parse_rows(&rows)?;
            let report = verify_tables(&rows, options(budget, threads))?;
            if as_json {
                writeln!(out, "{}", json(&report))?;
            } else {
                writeln!(out, "{report}")?;
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn cli_main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
