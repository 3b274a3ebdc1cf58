//! Command-line front end for `rankgray`.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | invalid flags or malformed input |
//! | 3 | unsupported `n` |
//! | 4 | internal verification failure |
//! | 5 | the verified sequence violates the snake constraints |
//! | 6 | search budget exhausted before the search completed |

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rankgray::analysis::{
    self, longest_snake_search_with, m6_cycle, rankin_excludes, upper_bound, verify_snake_in,
    RankinInstance, SearchBudget, SearchOptions, SnakeReport, VerifyMode,
};
use rankgray::hamgen::{generate_with_ceiling, DEFAULT_CEILING};
use rankgray::hypergraph::Hypergraph;
use rankgray::{Error, GenSequence, SuccessorCover, MAX_N};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_VIOLATION: i32 = 5;
pub const EXIT_BUDGET: i32 = 6;

/// Environment variable that overrides the largest `n` accepted by `gen`.
pub const MAX_N_ENV: &str = "RANKGRAY_MAX_N";

/// `--format perms` writes every permutation; above this `n` it is refused.
pub const PERMS_MAX_N: usize = 9;

#[derive(Debug, Parser)]
#[command(
    name = "rankgray",
    version,
    about = "Snake-in-the-box cycles for rank modulation codes"
)]
pub struct Cli {
    /// Worker threads for verification (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Start permutation and generator indices.
    Seq,
    /// One successor label per even permutation, in rank order.
    Succ,
    /// One permutation per line in visiting order.
    Perms,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    An,
    Sn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a Hamiltonian cycle of A_n (odd n >= 7).
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "seq")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a sequence file as a snake.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "an")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
    /// Exhaustive search for the longest snake through the identity.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<usize>,
        /// Time limit in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Only look for snakes of at least this length.
        #[arg(long)]
        min_length: Option<usize>,
    },
    /// Apply Rankin's criterion to the two-generator graph.
    Rankin {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<usize>,
    },
    /// Dump the triangle hypergraph on ordered pairs.
    Hypergraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected: bool,
        /// The five elements a,b,c,d,e of the 6-hyperedge (default n-4..n).
        #[arg(long, value_delimiter = ',')]
        tuple: Option<Vec<u8>>,
        /// Print hyperedges in linkage order with their shared vertex.
        #[arg(long, requires = "connected")]
        order: bool,
    },
    /// Emit the 315-vertex snake in S_6.
    M6 {
        #[arg(long, value_enum, default_value = "seq")]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print n!/2, the largest possible snake length.
    Bound {
        #[arg(long)]
        n: usize,
    },
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::new(EXIT_USAGE, format!("i/o error: {e}"))
    }
}

fn library_failure(e: Error) -> Failure {
    let code = match e {
        Error::Unsupported { .. } => EXIT_UNSUPPORTED,
        Error::Construction(_) | Error::NotHamiltonian(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    };
    Failure::new(code, e.to_string())
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let pool = match cli.threads {
        Some(0) => return Err(Failure::new(EXIT_USAGE, "--threads must be positive")),
        Some(t) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?,
        ),
        None => None,
    };
    let verify = |c: &GenSequence, mode: VerifyMode| -> Result<SnakeReport, Failure> {
        let r = match &pool {
            Some(p) => p.install(|| verify_snake_in(c, mode)),
            None => verify_snake_in(c, mode),
        };
        r.map_err(library_failure)
    };

    match &cli.command {
        Command::Gen {
            n,
            format,
            out: path,
        } => {
            let n = *n;
            let ceiling = ceiling()?;
            if n % 2 == 0 {
                return Err(Failure::new(
                    EXIT_USAGE,
                    format!("gen needs odd n, got {n}"),
                ));
            }
            if n == 5 {
                return Err(Failure::new(
                    EXIT_UNSUPPORTED,
                    "A_5 has no directed Hamiltonian cycle with generators tau_3, tau_5 (Rankin's criterion)",
                ));
            }
            if n < 7 || n > ceiling {
                return Err(Failure::new(
                    EXIT_UNSUPPORTED,
                    format!(
                        "n = {n} is outside 7..={ceiling} (set {MAX_N_ENV} to raise the ceiling)"
                    ),
                ));
            }
            if n > analysis::verify::VERIFY_MAX_N {
                return Err(Failure::new(
                    EXIT_UNSUPPORTED,
                    format!("n = {n} is beyond the verifier's range"),
                ));
            }
            if *format == OutputFormat::Perms && n > PERMS_MAX_N {
                return Err(Failure::new(
                    EXIT_USAGE,
                    format!("--format perms is limited to n <= {PERMS_MAX_N}"),
                ));
            }
            let c = generate_with_ceiling(n, ceiling).map_err(library_failure)?;
            let report = verify(&c, VerifyMode::Alternating)?;
            if !(report.is_hamiltonian_in_an && report.is_valid()) {
                return Err(Failure::new(
                    EXIT_INTERNAL,
                    format!("generated sequence failed verification:\n{report}"),
                ));
            }
            emit(&c, *format, path.as_deref(), out)?;
            Ok(EXIT_OK)
        }

        Command::Verify {
            input,
            mode,
            report: report_format,
        } => {
            let file = fs::File::open(input)
                .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", input.display())))?;
            let c = GenSequence::read_text(io::BufReader::new(file))
                .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", input.display())))?;
            let mode = match mode {
                Mode::An => VerifyMode::Alternating,
                Mode::Sn => VerifyMode::Symmetric,
            };
            let report = verify(&c, mode)?;
            match report_format {
                ReportFormat::Text => write!(out, "{report}")?,
                ReportFormat::Json => {
                    let json = serde_json::to_string(&report)
                        .map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
                    writeln!(out, "{json}")?;
                }
            }
            Ok(if report.is_valid() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            })
        }

        Command::Search {
            n,
            gens,
            budget,
            min_length,
        } => {
            if let Some(b) = budget {
                if !(b.is_finite() && *b > 0.0) {
                    return Err(Failure::new(
                        EXIT_USAGE,
                        "--budget must be a positive number",
                    ));
                }
            }
            let options = SearchOptions {
                budget: budget.map_or(SearchBudget::unlimited(), SearchBudget::seconds),
                min_length: *min_length,
            };
            let r = longest_snake_search_with(*n, gens, &options).map_err(library_failure)?;
            writeln!(out, "length: {}", r.length)?;
            writeln!(out, "exact: {}", r.exact)?;
            writeln!(out, "nodes: {}", r.nodes)?;
            if let Some(w) = &r.witness {
                writeln!(out, "witness:")?;
                w.write_text(&mut *out)?;
            }
            Ok(if r.exact { EXIT_OK } else { EXIT_BUDGET })
        }

        Command::Rankin { n, gens } => {
            let [a, b] = gens.as_slice() else {
                return Err(Failure::new(
                    EXIT_USAGE,
                    "--gens takes exactly two generators",
                ));
            };
            let mut excluded = false;
            for (x, y) in [(*a, *b), (*b, *a)] {
                let inst = RankinInstance::for_generators(*n, x, y).map_err(library_failure)?;
                excluded |= rankin_excludes(&inst).map_err(library_failure)?;
            }
            writeln!(
                out,
                "{}",
                if excluded { "excluded" } else { "inconclusive" }
            )?;
            Ok(EXIT_OK)
        }

        Command::Hypergraph {
            n,
            connected,
            tuple,
            order,
        } => {
            let n = *n;
            if n > MAX_N {
                return Err(Failure::new(
                    EXIT_UNSUPPORTED,
                    format!("n must be at most {MAX_N}"),
                ));
            }
            let h = if *connected {
                let t = match tuple {
                    Some(t) => <[u8; 5]>::try_from(t.as_slice()).map_err(|_| {
                        Failure::new(EXIT_USAGE, "--tuple takes exactly five elements")
                    })?,
                    None if n >= 5 => {
                        let m = n as u8;
                        [m - 4, m - 3, m - 2, m - 1, m]
                    }
                    None => return Err(Failure::new(EXIT_USAGE, "--connected needs n >= 5")),
                };
                Hypergraph::build_connected(n, t)
            } else {
                if tuple.is_some() {
                    return Err(Failure::new(EXIT_USAGE, "--tuple requires --connected"));
                }
                Hypergraph::build_acyclic(n)
            }
            .map_err(library_failure)?;
            if *order {
                for item in h.order_hyperedges().map_err(library_failure)? {
                    match item.shared {
                        Some(p) => writeln!(out, "{} | {p}", item.edge)?,
                        None => writeln!(out, "{} | -", item.edge)?,
                    }
                }
            } else {
                out.write_all(h.dump().as_bytes())?;
            }
            Ok(EXIT_OK)
        }

        Command::M6 { format, out: path } => {
            if *format == OutputFormat::Succ {
                return Err(Failure::new(
                    EXIT_USAGE,
                    "the S_6 snake is not a cover of A_6; use seq or perms",
                ));
            }
            let c = m6_cycle().map_err(library_failure)?;
            let report = verify(&c, VerifyMode::Symmetric)?;
            if !(report.is_cycle && report.is_valid() && report.length == 315) {
                return Err(Failure::new(
                    EXIT_INTERNAL,
                    format!("stored sequence failed verification:\n{report}"),
                ));
            }
            emit(&c, *format, path.as_deref(), out)?;
            Ok(EXIT_OK)
        }

        Command::Bound { n } => {
            writeln!(out, "{}", upper_bound(*n).map_err(library_failure)?)?;
            Ok(EXIT_OK)
        }
    }
}

fn ceiling() -> Result<usize, Failure> {
    match std::env::var(MAX_N_ENV) {
        Err(_) => Ok(DEFAULT_CEILING),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(c) if c <= MAX_N => Ok(c),
            _ => Err(Failure::new(
                EXIT_USAGE,
                format!("{MAX_N_ENV} must be an integer at most {MAX_N}, got {v:?}"),
            )),
        },
    }
}

fn write_format(c: &GenSequence, format: OutputFormat, w: &mut dyn Write) -> Result<(), Failure> {
    match format {
        OutputFormat::Seq => c.write_text(w)?,
        OutputFormat::Succ => {
            let cover = SuccessorCover::from_sequences(c.n(), std::slice::from_ref(c))
                .map_err(library_failure)?;
            cover.write_text(w)?;
        }
        OutputFormat::Perms => {
            for p in c.walk().take(c.len()) {
                writeln!(w, "{p}")?;
            }
        }
    }
    Ok(())
}

/// Writes to `path` through a temporary file in the same directory, or to
/// `stdout` when no path is given.
fn emit(
    c: &GenSequence,
    format: OutputFormat,
    path: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    let Some(path) = path else {
        let mut w = BufWriter::new(stdout);
        write_format(c, format, &mut w)?;
        w.flush()?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        write_format(c, format, &mut w)?;
        w.flush()?;
    }
    tmp.persist(path).map_err(|e| Failure::from(e.error))?;
    Ok(())
}
