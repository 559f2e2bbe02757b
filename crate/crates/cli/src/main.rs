use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use fivebrane_core::index::{index_chi, minimal_index, single_particle_fn, sugra_chi, sugra_single_particle, TheorySpec};
use fivebrane_core::series::json::{render_text, to_json_string};
use fivebrane_core::verify::{comparison_table, load_comparison, render_table, Comparison, Suite, Verifier, DEFAULT_FIXTURES};
use fivebrane_core::{Error, Frame, HalfInt, Series};

#[derive(Parser, Debug)]
#[command(name = "fivebrane", version, about = "Exact expansions and checks of fivebrane local characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Theory {
    Stack(TheorySpec),
    Sugra,
    Minimal(u32),
}

impl FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "sugra" {
            return Ok(Theory::Sugra);
        }
        if let Some(n) = s.strip_prefix("minimal") {
            return match n.parse::<u32>() {
                Ok(n) if n >= 1 => Ok(Theory::Minimal(n)),
                _ => Err(format!("bad theory {s:?} (expected minimal<n> with n >= 1)")),
            };
        }
        s.parse::<TheorySpec>()
            .map(Theory::Stack)
            .map_err(|_| format!("bad theory {s:?} (expected A<n>, gl<n>, sugra or minimal<n>)"))
    }
}

fn parse_order(s: &str) -> Result<HalfInt, String> {
    s.parse::<HalfInt>().map_err(|e| e.to_string())
}

fn parse_frame(s: &str) -> Result<Frame, String> {
    s.parse::<Frame>().map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand an index as a truncated series.
    Expand {
        #[arg(long)]
        theory: Theory,
        /// Truncation order in q (integer or half-integer).
        #[arg(long, default_value = "4", value_parser = parse_order)]
        order: HalfInt,
        #[arg(long, default_value = "y", value_parser = parse_frame)]
        frame: Frame,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Print the single-particle index instead of its PExp.
        #[arg(long)]
        single: bool,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        /// Suite order; each suite has its own default.
        #[arg(long, value_parser = parse_order)]
        order: Option<HalfInt>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value = DEFAULT_FIXTURES)]
        fixtures: PathBuf,
        /// Worker threads (0 uses all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Side-by-side table of computed and transcribed coefficients.
    Table {
        comparison: String,
        /// Highest q-power shown.
        #[arg(long, value_parser = parse_order)]
        order: Option<HalfInt>,
        /// Must match the frame of the fixture (y for kim, x for imamura).
        #[arg(long, value_parser = parse_frame)]
        frame: Option<Frame>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value = DEFAULT_FIXTURES)]
        fixtures: PathBuf,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::MissingFixture(_) => Failure::Usage(e.to_string()),
            e => Failure::Runtime(e.to_string()),
        }
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    Ok(pool.install(f))
}

/// Write to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Runtime(e.to_string())),
        _ => Ok(()),
    }
}

fn expand(theory: Theory, order: HalfInt, single: bool) -> Result<Series, Error> {
    match (theory, single) {
        (Theory::Stack(spec), false) => index_chi(spec, order),
        (Theory::Stack(spec), true) => single_particle_fn(spec).expand(order),
        (Theory::Sugra, false) => sugra_chi(order),
        (Theory::Sugra, true) => sugra_single_particle().expand(order),
        (Theory::Minimal(n), false) => {
            // total degree equals the q-power after z3, w2 -> 0
            let degree = (order.twice() + 1) / 2 - 1;
            if degree < 0 {
                return Err(Error::Parse(format!("order {order} is too small for the minimal index")));
            }
            minimal_index(n, degree as u32)
        }
        (Theory::Minimal(n), true) => {
            let terms: Vec<_> = (-1..=n as i64 - 2).map(fivebrane_core::index::g_min).collect::<Result<_, _>>()?;
            fivebrane_core::EulerExpr::sum(&terms).expand(order)
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Expand { theory, order, frame, format, single } => {
            let s = expand(theory, order, single)?;
            match format {
                Format::Text => emit(&format!("{}\n", render_text(&s, frame)))?,
                Format::Json => emit(&format!("{}\n", to_json_string(&s, frame)))?,
            }
            Ok(true)
        }
        Command::Verify { suite, order, format, fixtures, jobs } => {
            let suite: Suite = suite.parse()?;
            let verifier = Verifier::new(fixtures);
            let report = with_pool(jobs, || verifier.run(suite, order))?;
            match format {
                Format::Text => emit(&report.to_text())?,
                Format::Json => emit(&format!("{}\n", report.to_json()))?,
            }
            Ok(report.passed)
        }
        Command::Table { comparison, order, frame, format, fixtures, jobs } => {
            let comparison: Comparison = comparison.parse()?;
            let mut file = load_comparison(&fixtures, comparison)?;
            if let Some(frame) = frame {
                if frame != file.frame {
                    return Err(Failure::Usage(format!(
                        "the {comparison} fixtures are transcribed in the {} frame, not {frame}",
                        file.frame
                    )));
                }
            }
            if let Some(order) = order {
                file.entries.retain(|e| e.q_power <= order);
            }
            let rows = with_pool(jobs, || comparison_table(&file))??;
            match format {
                Format::Text => emit(&render_table(&rows))?,
                Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&rows).expect("rows are serialisable")))?,
            }
            Ok(rows.iter().all(|r| r.status != fivebrane_core::verify::Status::Fail))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
