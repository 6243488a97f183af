use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use e7fv::atlas::Atlas;
use e7fv::carter::{build_diagram, NodeLabels};
use e7fv::liealg::{bracket11, jordan_decompose, FourVector, GradedElement};
use e7fv::nilpotent::{
    classify_nilpotent, search_normal_form_capped, solve_f, Characteristic, Sl2Triple, SEARCH_CAP,
};
use e7fv::suites::{run_suite, Suite};
use thiserror::Error;

const ATLAS_ENV: &str = "E7_ATLAS_PATH";

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] e7fv::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e7fv::Error::Usage(_) | e7fv::Error::Parse { .. }) => 2,
            CliError::Io { .. } => 3,
            CliError::Lib(_) | CliError::Failed(_) => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "e7fv",
    version,
    about = "Exact computations on four-vectors in the graded E7 algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites against the atlas.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Worker threads for per-row checks.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print an sl2 triple for a stored orbit or a characteristic.
    Sl2 {
        #[arg(long, conflicts_with = "marks", required_unless_present = "marks")]
        orbit: Option<u32>,
        /// Seven marks, e.g. 0001000.
        #[arg(long)]
        marks: Option<String>,
    },
    /// Classify a four-vector read from a file.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Print or export the Carter diagram of a stored normal form.
    Carter {
        #[arg(long)]
        orbit: u32,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Merge dashed pairs until none remain.
        #[arg(long)]
        contract: bool,
        #[arg(long, value_enum, default_value_t = Labels::Indices)]
        labels: Labels,
    },
    /// Write the closure diagram in DOT format.
    Hasse {
        #[arg(long)]
        dot: PathBuf,
    },
    /// Bracket of two four-vectors, an element of sl8.
    Bracket {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Dump the atlas as JSON.
    Export {
        #[arg(long)]
        json: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Labels {
    Indices,
    Letters,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: e7fv::Error| e.to_string())
}

fn load_atlas() -> CliResult<Atlas> {
    match std::env::var_os(ATLAS_ENV) {
        Some(path) => {
            let path = PathBuf::from(path);
            let text = read(&path)?;
            Ok(Atlas::from_json(&text)?)
        }
        None => Ok(Atlas::embedded().clone()),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

/// Line format first, then the compact `e1234 + ...` form.
fn read_fourvector(path: &Path) -> CliResult<FourVector> {
    let text = read(path)?;
    FourVector::parse_text(&text)
        .or_else(|err| FourVector::parse_expr(text.trim()).map_err(|_| err))
        .map_err(Into::into)
}

fn verify(suite: Suite, seed: u64, jobs: Option<usize>, format: Format) -> CliResult<()> {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Lib(e7fv::Error::Usage(e.to_string())))?;
    }
    let atlas = load_atlas()?;
    let reports = run_suite(suite, &atlas, seed);
    match format {
        Format::Text => {
            for r in &reports {
                println!("{r}");
            }
        }
        Format::Json => {
            let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
            println!("{json}");
        }
    }
    let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} checks failed")));
    }
    Ok(())
}

fn sl2(orbit: Option<u32>, marks: Option<String>) -> CliResult<()> {
    let (h, e) = match (orbit, marks) {
        (Some(n), _) => {
            let rec = load_atlas()?.orbit_record(n)?;
            (rec.characteristic.to_h(), rec.normal_form)
        }
        (None, Some(m)) => {
            let c: Characteristic = m.parse()?;
            let h = c.to_h();
            let e = search_normal_form_capped(&h, 7, SEARCH_CAP)?.ok_or_else(|| {
                CliError::Failed(format!("no normal form with characteristic {c}"))
            })?;
            (h, e)
        }
        (None, None) => unreachable!("clap requires one of --orbit and --marks"),
    };
    let f = solve_f(&h, &e)?.ok_or_else(|| CliError::Failed("no f with [e,f] = h".into()))?;
    println!("{}", Sl2Triple { h, e, f });
    Ok(())
}

fn classify(input: &Path) -> CliResult<()> {
    let t = read_fourvector(input)?;
    if t.is_zero() {
        println!("zero");
        return Ok(());
    }
    let (s, n) = jordan_decompose(&GradedElement::from_fourvector(t.clone()))?;
    if s.is_zero() {
        let (orbit, triple) = classify_nilpotent(&load_atlas()?, &t)?;
        println!(
            "nilpotent, orbit {orbit}, marks {}",
            triple.characteristic()?
        );
    } else if n.is_zero() {
        println!("semisimple");
    } else {
        println!("mixed");
        println!("semisimple part: {}", s.part1);
        println!("nilpotent part: {}", n.part1);
    }
    Ok(())
}

fn carter(orbit: u32, dot: Option<PathBuf>, contract: bool, labels: Labels) -> CliResult<()> {
    let rec = load_atlas()?.orbit_record(orbit)?;
    let mut d = build_diagram(&rec.normal_form);
    if contract {
        d = d.contract_all();
    }
    let labels = match labels {
        Labels::Indices => NodeLabels::Indices,
        Labels::Letters => NodeLabels::Letters,
    };
    let text = d.to_dot(labels);
    match dot {
        Some(path) => write(&path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Verify {
            suite,
            seed,
            jobs,
            format,
        } => verify(suite, seed, jobs, format),
        Command::Sl2 { orbit, marks } => sl2(orbit, marks),
        Command::Classify { input } => classify(&input),
        Command::Carter {
            orbit,
            dot,
            contract,
            labels,
        } => carter(orbit, dot, contract, labels),
        Command::Hasse { dot } => write(&dot, &load_atlas()?.hasse_dot()),
        Command::Bracket { a, b } => {
            println!(
                "{}",
                bracket11(&read_fourvector(&a)?, &read_fourvector(&b)?)
            );
            Ok(())
        }
        Command::Export { json } => write(&json, &load_atlas()?.to_json()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("e7fv: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
