//! Library side of the `widthone` binary: argument definitions, dispatch and
//! the report types each subcommand renders.

pub mod bench;
pub mod commands;
pub mod error;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use widthone::limits::{ENV_MAX_ENTRIES, ENV_MAX_ENUM};
use widthone::{DimVector, Limits, MultiIndex, Multiplicity};

use crate::bench::Preset;
use crate::commands::Method;
use crate::error::{CliError, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};
use crate::verify::VerifyScope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Parser)]
#[command(name = "widthone", version, about = "Sum tensors of width one, exactly")]
pub struct Cli {
    #[command(flatten)]
    pub limits: LimitArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Largest dense tensor (number of entries) any command may allocate.
    #[arg(long, global = true, env = ENV_MAX_ENTRIES)]
    pub max_entries: Option<u64>,

    /// Largest number of objects any enumeration may visit.
    #[arg(long, global = true, env = ENV_MAX_ENUM)]
    pub max_enum: Option<u64>,

    /// Longest word the brute-force permutation routines accept.
    #[arg(long, global = true)]
    pub max_word_len: Option<usize>,
}

impl LimitArgs {
    fn resolve(&self) -> Limits {
        let d = Limits::default();
        Limits {
            max_entries: self.max_entries.unwrap_or(d.max_entries),
            max_enum: self.max_enum.unwrap_or(d.max_enum),
            max_word_len: self.max_word_len.unwrap_or(d.max_word_len),
        }
    }
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entrywise sum of all width-one tensors of shape n with entry sum s.
    Sum {
        /// Shape, comma separated, e.g. `2,2`.
        #[arg(long)]
        n: List,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value = "hpoly")]
        method: Method,
        #[command(flatten)]
        output: Output,
    },
    /// Eulerian polynomial of a multiset, by closed form (and brute force when small).
    Eulerian {
        /// Multiplicities, comma separated; zeros allowed.
        #[arg(long)]
        p: List,
        #[command(flatten)]
        output: Output,
    },
    /// f- and h-vector of the order complex of the box [1, x].
    Hvector {
        #[arg(long)]
        x: List,
        #[command(flatten)]
        output: Output,
    },
    /// List every width-one tensor of shape n with entry sum s.
    Enumerate {
        #[arg(long)]
        n: List,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Check every identity over a bounded grid; exits 4 on any failure.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_d: usize,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_s: usize,
        #[arg(long, default_value_t = 10)]
        series_len: usize,
        /// Only shapes with exactly this many dimensions.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, hide = true)]
        corrupt_binomial: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Time each method over a grid and print CSV.
    Bench {
        #[arg(long, value_enum, default_value = "both")]
        preset: Preset,
        /// Extra cell such as `2,2:10`; repeatable.
        #[arg(long = "cell", value_parser = bench::parse_cell)]
        cells: Vec<(DimVector, usize)>,
        #[arg(long, default_value_t = 1)]
        warmup: usize,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A comma-separated list of nonnegative integers such as `2,3,1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct List(pub Vec<usize>);

impl std::str::FromStr for List {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_list(s).map(List)
    }
}

/// Parse `2,3,1` into a vector.
pub fn parse_list(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}")))
        .collect()
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let limits = cli.limits.resolve();
    match cli.command {
        Command::Sum { n, s, method, output } => {
            let n = DimVector::new(n.0)?;
            let report = commands::cmd_sum(&n, s, method, &limits)?;
            emit(&report.render(output.format), output.out.as_ref())?;
            if output.format != Format::Plain {
                eprint!("{}", report.timing_lines());
            }
        }
        Command::Eulerian { p, output } => {
            let report = commands::cmd_eulerian(&Multiplicity::new(p.0)?, &limits)?;
            emit(&report.render(output.format), output.out.as_ref())?;
        }
        Command::Hvector { x, output } => {
            let report = commands::cmd_hvector(&MultiIndex::new(x.0)?, &limits)?;
            emit(&report.render(output.format), output.out.as_ref())?;
        }
        Command::Enumerate { n, s, output } => {
            let report = commands::cmd_enumerate(&DimVector::new(n.0)?, s, &limits)?;
            emit(&report.render(output.format), output.out.as_ref())?;
        }
        Command::Verify {
            max_d,
            max_n,
            max_s,
            series_len,
            d,
            corrupt_binomial,
            output,
        } => {
            if max_d == 0 || max_n == 0 || d == Some(0) {
                return Err(CliError::Usage("grid bounds must be positive".into()));
            }
            let scope = VerifyScope {
                max_d,
                max_n,
                max_s,
                series_len,
                only_d: d,
                corrupt_binomial,
            };
            let report = verify::cmd_verify(&scope, &limits)?;
            emit(&report.render(output.format), output.out.as_ref())?;
            if !report.passed {
                let err = CliError::Verification(report.failed_names());
                eprintln!("{}", err.to_json());
                return Ok(EXIT_VERIFY);
            }
        }
        Command::Bench {
            preset,
            cells,
            warmup,
            reps,
            out,
        } => {
            let mut grid = preset.cells();
            grid.extend(cells);
            let rows = bench::cmd_bench(&grid, warmup, reps, &limits)?;
            emit(&bench::render_csv(&rows), out.as_ref())?;
        }
    }
    Ok(EXIT_OK)
}

/// Parse `args` (program name first), run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
