//! Command-line surface and its validated form, [`ExperimentSpec`].

use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::grid::{parse_grid, parse_int_grid};
use crate::CliError;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "MONOPATH_OUT_DIR";

/// Refuses untruncated exact DP above this size.
pub const EXACT_GUARDRAIL_N: u64 = 50_000;

pub const DEFAULT_TRIALS: u64 = 10_000;
pub const MIN_SWEEP_TRIALS: u64 = 100;

/// Absolute tolerance of the tanh-form quadrature in `limit`.
pub const QUAD_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Exact P(1 -> n) by dynamic programming over the reachable count
    Exact,
    /// Monte Carlo P(1 -> n) from the gap process
    Simulate,
    /// Limit law: integral form, tanh/Gumbel form and f(b)
    Limit,
    /// Phase-transition curve: Monte Carlo at p(n, x) against the limit
    Sweep,
    /// Exploration statistic against the shifted Gumbel law
    Gumbel,
    /// Path counts to the floor(a/p)-th reachable vertex against Geometric(e^-a)
    Paths,
    /// Rest term of the geometric/exponential coupling
    Rest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Exact => "exact",
            Command::Simulate => "simulate",
            Command::Limit => "limit",
            Command::Sweep => "sweep",
            Command::Gumbel => "gumbel",
            Command::Paths => "paths",
            Command::Rest => "rest",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Monotone-path reachability experiments on Barak-Erdos random graphs.
///
/// Grids accept comma lists (`0.1,0.2`) or ranges `lin:start:stop:count` and
/// `geom:start:stop:count`.
#[derive(Debug, Parser)]
#[command(name = "monopath", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,

    /// Vertex counts
    #[arg(long = "n")]
    pub n: Option<String>,
    /// Edge probabilities
    #[arg(long = "p")]
    pub p: Option<String>,
    /// Critical-window coordinates
    #[arg(long = "x", allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Exploration budgets
    #[arg(long = "a")]
    pub a: Option<String>,
    /// Calibration parameters b > 0
    #[arg(long = "b")]
    pub b: Option<String>,
    /// Monte Carlo trials per grid point
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: u64,
    /// Master seed; trial i uses stream (seed, i)
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Truncation threshold of the exact DP
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output file; `-` for standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (defaults to the available parallelism)
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutputTarget {
    Stdout,
    File(PathBuf),
}

/// The grid a window-coordinate command is driven by.
#[derive(Clone, Debug, PartialEq)]
pub enum WindowGrid {
    X(Vec<f64>),
    B(Vec<f64>),
}

/// Validated description of one experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub command: Command,
    pub n: Vec<u64>,
    pub p: Vec<f64>,
    pub window: WindowGrid,
    pub a: Vec<f64>,
    pub trials: u64,
    pub master_seed: u64,
    pub truncation_eps: Option<f64>,
    pub output_format: OutputFormat,
    pub output: OutputTarget,
    pub threads: usize,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::BadArguments(msg.into())
}

fn required<T>(
    command: Command,
    flag: &str,
    raw: &Option<String>,
    parse: fn(&str) -> Result<Vec<T>, CliError>,
) -> Result<Vec<T>, CliError> {
    match raw {
        Some(text) => parse(text),
        None => Err(bad(format!("{} requires --{flag}", command.name()))),
    }
}

impl ExperimentSpec {
    /// Validates flag combinations. `out_dir` is the value of
    /// [`OUT_DIR_ENV`], consulted only when `--out` is absent.
    pub fn from_cli(cli: &Cli, out_dir: Option<PathBuf>) -> Result<Self, CliError> {
        use Command::*;
        let command = cli.command;
        let uses = |flag: &str| -> bool {
            match flag {
                "n" => matches!(command, Exact | Simulate | Sweep),
                "p" => matches!(command, Exact | Simulate | Gumbel | Paths | Rest),
                "x" | "b" => matches!(command, Limit | Sweep),
                "a" => matches!(command, Gumbel | Paths | Rest),
                "eps" => command == Exact,
                _ => true,
            }
        };
        for (flag, given) in [
            ("n", cli.n.is_some()),
            ("p", cli.p.is_some()),
            ("x", cli.x.is_some()),
            ("b", cli.b.is_some()),
            ("a", cli.a.is_some()),
            ("eps", cli.eps.is_some()),
        ] {
            if given && !uses(flag) {
                return Err(bad(format!("--{flag} is not used by {}", command.name())));
            }
        }

        let n = if uses("n") {
            required(command, "n", &cli.n, parse_int_grid)?
        } else {
            Vec::new()
        };
        let p = if uses("p") {
            required(command, "p", &cli.p, parse_grid)?
        } else {
            Vec::new()
        };
        let a = if uses("a") {
            required(command, "a", &cli.a, parse_grid)?
        } else {
            Vec::new()
        };
        let window = match (&cli.x, &cli.b) {
            (Some(_), Some(_)) => return Err(bad("--x and --b are mutually exclusive")),
            (Some(x), None) => WindowGrid::X(parse_grid(x)?),
            (None, Some(b)) => WindowGrid::B(parse_grid(b)?),
            (None, None) if uses("x") => {
                return Err(bad(format!("{} requires --x or --b", command.name())))
            }
            (None, None) => WindowGrid::X(Vec::new()),
        };

        if let Some(eps) = cli.eps {
            if !(eps >= 0.0 && eps.is_finite()) {
                return Err(bad(format!(
                    "--eps must be finite and nonnegative, got {eps}"
                )));
            }
        }
        if command == Exact {
            let eps_given = cli.eps.is_some_and(|e| e > 0.0);
            if let Some(&big) = n.iter().find(|&&v| v > EXACT_GUARDRAIL_N) {
                if !eps_given {
                    return Err(bad(format!(
                        "exact with n = {big} > {EXACT_GUARDRAIL_N} needs --eps > 0"
                    )));
                }
            }
        }

        let monte_carlo = matches!(command, Simulate | Sweep | Gumbel | Paths | Rest);
        if monte_carlo {
            let floor = if command == Sweep {
                MIN_SWEEP_TRIALS
            } else {
                2
            };
            if cli.trials < floor {
                return Err(bad(format!(
                    "{} needs --trials >= {floor}, got {}",
                    command.name(),
                    cli.trials
                )));
            }
        }

        let threads = match cli.threads {
            Some(0) => return Err(bad("--threads must be positive")),
            Some(t) => t,
            None => std::thread::available_parallelism().map_or(1, |t| t.get()),
        };

        let output = match &cli.out {
            Some(path) if path.as_os_str() == "-" => OutputTarget::Stdout,
            Some(path) => OutputTarget::File(path.clone()),
            None => match out_dir {
                Some(dir) => OutputTarget::File(dir.join(format!(
                    "{}.{}",
                    command.name(),
                    cli.format.extension()
                ))),
                None => OutputTarget::Stdout,
            },
        };

        Ok(ExperimentSpec {
            command,
            n,
            p,
            window,
            a,
            trials: cli.trials,
            master_seed: cli.seed,
            truncation_eps: cli.eps,
            output_format: cli.format,
            output,
            threads,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(args: &[&str]) -> Result<ExperimentSpec, CliError> {
        let mut argv = vec!["monopath"];
        argv.extend_from_slice(args);
        let cli = Cli::try_parse_from(argv).map_err(|e| bad(e.to_string()))?;
        ExperimentSpec::from_cli(&cli, None)
    }

    #[test]
    fn exact_grid() {
        let s = spec(&["exact", "--n", "2,3", "--p", "0.5"]).unwrap();
        assert_eq!(s.n, vec![2, 3]);
        assert_eq!(s.trials, DEFAULT_TRIALS);
        assert_eq!(s.master_seed, 0);
        assert_eq!(s.output, OutputTarget::Stdout);
    }

    #[test]
    fn rejects_unused_or_missing_flags() {
        assert!(spec(&["exact", "--n", "3"]).is_err());
        assert!(spec(&["exact", "--n", "3", "--p", "0.5", "--a", "1"]).is_err());
        assert!(spec(&["limit", "--x", "0", "--b", "1"]).is_err());
        assert!(spec(&["limit"]).is_err());
        assert!(spec(&["sweep", "--n", "1000", "--x", "0", "--trials", "10"]).is_err());
        assert!(spec(&["gumbel", "--a", "1", "--p", "0.01", "--trials", "1"]).is_err());
    }

    #[test]
    fn exact_guardrail() {
        assert!(spec(&["exact", "--n", "60000", "--p", "1e-4"]).is_err());
        assert!(spec(&["exact", "--n", "60000", "--p", "1e-4", "--eps", "0"]).is_err());
        assert!(spec(&["exact", "--n", "60000", "--p", "1e-4", "--eps", "1e-14"]).is_ok());
    }

    #[test]
    fn negative_window_values() {
        let s = spec(&["limit", "--x", "-3,-1,0"]).unwrap();
        assert_eq!(s.window, WindowGrid::X(vec![-3.0, -1.0, 0.0]));
    }

    #[test]
    fn output_directory_from_environment() {
        let cli =
            Cli::try_parse_from(["monopath", "limit", "--x", "0", "--format", "json"]).unwrap();
        let s = ExperimentSpec::from_cli(&cli, Some(PathBuf::from("/tmp/results"))).unwrap();
        assert_eq!(
            s.output,
            OutputTarget::File(PathBuf::from("/tmp/results/limit.json"))
        );
        let cli = Cli::try_parse_from(["monopath", "limit", "--x", "0", "--out", "-"]).unwrap();
        let s = ExperimentSpec::from_cli(&cli, Some(PathBuf::from("/tmp/results"))).unwrap();
        assert_eq!(s.output, OutputTarget::Stdout);
    }
}
