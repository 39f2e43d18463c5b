//! Command-line flags and the validated run configuration built from them.

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use pstlab_core::chain::DEFAULT_SYMMETRY_TOL;

#[derive(Debug, Parser)]
#[command(
    name = "pstlab",
    version,
    about = "Certify, synthesize, simulate and audit perfect-state-transfer chains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify a chain, evaluate its speed bound and audit the proof steps.
    Analyze(AnalyzeArgs),
    /// Build a chain from a spectrum file or the equally spaced family.
    Synth(SynthArgs),
    /// Write the end-to-end fidelity trace of a chain as CSV.
    Evolve(EvolveArgs),
    /// Saturation ratios of the equally spaced chains over a range of N.
    Scan(ScanArgs),
    /// Random search for admissible spectra that violate the speed bound.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Chain JSON: {"N": .., "B": [..], "J": [..]}.
    #[arg(long)]
    pub input: PathBuf,
    /// Also write the full report as JSON.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Relative tolerance of the mirror-symmetry test.
    #[arg(long, default_value_t = DEFAULT_SYMMETRY_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Spectrum JSON: {"lambda": [..]} or {"unit": u, "multipliers": [..]}.
    #[arg(long, required_unless_present = "canonical", conflicts_with = "canonical")]
    pub input: Option<PathBuf>,
    /// Equally spaced chain with this many sites.
    #[arg(long, value_name = "N")]
    pub canonical: Option<usize>,
    /// Chain JSON destination; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Last sampled time.
    #[arg(long)]
    pub t_max: f64,
    /// Number of samples on [0, t-max], endpoints included.
    #[arg(long, default_value_t = 1001)]
    pub steps: usize,
    #[arg(long, default_value_t = DEFAULT_SYMMETRY_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Inclusive range of chain lengths, e.g. 2..40.
    #[arg(long, value_name = "A..B")]
    pub n: SizeRange,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Chain length.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Largest odd gap multiplier drawn.
    #[arg(long, default_value_t = 9)]
    pub cap: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// `A..B` (inclusive) or a single `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeRange {
    pub start: usize,
    pub end: usize,
}

impl FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|e| format!("`{x}` is not a chain length: {e}"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if start > end {
            return Err(format!("empty range {start}..{end}"));
        }
        Ok(SizeRange { start, end })
    }
}

impl SizeRange {
    pub fn to_range(self) -> RangeInclusive<usize> {
        self.start..=self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Analyze,
    Synth,
    Evolve,
    Scan,
    Search,
}

/// Where `synth` takes its spectrum from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthSource {
    File(PathBuf),
    Canonical(usize),
}

/// Flags after validation. Paths and numeric ranges are checked here, before
/// any computation starts.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub symmetry_tol: f64,
    pub synth_source: Option<SynthSource>,
    pub n_range: Option<SizeRange>,
    pub samples: usize,
    pub cap: u32,
    pub seed: u64,
    pub t_max: f64,
    pub steps: usize,
}

impl RunConfig {
    fn base(command: CommandKind) -> Self {
        RunConfig {
            command,
            input: None,
            output: None,
            symmetry_tol: DEFAULT_SYMMETRY_TOL,
            synth_source: None,
            n_range: None,
            samples: 0,
            cap: 0,
            seed: 0,
            t_max: 0.0,
            steps: 0,
        }
    }

    pub fn from_cli(cli: Cli) -> Result<Self> {
        let config = match cli.command {
            Command::Analyze(a) => RunConfig {
                input: Some(a.input),
                output: a.output,
                symmetry_tol: a.tol,
                ..Self::base(CommandKind::Analyze)
            },
            Command::Synth(a) => {
                let source = match (a.input, a.canonical) {
                    (Some(path), None) => SynthSource::File(path),
                    (None, Some(n)) => SynthSource::Canonical(n),
                    _ => bail!("synth takes exactly one of --input and --canonical"),
                };
                RunConfig {
                    input: match &source {
                        SynthSource::File(p) => Some(p.clone()),
                        SynthSource::Canonical(_) => None,
                    },
                    synth_source: Some(source),
                    output: a.output,
                    ..Self::base(CommandKind::Synth)
                }
            }
            Command::Evolve(a) => RunConfig {
                input: Some(a.input),
                output: a.output,
                symmetry_tol: a.tol,
                t_max: a.t_max,
                steps: a.steps,
                ..Self::base(CommandKind::Evolve)
            },
            Command::Scan(a) => RunConfig {
                n_range: Some(a.n),
                output: a.output,
                ..Self::base(CommandKind::Scan)
            },
            Command::Search(a) => RunConfig {
                n_range: Some(SizeRange { start: a.n, end: a.n }),
                samples: a.samples,
                cap: a.cap,
                seed: a.seed,
                output: a.output,
                ..Self::base(CommandKind::Search)
            },
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if let Some(input) = &self.input {
            if !input.is_file() {
                bail!("input file {} does not exist", input.display());
            }
        }
        if let Some(output) = &self.output {
            check_output(output)?;
        }
        if !(self.symmetry_tol.is_finite() && self.symmetry_tol > 0.0) {
            bail!("--tol must be positive, got {}", self.symmetry_tol);
        }
        if let Some(SynthSource::Canonical(n)) = self.synth_source {
            if n < 2 {
                bail!("--canonical needs N >= 2, got {n}");
            }
        }
        match self.command {
            CommandKind::Evolve => {
                if !(self.t_max.is_finite() && self.t_max > 0.0) {
                    bail!("--t-max must be positive, got {}", self.t_max);
                }
                if self.steps < 2 {
                    bail!("--steps must be at least 2, got {}", self.steps);
                }
            }
            CommandKind::Scan | CommandKind::Search => {
                let range = self.n_range.expect("set for scan and search");
                if range.start < 2 {
                    bail!("--n must be at least 2, got {}", range.start);
                }
            }
            _ => {}
        }
        if self.command == CommandKind::Search {
            if self.samples == 0 {
                bail!("--samples must be at least 1");
            }
            if self.cap.is_multiple_of(2) {
                bail!("--cap must be odd, got {}", self.cap);
            }
        }
        Ok(())
    }
}

fn check_output(path: &Path) -> Result<()> {
    if path.is_dir() {
        bail!("output {} is a directory", path.display());
    }
    let parent = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let meta = std::fs::metadata(parent)
        .with_context(|| format!("output directory {} is not accessible", parent.display()))?;
    if !meta.is_dir() {
        bail!("output directory {} is not a directory", parent.display());
    }
    Ok(())
}
