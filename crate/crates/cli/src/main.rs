//! Command-line front end: verification campaigns over the cube, worked
//! examples, and file transforms. Exit status 0 means every checked
//! inequality held, 1 means at least one violation, 2 means usage or I/O
//! errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use biased_cube::affine::WitnessParams;
use biased_cube::{io as cube_io, transform};
use biased_cube_cli::campaign::{
    run_campaign, run_counterexample, run_hk_single, run_jow, run_scan, CampaignConfig, Check,
    Mode, ScanConfig,
};
use biased_cube_cli::report::{fmt_f64, Report};

#[derive(Parser)]
#[command(
    name = "biased-cube",
    version,
    about = "Exact Fourier-analytic verification campaigns on the biased discrete cube"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SweepArgs {
    /// Coordinate count.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Probability of the high point, in (0, 1/2].
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    /// Random instances to draw; omitting it selects the exhaustive sweep
    /// where one exists.
    #[arg(long)]
    samples: Option<usize>,
    /// Seed of the counter-based generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Slack applied to every inequality comparison.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Write the per-instance CSV here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Read a function file and print its Walsh-Fourier spectrum.
    Transform {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the level-damping inequality on Boolean or random tables.
    VerifyHyper {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Single norm exponent in [1, 2]; omitting it scans the grid.
        #[arg(long)]
        q: Option<f64>,
    },
    /// Check the single-coordinate closeness bounds on Boolean tables.
    VerifyFkn {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Smallness constant of the conditional bound.
        #[arg(long, default_value_t = 0.01)]
        c0: f64,
    },
    /// Check the bounded-affine witness construction on random tables
    /// (symmetric cube only).
    VerifyThm3 {
        /// Coordinate count.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Probability of the high point; this check requires 0.5.
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Branch threshold base, 3 or 2.03.
        #[arg(long, default_value_t = 3.0)]
        base: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the Rademacher small-ball, tail-norm and moment-comparison
    /// inequalities on random coefficient vectors, or on one vector read
    /// from a file of whitespace-separated decimals.
    VerifyHk {
        /// Coefficient file; omit it to sweep random vectors.
        file: Option<PathBuf>,
        /// Coefficient count per random vector.
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every check family once and write one combined report.
    Scan {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.01)]
        c0: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 3.0)]
        base: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Worked examples.
    #[command(subcommand)]
    Example(ExampleCommand),
}

#[derive(Subcommand)]
enum ExampleCommand {
    /// The two-variable Boolean function with rho = 2 alpha beta and
    /// d / rho = 1 / sqrt(alpha).
    Counterexample {
        #[arg(long, default_value_t = 0.25)]
        alpha: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The truncated normalized sum over the scale grid {1, 2, 4}.
    Jow {
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn witness_params(base: f64) -> Result<WitnessParams> {
    WitnessParams::for_base(base)
        .with_context(|| format!("unsupported branch base {base}; use 3 or 2.03"))
}

fn sweep_config(check: Check, sweep: &SweepArgs) -> CampaignConfig {
    let mut cfg = CampaignConfig::defaults(check);
    cfg.n = sweep.n;
    cfg.alpha = sweep.alpha;
    cfg.seed = sweep.seed;
    cfg.tol = sweep.tol;
    match sweep.samples {
        Some(s) => {
            cfg.mode = Mode::Random;
            cfg.samples = s;
        }
        None => {
            // The table checks fall back to the exhaustive sweep; the
            // random-only checks keep their default sample count.
            if matches!(check, Check::Hyper | Check::Fkn) {
                cfg.mode = Mode::Exhaustive;
            } else {
                cfg.mode = Mode::Random;
            }
        }
    }
    cfg
}

/// Writes to standard output; a closed pipe downstream ends the process
/// quietly instead of panicking.
fn out_line(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(err) = writeln!(stdout, "{text}") {
        if err.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing stdout: {err}");
        std::process::exit(2);
    }
}

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<()> {
    out_line(&report.human_summary());
    if let Some(path) = out {
        report
            .write_csv(path)
            .with_context(|| format!("writing {}", path.display()))?;
        out_line(&format!("csv written to {}", path.display()));
    }
    Ok(())
}

fn run_transform(file: &PathBuf, out: Option<&PathBuf>) -> Result<()> {
    let text =
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let table = cube_io::parse_table(&text)?;
    let spectrum = transform(&table);
    out_line(&format!(
        "n={} alpha={} boolean={}",
        table.n(),
        fmt_f64(table.bias().alpha()),
        table.is_boolean()
    ));
    out_line(&format!("l2_norm={}", fmt_f64(table.l2_norm())));
    out_line(&format!("rho={}", fmt_f64(spectrum.rho())));
    for (k, w) in spectrum.level_weights().iter().enumerate() {
        out_line(&format!("level_weight[{k}]={}", fmt_f64(*w)));
    }
    out_line(cube_io::format_spectrum(&spectrum).trim_end());
    if let Some(path) = out {
        let mut csv = String::from("mask,popcount,coeff\n");
        for (mask, a) in spectrum.coeffs().iter().enumerate() {
            csv.push_str(&format!(
                "{mask},{},{}\n",
                (mask as u32).count_ones(),
                fmt_f64(*a)
            ));
        }
        std::fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
        out_line(&format!("csv written to {}", path.display()));
    }
    Ok(())
}

/// Runs a command, returning the number of violations found.
fn run(command: Command) -> Result<usize> {
    match command {
        Command::Transform { file, out } => {
            run_transform(&file, out.as_ref())?;
            Ok(0)
        }
        Command::VerifyHyper { sweep, q } => {
            let mut cfg = sweep_config(Check::Hyper, &sweep);
            cfg.q = q;
            let report = run_campaign(&cfg)?;
            emit(&report, sweep.out.as_ref())?;
            Ok(report.summary.violations)
        }
        Command::VerifyFkn { sweep, c0 } => {
            let mut cfg = sweep_config(Check::Fkn, &sweep);
            cfg.c0 = c0;
            let report = run_campaign(&cfg)?;
            emit(&report, sweep.out.as_ref())?;
            Ok(report.summary.violations)
        }
        Command::VerifyThm3 {
            n,
            alpha,
            samples,
            seed,
            tol,
            base,
            out,
        } => {
            let mut cfg = CampaignConfig::defaults(Check::BoundedAffine);
            cfg.n = n;
            cfg.alpha = alpha;
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.tol = tol;
            cfg.constants = witness_params(base)?;
            let report = run_campaign(&cfg)?;
            emit(&report, out.as_ref())?;
            Ok(report.summary.violations)
        }
        Command::VerifyHk {
            file,
            n,
            samples,
            seed,
            tol,
            out,
        } => {
            let report = match file {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let sum = cube_io::parse_rademacher(&text)?;
                    run_hk_single(&sum, tol)?
                }
                None => {
                    let mut cfg = CampaignConfig::defaults(Check::HitczenkoKwapien);
                    cfg.n = n;
                    cfg.samples = samples;
                    cfg.seed = seed;
                    cfg.tol = tol;
                    run_campaign(&cfg)?
                }
            };
            emit(&report, out.as_ref())?;
            Ok(report.summary.violations)
        }
        Command::Scan {
            samples,
            seed,
            c0,
            tol,
            base,
            out,
        } => {
            let cfg = ScanConfig {
                seed,
                samples,
                c0,
                tol,
                constants: witness_params(base)?,
            };
            if samples == 0 {
                bail!("scan needs at least one sample");
            }
            let report = run_scan(&cfg)?;
            emit(&report, out.as_ref())?;
            Ok(report.summary.violations)
        }
        Command::Example(example) => match example {
            ExampleCommand::Counterexample { alpha, tol, out } => {
                let bias = biased_cube::Bias::new(alpha)?;
                let ce = biased_cube::fkn::counterexample(bias);
                out_line(cube_io::format_table(&ce.table).trim_end());
                out_line(cube_io::format_spectrum(&transform(&ce.table)).trim_end());
                let report = run_counterexample(alpha, tol)?;
                emit(&report, out.as_ref())?;
                Ok(report.summary.violations)
            }
            ExampleCommand::Jow { n, tol, out } => {
                let report = run_jow(n, &[1.0, 2.0, 4.0], tol)?;
                emit(&report, out.as_ref())?;
                Ok(report.summary.violations)
            }
        },
    }
}

fn main() -> ExitCode {
    biased_cube_cli::init_thread_pool();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
