use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use patchflow_cli::commands::{self, ellipse_ode::OdeArgs, Options};
use patchflow_cli::config::{KernelName, RunConfig};
use patchflow_cli::CliError;

#[derive(Parser)]
#[command(name = "patchflow", version, about = "Contour dynamics of vortex and transport patches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML run configuration; every key has a default.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides `out_dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Check the run against the configured tolerances; exit 4 on failure.
    #[arg(long)]
    assert: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a patch and record diagnostics.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Kernel (overrides `kernel`).
        #[arg(long, value_parser = parse_kernel)]
        kernel: Option<KernelName>,
    },
    /// Integrate the ellipse ODE. `--out` may name a .csv file.
    EllipseOde {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a0: Option<f64>,
        #[arg(long)]
        b0: Option<f64>,
        #[arg(long)]
        theta0: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        t_end: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
        /// Write every this many steps.
        #[arg(long)]
        every: Option<usize>,
    },
    /// Simulate ellipses and compare with the exact evolution.
    Compare(Common),
    /// Velocity grid and interior Beurling probes.
    Field(Common),
    /// Second-derivative profile near a bump.
    Vasin(Common),
    /// Truncated singular integrals at a marker.
    Pv(Common),
    /// Solid and boundary forms of the commutator identity.
    Commutator(Common),
}

fn parse_kernel(s: &str) -> Result<KernelName, String> {
    match s {
        "cauchy" => Ok(KernelName::Cauchy),
        "euler" => Ok(KernelName::Euler),
        "aggregation" => Ok(KernelName::Aggregation),
        "linear-map" => Ok(KernelName::LinearMap),
        _ => Err(format!("unknown kernel `{s}`; expected one of cauchy, euler, aggregation, linear-map")),
    }
}

fn load(common: &Common) -> Result<(RunConfig, Options), CliError> {
    let cfg = match &common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let opts =
        Options { out: common.out.clone().unwrap_or_else(|| cfg.out_dir.clone()), assert: common.assert };
    Ok((cfg, opts))
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("PATCHFLOW_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| {
        CliError::Config(format!("PATCHFLOW_THREADS must be a non-negative integer, got `{v}`"))
    })?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    Ok(())
}

fn wrote(path: &Path) {
    eprintln!("wrote {}", path.display());
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads()?;
    match cli.command {
        Command::Simulate { common, kernel } => {
            let (mut cfg, opts) = load(&common)?;
            if let Some(k) = kernel {
                cfg.kernel = k;
                cfg.check()?;
            }
            let r = commands::simulate::run(&cfg, &opts)?;
            eprintln!(
                "t = {}: {} steps, {} resamples, {} frames",
                r.final_time, r.steps, r.resamples, r.frames
            );
            wrote(&opts.out.join("diagnostics.csv"));
        }
        Command::EllipseOde { common, a0, b0, theta0, t_end, dt, every } => {
            let (cfg, opts) = load(&common)?;
            let args = OdeArgs {
                a0: a0.unwrap_or(cfg.a0),
                b0: b0.unwrap_or(cfg.b0),
                theta0: theta0.unwrap_or(cfg.theta0),
                t_end: t_end.unwrap_or(cfg.t_end),
                dt: dt.unwrap_or(cfg.ode_dt),
                every: every.unwrap_or(cfg.ode_every),
                limit_tolerance: cfg.limit_tolerance,
                max_sum_ab_drift: cfg.max_sum_ab_drift,
                max_skew_drift: cfg.max_skew_drift,
            };
            let r = commands::ellipse_ode::run(&args, &opts.out, opts.assert)?;
            if let Some(last) = r.samples.last() {
                eprintln!(
                    "t = {}: a = {}, b = {}, theta = {}, sin 2 theta = {}",
                    last.t,
                    last.state.a,
                    last.state.b,
                    last.state.theta,
                    (2.0 * last.state.theta).sin()
                );
            }
            wrote(&r.path);
        }
        Command::Compare(common) => {
            let (cfg, opts) = load(&common)?;
            let r = commands::compare::run(&cfg, &opts)?;
            for c in &r.cases {
                eprintln!("{}: max error {:e}", c.label, c.max_error());
            }
            for c in &r.convergence {
                eprintln!(
                    "{} {} = {}: max error {:e}, ratio {}",
                    c.case,
                    c.parameter,
                    c.value,
                    c.max_error,
                    c.ratio.map_or("-".into(), |r| format!("{r:.3}"))
                );
            }
            wrote(&opts.out.join("compare.csv"));
        }
        Command::Field(common) => {
            let (cfg, opts) = load(&common)?;
            let r = commands::field::run(&cfg, &opts)?;
            eprintln!("{} grid points, {} probes", r.grid.len(), r.probes.len());
            wrote(&opts.out.join("field.csv"));
        }
        Command::Vasin(common) => {
            let (cfg, opts) = load(&common)?;
            let r = commands::vasin::run(&cfg, &opts)?;
            eprintln!(
                "N = {}: slope {:.4}, product ratio {:.3}",
                r.n_markers,
                r.profile.slope(),
                r.profile.product_ratio()
            );
            wrote(&opts.out.join("vasin.csv"));
        }
        Command::Pv(common) => {
            let (cfg, opts) = load(&common)?;
            let r = commands::pv::run(&cfg, &opts)?;
            for run in &r.runs {
                eprintln!(
                    "{} ({}): limit {:.12e}",
                    run.case,
                    commands::pv::setting_label(run.setting),
                    run.result.extrapolated
                );
            }
            wrote(&opts.out.join("pv.csv"));
        }
        Command::Commutator(common) => {
            let (cfg, opts) = load(&common)?;
            let r = commands::commutator::run(&cfg, &opts)?;
            let worst = r.rows.iter().map(|row| row.result.discrepancy() / row.tol).fold(0.0, f64::max);
            eprintln!("{} rows, worst |DS - DB| / tol = {worst:.3}", r.rows.len());
            wrote(&opts.out.join("commutator.csv"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("patchflow: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
