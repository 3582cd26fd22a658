use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use patchflow_core::ellipse::{integrate_sampled, limit_angle, OdeSample};
use patchflow_core::geometry::normalize_axis_angle;
use patchflow_core::Ellipse;

use super::{drift, Checks};
use crate::error::CliError;
use crate::output::Table;

pub const HEADER: [&str; 6] = ["t", "a", "b", "theta", "sum_ab", "skew_inv"];

#[derive(Debug, Clone)]
pub struct OdeArgs {
    pub a0: f64,
    pub b0: f64,
    pub theta0: f64,
    pub t_end: f64,
    pub dt: f64,
    pub every: usize,
    pub limit_tolerance: Option<f64>,
    pub max_sum_ab_drift: Option<f64>,
    pub max_skew_drift: Option<f64>,
}

#[derive(Debug)]
pub struct OdeReport {
    pub samples: Vec<OdeSample>,
    pub path: PathBuf,
    /// `theta_inf` forward in time, `pi/2 - theta_inf` backward; `None` when
    /// the start is outside the domain of the limit formula.
    pub limit: Option<f64>,
}

/// A `.csv` path is the output file; anything else is a directory that
/// receives `ellipse_ode.csv`.
pub fn output_path(out: &Path) -> PathBuf {
    if out.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        out.to_path_buf()
    } else {
        out.join("ellipse_ode.csv")
    }
}

/// Integrates the ellipse ODE and writes `t, a, b, theta, sum_ab, skew_inv`
/// every `every` steps. The angle is continuous, not wrapped.
///
/// `--assert` checks the relative `a + b` drift, the absolute skew drift and
/// the terminal angle against the limit angle, each when configured.
pub fn run(args: &OdeArgs, out: &Path, assert: bool) -> Result<OdeReport, CliError> {
    if !(args.dt > 0.0) || args.every == 0 {
        return Err(CliError::Config("`dt` must be positive and `every` at least 1".into()));
    }
    let s0 = Ellipse::new(args.a0, args.b0, args.theta0);
    let samples = integrate_sampled(&s0, args.t_end, args.dt, args.every)?;
    let path = output_path(out);
    let mut t = Table::create(&path, &HEADER)?;
    for s in &samples {
        let c = s.conserved();
        t.numbers(&[s.t, s.state.a, s.state.b, s.state.theta, c.sum_ab, c.skew])?;
    }
    let path = t.finish()?;

    let limit = limit_angle(args.a0, args.b0, args.theta0).ok().map(|l| {
        if args.t_end >= 0.0 {
            l
        } else {
            FRAC_PI_2 - l
        }
    });
    let mut checks = Checks::default();
    checks.bound(
        "a + b drift",
        drift(samples.iter().map(|s| s.conserved().sum_ab), true),
        args.max_sum_ab_drift,
    );
    checks.bound("skew drift", drift(samples.iter().map(|s| s.conserved().skew), false), args.max_skew_drift);
    if let Some(tol) = args.limit_tolerance {
        match (limit, samples.last()) {
            (Some(l), Some(last)) => {
                let err = normalize_axis_angle(last.state.theta - l).abs();
                checks.at_most("terminal angle error", err, tol);
            }
            _ => checks.holds("the limit angle needs a0 > b0 and theta0 in [0, pi/2]", false),
        }
    }
    checks.finish(assert)?;
    Ok(OdeReport { samples, path, limit })
}
