use patchflow_core::ellipse::{aggregation, conserved, kirchhoff, states_at};
use patchflow_core::geometry::{make_ellipse_contour, normalize_axis_angle};
use patchflow_core::{evolve, Ellipse, KernelKind, KernelSpec, SimConfig};

use super::{drift, Checks, Options};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{num, Table};

pub const HEADER: [&str; 15] = [
    "case",
    "t",
    "a_sim",
    "b_sim",
    "theta_sim",
    "a_ode",
    "b_ode",
    "theta_ode",
    "err_a",
    "err_b",
    "err_theta",
    "sum_ab_sim",
    "skew_sim",
    "sum_ab_ode",
    "skew_ode",
];
pub const CONVERGENCE_HEADER: [&str; 5] = ["case", "parameter", "value", "max_error", "ratio"];

/// Fitted and exact ellipse at one diagnostics time. Axis errors are
/// relative, the angle error is absolute (modulo pi).
#[derive(Debug, Clone, Copy)]
pub struct CompareRow {
    pub t: f64,
    pub sim: Ellipse,
    pub oracle: Ellipse,
}

impl CompareRow {
    pub fn errors(&self) -> [f64; 3] {
        [
            (self.sim.a - self.oracle.a).abs() / self.oracle.a,
            (self.sim.b - self.oracle.b).abs() / self.oracle.b,
            normalize_axis_angle(self.sim.theta - self.oracle.theta).abs(),
        ]
    }

    pub fn max_error(&self) -> f64 {
        self.errors().into_iter().fold(0.0, f64::max)
    }
}

#[derive(Debug)]
pub struct CompareCase {
    pub label: String,
    pub rows: Vec<CompareRow>,
    /// Areas of the simulated contour at the same times.
    pub area: Vec<f64>,
}

impl CompareCase {
    pub fn max_error(&self) -> f64 {
        self.rows.iter().map(CompareRow::max_error).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub case: String,
    pub parameter: &'static str,
    pub value: f64,
    pub max_error: f64,
    /// Error of the previous refinement level over this one.
    pub ratio: Option<f64>,
}

#[derive(Debug)]
pub struct CompareReport {
    pub cases: Vec<CompareCase>,
    pub convergence: Vec<ConvergenceRow>,
}

/// The exact ellipse under `k` at time `t`.
fn oracle(k: &KernelSpec, s0: &Ellipse, times: &[f64], oracle_dt: f64) -> Result<Vec<Ellipse>, CliError> {
    // kernel scale s turns time t into s t
    let scaled: Vec<f64> = times.iter().map(|t| t * k.scale).collect();
    match k.kind {
        KernelKind::Cauchy => Ok(states_at(s0, &scaled, oracle_dt)?),
        KernelKind::EulerVorticity => Ok(scaled.iter().map(|&t| kirchhoff(s0, t)).collect()),
        KernelKind::AggregationNewtonian => Ok(scaled.iter().map(|&t| aggregation(s0, t)).collect()),
        KernelKind::LinearMapOfGradN(_) => {
            Err(CliError::Config("`compare` has no ellipse oracle for the linear-map kernel".into()))
        }
    }
}

fn run_case(
    k: &KernelSpec,
    s0: &Ellipse,
    sim: &SimConfig,
    oracle_dt: f64,
    label: &str,
) -> Result<CompareCase, CliError> {
    let c0 = make_ellipse_contour(s0.a, s0.b, s0.theta, sim.n_markers)?;
    let traj = evolve(&c0, k, sim)?;
    if let Some(b) = &traj.breakdown {
        return Err(CliError::Breakdown(format!("{label} at t = {}: {}", b.t, b.reason)));
    }
    let times: Vec<f64> = traj.diagnostics.iter().map(|d| d.t).collect();
    let exact = oracle(k, s0, &times, oracle_dt)?;
    let rows = traj
        .diagnostics
        .iter()
        .zip(exact)
        .map(|(d, o)| CompareRow { t: d.t, sim: d.fit, oracle: o })
        .collect();
    Ok(CompareCase {
        label: label.to_string(),
        rows,
        area: traj.diagnostics.iter().map(|d| d.area).collect(),
    })
}

/// Runs the simulation and the exact ellipse evolution side by side for
/// each ellipse case, writing `compare.csv`, plus `convergence.csv` when
/// `refine_dt` or `refine_markers` is set.
///
/// `--assert` checks the largest error against `compare_tolerance`, the
/// configured drift bounds (area and `a + b` relative, skew absolute) on
/// the simulation and, for the invariants, on the oracle, and the error
/// ratios of the refinement runs.
pub fn run(cfg: &RunConfig, opts: &Options) -> Result<CompareReport, CliError> {
    let k = cfg.kernel_spec();
    let sim = cfg.sim_config();
    let ellipses = cfg.ellipse_cases()?;
    std::fs::create_dir_all(&opts.out)?;

    let mut cases = Vec::new();
    let mut convergence = Vec::new();
    for s0 in &ellipses {
        let label = format!("ellipse({},{},{})", s0.a, s0.b, s0.theta);
        cases.push(run_case(&k, s0, &sim, cfg.oracle_dt, &label)?);
        let mut push_level = |parameter: &'static str, value: f64, sim: &SimConfig| -> Result<(), CliError> {
            let err = run_case(&k, s0, sim, cfg.oracle_dt, &label)?.max_error();
            let ratio = convergence
                .last()
                .filter(|r: &&ConvergenceRow| r.case == label && r.parameter == parameter)
                .map(|r| r.max_error / err);
            convergence.push(ConvergenceRow { case: label.clone(), parameter, value, max_error: err, ratio });
            Ok(())
        };
        for &dt in &cfg.refine_dt {
            push_level("dt", dt, &SimConfig { dt, ..sim })?;
        }
        for &n in &cfg.refine_markers {
            push_level("n_markers", n as f64, &SimConfig { n_markers: n, ..sim })?;
        }
    }

    let mut t = Table::create(&opts.out.join("compare.csv"), &HEADER)?;
    for case in &cases {
        for r in &case.rows {
            let [ea, eb, et] = r.errors();
            let (cs, co) = (conserved(&r.sim), conserved(&r.oracle));
            let mut fields = vec![case.label.clone()];
            fields.extend(
                [r.t, r.sim.a, r.sim.b, r.sim.theta, r.oracle.a, r.oracle.b, r.oracle.theta, ea, eb, et]
                    .into_iter()
                    .chain([cs.sum_ab, cs.skew, co.sum_ab, co.skew])
                    .map(num),
            );
            t.row(fields)?;
        }
    }
    t.finish()?;
    if !convergence.is_empty() {
        let mut t = Table::create(&opts.out.join("convergence.csv"), &CONVERGENCE_HEADER)?;
        for r in &convergence {
            t.row([
                r.case.clone(),
                r.parameter.to_string(),
                num(r.value),
                num(r.max_error),
                num(r.ratio.unwrap_or(f64::NAN)),
            ])?;
        }
        t.finish()?;
    }

    let mut checks = Checks::default();
    for case in &cases {
        let l = &case.label;
        checks.at_most(&format!("{l}: max error"), case.max_error(), cfg.compare_tolerance);
        let sim_inv = || case.rows.iter().map(|r| conserved(&r.sim));
        let ode_inv = || case.rows.iter().map(|r| conserved(&r.oracle));
        checks.bound(&format!("{l}: area drift"), drift(case.area.iter().copied(), true), cfg.max_area_drift);
        checks.bound(
            &format!("{l}: a + b drift"),
            drift(sim_inv().map(|c| c.sum_ab), true),
            cfg.max_sum_ab_drift,
        );
        checks.bound(
            &format!("{l}: skew drift"),
            drift(sim_inv().map(|c| c.skew), false),
            cfg.max_skew_drift,
        );
        checks.bound(
            &format!("{l}: oracle a + b drift"),
            drift(ode_inv().map(|c| c.sum_ab), true),
            cfg.max_sum_ab_drift,
        );
        checks.bound(
            &format!("{l}: oracle skew drift"),
            drift(ode_inv().map(|c| c.skew), false),
            cfg.max_skew_drift,
        );
    }
    for r in &convergence {
        if let Some(ratio) = r.ratio {
            let min = if r.parameter == "dt" { cfg.min_dt_ratio } else { cfg.min_markers_ratio };
            checks.at_least(&format!("{}: error ratio at {} = {}", r.case, r.parameter, r.value), ratio, min);
        }
    }
    checks.finish(opts.assert)?;
    Ok(CompareReport { cases, convergence })
}
