use patchflow_core::analysis::{pv_boundary, pv_solid, BoundaryKernel, Density, PvResult};

use super::{Checks, Options};
use crate::config::{PvSetting, RunConfig};
use crate::error::CliError;
use crate::output::{num, Table};

pub const HEADER: [&str; 4] = ["case", "setting", "eps", "value"];
pub const SUMMARY_HEADER: [&str; 5] = ["case", "setting", "extrapolated", "rate", "monotone"];

#[derive(Debug)]
pub struct PvRun {
    pub case: String,
    pub setting: PvSetting,
    pub result: PvResult,
}

#[derive(Debug)]
pub struct PvReport {
    pub runs: Vec<PvRun>,
}

pub fn setting_label(s: PvSetting) -> &'static str {
    match s {
        PvSetting::Boundary => "boundary",
        PvSetting::Solid => "solid",
    }
}

/// Truncated integrals at marker `pv_marker` for every case and setting:
/// `pv.csv` holds the ladder, `pv_summary.csv` the extrapolated limits.
///
/// `--assert` requires the last `pv_monotone` differences
/// `|I_eps - I_{eps/2}|` to decrease in every run.
pub fn run(cfg: &RunConfig, opts: &Options) -> Result<PvReport, CliError> {
    if cfg.pv_settings.is_empty() {
        return Err(CliError::Config("`pv_settings` is empty".into()));
    }
    let bk = BoundaryKernel {
        kernel: cfg.kernel_spec(),
        component: cfg.pv_component - 1,
        normal: cfg.pv_normal.checked_sub(1),
    };
    let solid = cfg.solid_kernel();
    let mut runs = Vec::new();
    for case in cfg.cases()? {
        for &setting in &cfg.pv_settings {
            let result = match setting {
                PvSetting::Boundary => {
                    pv_boundary(&case.contour, &bk, cfg.pv_marker, cfg.pv_eps_min, Density::Unit)?
                }
                PvSetting::Solid => pv_solid(&case.contour, &solid, cfg.pv_marker, cfg.pv_eps_min)?,
            };
            runs.push(PvRun { case: case.label.clone(), setting, result });
        }
    }

    let mut t = Table::create(&opts.out.join("pv.csv"), &HEADER)?;
    for r in &runs {
        for (&e, &v) in r.result.eps.iter().zip(&r.result.values) {
            t.row([r.case.clone(), setting_label(r.setting).to_string(), num(e), num(v)])?;
        }
    }
    t.finish()?;
    let mut t = Table::create(&opts.out.join("pv_summary.csv"), &SUMMARY_HEADER)?;
    for r in &runs {
        t.row([
            r.case.clone(),
            setting_label(r.setting).to_string(),
            num(r.result.extrapolated),
            num(r.result.rate.unwrap_or(f64::NAN)),
            r.result.differences_decrease(cfg.pv_monotone).to_string(),
        ])?;
    }
    t.finish()?;

    let mut checks = Checks::default();
    for r in &runs {
        checks.holds(
            &format!(
                "{} ({}): the last {} differences do not decrease: {:?}",
                r.case,
                setting_label(r.setting),
                cfg.pv_monotone,
                r.result.differences()
            ),
            r.result.differences_decrease(cfg.pv_monotone),
        );
    }
    checks.finish(opts.assert)?;
    Ok(PvReport { runs })
}
