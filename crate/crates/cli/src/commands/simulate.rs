use patchflow_core::analysis::DiagnosticsRecord;
use patchflow_core::cde::evolve_with;
use patchflow_core::geometry::save_contour;
use patchflow_core::Contour;

use super::{drift, Checks, Options};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{FrameBox, Table};

#[derive(Debug)]
pub struct SimulateReport {
    pub diagnostics: Vec<DiagnosticsRecord>,
    pub final_contour: Contour,
    pub final_time: f64,
    pub steps: usize,
    pub resamples: usize,
    pub frames: usize,
}

pub fn write_diagnostics(path: &std::path::Path, records: &[DiagnosticsRecord]) -> Result<(), CliError> {
    let mut t = Table::create(path, &DiagnosticsRecord::CSV_HEADER)?;
    for r in records {
        t.numbers(&r.csv_values())?;
    }
    t.finish()?;
    Ok(())
}

/// Evolves the initial shape, writing `diagnostics.csv`, `final_contour.csv`
/// and, with `emit_frames`, `frames/contour_NNNN.csv` and `frames/frame_NNNN.svg`.
///
/// `--assert` checks the configured drift bounds: relative for area and
/// `a + b`, absolute for the skew invariant.
pub fn run(cfg: &RunConfig, opts: &Options) -> Result<SimulateReport, CliError> {
    let c0 = cfg.initial_contour()?;
    let k = cfg.kernel_spec();
    let sim = cfg.sim_config();
    std::fs::create_dir_all(&opts.out)?;
    let frame_dir = opts.out.join("frames");
    if cfg.emit_frames {
        std::fs::create_dir_all(&frame_dir)?;
    }
    let view = FrameBox::around(&c0);
    let mut frames = 0;
    let mut frame_error = None;
    let traj = evolve_with(&c0, &k, &sim, |snap| {
        if !cfg.emit_frames || snap.step % cfg.frame_every != 0 || frame_error.is_some() {
            return;
        }
        let csv = frame_dir.join(format!("contour_{frames:04}.csv"));
        let svg = frame_dir.join(format!("frame_{frames:04}.svg"));
        let res = save_contour(snap.contour, &csv)
            .map_err(CliError::from)
            .and_then(|_| std::fs::write(&svg, view.svg(snap.contour)).map_err(CliError::from));
        match res {
            Ok(()) => frames += 1,
            Err(e) => frame_error = Some(e),
        }
    })?;
    if let Some(e) = frame_error {
        return Err(e);
    }
    write_diagnostics(&opts.out.join("diagnostics.csv"), &traj.diagnostics)?;
    save_contour(&traj.final_contour, opts.out.join("final_contour.csv"))?;
    if let Some(b) = &traj.breakdown {
        return Err(CliError::Breakdown(format!("at t = {}: {}", b.t, b.reason)));
    }

    let d = &traj.diagnostics;
    let mut checks = Checks::default();
    checks.bound("area drift", drift(d.iter().map(|r| r.area), true), cfg.max_area_drift);
    checks.bound("a + b drift", drift(d.iter().map(|r| r.sum_ab), true), cfg.max_sum_ab_drift);
    checks.bound("skew drift", drift(d.iter().map(|r| r.skew_inv), false), cfg.max_skew_drift);
    checks.finish(opts.assert)?;

    Ok(SimulateReport {
        diagnostics: traj.diagnostics,
        final_contour: traj.final_contour,
        final_time: traj.final_time,
        steps: traj.steps,
        resamples: traj.resamples,
        frames,
    })
}
