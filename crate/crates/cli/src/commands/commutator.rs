use rayon::prelude::*;

use patchflow_core::analysis::{commutator_identity, CommutatorResult};

use super::{kernel_label, Checks, Options};
use crate::config::{FieldName, RunConfig};
use crate::error::CliError;
use crate::output::{num, Table};

pub const HEADER: [&str; 8] = ["contour", "kernel", "field", "point", "DS", "DB", "abs_diff", "tol"];

#[derive(Debug, Clone)]
pub struct CommutatorRow {
    pub contour: String,
    pub kernel: &'static str,
    pub field: &'static str,
    pub point: usize,
    pub result: CommutatorResult,
    pub tol: f64,
}

impl CommutatorRow {
    pub fn passes(&self) -> bool {
        self.result.discrepancy() <= self.tol
    }
}

#[derive(Debug)]
pub struct CommutatorReport {
    pub rows: Vec<CommutatorRow>,
}

/// Default evaluation markers: four, a quarter turn apart, off the symmetry
/// axes of centred ellipses.
fn default_points(n: usize) -> Vec<usize> {
    (0..4).map(|k| (k * n / 4 + n / 11) % n).collect()
}

/// Solid (DS) and boundary (DB) forms of the commutator identity for every
/// contour, kernel, test field and point, written to `commutator.csv`.
/// The tolerance is `commutator_factor` times the combined error estimate,
/// floored at `commutator_floor`.
///
/// `--assert` requires `|DS - DB| <= tol` in every row.
pub fn run(cfg: &RunConfig, opts: &Options) -> Result<CommutatorReport, CliError> {
    let kernels = if cfg.kernels.is_empty() { vec![cfg.kernel] } else { cfg.kernels.clone() };
    let fields = if cfg.test_fields.is_empty() {
        vec![FieldName::Linear, FieldName::Quadratic, FieldName::Trig]
    } else {
        cfg.test_fields.clone()
    };
    let i = cfg.coordinate - 1;
    let mut rows = Vec::new();
    for case in cfg.cases()? {
        let n = case.contour.len();
        let points = if cfg.points.is_empty() { default_points(n) } else { cfg.points.clone() };
        if let Some(&p) = points.iter().find(|&&p| p >= n) {
            return Err(CliError::Config(format!(
                "point {p} is out of range for {} ({n} markers)",
                case.label
            )));
        }
        let mut jobs = Vec::new();
        for &k in &kernels {
            for &f in &fields {
                jobs.extend(points.iter().map(|&p| (k, f, p)));
            }
        }
        let results = jobs
            .par_iter()
            .map(|&(k, f, p)| commutator_identity(&case.contour, &cfg.kernel_spec_for(k), &f.field(), p, i))
            .collect::<Result<Vec<_>, _>>()?;
        for ((k, f, p), result) in jobs.into_iter().zip(results) {
            let tol = (cfg.commutator_factor * result.combined_error()).max(cfg.commutator_floor);
            rows.push(CommutatorRow {
                contour: case.label.clone(),
                kernel: kernel_label(k),
                field: f.field().name(),
                point: p,
                result,
                tol,
            });
        }
    }

    let mut t = Table::create(&opts.out.join("commutator.csv"), &HEADER)?;
    for r in &rows {
        t.row([
            r.contour.clone(),
            r.kernel.to_string(),
            r.field.to_string(),
            r.point.to_string(),
            num(r.result.ds),
            num(r.result.db),
            num(r.result.discrepancy()),
            num(r.tol),
        ])?;
    }
    t.finish()?;

    let mut checks = Checks::default();
    for r in rows.iter().filter(|r| !r.passes()) {
        checks.holds(
            &format!(
                "{} {} {} at {}: |DS - DB| = {:e} > {:e}",
                r.contour,
                r.kernel,
                r.field,
                r.point,
                r.result.discrepancy(),
                r.tol
            ),
            false,
        );
    }
    checks.finish(opts.assert)?;
    Ok(CommutatorReport { rows })
}
