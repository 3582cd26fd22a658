use std::f64::consts::PI;

use rayon::prelude::*;

use patchflow_core::analysis::{beurling_interior, BeurlingSample};
use patchflow_core::field::BoundaryField;
use patchflow_core::{Contour, Ellipse, Point2};

use super::{Checks, Options};
use crate::config::{Case, RunConfig};
use crate::error::CliError;
use crate::output::{num, Table};

pub const GRID_HEADER: [&str; 5] = ["x", "y", "vx", "vy", "div"];
pub const PROBE_HEADER: [&str; 13] = [
    "case",
    "x",
    "y",
    "dv_re",
    "dv_im",
    "dbar_re",
    "dbar_im",
    "div",
    "dv_exact_re",
    "dv_exact_im",
    "div_exact",
    "err_dv",
    "err_div",
];

#[derive(Debug, Clone, Copy)]
pub struct GridRow {
    pub x: Point2,
    pub v: Point2,
    /// NaN where the grid point is a marker.
    pub div: f64,
}

/// Interior Beurling probe, with the closed forms when the case is an ellipse.
#[derive(Debug, Clone)]
pub struct ProbeRow {
    pub case: String,
    pub x: Point2,
    pub sample: BeurlingSample,
    /// `(dv, div)` of the ellipse.
    pub exact: Option<([f64; 2], f64)>,
}

impl ProbeRow {
    pub fn err_dbar(&self) -> f64 {
        (self.sample.dbar_v.re - 1.0).hypot(self.sample.dbar_v.im)
    }

    pub fn err_dv(&self) -> f64 {
        self.exact.map_or(f64::NAN, |(dv, _)| (self.sample.dv.re - dv[0]).hypot(self.sample.dv.im - dv[1]))
    }

    pub fn err_div(&self) -> f64 {
        self.exact.map_or(f64::NAN, |(_, div)| (self.sample.divergence() - div).abs())
    }
}

#[derive(Debug)]
pub struct FieldReport {
    pub grid: Vec<GridRow>,
    pub probes: Vec<ProbeRow>,
}

fn grid_axis(range: [f64; 2], n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![range[0]];
    }
    (0..n).map(|i| range[0] + (range[1] - range[0]) * i as f64 / (n - 1) as f64).collect()
}

/// `count` interior points `centroid + s (X - centroid)` with `s` from 0.1 to
/// 0.6 and `X` marching around the contour by the golden angle.
pub fn interior_probes(c: &Contour, count: usize) -> Vec<Point2> {
    let g = c.centroid();
    let n = c.len();
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|k| {
            let s = if count == 1 { 0.1 } else { 0.1 + 0.5 * k as f64 / (count - 1) as f64 };
            let alpha = (golden * k as f64).rem_euclid(2.0 * PI);
            let idx = ((alpha / (2.0 * PI)) * n as f64).round() as usize % n;
            g + (c.markers()[idx] - g) * s
        })
        .collect()
}

/// `dv = -q e^{-2 i theta}` and `div = -2 q cos(2 theta)` inside an ellipse.
fn ellipse_exact(e: &Ellipse) -> ([f64; 2], f64) {
    let q = e.q();
    let (s, c) = (2.0 * e.theta).sin_cos();
    ([-q * c, q * s], -2.0 * q * c)
}

/// Writes the velocity grid `field.csv` of the initial shape and, when
/// `probe_count > 0`, Cauchy-kernel interior probes `beurling.csv` for every
/// case.
///
/// `--assert` checks `|dbar v - 1|` and, for ellipses, the errors in `dv` and
/// the divergence against `compare_tolerance`.
pub fn run(cfg: &RunConfig, opts: &Options) -> Result<FieldReport, CliError> {
    let c0 = cfg.initial_contour()?;
    let field = BoundaryField::new(&c0, cfg.kernel_spec())?;
    let xs = grid_axis(cfg.grid_x, cfg.grid_n[0]);
    let ys = grid_axis(cfg.grid_y, cfg.grid_n[1]);
    let points: Vec<Point2> = ys.iter().flat_map(|&y| xs.iter().map(move |&x| Point2::new(x, y))).collect();
    let grid: Vec<GridRow> = points
        .par_iter()
        .map(|&x| GridRow { x, v: field.velocity(x).v, div: field.divergence(x).unwrap_or(f64::NAN) })
        .collect();
    let mut t = Table::create(&opts.out.join("field.csv"), &GRID_HEADER)?;
    for r in &grid {
        t.numbers(&[r.x.x, r.x.y, r.v.x, r.v.y, r.div])?;
    }
    t.finish()?;

    let mut probes = Vec::new();
    if cfg.probe_count > 0 {
        for Case { label, contour, ellipse } in cfg.cases()? {
            for x in interior_probes(&contour, cfg.probe_count) {
                let sample = beurling_interior(&contour, x)?;
                probes.push(ProbeRow {
                    case: label.clone(),
                    x,
                    sample,
                    exact: ellipse.as_ref().map(ellipse_exact),
                });
            }
        }
        let mut t = Table::create(&opts.out.join("beurling.csv"), &PROBE_HEADER)?;
        for p in &probes {
            let (dv, div) = p.exact.unwrap_or(([f64::NAN; 2], f64::NAN));
            let s = &p.sample;
            let mut fields = vec![p.case.clone()];
            fields.extend(
                [
                    p.x.x,
                    p.x.y,
                    s.dv.re,
                    s.dv.im,
                    s.dbar_v.re,
                    s.dbar_v.im,
                    s.divergence(),
                    dv[0],
                    dv[1],
                    div,
                    p.err_dv(),
                    p.err_div(),
                ]
                .into_iter()
                .map(num),
            );
            t.row(fields)?;
        }
        t.finish()?;
    }

    let mut checks = Checks::default();
    for p in &probes {
        let at = format!("{} at ({:.4}, {:.4})", p.case, p.x.x, p.x.y);
        checks.at_most(&format!("{at}: |dbar v - 1|"), p.err_dbar(), cfg.compare_tolerance);
        if p.exact.is_some() {
            checks.at_most(&format!("{at}: dv error"), p.err_dv(), cfg.compare_tolerance);
            checks.at_most(&format!("{at}: div error"), p.err_div(), cfg.compare_tolerance);
        }
    }
    checks.finish(opts.assert)?;
    Ok(FieldReport { grid, probes })
}
