//! Contour dynamics: markers advected by the boundary-integral velocity.

use crate::analysis::{diagnostics, DiagnosticsRecord};
use crate::error::{Error, Result};
use crate::field::BoundaryField;
use crate::geometry::{resample, Contour, Point2};
use crate::kernels::KernelSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Integrator {
    #[default]
    Rk4,
    Heun,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub dt: f64,
    pub t_end: f64,
    pub integrator: Integrator,
    /// Marker count after resampling.
    pub n_markers: usize,
    /// Check the spacing ratio every this many steps (0 disables resampling).
    pub resample_every: usize,
    /// Resample when the largest/smallest chord ratio exceeds this.
    pub resample_trigger: f64,
    /// Record diagnostics every this many steps (0 records only the ends).
    pub diagnostics_every: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            t_end: 1.0,
            integrator: Integrator::Rk4,
            n_markers: 512,
            resample_every: 50,
            resample_trigger: 3.0,
            diagnostics_every: 10,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidArgument(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(Error::InvalidArgument(format!("t_end must be non-negative, got {}", self.t_end)));
        }
        if self.n_markers < Contour::MIN_MARKERS {
            return Err(Error::InvalidArgument(format!(
                "n_markers must be at least {}, got {}",
                Contour::MIN_MARKERS,
                self.n_markers
            )));
        }
        if !(self.resample_trigger > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "resample_trigger must exceed 1, got {}",
                self.resample_trigger
            )));
        }
        Ok(())
    }

    /// Number of steps and the (possibly shortened) step used to land on `t_end`.
    pub fn steps(&self) -> (usize, f64) {
        let n = ((self.t_end / self.dt) - 1e-9).ceil().max(0.0) as usize;
        if n == 0 {
            (0, 0.0)
        } else {
            (n, self.t_end / n as f64)
        }
    }
}

/// Marker velocities of `c`.
pub fn rhs(c: &Contour, k: &KernelSpec) -> Result<Vec<Point2>> {
    Ok(BoundaryField::new(c, *k)?.marker_velocities())
}

fn displaced(c: &Contour, v: &[Point2], h: f64) -> Result<Contour> {
    Contour::new(c.markers().iter().zip(v).map(|(p, u)| *p + *u * h).collect())
}

/// One explicit step. Fails with [`Error::SelfIntersecting`] if the new
/// contour is not simple.
pub fn step(c: &Contour, k: &KernelSpec, dt: f64, integrator: Integrator) -> Result<Contour> {
    let m = c.markers();
    let next: Vec<Point2> = match integrator {
        Integrator::Heun => {
            let k1 = rhs(c, k)?;
            let k2 = rhs(&displaced(c, &k1, dt)?, k)?;
            (0..m.len()).map(|i| m[i] + (k1[i] + k2[i]) * (0.5 * dt)).collect()
        }
        Integrator::Rk4 => {
            let k1 = rhs(c, k)?;
            let k2 = rhs(&displaced(c, &k1, 0.5 * dt)?, k)?;
            let k3 = rhs(&displaced(c, &k2, 0.5 * dt)?, k)?;
            let k4 = rhs(&displaced(c, &k3, dt)?, k)?;
            (0..m.len()).map(|i| m[i] + (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0)).collect()
        }
    };
    Contour::new_simple(next)
}

/// State handed to the observer of [`evolve_with`] after every step.
#[derive(Debug, Clone, Copy)]
pub struct Snapshot<'a> {
    pub step: usize,
    pub t: f64,
    pub contour: &'a Contour,
}

/// Why a run stopped early.
#[derive(Debug, Clone, PartialEq)]
pub struct Breakdown {
    pub t: f64,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub diagnostics: Vec<DiagnosticsRecord>,
    pub final_contour: Contour,
    pub final_time: f64,
    pub steps: usize,
    pub resamples: usize,
    pub breakdown: Option<Breakdown>,
}

impl Trajectory {
    pub fn completed(&self) -> bool {
        self.breakdown.is_none()
    }
}

pub fn evolve(c0: &Contour, k: &KernelSpec, cfg: &SimConfig) -> Result<Trajectory> {
    evolve_with(c0, k, cfg, |_| {})
}

/// Integrates from `c0` to `cfg.t_end`. Invalid configuration is an error;
/// a geometric failure during the run is recorded in
/// [`Trajectory::breakdown`] together with everything computed up to it.
pub fn evolve_with(
    c0: &Contour,
    k: &KernelSpec,
    cfg: &SimConfig,
    mut observer: impl FnMut(Snapshot<'_>),
) -> Result<Trajectory> {
    cfg.validate()?;
    let (nsteps, h) = cfg.steps();
    let mut records = vec![diagnostics(c0, 0.0)?];
    observer(Snapshot { step: 0, t: 0.0, contour: c0 });
    let mut c = c0.clone();
    let mut t = 0.0;
    let mut resamples = 0;
    let mut breakdown = None;
    let mut done = 0;
    for s in 1..=nsteps {
        let t_new = h * s as f64;
        let advanced = step(&c, k, h, cfg.integrator).and_then(|mut next| {
            if cfg.resample_every > 0
                && s % cfg.resample_every == 0
                && next.spacing_ratio() > cfg.resample_trigger
            {
                next = resample(&next, cfg.n_markers)?;
                resamples += 1;
            }
            Ok(next)
        });
        match advanced {
            Ok(next) => c = next,
            Err(e) => {
                breakdown = Some(Breakdown { t, reason: e.to_string() });
                break;
            }
        }
        t = t_new;
        done = s;
        observer(Snapshot { step: s, t, contour: &c });
        let record_now = s == nsteps || (cfg.diagnostics_every > 0 && s % cfg.diagnostics_every == 0);
        if record_now {
            match diagnostics(&c, t) {
                Ok(r) => records.push(r),
                Err(e) => {
                    breakdown = Some(Breakdown { t, reason: e.to_string() });
                    break;
                }
            }
        }
    }
    Ok(Trajectory {
        diagnostics: records,
        final_contour: c,
        final_time: t,
        steps: done,
        resamples,
        breakdown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::make_ellipse_contour;

    #[test]
    fn defaults() {
        let c = SimConfig::default();
        assert_eq!(c.dt, 1e-3);
        assert_eq!(c.n_markers, 512);
        assert_eq!(c.integrator, Integrator::Rk4);
        assert_eq!(c.steps(), (1000, 1e-3));
    }

    #[test]
    fn step_count_lands_on_t_end() {
        let c = SimConfig { dt: 0.3, t_end: 1.0, ..SimConfig::default() };
        let (n, h) = c.steps();
        assert_eq!(n, 4);
        assert!((h * n as f64 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn disc_under_euler_does_not_move() {
        let c = make_ellipse_contour(1.0, 1.0, 0.0, 64).unwrap();
        let next = step(&c, &KernelSpec::euler(), 0.1, Integrator::Rk4).unwrap();
        // rigid rotation at angular speed 1/2
        for (p, q) in c.markers().iter().zip(next.markers()) {
            assert!((p.rotate(0.05) - *q).norm() < 1e-8);
        }
    }

    #[test]
    fn rejects_bad_config() {
        let c = make_ellipse_contour(1.0, 1.0, 0.0, 64).unwrap();
        let cfg = SimConfig { dt: -1.0, ..SimConfig::default() };
        assert!(evolve(&c, &KernelSpec::cauchy(), &cfg).is_err());
    }

    #[test]
    fn short_cauchy_run_tracks_oracle() {
        let c = make_ellipse_contour(2.0, 1.0, 0.0, 128).unwrap();
        let cfg = SimConfig { dt: 1e-2, t_end: 0.2, n_markers: 128, ..SimConfig::default() };
        let tr = evolve(&c, &KernelSpec::cauchy(), &cfg).unwrap();
        assert!(tr.completed());
        let (a, b) = crate::ellipse::closed_form_axis_aligned(2.0, 1.0, 0.2);
        let f = tr.diagnostics.last().unwrap();
        assert!((f.fit.a - a).abs() < 1e-8 && (f.fit.b - b).abs() < 1e-8);
        assert_eq!(tr.diagnostics.len(), 3);
    }
}
