//! Short contour-dynamics runs against the ellipse closed forms.

use patchflow_core::analysis::diagnostics;
use patchflow_core::cde::evolve_with;
use patchflow_core::ellipse::closed_form_axis_aligned;
use patchflow_core::geometry::make_ellipse_contour;
use patchflow_core::{evolve, Integrator, KernelSpec, SimConfig};

fn cfg(dt: f64, t_end: f64, n: usize) -> SimConfig {
    SimConfig { dt, t_end, n_markers: n, ..SimConfig::default() }
}

#[test]
fn cauchy_axis_aligned_run_matches_closed_form() {
    let c0 = make_ellipse_contour(2.0, 1.0, 0.0, 128).unwrap();
    let traj = evolve(&c0, &KernelSpec::cauchy(), &cfg(5e-3, 0.5, 128)).unwrap();
    assert!(traj.completed());
    let (a, b) = closed_form_axis_aligned(2.0, 1.0, 0.5);
    let fit = traj.final_contour.fit_ellipse().unwrap();
    // dominated by the fourth-order spline resampling, not the time stepping
    assert!((fit.a - a).abs() < 1e-6 && (fit.b - b).abs() < 1e-6, "{fit:?} vs ({a}, {b})");
    for d in &traj.diagnostics {
        assert!((d.sum_ab - 3.0).abs() < 1e-6);
    }
}

#[test]
fn euler_ellipse_rotates_rigidly() {
    let c0 = make_ellipse_contour(2.0, 1.0, 0.0, 128).unwrap();
    let traj = evolve(&c0, &KernelSpec::euler(), &cfg(1e-2, 1.0, 128)).unwrap();
    let fit = traj.final_contour.fit_ellipse().unwrap();
    assert!((fit.a - 2.0).abs() < 1e-8 && (fit.b - 1.0).abs() < 1e-8);
    assert!((fit.theta - 2.0 / 9.0).abs() < 1e-8, "{}", fit.theta);
    assert!((traj.final_contour.area() - 2.0 * std::f64::consts::PI).abs() < 1e-10);
}

#[test]
fn aggregation_ellipse_shrinks_at_constant_skew() {
    // a' = -b/(a + b) a, b' = -a/(a + b) b: both axes shrink by ab/(a+b)
    let c0 = make_ellipse_contour(2.0, 1.0, 0.0, 128).unwrap();
    let traj = evolve(&c0, &KernelSpec::aggregation(), &cfg(1e-2, 0.5, 128)).unwrap();
    let fit = traj.final_contour.fit_ellipse().unwrap();
    assert!((fit.a - fit.b - 1.0).abs() < 1e-8);
    // a b = a0 b0 e^{-t}
    assert!((fit.a * fit.b - 2.0 * (-0.5f64).exp()).abs() < 1e-8);
}

#[test]
fn heun_is_second_order() {
    let c0 = make_ellipse_contour(2.0, 1.0, 0.0, 64).unwrap();
    let (a, _) = closed_form_axis_aligned(2.0, 1.0, 0.4);
    let err = |dt: f64| {
        let cfg = SimConfig { integrator: Integrator::Heun, ..cfg(dt, 0.4, 64) };
        let t = evolve(&c0, &KernelSpec::cauchy(), &cfg).unwrap();
        (t.final_contour.fit_ellipse().unwrap().a - a).abs()
    };
    let ratio = err(0.04) / err(0.02);
    assert!((3.5..4.5).contains(&ratio), "{ratio}");
}

#[test]
fn observer_sees_every_step_and_diagnostics_are_spaced() {
    let c0 = make_ellipse_contour(2.0, 1.0, 0.3, 64).unwrap();
    let cfg = SimConfig { diagnostics_every: 4, ..cfg(0.03, 0.3, 64) };
    let mut times = Vec::new();
    let traj = evolve_with(&c0, &KernelSpec::cauchy(), &cfg, |s| times.push((s.step, s.t))).unwrap();
    assert_eq!(times.len(), 11);
    assert_eq!(times.last().unwrap().0, 10);
    assert!((traj.final_time - 0.3).abs() < 1e-14);
    let dt: Vec<f64> = traj.diagnostics.iter().map(|d| d.t).collect();
    assert_eq!(dt.len(), 4);
    assert!((dt[1] - 0.12).abs() < 1e-12 && (dt[3] - 0.3).abs() < 1e-12);
}

#[test]
fn stretched_run_resamples() {
    // uniform arclength needs enough markers to resolve the tips, whose
    // radius of curvature b^2/a is about 0.03 at t = 0.8
    let c0 = make_ellipse_contour(2.0, 1.0, 0.0, 256).unwrap();
    let cfg = SimConfig { resample_every: 5, resample_trigger: 1.2, ..cfg(0.02, 0.8, 256) };
    let traj = evolve(&c0, &KernelSpec::cauchy(), &cfg).unwrap();
    assert!(traj.resamples > 1);
    assert_eq!(traj.final_contour.len(), 256);
    let (a, _) = closed_form_axis_aligned(2.0, 1.0, 0.8);
    let err = (traj.final_contour.fit_ellipse().unwrap().a - a).abs();
    assert!(err < 1e-4, "{err:e} after {} resamples", traj.resamples);
}

#[test]
fn evolution_commutes_with_conjugation() {
    let c0 =
        make_ellipse_contour(2.0, 1.0, 0.7, 128).unwrap().map(|p| p + p.rotate(0.4) * (0.05 * p.x)).unwrap();
    let cfg = cfg(1e-2, 0.3, 128);
    let k = KernelSpec::cauchy();
    let a = evolve(&c0, &k, &cfg).unwrap().final_contour.reflect_x();
    let b = evolve(&c0.reflect_x(), &k, &cfg).unwrap().final_contour;
    let err = a.markers().iter().zip(b.markers()).map(|(p, q)| p.distance(*q)).fold(0.0, f64::max);
    assert!(err < 1e-10, "{err:e}");
}

#[test]
fn disc_single_rk4_step() {
    let c0 = make_ellipse_contour(1.0, 1.0, 0.0, 256).unwrap();
    let traj = evolve(&c0, &KernelSpec::cauchy(), &cfg(0.1, 0.1, 256)).unwrap();
    let fit = traj.final_contour.fit_ellipse().unwrap();
    let t = 0.1f64.tanh();
    assert!((fit.a - (1.0 + t)).abs() < 1e-4 && (fit.b - (1.0 - t)).abs() < 1e-4, "{fit:?}");
}

#[test]
fn euler_ellipse_keeps_its_axes_over_twenty_steps() {
    let c0 = make_ellipse_contour(2.0, 1.0, 0.0, 256).unwrap();
    let traj = evolve(&c0, &KernelSpec::euler(), &cfg(0.05, 1.0, 256)).unwrap();
    assert_eq!(traj.steps, 20);
    let fit = traj.final_contour.fit_ellipse().unwrap();
    assert!((fit.a - 2.0).abs() < 1e-3 && (fit.b - 1.0).abs() < 1e-3, "{fit:?}");
}

#[test]
fn recorded_diagnostics_match_standalone_evaluation() {
    let c0 = make_ellipse_contour(2.0, 1.0, 0.5, 128).unwrap();
    let mut config = cfg(1e-2, 0.3, 128);
    config.diagnostics_every = 10;
    let mut seen = Vec::new();
    let traj = evolve_with(&c0, &KernelSpec::cauchy(), &config, |s| {
        if s.step % 10 == 0 {
            seen.push((s.t, s.contour.clone()));
        }
    })
    .unwrap();
    assert_eq!(seen.len(), traj.diagnostics.len());
    for ((t, c), rec) in seen.iter().zip(&traj.diagnostics) {
        assert_eq!(&diagnostics(c, *t).unwrap(), rec);
    }
}

#[test]
fn holder_seminorm_grows_at_most_exponentially_under_cauchy() {
    let c0 = make_ellipse_contour(2.0, 1.0, std::f64::consts::FRAC_PI_6, 256).unwrap();
    let mut config = cfg(1e-2, 1.0, 256);
    config.diagnostics_every = 10;
    let traj = evolve(&c0, &KernelSpec::cauchy(), &config).unwrap();
    assert!(traj.completed());
    let h0 = traj.diagnostics[0].holder_normal;
    // the ellipse thins, so the normal turns faster at the tips
    let rates: Vec<f64> = traj.diagnostics[1..].iter().map(|d| (d.holder_normal / h0).ln() / d.t).collect();
    assert!(traj.diagnostics.iter().all(|d| d.holder_normal.is_finite()));
    assert!(rates.iter().all(|r| *r < 3.0), "{rates:?}");
}
