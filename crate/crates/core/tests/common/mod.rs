//! Test-only oracles that never touch the boundary-integral code path.
#![allow(dead_code)]

use patchflow_core::geometry::{make_polar_contour, Point2};
use patchflow_core::quadrature::GaussRule;
use patchflow_core::{Contour, Ellipse, KernelSpec};
use std::f64::consts::PI;

/// Distance from `p` along unit `w` to the ellipse boundary (`p` inside or on it).
pub fn ray_length(e: &Ellipse, p: Point2, w: Point2) -> f64 {
    let p = p.rotate(-e.theta);
    let w = w.rotate(-e.theta);
    let (ia, ib) = (1.0 / (e.a * e.a), 1.0 / (e.b * e.b));
    let qa = w.x * w.x * ia + w.y * w.y * ib;
    let qb = 2.0 * (p.x * w.x * ia + p.y * w.y * ib);
    let qc = p.x * p.x * ia + p.y * p.y * ib - 1.0;
    let disc = (qb * qb - 4.0 * qa * qc).max(0.0);
    ((-qb + disc.sqrt()) / (2.0 * qa)).max(0.0)
}

/// `v(x) = int_D k(x - y) dy` for an interior `x`, in polar coordinates
/// about `x`: `int k(-w) R(phi) dphi`.
pub fn polar_velocity_interior(k: &KernelSpec, e: &Ellipse, x: Point2) -> Point2 {
    let rule = GaussRule::new(32);
    let panels = 64;
    let mut v = Point2::ZERO;
    for p in 0..panels {
        let a = 2.0 * PI * p as f64 / panels as f64;
        let b = 2.0 * PI * (p + 1) as f64 / panels as f64;
        for (phi, w) in rule.mapped(a, b) {
            let om = Point2::from_angle(phi);
            v += k.value(-om) * (ray_length(e, x, om) * w);
        }
    }
    v
}

/// Same for `x` on the ellipse: rays only over the inward half-plane.
pub fn polar_velocity_boundary(k: &KernelSpec, e: &Ellipse, t: f64) -> Point2 {
    let x = e.point(t);
    // outward normal direction in body coordinates is (cos t / a, sin t / b)
    let nb = Point2::new(t.cos() / e.a, t.sin() / e.b).rotate(e.theta);
    let phi_n = nb.y.atan2(nb.x);
    let rule = GaussRule::new(32);
    let panels = 32;
    let lo = phi_n + 0.5 * PI;
    let mut v = Point2::ZERO;
    for p in 0..panels {
        let a = lo + PI * p as f64 / panels as f64;
        let b = lo + PI * (p + 1) as f64 / panels as f64;
        for (phi, w) in rule.mapped(a, b) {
            let om = Point2::from_angle(phi);
            v += k.value(-om) * (ray_length(e, x, om) * w);
        }
    }
    v
}

/// `v(x)` for an exterior `x` in elliptic coordinates `y = R(theta)(rho a cos s, rho b sin s)`.
pub fn elliptic_velocity_exterior(k: &KernelSpec, e: &Ellipse, x: Point2) -> Point2 {
    let rule = GaussRule::new(40);
    let ns = 400;
    let mut v = Point2::ZERO;
    for i in 0..ns {
        let s = 2.0 * PI * i as f64 / ns as f64;
        for (rho, w) in rule.mapped(0.0, 1.0) {
            let y = Point2::new(rho * e.a * s.cos(), rho * e.b * s.sin()).rotate(e.theta);
            v += k.value(x - y) * (w * rho * e.a * e.b * 2.0 * PI / ns as f64);
        }
    }
    v
}

/// Central-difference gradient of a vector field, `g[i][j] = d_j v_i`.
pub fn fd_grad(f: impl Fn(Point2) -> Point2, x: Point2, h: f64) -> [[f64; 2]; 2] {
    let ex = Point2::new(h, 0.0);
    let ey = Point2::new(0.0, h);
    let dx = (f(x + ex) - f(x - ex)) / (2.0 * h);
    let dy = (f(x + ey) - f(x - ey)) / (2.0 * h);
    [[dx.x, dy.x], [dx.y, dy.y]]
}

/// Smooth star-shaped contour `r(s) = 1 + sum c_k cos(k s + p_k)`.
pub fn star(n: usize, coeffs: &[(usize, f64, f64)]) -> Contour {
    make_polar_contour(n, |s| 1.0 + coeffs.iter().map(|&(k, c, p)| c * (k as f64 * s + p).cos()).sum::<f64>())
        .unwrap()
}
