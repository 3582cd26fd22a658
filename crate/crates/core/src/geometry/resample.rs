//! Uniform-arclength redistribution of markers through a periodic cubic
//! spline parametrised by chord length.

use super::{Contour, Point2};
use crate::error::{Error, Result};
use crate::quadrature::GaussRule;

/// Periodic natural cubic spline in chord-length parameter.
struct PeriodicSpline {
    p: Vec<Point2>,
    /// second derivatives at the knots
    m: Vec<Point2>,
    h: Vec<f64>,
}

/// Solves the cyclic tridiagonal system `sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]`
/// (indices mod n) by Sherman-Morrison.
fn solve_cyclic(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let gamma = -diag[0];
    let alpha = sub[0]; // couples row 0 to x[n-1]
    let beta = sup[n - 1]; // couples row n-1 to x[0]
    let mut d = diag.to_vec();
    d[0] -= gamma;
    d[n - 1] -= alpha * beta / gamma;
    let thomas = |r: &[f64]| -> Vec<f64> {
        let mut c = vec![0.0; n];
        let mut x = vec![0.0; n];
        c[0] = sup[0] / d[0];
        x[0] = r[0] / d[0];
        for i in 1..n {
            let den = d[i] - sub[i] * c[i - 1];
            c[i] = if i + 1 < n { sup[i] / den } else { 0.0 };
            x[i] = (r[i] - sub[i] * x[i - 1]) / den;
        }
        for i in (0..n - 1).rev() {
            x[i] -= c[i] * x[i + 1];
        }
        x
    };
    let y = thomas(rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = beta;
    let z = thomas(&u);
    let fact = (y[0] + alpha * y[n - 1] / gamma) / (1.0 + z[0] + alpha * z[n - 1] / gamma);
    y.iter().zip(&z).map(|(yi, zi)| yi - fact * zi).collect()
}

impl PeriodicSpline {
    fn new(p: &[Point2]) -> Self {
        let n = p.len();
        let h: Vec<f64> = (0..n).map(|i| p[i].distance(p[(i + 1) % n])).collect();
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rx = vec![0.0; n];
        let mut ry = vec![0.0; n];
        for i in 0..n {
            let hm = h[(i + n - 1) % n];
            let hi = h[i];
            sub[i] = hm;
            diag[i] = 2.0 * (hm + hi);
            sup[i] = hi;
            let fwd = (p[(i + 1) % n] - p[i]) / hi;
            let bwd = (p[i] - p[(i + n - 1) % n]) / hm;
            rx[i] = 6.0 * (fwd.x - bwd.x);
            ry[i] = 6.0 * (fwd.y - bwd.y);
        }
        let mx = solve_cyclic(&sub, &diag, &sup, &rx);
        let my = solve_cyclic(&sub, &diag, &sup, &ry);
        let m = mx.into_iter().zip(my).map(|(x, y)| Point2::new(x, y)).collect();
        Self { p: p.to_vec(), m, h }
    }

    fn ends(&self, i: usize) -> (Point2, Point2, Point2, Point2, f64) {
        let j = (i + 1) % self.p.len();
        (self.p[i], self.p[j], self.m[i], self.m[j], self.h[i])
    }

    fn eval(&self, i: usize, t: f64) -> Point2 {
        let (p0, p1, m0, m1, h) = self.ends(i);
        let s = h - t;
        m0 * (s * s * s / (6.0 * h))
            + m1 * (t * t * t / (6.0 * h))
            + (p0 / h - m0 * (h / 6.0)) * s
            + (p1 / h - m1 * (h / 6.0)) * t
    }

    fn deriv(&self, i: usize, t: f64) -> Point2 {
        let (p0, p1, m0, m1, h) = self.ends(i);
        let s = h - t;
        m0 * (-s * s / (2.0 * h)) + m1 * (t * t / (2.0 * h)) - (p0 / h - m0 * (h / 6.0))
            + (p1 / h - m1 * (h / 6.0))
    }

    fn arclength(&self, rule: &GaussRule, i: usize, t: f64) -> f64 {
        rule.integrate(0.0, t, |u| self.deriv(i, u).norm())
    }
}

/// Redistributes `c` to `n` markers equally spaced in arclength along a
/// periodic cubic spline through the current markers. Marker 0 is kept.
pub fn resample(c: &Contour, n: usize) -> Result<Contour> {
    if n < Contour::MIN_MARKERS {
        return Err(Error::InvalidArgument(format!(
            "resample target {n} is below the minimum of {}",
            Contour::MIN_MARKERS
        )));
    }
    let sp = PeriodicSpline::new(c.markers());
    let rule = GaussRule::new(8);
    let nseg = c.len();
    let seg_len: Vec<f64> = (0..nseg).map(|i| sp.arclength(&rule, i, sp.h[i])).collect();
    let mut cum = Vec::with_capacity(nseg + 1);
    cum.push(0.0);
    for l in &seg_len {
        cum.push(cum.last().unwrap() + l);
    }
    let total = cum[nseg];
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let target = total * k as f64 / n as f64;
        let i = match cum.partition_point(|&s| s <= target) {
            0 => 0,
            j => (j - 1).min(nseg - 1),
        };
        let r = target - cum[i];
        let h = sp.h[i];
        let mut t = (r / seg_len[i] * h).clamp(0.0, h);
        if r > 0.0 {
            for _ in 0..30 {
                let f = sp.arclength(&rule, i, t) - r;
                let step = f / sp.deriv(i, t).norm();
                t = (t - step).clamp(0.0, h);
                if step.abs() <= 1e-15 * h {
                    break;
                }
            }
        }
        out.push(sp.eval(i, t));
    }
    let res = Contour::new(out)?;
    if !res.is_simple() {
        return Err(Error::SelfIntersecting);
    }
    Ok(res)
}
