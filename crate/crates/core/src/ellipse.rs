//! Exact evolution of elliptical patches under the Cauchy kernel.
//!
//! An ellipse with semi-axes `a > b` at angle `theta` stays elliptical and
//! obeys
//!
//! ```text
//! a'     =  (2/S) a b cos(2 theta)
//! b'     = -a'
//! theta' = -(2/S) a b / (a - b) sin(2 theta)
//! ```
//!
//! with `S = a + b` conserved; `(a - b) sin(2 theta)` is conserved as well.
//! Inside the ellipse the velocity is `v(z) = conj(z) - q e^{-2 i theta} z`
//! with `q = (a - b)/(a + b)`.

use crate::error::{Error, Result};
use crate::geometry::{normalize_axis_angle, Ellipse, Mat2, Point2};
use std::f64::consts::FRAC_PI_4;

/// Below this `|a - b|` the state is treated as a disc.
pub const DISC_TOLERANCE: f64 = 1e-12;

/// The two invariants of the flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conserved {
    pub sum_ab: f64,
    pub skew: f64,
}

pub fn conserved(s: &Ellipse) -> Conserved {
    Conserved { sum_ab: s.a + s.b, skew: (s.a - s.b) * (2.0 * s.theta).sin() }
}

/// `(a(t), b(t))` for an axis-aligned start: `a = a0 S e^{2t} / (b0 + a0 e^{2t})`.
pub fn closed_form_axis_aligned(a0: f64, b0: f64, t: f64) -> (f64, f64) {
    let s = a0 + b0;
    // written with e^{-2t} for large positive t and e^{2t} for negative t
    let a = if t >= 0.0 {
        a0 * s / (a0 + b0 * (-2.0 * t).exp())
    } else {
        a0 * s * (2.0 * t).exp() / (b0 + a0 * (2.0 * t).exp())
    };
    (a, s - a)
}

/// Right-hand side `(a', b', theta')` for invariant sum `sum_ab`.
pub fn ode_rhs(s: &Ellipse, sum_ab: f64) -> Result<[f64; 3]> {
    let diff = s.a - s.b;
    if diff.abs() < DISC_TOLERANCE {
        return Err(Error::SingularState(format!(
            "a - b = {diff:e}; the orientation equation is singular for a disc"
        )));
    }
    let (sin2, cos2) = (2.0 * s.theta).sin_cos();
    let ab = s.a * s.b;
    let da = 2.0 / sum_ab * ab * cos2;
    let dtheta = -2.0 / sum_ab * ab / diff * sin2;
    Ok([da, -da, dtheta])
}

/// One trajectory sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSample {
    pub t: f64,
    pub state: Ellipse,
}

impl OdeSample {
    pub fn conserved(&self) -> Conserved {
        conserved(&self.state)
    }
}

fn validate(s0: &Ellipse, dt: f64) -> Result<()> {
    if !(s0.a > 0.0 && s0.b > 0.0) || !s0.a.is_finite() || !s0.b.is_finite() || !s0.theta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "ellipse state needs a, b > 0 (got a = {}, b = {})",
            s0.a, s0.b
        )));
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
    }
    Ok(())
}

fn rk4(s: &Ellipse, sum: f64, h: f64) -> Result<Ellipse> {
    let add =
        |s: &Ellipse, k: &[f64; 3], f: f64| Ellipse::new(s.a + f * k[0], s.b + f * k[1], s.theta + f * k[2]);
    let k1 = ode_rhs(s, sum)?;
    let k2 = ode_rhs(&add(s, &k1, 0.5 * h), sum)?;
    let k3 = ode_rhs(&add(s, &k2, 0.5 * h), sum)?;
    let k4 = ode_rhs(&add(s, &k3, h), sum)?;
    let da = h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    let dth = h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]);
    Ok(Ellipse::new(s.a + da, s.b - da, s.theta + dth))
}

/// RK4 from `s0` to `t_end` (negative for backward runs), keeping every
/// `every`-th step plus the final state. The step is shrunk so the run ends
/// exactly at `t_end`. Theta is not wrapped.
pub fn integrate_sampled(s0: &Ellipse, t_end: f64, dt: f64, every: usize) -> Result<Vec<OdeSample>> {
    validate(s0, dt)?;
    let every = every.max(1);
    let steps = ((t_end.abs() / dt) - 1e-9).ceil().max(0.0) as usize;
    let h = if steps == 0 { 0.0 } else { t_end / steps as f64 };
    let mut out = vec![OdeSample { t: 0.0, state: *s0 }];
    if (s0.a - s0.b).abs() < DISC_TOLERANCE {
        // a disc evolves as the axis-aligned solution with theta = 0
        for k in 1..=steps {
            if k % every == 0 || k == steps {
                let t = h * k as f64;
                let (a, b) = closed_form_axis_aligned(s0.a, s0.b, t);
                out.push(OdeSample { t, state: Ellipse::new(a, b, 0.0) });
            }
        }
        out[0].state.theta = 0.0;
        return Ok(out);
    }
    let sum = s0.a + s0.b;
    let mut s = *s0;
    for k in 1..=steps {
        s = rk4(&s, sum, h)?;
        if !(s.b > 0.0 && s.a > 0.0) {
            return Err(Error::SingularState(format!("semi-axis left (0, inf) at t = {}", h * k as f64)));
        }
        if k % every == 0 || k == steps {
            out.push(OdeSample { t: h * k as f64, state: s });
        }
    }
    Ok(out)
}

pub fn integrate(s0: &Ellipse, t_end: f64, dt: f64) -> Result<Vec<OdeSample>> {
    integrate_sampled(s0, t_end, dt, 1)
}

/// States at increasing non-negative `times`, each reached with steps of at
/// most `dt` from the previous one.
pub fn states_at(s0: &Ellipse, times: &[f64], dt: f64) -> Result<Vec<Ellipse>> {
    let mut out = Vec::with_capacity(times.len());
    let mut t = 0.0;
    let mut s = *s0;
    let disc = (s0.a - s0.b).abs() < DISC_TOLERANCE;
    for &ti in times {
        if ti < t {
            return Err(Error::InvalidArgument("sample times must be non-decreasing and >= 0".into()));
        }
        if disc {
            let (a, b) = closed_form_axis_aligned(s0.a, s0.b, ti);
            s = Ellipse::new(a, b, 0.0);
        } else if ti > t {
            s = integrate_sampled(&s, ti - t, dt, usize::MAX)?.last().unwrap().state;
        }
        t = ti;
        out.push(s);
    }
    Ok(out)
}

/// Interior velocity `conj(z) - q e^{-2 i theta} z`.
pub fn interior_velocity(s: &Ellipse, z: Point2) -> Point2 {
    let m = interior_velocity_gradient(s);
    crate::geometry::mat_vec(&m, z)
}

/// Constant gradient `g[i][j] = d_j v_i` of the interior field.
pub fn interior_velocity_gradient(s: &Ellipse) -> Mat2 {
    let q = s.q();
    let (sin2, cos2) = (2.0 * s.theta).sin_cos();
    [[1.0 - q * cos2, -q * sin2], [q * sin2, -1.0 - q * cos2]]
}

/// `lim_{t -> inf} theta(t)` for `0 <= theta0 <= pi/2` and `a0 > b0`:
/// `(1/2) arcsin(((a0 - b0)/(a0 + b0)) sin(2 theta0))`, in [0, pi/4).
pub fn limit_angle(a0: f64, b0: f64, theta0: f64) -> Result<f64> {
    if !(a0 > b0 && b0 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "limit angle needs a0 > b0 > 0, got a0 = {a0}, b0 = {b0}"
        )));
    }
    let t0 = normalize_axis_angle(theta0);
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&t0) {
        return Err(Error::InvalidArgument(format!("limit angle needs theta0 in [0, pi/2], got {theta0}")));
    }
    let val = 0.5 * ((a0 - b0) / (a0 + b0) * (2.0 * t0).sin()).asin();
    debug_assert!(val < FRAC_PI_4);
    Ok(val)
}

/// Euler evolution: the Kirchhoff ellipse rotates rigidly at
/// `ab/(a + b)^2`.
pub fn kirchhoff(s0: &Ellipse, t: f64) -> Ellipse {
    let omega = s0.a * s0.b / (s0.a + s0.b).powi(2);
    Ellipse::new(s0.a, s0.b, s0.theta + omega * t)
}

/// Aggregation evolution: the interior field `-(b x, a y)/(a + b)` in the
/// body frame keeps the orientation and `a - b`, while `ab = a0 b0 e^{-t}`.
pub fn aggregation(s0: &Ellipse, t: f64) -> Ellipse {
    let d = s0.a - s0.b;
    let p = s0.a * s0.b * (-t).exp();
    let a = 0.5 * (d + (d * d + 4.0 * p).sqrt());
    Ellipse::new(a, a - d, s0.theta)
}
