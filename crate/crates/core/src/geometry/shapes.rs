use super::{Contour, Point2};
use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, PI};

/// Ellipse centred at the origin with semi-axes `a`, `b`, the `a`-axis at
/// angle `theta` from the x-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub a: f64,
    pub b: f64,
    pub theta: f64,
}

impl Ellipse {
    pub const fn new(a: f64, b: f64, theta: f64) -> Self {
        Self { a, b, theta }
    }

    /// Point at parameter `t`, i.e. `R(theta) (a cos t, b sin t)`.
    pub fn point(&self, t: f64) -> Point2 {
        Point2::new(self.a * t.cos(), self.b * t.sin()).rotate(self.theta)
    }

    /// `(a - b) / (a + b)`.
    pub fn q(&self) -> f64 {
        (self.a - self.b) / (self.a + self.b)
    }

    pub fn area(&self) -> f64 {
        PI * self.a * self.b
    }

    /// Value of `(x/a)^2 + (y/b)^2` in body coordinates; < 1 inside.
    pub fn level(&self, p: Point2) -> f64 {
        let r = p.rotate(-self.theta);
        (r.x / self.a).powi(2) + (r.y / self.b).powi(2)
    }

    /// Orientation reduced to (-pi/2, pi/2].
    pub fn normalized_theta(&self) -> f64 {
        normalize_axis_angle(self.theta)
    }

    pub fn contour(&self, n: usize) -> Result<Contour> {
        make_ellipse_contour(self.a, self.b, self.theta, n)
    }
}

/// Reduces an axis direction (defined modulo pi) to (-pi/2, pi/2].
pub fn normalize_axis_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(PI);
    if t > FRAC_PI_2 {
        t -= PI;
    }
    t
}

/// Ellipse with markers uniform in the elliptic parameter, marker 0 at the
/// end of the `a`-axis.
pub fn make_ellipse_contour(a: f64, b: f64, theta: f64, n: usize) -> Result<Contour> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() || !theta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "ellipse needs positive finite semi-axes, got a = {a}, b = {b}"
        )));
    }
    let e = Ellipse::new(a, b, theta);
    Contour::from_fn(n, |t| e.point(t))
}

/// Half-width of the window that localises the bump.
pub const BUMP_HALF_WIDTH: f64 = FRAC_PI_2;

/// Smooth window on |s| < [`BUMP_HALF_WIDTH`], equal to 1 at s = 0.
fn bump_window(s: f64) -> f64 {
    let u = s / BUMP_HALF_WIDTH;
    if u.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - u * u)).exp()
    }
}

/// Unit circle perturbed near angle 0 to `r(s) = 1 + amp |sin(s/2)|^(1+gamma) w(s)`.
///
/// The boundary is C^(1,gamma) but not C^(1,gamma') for gamma' > gamma at the
/// apex `(1, 0)`, which is marker 0. Amplitude 0 gives the unit circle.
pub fn make_bump_contour(gamma: f64, amplitude: f64, n: usize) -> Result<Contour> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::InvalidArgument(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    if !(amplitude.abs() < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "bump amplitude must be below 0.5 in magnitude, got {amplitude}"
        )));
    }
    Contour::from_fn(n, |t| {
        let s = if t > PI { t - 2.0 * PI } else { t };
        let r = 1.0 + amplitude * (0.5 * s).sin().abs().powf(1.0 + gamma) * bump_window(s);
        Point2::from_angle(s) * r
    })
}

/// Star-shaped contour `r(s) (cos s, sin s)` about the origin.
pub fn make_polar_contour(n: usize, r: impl Fn(f64) -> f64) -> Result<Contour> {
    Contour::from_fn(n, |t| Point2::from_angle(t) * r(t))
}
