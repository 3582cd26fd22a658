//! Area moments of the region bounded by a contour.
//!
//! The default versions integrate Green's-theorem line integrals of the
//! trigonometric interpolant with the trapezoid rule (spectrally accurate for
//! smooth curves). The `polygon_*` versions are exact for the marker polygon.

use super::shapes::Ellipse;
use super::{spectral, Contour, Mat2, Point2};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Area, centroid and normalised central second moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub area: f64,
    pub centroid: Point2,
    /// `(1/A) int (x - c)(x - c)^T dA`.
    pub second: Mat2,
}

impl Contour {
    /// Enclosed area of the smooth interpolating curve.
    pub fn area(&self) -> f64 {
        let d = spectral::label_derivative(self.markers());
        let h = 2.0 * PI / self.len() as f64;
        0.5 * h * self.markers().iter().zip(&d).map(|(p, v)| p.cross(*v)).sum::<f64>()
    }

    /// Arclength of the smooth interpolating curve.
    pub fn perimeter(&self) -> f64 {
        let d = spectral::label_derivative(self.markers());
        let h = 2.0 * PI / self.len() as f64;
        h * d.iter().map(|v| v.norm()).sum::<f64>()
    }

    pub fn centroid(&self) -> Point2 {
        self.moments().centroid
    }

    pub fn second_moments(&self) -> Mat2 {
        self.moments().second
    }

    pub fn moments(&self) -> Moments {
        let m = self.markers();
        let d = spectral::label_derivative(m);
        let h = 2.0 * PI / m.len() as f64;
        let area = 0.5 * h * m.iter().zip(&d).map(|(p, v)| p.cross(*v)).sum::<f64>();
        // int x dA = int x^2/2 dy, int y dA = -int y^2/2 dx
        let mut sx = 0.0;
        let mut sy = 0.0;
        for (p, v) in m.iter().zip(&d) {
            sx += 0.5 * p.x * p.x * v.y;
            sy -= 0.5 * p.y * p.y * v.x;
        }
        let c = Point2::new(sx * h / area, sy * h / area);
        // central moments from shifted coordinates
        let (mut ixx, mut iyy, mut ixy) = (0.0, 0.0, 0.0);
        for (p, v) in m.iter().zip(&d) {
            let x = p.x - c.x;
            let y = p.y - c.y;
            ixx += x * x * x / 3.0 * v.y;
            iyy -= y * y * y / 3.0 * v.x;
            ixy += 0.5 * x * x * y * v.y;
        }
        let s = h / area;
        Moments { area, centroid: c, second: [[ixx * s, ixy * s], [ixy * s, iyy * s]] }
    }

    /// Exact moments of the marker polygon.
    pub fn polygon_moments(&self) -> Moments {
        let m = self.markers();
        let n = m.len();
        let area = self.polygon_area();
        let mut cx = 0.0;
        let mut cy = 0.0;
        for i in 0..n {
            let (p, q) = (m[i], m[(i + 1) % n]);
            let cr = p.cross(q);
            cx += (p.x + q.x) * cr;
            cy += (p.y + q.y) * cr;
        }
        let c = Point2::new(cx / (6.0 * area), cy / (6.0 * area));
        let (mut ixx, mut iyy, mut ixy) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = m[i] - c;
            let q = m[(i + 1) % n] - c;
            let cr = p.cross(q);
            ixx += cr * (p.x * p.x + p.x * q.x + q.x * q.x);
            iyy += cr * (p.y * p.y + p.y * q.y + q.y * q.y);
            ixy += cr * (p.x * q.y + 2.0 * p.x * p.y + 2.0 * q.x * q.y + q.x * p.y);
        }
        Moments {
            area,
            centroid: c,
            second: [[ixx / (12.0 * area), ixy / (24.0 * area)], [ixy / (24.0 * area), iyy / (12.0 * area)]],
        }
    }

    pub fn polygon_second_moments(&self) -> Mat2 {
        self.polygon_moments().second
    }

    /// Ellipse with the same second moments: `a = 2 sqrt(lambda_max)`,
    /// `b = 2 sqrt(lambda_min)`, `theta` the direction of the major
    /// eigenvector in (-pi/2, pi/2] (0 for a disc).
    pub fn fit_ellipse(&self) -> Result<Ellipse> {
        fit_from_moments(&self.moments().second)
    }
}

pub(crate) fn fit_from_moments(s: &Mat2) -> Result<Ellipse> {
    let (m11, m12, m22) = (s[0][0], s[0][1], s[1][1]);
    let half_tr = 0.5 * (m11 + m22);
    let rad = (0.5 * (m11 - m22)).hypot(m12);
    let lmax = half_tr + rad;
    let lmin = half_tr - rad;
    if !(lmin > 0.0) || !lmax.is_finite() {
        return Err(Error::Degenerate(format!(
            "second-moment matrix is not positive definite (eigenvalues {lmax:e}, {lmin:e})"
        )));
    }
    let theta = if rad <= 1e-12 * half_tr {
        0.0
    } else {
        super::normalize_axis_angle(0.5 * (2.0 * m12).atan2(m11 - m22))
    };
    Ok(Ellipse::new(2.0 * lmax.sqrt(), 2.0 * lmin.sqrt(), theta))
}
