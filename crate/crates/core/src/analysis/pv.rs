//! Truncated singular integrals `I_eps` at a boundary marker and their
//! limit as `eps -> 0`.
//!
//! Truncation removes the exact ball `|y - x| < eps`: the arc ends are found
//! on the trigonometric interpolant of the markers and the remaining arc is
//! integrated with Gauss-Legendre panels graded toward the ends.
//!
//! Boundary setting: `int_{dD, |x-y|>eps} K(x - y) phi n_j dsigma` with `K` a
//! component of an odd degree -1 kernel.
//!
//! Solid setting: `int_{D, |x-y|>eps} L(x - y) dy` for an even, degree -2,
//! mean-zero kernel `L`. Writing `y = x + r w` and parametrising the rays by
//! the boundary point they hit, with `d = X(alpha) - x`,
//! `I_eps = int_{|d|>eps} L(d) ln(|d|/eps) det(d, X') dalpha`.

use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{spectral::TrigInterpolant, Contour, Point2};
use crate::kernels::KernelSpec;
use crate::quadrature::GaussRule;

/// Optional density in the boundary setting.
#[derive(Clone, Copy, Default)]
pub enum Density<'a> {
    #[default]
    Unit,
    /// `phi(y)`.
    Weighted(&'a (dyn Fn(Point2) -> f64 + Sync)),
    /// `phi(y) - phi(x)`.
    Subtracted(&'a (dyn Fn(Point2) -> f64 + Sync)),
}

impl std::fmt::Debug for Density<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Density::Unit => "Unit",
            Density::Weighted(_) => "Weighted",
            Density::Subtracted(_) => "Subtracted",
        })
    }
}

/// The odd kernel of the boundary setting: `k_component`, paired with
/// `n_normal` when `normal` is set (plain arclength otherwise).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryKernel {
    pub kernel: KernelSpec,
    pub component: usize,
    pub normal: Option<usize>,
}

/// Even, degree -2, mean-zero kernels for the solid setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolidKernel {
    /// `-(x^2 - y^2) / (pi |z|^4)`, real part of `-1/(pi z^2)`.
    BeurlingReal,
    /// `2 x y / (pi |z|^4)`, imaginary part of `-1/(pi z^2)`.
    BeurlingImag,
    /// `d_l k_i` for a degree -1 kernel.
    KernelDerivative { kernel: KernelSpec, i: usize, l: usize },
}

impl SolidKernel {
    pub fn value(&self, z: Point2) -> f64 {
        let r2 = z.norm_sq();
        match *self {
            SolidKernel::BeurlingReal => -(z.x * z.x - z.y * z.y) / (PI * r2 * r2),
            SolidKernel::BeurlingImag => 2.0 * z.x * z.y / (PI * r2 * r2),
            SolidKernel::KernelDerivative { kernel, i, l } => kernel.grad_value(z)[i][l],
        }
    }
}

/// Truncated values on the ladder `eps = 2^-1, 2^-2, ...` and the
/// Richardson-extrapolated limit.
#[derive(Debug, Clone, PartialEq)]
pub struct PvResult {
    pub eps: Vec<f64>,
    pub values: Vec<f64>,
    pub extrapolated: f64,
    /// Observed convergence order `p` in `I_eps - I_0 ~ eps^p`, when the
    /// last three values support one.
    pub rate: Option<f64>,
}

impl PvResult {
    /// `|I_eps - I_{eps/2}|` along the ladder.
    pub fn differences(&self) -> Vec<f64> {
        self.values.windows(2).map(|w| (w[0] - w[1]).abs()).collect()
    }

    /// Whether the last `count` differences strictly decrease.
    pub fn differences_decrease(&self, count: usize) -> bool {
        let d = self.differences();
        if d.len() < count {
            return false;
        }
        d[d.len() - count..].windows(2).all(|w| w[1] < w[0])
    }
}

struct Truncation<'c> {
    markers: &'c [Point2],
    interp: TrigInterpolant,
    ix: usize,
    x: Point2,
    alpha_x: f64,
    h: f64,
    rule: GaussRule,
}

impl<'c> Truncation<'c> {
    fn new(c: &'c Contour, ix: usize) -> Result<Self> {
        let n = c.len();
        if ix >= n {
            return Err(Error::InvalidArgument(format!("marker index {ix} out of range (N = {n})")));
        }
        let h = 2.0 * PI / n as f64;
        Ok(Self {
            markers: c.markers(),
            interp: TrigInterpolant::new(c.markers()),
            ix,
            x: c.markers()[ix],
            alpha_x: h * ix as f64,
            h,
            rule: GaussRule::new(16),
        })
    }

    /// Label offset where the curve leaves the ball, searching in direction `dir`.
    fn exit_offset(&self, eps: f64, dir: isize) -> Result<(f64, usize)> {
        let n = self.markers.len() as isize;
        let mut j = 1;
        loop {
            if j > n / 2 {
                return Err(Error::InvalidArgument(format!(
                    "eps = {eps} is not small compared with the contour"
                )));
            }
            let idx = (self.ix as isize + dir * j).rem_euclid(n) as usize;
            if self.markers[idx].distance(self.x) >= eps {
                break;
            }
            j += 1;
        }
        let dist = |u: f64| self.interp.eval(self.alpha_x + dir as f64 * u).distance(self.x) - eps;
        let (mut lo, mut hi) = ((j - 1) as f64 * self.h, j as f64 * self.h);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if dist(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * self.h {
                break;
            }
        }
        Ok((0.5 * (lo + hi), j as usize))
    }

    /// `int f(X, X') dalpha` over the part of the curve outside the ball.
    fn integrate(&self, eps: f64, f: impl Fn(Point2, Point2) -> f64 + Sync) -> Result<f64> {
        let n = self.markers.len();
        let (up, jf) = self.exit_offset(eps, 1)?;
        let (down, jb) = self.exit_offset(eps, -1)?;
        // the rest of the contour must stay outside the ball
        for j in jf..=(n - jb) {
            if self.markers[(self.ix + j) % n].distance(self.x) < eps {
                return Err(Error::UnsupportedGeometry(format!(
                    "contour re-enters the eps = {eps} ball around marker {}",
                    self.ix
                )));
            }
        }
        let lo = self.alpha_x + up;
        let hi = self.alpha_x + 2.0 * PI - down;
        let half = 0.5 * (hi - lo);
        let cap = 8.0 * self.h;
        let mut panels = graded_panels(lo, half, up, cap, 1.0);
        panels.extend(graded_panels(hi, half, down, cap, -1.0));
        let sums: Vec<f64> = panels
            .par_iter()
            .map(|&(a, b)| {
                self.rule.integrate(a, b, |al| {
                    let (p, dp) = self.interp.eval_with_derivative(al);
                    f(p, dp)
                })
            })
            .collect();
        Ok(sums.iter().sum())
    }
}

/// Panels covering `[start, start + dir * len]`, each no wider than the
/// distance (`dist0` + offset) from the singular point and no wider than `cap`.
fn graded_panels(start: f64, len: f64, dist0: f64, cap: f64, dir: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut u = 0.0;
    while u < len {
        let w = (dist0 + u).min(cap).min(len - u);
        let (a, b) = (start + dir * u, start + dir * (u + w));
        out.push(if a < b { (a, b) } else { (b, a) });
        u += w;
    }
    out
}

fn ladder(c: &Contour, ix: usize, eps_min: f64) -> Result<Vec<f64>> {
    let n = c.len();
    let m = c.markers();
    let spacing = m[ix].distance(m[(ix + 1) % n]).max(m[ix].distance(m[(ix + n - 1) % n]));
    if eps_min < 4.0 * spacing {
        return Err(Error::Resolution(format!(
            "eps_min = {eps_min:e} is below 4 marker spacings ({:e}) at marker {ix}",
            4.0 * spacing
        )));
    }
    let eps: Vec<f64> = (1..60).map(|k| 0.5f64.powi(k)).take_while(|&e| e >= eps_min).collect();
    if eps.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "eps_min = {eps_min:e} leaves fewer than three truncation radii"
        )));
    }
    Ok(eps)
}

fn extrapolate(eps: Vec<f64>, values: Vec<f64>) -> PvResult {
    let k = values.len();
    let d1 = values[k - 3] - values[k - 2];
    let d2 = values[k - 2] - values[k - 1];
    let mut rate = None;
    let mut extrapolated = values[k - 1];
    if d2 != 0.0 && d1 / d2 > 1.0 {
        let p = (d1 / d2).log2();
        if p.is_finite() && p > 0.05 {
            rate = Some(p);
            let order = p.round();
            extrapolated = if order >= 1.0 && (p - order).abs() < 0.15 {
                // smooth expansion in integer powers: full Richardson table
                let mut col = values.clone();
                for m in 0..k - 1 {
                    let f = 2f64.powf(order + m as f64) - 1.0;
                    col = col.windows(2).map(|w| w[1] + (w[1] - w[0]) / f).collect();
                }
                col[0]
            } else {
                values[k - 1] - d2 / (2f64.powf(p) - 1.0)
            };
        }
    }
    PvResult { eps, values, extrapolated, rate }
}

/// Boundary setting at marker `x_index`.
pub fn pv_boundary(
    c: &Contour,
    kernel: &BoundaryKernel,
    x_index: usize,
    eps_min: f64,
    density: Density<'_>,
) -> Result<PvResult> {
    if kernel.component > 1 || kernel.normal.is_some_and(|j| j > 1) {
        return Err(Error::InvalidArgument("kernel and normal components must be 0 or 1".into()));
    }
    let eps = ladder(c, x_index, eps_min)?;
    let tr = Truncation::new(c, x_index)?;
    let x = tr.x;
    let phi_x = match density {
        Density::Subtracted(phi) => phi(x),
        _ => 0.0,
    };
    let f = |y: Point2, dy: Point2| {
        let k = kernel.kernel.value(x - y).component(kernel.component);
        let w = match density {
            Density::Unit => 1.0,
            Density::Weighted(phi) => phi(y),
            Density::Subtracted(phi) => phi(y) - phi_x,
        };
        let ds = match kernel.normal {
            Some(j) => dy.perp_cw().component(j),
            None => dy.norm(),
        };
        k * w * ds
    };
    let values = eps.iter().map(|&e| tr.integrate(e, f)).collect::<Result<Vec<_>>>()?;
    Ok(extrapolate(eps, values))
}

/// Solid setting at marker `x_index`. The contour must be star-shaped about
/// the marker.
pub fn pv_solid(c: &Contour, kernel: &SolidKernel, x_index: usize, eps_min: f64) -> Result<PvResult> {
    let eps = ladder(c, x_index, eps_min)?;
    let tr = Truncation::new(c, x_index)?;
    let x = tr.x;
    let d = crate::geometry::spectral::label_derivative(c.markers());
    let scale = c.diameter_estimate();
    for (i, (m, v)) in c.markers().iter().zip(&d).enumerate() {
        if (*m - x).cross(*v) < -1e-12 * scale * v.norm() {
            return Err(Error::UnsupportedGeometry(format!(
                "contour is not star-shaped about marker {x_index} (fails at marker {i})"
            )));
        }
    }
    let values = eps
        .iter()
        .map(|&e| {
            tr.integrate(e, |y, dy| {
                let dd = y - x;
                kernel.value(dd) * (dd.norm() / e).ln() * dd.cross(dy)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(extrapolate(eps, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::make_ellipse_contour;

    fn circle_cut(eps: f64) -> f64 {
        2.0 * (0.5 * eps).asin()
    }

    #[test]
    fn circle_boundary_values_match_closed_form() {
        // on the unit circle at x = (1, 0): k_2 n_2 = (1 + cos phi)/(2 pi),
        // k_1 n_1 = cos phi / (2 pi), k_2 n_1 is odd about phi = pi
        let c = make_ellipse_contour(1.0, 1.0, 0.0, 512).unwrap();
        let k = KernelSpec::cauchy();
        let r22 = pv_boundary(
            &c,
            &BoundaryKernel { kernel: k, component: 1, normal: Some(1) },
            0,
            0.06,
            Density::Unit,
        )
        .unwrap();
        for (e, v) in r22.eps.iter().zip(&r22.values) {
            let p0 = circle_cut(*e);
            assert!((v - (1.0 - (p0 + p0.sin()) / PI)).abs() < 1e-12, "eps {e}");
        }
        assert!((r22.extrapolated - 1.0).abs() < 1e-6, "{r22:?}");
        let r11 = pv_boundary(
            &c,
            &BoundaryKernel { kernel: k, component: 0, normal: Some(0) },
            0,
            0.06,
            Density::Unit,
        )
        .unwrap();
        for (e, v) in r11.eps.iter().zip(&r11.values) {
            assert!((v + circle_cut(*e).sin() / PI).abs() < 1e-12);
        }
        let r21 = pv_boundary(
            &c,
            &BoundaryKernel { kernel: k, component: 1, normal: Some(0) },
            0,
            0.06,
            Density::Unit,
        )
        .unwrap();
        assert!(r21.values.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn subtracted_density_of_constant_vanishes() {
        let c = make_ellipse_contour(2.0, 1.0, 0.3, 512).unwrap();
        let phi = |_: Point2| 2.5;
        let bk = BoundaryKernel { kernel: KernelSpec::cauchy(), component: 0, normal: Some(1) };
        let r = pv_boundary(&c, &bk, 7, 0.12, Density::Subtracted(&phi)).unwrap();
        assert!(r.values.iter().all(|v| *v == 0.0));
        let w = pv_boundary(&c, &bk, 7, 0.12, Density::Weighted(&phi)).unwrap();
        let u = pv_boundary(&c, &bk, 7, 0.12, Density::Unit).unwrap();
        for (a, b) in w.values.iter().zip(&u.values) {
            assert!((a - 2.5 * b).abs() < 1e-12);
        }
    }

    #[test]
    fn eps_below_four_spacings_is_rejected() {
        let c = make_ellipse_contour(1.0, 1.0, 0.0, 64).unwrap();
        let bk = BoundaryKernel { kernel: KernelSpec::cauchy(), component: 0, normal: Some(0) };
        assert!(matches!(pv_boundary(&c, &bk, 0, 0.1, Density::Unit), Err(Error::Resolution(_))));
        assert!(matches!(pv_solid(&c, &SolidKernel::BeurlingReal, 0, 0.1), Err(Error::Resolution(_))));
    }

    #[test]
    fn graded_panels_cover_interval() {
        let p = graded_panels(1.0, 2.0, 0.01, 0.3, 1.0);
        assert_eq!(p[0].0, 1.0);
        assert!((p.last().unwrap().1 - 3.0).abs() < 1e-15);
        for w in p.windows(2) {
            assert_eq!(w[0].1, w[1].0);
        }
        let q = graded_panels(3.0, 2.0, 0.01, 0.3, -1.0);
        assert_eq!(q[0].1, 3.0);
    }
}
