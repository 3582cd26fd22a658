//! Kernels homogeneous of degree -1, all of the form `k = L (grad N)` with
//! `N = ln|x| / (2 pi)` the Newtonian potential and `L` a constant matrix.
//!
//! | kind                   | `L`                |
//! |------------------------|--------------------|
//! | Cauchy                 | `diag(2, -2)`      |
//! | Euler (Biot-Savart)    | rotation by +90deg |
//! | Aggregation            | `-I`               |

use crate::error::{Error, Result};
use crate::geometry::{mat_vec, Mat2, Point2};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind {
    /// `k(z) = 1/(pi z)` read as a vector, i.e. `(x, -y) / (pi |z|^2)`.
    Cauchy,
    /// `(-y, x) / (2 pi |z|^2)`.
    EulerVorticity,
    /// `-(x, y) / (2 pi |z|^2)`.
    AggregationNewtonian,
    /// `L (x, y) / (2 pi |z|^2)`.
    LinearMapOfGradN(Mat2),
}

/// A kernel together with an overall scale factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub scale: f64,
}

/// `c_j = int_{|xi| = 1} k(xi) xi_j dsigma`, the coefficient of the jump in
/// `grad v` across the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaConstants {
    pub c1: Point2,
    pub c2: Point2,
}

impl DeltaConstants {
    pub fn trace(&self) -> f64 {
        self.c1.x + self.c2.y
    }
}

impl KernelSpec {
    pub const fn new(kind: KernelKind) -> Self {
        Self { kind, scale: 1.0 }
    }

    pub const fn cauchy() -> Self {
        Self::new(KernelKind::Cauchy)
    }

    pub const fn euler() -> Self {
        Self::new(KernelKind::EulerVorticity)
    }

    pub const fn aggregation() -> Self {
        Self::new(KernelKind::AggregationNewtonian)
    }

    pub const fn linear_map(l: Mat2) -> Self {
        Self::new(KernelKind::LinearMapOfGradN(l))
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    /// The matrix `L` with the scale folded in.
    pub fn matrix(&self) -> Mat2 {
        let l = match self.kind {
            KernelKind::Cauchy => [[2.0, 0.0], [0.0, -2.0]],
            KernelKind::EulerVorticity => [[0.0, -1.0], [1.0, 0.0]],
            KernelKind::AggregationNewtonian => [[-1.0, 0.0], [0.0, -1.0]],
            KernelKind::LinearMapOfGradN(l) => l,
        };
        let s = self.scale;
        [[s * l[0][0], s * l[0][1]], [s * l[1][0], s * l[1][1]]]
    }

    /// `k(x)` without the origin check; the caller guarantees `x != 0`.
    #[inline]
    pub fn value(&self, x: Point2) -> Point2 {
        let r2 = x.norm_sq();
        let v = match self.kind {
            KernelKind::Cauchy => Point2::new(x.x, -x.y) / (PI * r2),
            KernelKind::EulerVorticity => Point2::new(-x.y, x.x) / (2.0 * PI * r2),
            KernelKind::AggregationNewtonian => -x / (2.0 * PI * r2),
            KernelKind::LinearMapOfGradN(l) => mat_vec(&l, x) / (2.0 * PI * r2),
        };
        if self.scale == 1.0 {
            v
        } else {
            v * self.scale
        }
    }

    pub fn eval(&self, x: Point2) -> Result<Point2> {
        if x.norm_sq() == 0.0 {
            return Err(Error::SingularEvaluation("kernel evaluated at the origin".into()));
        }
        Ok(self.value(x))
    }

    /// `g[i][j] = d k_i / d x_j` without the origin check.
    #[inline]
    pub fn grad_value(&self, x: Point2) -> Mat2 {
        let l = self.matrix();
        let r2 = x.norm_sq();
        let c = 1.0 / (2.0 * PI * r2 * r2);
        // Hessian of N
        let h = [
            [(r2 - 2.0 * x.x * x.x) * c, -2.0 * x.x * x.y * c],
            [-2.0 * x.x * x.y * c, (r2 - 2.0 * x.y * x.y) * c],
        ];
        [
            [l[0][0] * h[0][0] + l[0][1] * h[1][0], l[0][0] * h[0][1] + l[0][1] * h[1][1]],
            [l[1][0] * h[0][0] + l[1][1] * h[1][0], l[1][0] * h[0][1] + l[1][1] * h[1][1]],
        ]
    }

    pub fn grad(&self, x: Point2) -> Result<Mat2> {
        if x.norm_sq() == 0.0 {
            return Err(Error::SingularEvaluation("kernel gradient at the origin".into()));
        }
        Ok(self.grad_value(x))
    }

    /// `d^2 k_i / dx_j dx_l` as `t[i][j][l]`, without the origin check.
    pub fn hessian_value(&self, x: Point2) -> [[[f64; 2]; 2]; 2] {
        // third derivatives of N: d_jlm N = (-2 (d_jl x_m + d_jm x_l + d_lm x_j) r^2 + 8 x_j x_l x_m) / (2 pi r^6)
        let l = self.matrix();
        let r2 = x.norm_sq();
        let c = 1.0 / (2.0 * PI * r2 * r2 * r2);
        let xs = [x.x, x.y];
        let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        let n3 = |j: usize, ll: usize, m: usize| {
            (-2.0 * (delta(j, ll) * xs[m] + delta(j, m) * xs[ll] + delta(ll, m) * xs[j]) * r2
                + 8.0 * xs[j] * xs[ll] * xs[m])
                * c
        };
        let mut t = [[[0.0; 2]; 2]; 2];
        for (i, ti) in t.iter_mut().enumerate() {
            for (j, tij) in ti.iter_mut().enumerate() {
                for (ll, v) in tij.iter_mut().enumerate() {
                    *v = l[i][0] * n3(0, j, ll) + l[i][1] * n3(1, j, ll);
                }
            }
        }
        t
    }

    /// Delta constants by 4096-point trapezoid on the unit circle.
    pub fn delta_constants(&self) -> DeltaConstants {
        let n = 4096;
        let h = 2.0 * PI / n as f64;
        let mut c1 = Point2::ZERO;
        let mut c2 = Point2::ZERO;
        for i in 0..n {
            let xi = Point2::from_angle(h * i as f64);
            let k = self.value(xi);
            c1 += k * (xi.x * h);
            c2 += k * (xi.y * h);
        }
        DeltaConstants { c1, c2 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cauchy_values() {
        let k = KernelSpec::cauchy();
        let v = k.eval(Point2::new(1.0, 0.0)).unwrap();
        assert!((v.x - 1.0 / PI).abs() < 1e-16 && v.y == 0.0);
        let v = k.eval(Point2::new(0.0, 2.0)).unwrap();
        assert!(v.x == 0.0 && (v.y + 1.0 / (2.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn origin_is_singular() {
        for k in [KernelSpec::cauchy(), KernelSpec::euler(), KernelSpec::aggregation()] {
            assert!(matches!(k.eval(Point2::ZERO), Err(Error::SingularEvaluation(_))));
            assert!(k.grad(Point2::ZERO).is_err());
        }
    }

    #[test]
    fn rotation_map_equals_euler() {
        let l = KernelSpec::linear_map([[0.0, -1.0], [1.0, 0.0]]);
        let e = KernelSpec::euler();
        for p in [Point2::new(0.3, -1.2), Point2::new(-2.0, 0.5), Point2::new(1e-3, 7.0)] {
            let a = l.eval(p).unwrap();
            let b = e.eval(p).unwrap();
            assert!((a - b).norm() <= 1e-15 * b.norm());
        }
    }

    #[test]
    fn matrix_path_matches_closed_forms() {
        for k in [KernelSpec::cauchy(), KernelSpec::euler(), KernelSpec::aggregation()] {
            let l = KernelSpec::linear_map(k.matrix());
            let p = Point2::new(0.7, -0.4);
            assert!((l.value(p) - k.value(p)).norm() < 1e-15);
        }
    }

    #[test]
    fn delta_constants_equal_half_the_map() {
        // c_j is column j of L/2 for every k = L grad N
        for k in [
            KernelSpec::cauchy(),
            KernelSpec::euler(),
            KernelSpec::aggregation(),
            KernelSpec::linear_map([[0.3, -1.1], [2.0, 0.4]]).with_scale(1.5),
        ] {
            let l = k.matrix();
            let d = k.delta_constants();
            assert!((d.c1 - Point2::new(l[0][0], l[1][0]) * 0.5).norm() < 1e-12);
            assert!((d.c2 - Point2::new(l[0][1], l[1][1]) * 0.5).norm() < 1e-12);
        }
        let d = KernelSpec::cauchy().delta_constants();
        assert!((d.c1 - Point2::new(1.0, 0.0)).norm() < 1e-12);
        assert!((d.c2 - Point2::new(0.0, -1.0)).norm() < 1e-12);
        assert!(d.trace().abs() < 1e-12);
    }

    #[test]
    fn grad_matches_finite_differences() {
        let k = KernelSpec::linear_map([[0.3, -1.1], [2.0, 0.4]]);
        let p = Point2::new(0.8, -0.3);
        let g = k.grad(p).unwrap();
        let h = 1e-6;
        for (j, e) in [Point2::new(h, 0.0), Point2::new(0.0, h)].into_iter().enumerate() {
            let fd = (k.value(p + e) - k.value(p - e)) / (2.0 * h);
            assert!((fd.x - g[0][j]).abs() < 1e-8);
            assert!((fd.y - g[1][j]).abs() < 1e-8);
        }
    }

    #[test]
    fn cauchy_divergence_formula() {
        let k = KernelSpec::cauchy();
        let p = Point2::new(0.6, 0.9);
        let g = k.grad(p).unwrap();
        let r2 = p.norm_sq();
        let expect = -2.0 * (p.x * p.x - p.y * p.y) / (PI * r2 * r2);
        assert!((g[0][0] + g[1][1] - expect).abs() < 1e-14);
    }

    #[test]
    fn hessian_matches_finite_differences() {
        let k = KernelSpec::cauchy();
        let p = Point2::new(0.5, 0.7);
        let t = k.hessian_value(p);
        let h = 1e-5;
        for (l, e) in [Point2::new(h, 0.0), Point2::new(0.0, h)].into_iter().enumerate() {
            let gp = k.grad_value(p + e);
            let gm = k.grad_value(p - e);
            for i in 0..2 {
                for j in 0..2 {
                    let fd = (gp[i][j] - gm[i][j]) / (2.0 * h);
                    assert!((fd - t[i][j][l]).abs() < 1e-6, "{i}{j}{l}");
                }
            }
        }
    }
}
