//! Velocity `v = k * chi_D` and its derivatives as boundary integrals.
//!
//! For a kernel homogeneous of degree -1,
//! `v(x) = -int_{dD} k(x - y) <x - y, n(y)> dsigma(y)`,
//! `d_j v_i(x) = -int_{dD} k_i(x - y) n_j(y) dsigma(y)` and
//! `d_l d_j v_i(x) = -int_{dD} (d_l k_i)(x - y) n_j(y) dsigma(y)`,
//! each discretised by the marker quadrature of [`Frames`]. The velocity
//! integrand is bounded, so markers themselves can be evaluated (the
//! coincident term is dropped, its limit being 0).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{frames_with, Contour, Frames, Mat2, Point2, TangentScheme};
use crate::kernels::KernelSpec;

/// Velocity at a point and whether the point is a marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocitySample {
    pub v: Point2,
    pub on_boundary: bool,
}

/// `t[i][j][l] = d_l d_j v_i` with a resolution flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondGradSample {
    pub tensor: [[[f64; 2]; 2]; 2],
    /// Distance from the point to the marker polygon.
    pub distance: f64,
    /// `N * distance >= 10`; below that the quadrature is not trustworthy.
    pub resolved: bool,
}

impl SecondGradSample {
    pub fn max_abs(&self) -> f64 {
        self.tensor.iter().flatten().flatten().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Minimum `N * dist` at which second derivatives are considered resolved.
pub const SECOND_GRAD_RESOLUTION: f64 = 10.0;

/// A contour with precomputed frames, ready for repeated field evaluation.
#[derive(Debug, Clone)]
pub struct BoundaryField<'a> {
    contour: &'a Contour,
    frames: Frames,
    kernel: KernelSpec,
}

impl<'a> BoundaryField<'a> {
    pub fn new(contour: &'a Contour, kernel: KernelSpec) -> Result<Self> {
        Self::with_scheme(contour, kernel, TangentScheme::Spectral)
    }

    pub fn with_scheme(contour: &'a Contour, kernel: KernelSpec, scheme: TangentScheme) -> Result<Self> {
        Ok(Self { contour, frames: frames_with(contour, scheme)?, kernel })
    }

    pub fn contour(&self) -> &Contour {
        self.contour
    }

    pub fn frames(&self) -> &Frames {
        &self.frames
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn velocity(&self, x: Point2) -> VelocitySample {
        let mut v = Point2::ZERO;
        let mut on_boundary = false;
        for (i, &y) in self.contour.markers().iter().enumerate() {
            let d = x - y;
            if d.norm_sq() == 0.0 {
                on_boundary = true;
                continue;
            }
            let ne = self.frames.normal_element(i);
            v -= self.kernel.value(d) * d.dot(ne);
        }
        VelocitySample { v, on_boundary }
    }

    /// Velocity of every marker, in marker order.
    pub fn marker_velocities(&self) -> Vec<Point2> {
        self.contour.markers().par_iter().map(|&x| self.velocity(x).v).collect()
    }

    /// `g[i][j] = d_j v_i`. Fails when `x` is a marker.
    pub fn grad(&self, x: Point2) -> Result<Mat2> {
        let mut g = [[0.0; 2]; 2];
        for (i, &y) in self.contour.markers().iter().enumerate() {
            let d = x - y;
            if d.norm_sq() == 0.0 {
                return Err(Error::SingularEvaluation(format!("velocity gradient requested at marker {i}")));
            }
            let k = self.kernel.value(d);
            let ne = self.frames.normal_element(i);
            g[0][0] -= k.x * ne.x;
            g[0][1] -= k.x * ne.y;
            g[1][0] -= k.y * ne.x;
            g[1][1] -= k.y * ne.y;
        }
        Ok(g)
    }

    pub fn divergence(&self, x: Point2) -> Result<f64> {
        let g = self.grad(x)?;
        Ok(g[0][0] + g[1][1])
    }

    pub fn second_grad(&self, x: Point2) -> Result<SecondGradSample> {
        let mut t = [[[0.0; 2]; 2]; 2];
        for (m, &y) in self.contour.markers().iter().enumerate() {
            let d = x - y;
            if d.norm_sq() == 0.0 {
                return Err(Error::SingularEvaluation(format!("second derivatives requested at marker {m}")));
            }
            let gk = self.kernel.grad_value(d);
            let ne = self.frames.normal_element(m);
            let nv = [ne.x, ne.y];
            for i in 0..2 {
                for j in 0..2 {
                    for l in 0..2 {
                        t[i][j][l] -= gk[i][l] * nv[j];
                    }
                }
            }
        }
        let distance = self.contour.distance_to(x);
        Ok(SecondGradSample {
            tensor: t,
            distance,
            resolved: self.contour.len() as f64 * distance >= SECOND_GRAD_RESOLUTION,
        })
    }
}

pub fn boundary_velocity(c: &Contour, k: &KernelSpec, x: Point2) -> Result<VelocitySample> {
    Ok(BoundaryField::new(c, *k)?.velocity(x))
}

pub fn grad_velocity(c: &Contour, k: &KernelSpec, x: Point2) -> Result<Mat2> {
    BoundaryField::new(c, *k)?.grad(x)
}

pub fn second_grad(c: &Contour, k: &KernelSpec, x: Point2) -> Result<SecondGradSample> {
    BoundaryField::new(c, *k)?.second_grad(x)
}
