//! Solid and boundary forms of the commutator at a boundary marker `x`.
//!
//! For a fixed pair `(i, j)`, `i != j`, and a smooth test field `Phi`:
//!
//! ```text
//! DS = int_D (d_j k_j)(x - y) (d_i Phi(y) - d_i Phi(x)) dy
//!    - int_D (d_i k_j)(x - y) (d_j Phi(y) - d_j Phi(x)) dy
//! DB = int_dD k_j(x - y) (d_i Phi(x) - d_i Phi(y)) n_j dsigma
//!    - int_dD k_j(x - y) (d_j Phi(x) - d_j Phi(y)) n_i dsigma
//! ```
//!
//! The divergence theorem makes them equal. Both integrands are bounded, so
//! neither needs a principal value, but each is evaluated independently:
//! `DS` on the cone `y = x + s (X(alpha) - x)`, `s in [0, 1]` (trapezoid in
//! `alpha`, Gauss-Legendre in `s`), `DB` by the marker trapezoid rule with the
//! finite limit `k_j(X') d/dalpha[grad Phi]` at the coincident marker.
//! Error estimates compare against a rule of half the size in each direction.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{spectral, Contour, Point2};
use crate::kernels::KernelSpec;
use crate::quadrature::GaussRule;

/// Smooth test fields with analytic gradients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestField {
    /// `a x + b y + c`.
    Linear { a: f64, b: f64, c: f64 },
    /// `x^2 + x y`.
    Quadratic,
    /// `sin x cos y`.
    Trig,
}

impl TestField {
    pub fn value(&self, p: Point2) -> f64 {
        match *self {
            TestField::Linear { a, b, c } => a * p.x + b * p.y + c,
            TestField::Quadratic => p.x * p.x + p.x * p.y,
            TestField::Trig => p.x.sin() * p.y.cos(),
        }
    }

    pub fn grad(&self, p: Point2) -> Point2 {
        match *self {
            TestField::Linear { a, b, .. } => Point2::new(a, b),
            TestField::Quadratic => Point2::new(2.0 * p.x + p.y, p.x),
            TestField::Trig => Point2::new(p.x.cos() * p.y.cos(), -p.x.sin() * p.y.sin()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TestField::Linear { .. } => "linear",
            TestField::Quadratic => "quadratic",
            TestField::Trig => "trig",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorResult {
    pub ds: f64,
    pub db: f64,
    pub ds_error: f64,
    pub db_error: f64,
}

impl CommutatorResult {
    pub fn discrepancy(&self) -> f64 {
        (self.ds - self.db).abs()
    }

    pub fn combined_error(&self) -> f64 {
        self.ds_error + self.db_error
    }
}

/// Radial Gauss-Legendre degree for the solid integral.
const RADIAL_DEGREE: usize = 24;

fn roundoff_floor(abs_sum: f64, terms: usize) -> f64 {
    16.0 * f64::EPSILON * (terms as f64).sqrt() * abs_sum
}

/// Evaluates both forms at marker `x_index` for the pair `(i, 1 - i)`.
/// The contour must be convex.
pub fn commutator_identity(
    c: &Contour,
    k: &KernelSpec,
    field: &TestField,
    x_index: usize,
    i: usize,
) -> Result<CommutatorResult> {
    let n = c.len();
    if x_index >= n || i > 1 {
        return Err(Error::InvalidArgument(format!("marker {x_index} / coordinate {i} out of range")));
    }
    let j = 1 - i;
    let m = c.markers();
    let x = m[x_index];
    let dx = spectral::label_derivative(m);
    for (idx, (p, v)) in m.iter().zip(&dx).enumerate() {
        let d = *p - x;
        if d.cross(*v) < -1e-12 * d.norm() * v.norm() {
            return Err(Error::UnsupportedGeometry(format!(
                "solid quadrature needs a convex contour; fails at marker {idx}"
            )));
        }
    }
    let h = 2.0 * std::f64::consts::PI / n as f64;
    let gx = field.grad(x);

    // solid form
    let solid = |stride: usize, degree: usize| -> (f64, f64, usize) {
        let rule = GaussRule::new(degree);
        let nodes: Vec<(f64, f64)> = rule.mapped(0.0, 1.0).collect();
        let idx: Vec<usize> = (0..n).filter(|q| (q + n - x_index).is_multiple_of(stride)).collect();
        let parts: Vec<(f64, f64)> = idx
            .par_iter()
            .map(|&q| {
                let d = m[q] - x;
                let jac = d.cross(dx[q]);
                if jac == 0.0 {
                    return (0.0, 0.0);
                }
                let mut sum = 0.0;
                let mut abs = 0.0;
                for &(s, w) in &nodes {
                    let y = x + d * s;
                    let gk = k.grad_value(x - y);
                    let gy = field.grad(y);
                    let f = gk[j][j] * (gy.component(i) - gx.component(i))
                        - gk[j][i] * (gy.component(j) - gx.component(j));
                    let t = w * f * s * jac;
                    sum += t;
                    abs += t.abs();
                }
                (sum, abs)
            })
            .collect();
        let hh = h * stride as f64;
        let sum: f64 = parts.iter().map(|p| p.0).sum();
        let abs: f64 = parts.iter().map(|p| p.1).sum();
        (sum * hh, abs * hh, idx.len() * degree)
    };

    // boundary form
    let g_i: Vec<f64> = m.iter().map(|p| field.grad(*p).component(i)).collect();
    let g_j: Vec<f64> = m.iter().map(|p| field.grad(*p).component(j)).collect();
    let dg_i = spectral::periodic_derivative(&g_i)[x_index];
    let dg_j = spectral::periodic_derivative(&g_j)[x_index];
    let boundary = |stride: usize| -> (f64, f64, usize) {
        let mut sum = 0.0;
        let mut abs = 0.0;
        let mut count = 0;
        for q in (0..n).filter(|q| (q + n - x_index).is_multiple_of(stride)) {
            // n dsigma = X'.perp_cw() dalpha
            let nd = dx[q].perp_cw();
            let t = if q == x_index {
                let kv = k.value(dx[q]).component(j);
                kv * (dg_i * nd.component(j) - dg_j * nd.component(i))
            } else {
                let kv = k.value(x - m[q]).component(j);
                kv * ((g_i[x_index] - g_i[q]) * nd.component(j) - (g_j[x_index] - g_j[q]) * nd.component(i))
            };
            sum += t;
            abs += t.abs();
            count += 1;
        }
        let hh = h * stride as f64;
        (sum * hh, abs * hh, count)
    };

    let (ds, ds_abs, ds_terms) = solid(1, RADIAL_DEGREE);
    let (ds_coarse, _, _) = solid(2, RADIAL_DEGREE / 2);
    let (db, db_abs, db_terms) = boundary(1);
    let (db_coarse, _, _) = boundary(2);
    Ok(CommutatorResult {
        ds,
        db,
        ds_error: (ds - ds_coarse).abs() + roundoff_floor(ds_abs, ds_terms),
        db_error: (db - db_coarse).abs() + roundoff_floor(db_abs, db_terms),
    })
}
