use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::BoundaryField;
use crate::geometry::{Contour, Mat2, Point2};
use crate::kernels::KernelSpec;

/// Complex derivatives of the Cauchy-kernel velocity at an interior point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeurlingSample {
    /// `g[i][j] = d_j v_i`.
    pub grad: Mat2,
    /// `dv/dz`, the Beurling transform of the indicator.
    pub dv: Complex64,
    /// `dv/dzbar`, equal to 1 inside any patch.
    pub dbar_v: Complex64,
}

impl BeurlingSample {
    pub fn from_grad(g: Mat2) -> Self {
        let (ux, uy, wx, wy) = (g[0][0], g[0][1], g[1][0], g[1][1]);
        Self {
            grad: g,
            dv: Complex64::new(0.5 * (ux + wy), 0.5 * (wx - uy)),
            dbar_v: Complex64::new(0.5 * (ux - wy), 0.5 * (wx + uy)),
        }
    }

    pub fn divergence(&self) -> f64 {
        self.grad[0][0] + self.grad[1][1]
    }
}

/// Evaluates `dv`, `dbar v` for `v = (1/(pi z)) * chi_D` at `x`. The point
/// must lie inside with clearance of at least 5% of the contour diameter.
pub fn beurling_interior(c: &Contour, x: Point2) -> Result<BeurlingSample> {
    if !c.contains(x) {
        return Err(Error::InvalidArgument(format!("point ({}, {}) is not inside the contour", x.x, x.y)));
    }
    let clearance = c.distance_to(x);
    let diam = c.diameter_estimate();
    if clearance <= 0.05 * diam {
        return Err(Error::Resolution(format!(
            "point is {clearance:e} from the boundary, need more than {:e}",
            0.05 * diam
        )));
    }
    let g = BoundaryField::new(c, KernelSpec::cauchy())?.grad(x)?;
    Ok(BeurlingSample::from_grad(g))
}
