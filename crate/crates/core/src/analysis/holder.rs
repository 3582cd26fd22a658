use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{frames, Contour};

/// Discrete Holder seminorm of the unit normal,
/// `max |n_i - n_j| / |X_i - X_j|^gamma` over marker pairs at least two mean
/// spacings apart.
pub fn holder_normal(c: &Contour, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::InvalidArgument(format!("gamma must lie in (0, 1], got {gamma}")));
    }
    let f = frames(c)?;
    let m = c.markers();
    let min_sep = 2.0 * c.mean_spacing();
    let best = (0..m.len())
        .into_par_iter()
        .map(|i| {
            let mut best = 0.0f64;
            for j in i + 1..m.len() {
                let d = m[i].distance(m[j]);
                if d >= min_sep {
                    best = best.max((f.normals[i] - f.normals[j]).norm() / d.powf(gamma));
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_bump_contour, make_ellipse_contour};

    #[test]
    fn unit_circle_half_exponent() {
        // |n_i - n_j| = |X_i - X_j| on the unit circle, so the ratio is
        // d^(1/2), largest for antipodal markers
        let c = make_ellipse_contour(1.0, 1.0, 0.0, 256).unwrap();
        let h = holder_normal(&c, 0.5).unwrap();
        assert!((h - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn lipschitz_constant_of_circle_is_one() {
        let c = make_ellipse_contour(1.0, 1.0, 0.0, 128).unwrap();
        assert!((holder_normal(&c, 1.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_exponent() {
        let c = make_ellipse_contour(1.0, 1.0, 0.0, 64).unwrap();
        assert!(holder_normal(&c, 0.0).is_err());
        assert!(holder_normal(&c, 1.5).is_err());
    }

    #[test]
    fn bump_seminorm_bounded_at_its_exponent_and_grows_above() {
        // inward bump: the apex turn adds to the circle's own turning, an
        // outward one cancels it and the circle background hides the growth
        let run = |gamma| -> Vec<f64> {
            [512, 1024, 2048]
                .into_iter()
                .map(|n| holder_normal(&make_bump_contour(0.5, -0.1, n).unwrap(), gamma).unwrap())
                .collect()
        };
        let at = run(0.5);
        let above = run(0.9);
        assert!(at[2] / at[0] < 1.001, "{at:?}");
        assert!(above[1] > above[0] && above[2] > above[1], "{above:?}");
        assert!(above[2] / above[0] > 1.1, "{above:?}");
    }
}
