use super::{spectral, Contour, Point2};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// How marker tangents and quadrature weights are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TangentScheme {
    /// FFT derivative in label space; weight `|X'(alpha_i)| 2 pi / N`.
    #[default]
    Spectral,
    /// `X_{i+1} - X_{i-1}`, weight equal to the mean of the adjacent chords.
    CenteredDifference,
}

/// Per-marker tangent, outward normal and arclength weight.
#[derive(Debug, Clone)]
pub struct Frames {
    pub tangents: Vec<Point2>,
    pub normals: Vec<Point2>,
    pub weights: Vec<f64>,
    /// `dX/dalpha` at each marker (labels `alpha_i = 2 pi i / N`).
    pub derivative: Vec<Point2>,
}

impl Frames {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `n_i * w_i`, the vector surface element.
    #[inline]
    pub fn normal_element(&self, i: usize) -> Point2 {
        self.normals[i] * self.weights[i]
    }
}

pub fn frames(c: &Contour) -> Result<Frames> {
    frames_with(c, TangentScheme::Spectral)
}

pub fn frames_with(c: &Contour, scheme: TangentScheme) -> Result<Frames> {
    let m = c.markers();
    let n = m.len();
    let h = 2.0 * PI / n as f64;
    let (derivative, weights): (Vec<Point2>, Vec<f64>) = match scheme {
        TangentScheme::Spectral => {
            let d = spectral::label_derivative(m);
            let w = d.iter().map(|v| v.norm() * h).collect();
            (d, w)
        }
        TangentScheme::CenteredDifference => {
            let d = (0..n).map(|i| (m[(i + 1) % n] - m[(i + n - 1) % n]) / (2.0 * h)).collect();
            let ch = c.chords();
            let w = (0..n).map(|i| 0.5 * (ch[i] + ch[(i + n - 1) % n])).collect();
            (d, w)
        }
    };
    let scale = c.mean_spacing() / h;
    let mut tangents = Vec::with_capacity(n);
    for (i, v) in derivative.iter().enumerate() {
        let s = v.norm();
        if !(s > 1e-10 * scale) {
            return Err(Error::Degenerate(format!("zero tangent at marker {i}")));
        }
        tangents.push(*v / s);
    }
    let normals = tangents.iter().map(|t| t.perp_cw()).collect();
    Ok(Frames { tangents, normals, weights, derivative })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::make_ellipse_contour;

    #[test]
    fn circle_normals_are_radial() {
        let c = make_ellipse_contour(1.0, 1.0, 0.0, 64).unwrap();
        let f = frames(&c).unwrap();
        for (p, nrm) in c.markers().iter().zip(&f.normals) {
            assert!((*p - *nrm).norm() < 1e-13);
        }
        let perim: f64 = f.weights.iter().sum();
        assert!((perim - 2.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn centered_difference_is_second_order() {
        let c = make_ellipse_contour(1.0, 1.0, 0.0, 64).unwrap();
        let f = frames_with(&c, TangentScheme::CenteredDifference).unwrap();
        let err = c.markers().iter().zip(&f.normals).map(|(p, n)| (*p - *n).norm()).fold(0.0, f64::max);
        // centered differences on a circle are exact in direction
        assert!(err < 1e-13);
        let perim: f64 = f.weights.iter().sum();
        assert!((perim - 2.0 * PI).abs() < 3e-3);
    }
}
