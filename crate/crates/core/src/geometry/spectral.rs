//! Trigonometric interpolation of periodic marker sequences.
//!
//! Markers `X_0..X_{N-1}` are treated as samples of a closed curve at labels
//! `alpha_i = 2 pi i / N`. Derivatives are taken in label space through the
//! FFT, which is spectrally accurate for smooth curves regardless of how the
//! markers are spaced in arclength.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

use super::Point2;

/// Signed wavenumber for FFT bin `m` of length `n`; the Nyquist bin maps to 0
/// for differentiation.
#[inline]
fn wavenumber(m: usize, n: usize) -> f64 {
    if 2 * m < n {
        m as f64
    } else if 2 * m == n {
        0.0
    } else {
        m as f64 - n as f64
    }
}

fn differentiate_complex(mut buf: Vec<Complex64>) -> Vec<Complex64> {
    let n = buf.len();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(n).process(&mut buf);
    let inv_n = 1.0 / n as f64;
    for (m, c) in buf.iter_mut().enumerate() {
        let k = wavenumber(m, n);
        *c = Complex64::new(-c.im * k, c.re * k) * inv_n;
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf
}

/// `dX/dalpha` at every marker.
pub fn label_derivative(points: &[Point2]) -> Vec<Point2> {
    let buf = points.iter().map(|p| Complex64::new(p.x, p.y)).collect();
    differentiate_complex(buf).into_iter().map(|c| Point2::new(c.re, c.im)).collect()
}

/// Derivative in label space of a real periodic sequence.
pub fn periodic_derivative(values: &[f64]) -> Vec<f64> {
    let buf = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    differentiate_complex(buf).into_iter().map(|c| c.re).collect()
}

/// The trigonometric interpolant of a closed marker sequence, evaluable at
/// arbitrary labels.
#[derive(Debug, Clone)]
pub struct TrigInterpolant {
    // coefficients for wavenumbers 0..=kmax and -1..=-kmax (already divided by N)
    pos: Vec<Complex64>,
    neg: Vec<Complex64>,
}

impl TrigInterpolant {
    pub fn new(points: &[Point2]) -> Self {
        let n = points.len();
        let mut buf: Vec<Complex64> = points.iter().map(|p| Complex64::new(p.x, p.y)).collect();
        FftPlanner::<f64>::new().plan_fft_forward(n).process(&mut buf);
        let inv_n = 1.0 / n as f64;
        let kmax = n / 2;
        let mut pos = vec![Complex64::new(0.0, 0.0); kmax + 1];
        let mut neg = vec![Complex64::new(0.0, 0.0); kmax + 1];
        for (m, c) in buf.iter().enumerate() {
            let c = *c * inv_n;
            if 2 * m < n {
                pos[m] = c;
            } else if 2 * m == n {
                // split the Nyquist mode so the interpolant of real data stays real
                pos[m] = c * 0.5;
                neg[n - m] = c * 0.5;
            } else {
                neg[n - m] = c;
            }
        }
        Self { pos, neg }
    }

    /// Position and label derivative at `alpha`.
    pub fn eval_with_derivative(&self, alpha: f64) -> (Point2, Point2) {
        let e = Complex64::from_polar(1.0, alpha);
        let ec = e.conj();
        let mut zp = Complex64::new(1.0, 0.0);
        let mut zn = Complex64::new(1.0, 0.0);
        let mut val = self.pos[0];
        let mut der = Complex64::new(0.0, 0.0);
        for k in 1..self.pos.len() {
            zp *= e;
            zn *= ec;
            let a = self.pos[k] * zp;
            let b = self.neg[k] * zn;
            val += a + b;
            der += (a - b) * Complex64::new(0.0, k as f64);
        }
        (Point2::new(val.re, val.im), Point2::new(der.re, der.im))
    }

    pub fn eval(&self, alpha: f64) -> Point2 {
        self.eval_with_derivative(alpha).0
    }
}

/// Label of marker `i` out of `n`.
#[inline]
pub fn label(i: usize, n: usize) -> f64 {
    2.0 * PI * i as f64 / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ellipse(n: usize) -> Vec<Point2> {
        (0..n)
            .map(|i| {
                let t = label(i, n);
                Point2::new(2.0 * t.cos(), t.sin())
            })
            .collect()
    }

    #[test]
    fn derivative_of_ellipse_is_exact() {
        let pts = ellipse(32);
        let d = label_derivative(&pts);
        for (i, v) in d.iter().enumerate() {
            let t = label(i, 32);
            assert!((v.x + 2.0 * t.sin()).abs() < 1e-13);
            assert!((v.y - t.cos()).abs() < 1e-13);
        }
    }

    #[test]
    fn scalar_derivative_matches_analytic() {
        let n = 64;
        let vals: Vec<f64> = (0..n).map(|i| (label(i, n)).sin().exp()).collect();
        let d = periodic_derivative(&vals);
        for (i, v) in d.iter().enumerate() {
            let t = label(i, n);
            assert!((v - t.cos() * t.sin().exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn interpolant_reproduces_markers_and_off_grid_points() {
        let pts = ellipse(16);
        let f = TrigInterpolant::new(&pts);
        for (i, p) in pts.iter().enumerate() {
            let q = f.eval(label(i, 16));
            assert!((q - *p).norm() < 1e-14);
        }
        let (q, dq) = f.eval_with_derivative(0.3);
        assert!((q - Point2::new(2.0 * 0.3f64.cos(), 0.3f64.sin())).norm() < 1e-14);
        assert!((dq - Point2::new(-2.0 * 0.3f64.sin(), 0.3f64.cos())).norm() < 1e-14);
    }
}
