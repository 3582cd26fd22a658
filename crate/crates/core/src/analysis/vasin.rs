use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{BoundaryField, SECOND_GRAD_RESOLUTION};
use crate::geometry::{Contour, Point2};
use crate::kernels::KernelSpec;

/// Where to probe the second derivatives.
#[derive(Debug, Clone, PartialEq)]
pub enum ProbeSet {
    /// Explicit marker indices.
    Markers(Vec<usize>),
    /// `count` markers equally spaced in index, starting at marker 0.
    Uniform(usize),
}

impl ProbeSet {
    fn indices(&self, n: usize) -> Result<Vec<usize>> {
        let idx = match self {
            ProbeSet::Markers(v) => v.clone(),
            ProbeSet::Uniform(count) => (0..*count).map(|k| k * n / count.max(&1)).collect(),
        };
        if idx.is_empty() {
            return Err(Error::InvalidArgument("probe set is empty".into()));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidArgument(format!("probe marker {bad} out of range")));
        }
        Ok(idx)
    }
}

/// `m(d) = max |d^2 v|` over probes at distance `d` on both sides of the
/// boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct VasinProfile {
    pub gamma: f64,
    pub distances: Vec<f64>,
    pub m: Vec<f64>,
}

impl VasinProfile {
    /// `m(d) d^(1 - gamma)`, bounded when the Vasin estimate holds.
    pub fn products(&self) -> Vec<f64> {
        self.distances.iter().zip(&self.m).map(|(d, m)| m * d.powf(1.0 - self.gamma)).collect()
    }

    /// Largest over smallest product.
    pub fn product_ratio(&self) -> f64 {
        let p = self.products();
        let max = p.iter().cloned().fold(0.0, f64::max);
        let min = p.iter().cloned().fold(f64::INFINITY, f64::min);
        max / min
    }

    /// Least-squares slope of `log m` against `log d`.
    pub fn slope(&self) -> f64 {
        let xs: Vec<f64> = self.distances.iter().map(|d| d.ln()).collect();
        let ys: Vec<f64> = self.m.iter().map(|m| m.ln()).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        sxy / sxx
    }
}

/// Samples `max |d^2 v|` at `X_p +- d n_p` for each probe marker `p` and each
/// distance. Every distance must satisfy `N d >= 10`.
pub fn vasin_profile(
    c: &Contour,
    k: &KernelSpec,
    gamma: f64,
    distances: &[f64],
    probes: &ProbeSet,
) -> Result<VasinProfile> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::InvalidArgument(format!("gamma must lie in (0, 1), got {gamma}")));
    }
    if distances.is_empty() || distances.iter().any(|d| !(*d > 0.0)) {
        return Err(Error::InvalidArgument("distances must be positive and non-empty".into()));
    }
    let n = c.len() as f64;
    if let Some(d) = distances.iter().find(|&&d| n * d < SECOND_GRAD_RESOLUTION) {
        return Err(Error::Resolution(format!(
            "distance {d:e} needs at least {} markers",
            (SECOND_GRAD_RESOLUTION / d).ceil()
        )));
    }
    let idx = probes.indices(c.len())?;
    let field = BoundaryField::new(c, *k)?;
    let normals = &field.frames().normals;
    let jobs: Vec<(usize, Point2)> = distances
        .iter()
        .enumerate()
        .flat_map(|(di, &d)| {
            idx.iter().flat_map(move |&p| {
                let x = c.markers()[p];
                let nv = normals[p];
                [(di, x + nv * d), (di, x - nv * d)]
            })
        })
        .collect();
    let vals: Vec<(usize, f64)> = jobs
        .par_iter()
        .map(|&(di, x)| field.second_grad(x).map(|s| (di, s.max_abs())))
        .collect::<Result<_>>()?;
    let mut m = vec![0.0f64; distances.len()];
    for (di, v) in vals {
        m[di] = m[di].max(v);
    }
    Ok(VasinProfile { gamma, distances: distances.to_vec(), m })
}
