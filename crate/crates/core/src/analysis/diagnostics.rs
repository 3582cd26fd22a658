use super::holder_normal;
use crate::error::Result;
use crate::geometry::{Contour, Ellipse, Point2};

/// Exponent used for the Holder column of the diagnostics.
pub const DIAGNOSTIC_HOLDER_GAMMA: f64 = 0.5;

/// One row of run diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub area: f64,
    pub perimeter: f64,
    pub centroid: Point2,
    pub fit: Ellipse,
    /// `a + b` of the fitted ellipse.
    pub sum_ab: f64,
    /// `(a - b) sin(2 theta)` of the fitted ellipse.
    pub skew_inv: f64,
    pub holder_normal: f64,
}

impl DiagnosticsRecord {
    pub const CSV_HEADER: [&'static str; 11] = [
        "t",
        "area",
        "perimeter",
        "cx",
        "cy",
        "a_fit",
        "b_fit",
        "theta_fit",
        "sum_ab",
        "skew_inv",
        "holder_normal",
    ];

    pub fn csv_values(&self) -> [f64; 11] {
        [
            self.t,
            self.area,
            self.perimeter,
            self.centroid.x,
            self.centroid.y,
            self.fit.a,
            self.fit.b,
            self.fit.theta,
            self.sum_ab,
            self.skew_inv,
            self.holder_normal,
        ]
    }
}

pub fn diagnostics(c: &Contour, t: f64) -> Result<DiagnosticsRecord> {
    let mo = c.moments();
    let fit = crate::geometry::fit_from_moments(&mo.second)?;
    Ok(DiagnosticsRecord {
        t,
        area: mo.area,
        perimeter: c.perimeter(),
        centroid: mo.centroid,
        fit,
        sum_ab: fit.a + fit.b,
        skew_inv: (fit.a - fit.b) * (2.0 * fit.theta).sin(),
        holder_normal: holder_normal(c, DIAGNOSTIC_HOLDER_GAMMA)?,
    })
}
