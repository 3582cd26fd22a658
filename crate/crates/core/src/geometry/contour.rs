use super::{simple, Point2};
use crate::error::{Error, Result};

/// A closed, counterclockwise, polygonally sampled curve.
///
/// Markers are stored without a repeated closing point. Construction checks
/// the cheap invariants (marker count, finiteness, distinct neighbours,
/// orientation); simplicity is an O(N log N)-ish sweep and is checked by
/// [`Contour::new_simple`] or explicitly through [`Contour::is_simple`].
#[derive(Debug, Clone, PartialEq)]
pub struct Contour {
    markers: Vec<Point2>,
}

impl Contour {
    pub const MIN_MARKERS: usize = 16;

    pub fn new(markers: Vec<Point2>) -> Result<Self> {
        if markers.len() < Self::MIN_MARKERS {
            return Err(Error::InvalidContour(format!(
                "need at least {} markers, got {}",
                Self::MIN_MARKERS,
                markers.len()
            )));
        }
        if let Some(i) = markers.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidContour(format!("marker {i} is not finite")));
        }
        let n = markers.len();
        for i in 0..n {
            if markers[i] == markers[(i + 1) % n] {
                return Err(Error::InvalidContour(format!("markers {i} and {} coincide", (i + 1) % n)));
            }
        }
        let c = Self { markers };
        let area = c.polygon_area();
        if !(area > 0.0) {
            return Err(Error::InvalidContour(format!(
                "contour must be counterclockwise (signed area {area:e})"
            )));
        }
        Ok(c)
    }

    /// Like [`Contour::new`] but also rejects self-intersecting polygons.
    pub fn new_simple(markers: Vec<Point2>) -> Result<Self> {
        let c = Self::new(markers)?;
        if !c.is_simple() {
            return Err(Error::SelfIntersecting);
        }
        Ok(c)
    }

    /// Samples `f` at labels `2 pi i / n`.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> Point2) -> Result<Self> {
        Self::new((0..n).map(|i| f(super::spectral::label(i, n))).collect())
    }

    #[inline]
    pub fn markers(&self) -> &[Point2] {
        &self.markers
    }

    pub fn into_markers(self) -> Vec<Point2> {
        self.markers
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.markers.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.markers.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        simple::is_simple(&self.markers)
    }

    /// Signed shoelace area of the marker polygon.
    pub fn polygon_area(&self) -> f64 {
        let n = self.markers.len();
        0.5 * (0..n).map(|i| self.markers[i].cross(self.markers[(i + 1) % n])).sum::<f64>()
    }

    pub fn polygon_perimeter(&self) -> f64 {
        self.chords().iter().sum()
    }

    /// `|X_{i+1} - X_i|` for every marker.
    pub fn chords(&self) -> Vec<f64> {
        let n = self.markers.len();
        (0..n).map(|i| self.markers[i].distance(self.markers[(i + 1) % n])).collect()
    }

    pub fn mean_spacing(&self) -> f64 {
        self.polygon_perimeter() / self.len() as f64
    }

    /// Ratio of the largest to the smallest chord.
    pub fn spacing_ratio(&self) -> f64 {
        let ch = self.chords();
        let max = ch.iter().cloned().fold(0.0, f64::max);
        let min = ch.iter().cloned().fold(f64::INFINITY, f64::min);
        max / min
    }

    /// Applies a map to every marker and revalidates.
    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> Result<Self> {
        Self::new(self.markers.iter().map(|&p| f(p)).collect())
    }

    pub fn translate(&self, by: Point2) -> Self {
        Self { markers: self.markers.iter().map(|&p| p + by).collect() }
    }

    pub fn rotate(&self, theta: f64) -> Self {
        Self { markers: self.markers.iter().map(|&p| p.rotate(theta)).collect() }
    }

    /// Reflection across the x-axis. Marker order is reversed so the result
    /// stays counterclockwise; marker `i` maps to marker `(N - i) mod N`.
    pub fn reflect_x(&self) -> Self {
        let n = self.len();
        Self { markers: (0..n).map(|i| self.markers[(n - i) % n].conj()).collect() }
    }

    /// Bounding box as (min, max).
    pub fn bounds(&self) -> (Point2, Point2) {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.markers {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    pub fn diameter_estimate(&self) -> f64 {
        let (lo, hi) = self.bounds();
        (hi - lo).norm()
    }

    /// Distance from `x` to the marker polygon.
    pub fn distance_to(&self, x: Point2) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| point_segment_distance(x, self.markers[i], self.markers[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Even-odd point-in-polygon test. Points on the polygon may go either way.
    pub fn contains(&self, x: Point2) -> bool {
        let n = self.len();
        let mut inside = false;
        for i in 0..n {
            let a = self.markers[i];
            let b = self.markers[(i + 1) % n];
            if (a.y > x.y) != (b.y > x.y) {
                let xi = a.x + (x.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if x.x < xi {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Index of the marker equal to `x`, if any.
    pub fn marker_index(&self, x: Point2) -> Option<usize> {
        self.markers.iter().position(|&m| m == x)
    }
}

pub(crate) fn point_segment_distance(x: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let t = ((x - a).dot(ab) / ab.norm_sq()).clamp(0.0, 1.0);
    (x - (a + ab * t)).norm()
}
