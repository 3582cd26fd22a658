//! CSV tables and SVG frames.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use patchflow_core::{Contour, Point2};

use crate::error::CliError;

/// Full-precision scientific notation (17 significant digits).
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// A CSV table written row by row.
pub struct Table {
    writer: csv::Writer<std::fs::File>,
    path: PathBuf,
}

impl Table {
    pub fn create(path: &Path, header: &[&str]) -> Result<Self, CliError> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let mut writer = csv::Writer::from_path(path)?;
        writer.write_record(header)?;
        Ok(Self { writer, path: path.to_path_buf() })
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<(), CliError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields)?;
        Ok(())
    }

    pub fn numbers(&mut self, values: &[f64]) -> Result<(), CliError> {
        self.row(values.iter().map(|&v| num(v)))
    }

    pub fn finish(mut self) -> Result<PathBuf, CliError> {
        self.writer.flush()?;
        Ok(self.path)
    }
}

/// Maps world coordinates into a fixed 800 x 800 viewBox; chosen once from
/// the initial contour so all frames share the scale.
#[derive(Debug, Clone, Copy)]
pub struct FrameBox {
    center: Point2,
    scale: f64,
}

const VIEW: f64 = 800.0;

impl FrameBox {
    /// Fits `c` with a margin of half its extent on every side.
    pub fn around(c: &Contour) -> Self {
        let (lo, hi) = c.bounds();
        let extent = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
        Self { center: (lo + hi) * 0.5, scale: VIEW / (2.0 * extent) }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        let q = (p - self.center) * self.scale;
        (0.5 * VIEW + q.x, 0.5 * VIEW - q.y)
    }

    /// One closed path.
    pub fn svg(&self, c: &Contour) -> String {
        let mut d = String::new();
        for (i, &p) in c.markers().iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(d, "{}{x:.3} {y:.3} ", if i == 0 { "M" } else { "L" });
        }
        d.push('Z');
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {VIEW} {VIEW}\" width=\"{VIEW}\" height=\"{VIEW}\">\n\
             <path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n</svg>\n"
        )
    }
}
