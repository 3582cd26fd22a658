use super::{Contour, Point2};
use crate::error::{Error, Result};
use std::io::{Read, Write};
use std::path::Path;

/// Reads markers from CSV with header `x,y`. A repeated closing point is dropped.
pub fn read_contour_csv<R: Read>(reader: R) -> Result<Contour> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.len() < 2 || &headers[0] != "x" || &headers[1] != "y" {
        return Err(Error::InvalidContour(format!(
            "expected header `x,y`, found `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut pts = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let parse = |k: usize| -> Result<f64> {
            rec.get(k)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| Error::InvalidContour(format!("bad number in data row {}", line + 1)))
        };
        pts.push(Point2::new(parse(0)?, parse(1)?));
    }
    if pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    Contour::new(pts)
}

pub fn load_contour(path: impl AsRef<Path>) -> Result<Contour> {
    read_contour_csv(std::fs::File::open(path)?)
}

/// Writes markers as CSV with header `x,y`, 17 significant digits, without a
/// repeated closing point.
pub fn write_contour_csv<W: Write>(c: &Contour, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["x", "y"])?;
    for p in c.markers() {
        w.write_record([format!("{:.16e}", p.x), format!("{:.16e}", p.y)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_contour(c: &Contour, path: impl AsRef<Path>) -> Result<()> {
    write_contour_csv(c, std::fs::File::create(path)?)
}
