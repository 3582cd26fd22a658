//! Closed contours: construction, validation, frames, moments and resampling.

mod contour;
mod frames;
mod io;
mod moments;
mod point;
mod resample;
mod shapes;
mod simple;
pub mod spectral;

pub use contour::Contour;
pub use frames::{frames, frames_with, Frames, TangentScheme};
pub use io::{load_contour, read_contour_csv, save_contour, write_contour_csv};
pub(crate) use moments::fit_from_moments;
pub use moments::Moments;
pub use point::{mat_vec, Mat2, Point2};
pub use resample::resample;
pub use shapes::{
    make_bump_contour, make_ellipse_contour, make_polar_contour, normalize_axis_angle, Ellipse,
    BUMP_HALF_WIDTH,
};
