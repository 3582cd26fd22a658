use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid contour: {0}")]
    InvalidContour(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("contour is self-intersecting")]
    SelfIntersecting,

    #[error("singular evaluation: {0}")]
    SingularEvaluation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("insufficient resolution: {0}")]
    Resolution(String),

    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),

    #[error("singular state: {0}")]
    SingularState(String),

    #[error("geometry breakdown at t = {t}: {reason}")]
    GeometryBreakdown { t: f64, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
