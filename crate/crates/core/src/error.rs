use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not unitary (residual {residual:.3e} > {tolerance:.1e})")]
    NotUnitary { residual: f64, tolerance: f64 },

    #[error("point is not on the unit sphere (|p| - 1 = {deviation:.3e})")]
    OffSphere { deviation: f64 },

    #[error("symbol outside Mehler range: alpha = {alpha} > 1/lambda = {limit}")]
    OutsideMehlerRange { alpha: f64, limit: f64 },

    #[error("unsupported deformation parameter lambda = {0}")]
    UnsupportedLambda(f64),

    #[error("polynomial degree {degree} exceeds the quantization guard {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("indeterminate kernel dimension: spectral gap ratio {ratio:.3e} < {required} (raise N_max)")]
    IndeterminateKernel { ratio: f64, required: f64 },

    #[error("quadrature did not converge: estimated error {estimate:.3e} > {tolerance:.1e}")]
    QuadratureNonConvergence { estimate: f64, tolerance: f64 },

    #[error("grid too coarse: Chern integral {value} is {distance:.3e} from an integer (try grid_size >= {hint})")]
    GridTooCoarse { value: f64, distance: f64, hint: usize },

    #[error("symbol is not invertible on the circle (min |f| = {0:.3e})")]
    NotInvertible(f64),

    #[error("basis mismatch between operators")]
    BasisMismatch,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
