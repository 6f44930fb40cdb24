use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("undefined roots: the zero polynomial has no finite root set")]
    UndefinedRoots,

    #[error("zero polynomial is not a valid {0}")]
    ZeroPolynomial(&'static str),

    #[error("point {0} lies on a pole")]
    AtPole(Complex64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero on contour (min |f| = {min_modulus:e})")]
    ZeroOnContour { min_modulus: f64 },

    #[error("pole on contour")]
    PoleOnContour,

    #[error("winding computation did not converge after {samples} samples")]
    NonConvergent { samples: usize },

    #[error("no guarantee: eps = {eps} is not below eps* = {eps_star}")]
    NoGuarantee { eps: f64, eps_star: f64 },

    #[error("root isolation failed: {0}")]
    RootIsolation(String),

    #[error("all Taylor coefficients up to order {0} vanish")]
    VanishingTaylor(usize),

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    #[error("selector {0} resolves to nothing")]
    EmptySelector(String),

    #[error("census audit failed: {0}")]
    AuditFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("png encoding: {0}")]
    Png(#[from] png::EncodingError),
}
