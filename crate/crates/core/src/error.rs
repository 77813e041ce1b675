use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A Gamma argument sits on (or within the pole-proximity threshold of) a
    /// non-positive integer.
    #[error("gamma pole at {0}")]
    Pole(i64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} did not converge ({detail})")]
    Convergence { what: &'static str, detail: String },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("resonant wavenumber: 2ik/alpha = {0} is an integer")]
    Resonance(f64),

    #[error("contour error: {0}")]
    Contour(String),

    #[error("unsupported source: {0}")]
    UnsupportedSource(String),

    #[error("integrand does not decay within the window; windowing required")]
    WindowRequired,

    #[error("field must be normalized first")]
    NormalizationRequired,

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn convergence(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Convergence {
            what,
            detail: detail.into(),
        }
    }
}
