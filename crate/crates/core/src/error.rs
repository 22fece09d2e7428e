use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("NotNilpotent: N^{dim} is nonzero")]
    NotNilpotent { dim: usize },

    #[error("NotUnipotent: T - I is not nilpotent")]
    NotUnipotent,

    #[error("CenterTooSmall: N^{} is nonzero, so no weight filtration centered at {center} exists", center + 1)]
    CenterTooSmall { center: usize },

    #[error("malformed rational {0:?}")]
    MalformedRational(String),

    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),

    #[error("invalid json: {0}")]
    Json(String),

    #[error("malformed sequence spec: {0}")]
    MalformedSpec(String),

    #[error("d = {d} is outside the supported range {lo}..={hi}")]
    DOutOfRange { d: usize, lo: usize, hi: usize },

    #[error("NotFanoType: the h^{{p,q}} numbers are only defined for models of Fano type (d = {d})")]
    NotFanoType { d: usize },

    #[error("NotDelPezzo: d = 0 has no del Pezzo mirror")]
    NotDelPezzo,
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}

pub(crate) fn check_d(d: usize, lo: usize, hi: usize) -> Result<()> {
    if d < lo || d > hi {
        return Err(Error::DOutOfRange { d, lo, hi });
    }
    Ok(())
}
