use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("dimension {got} exceeds cap {cap}")]
    DimCap { got: usize, cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("congruence is not closed under faces and degeneracies: {0}")]
    NotCongruence(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

/// Global dimension cap. `TWARROW_DIM_CAP` overrides the default of 8.
pub fn dim_cap() -> usize {
    std::env::var("TWARROW_DIM_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(8)
}

pub(crate) fn check_cap(dim: usize) -> Result<()> {
    let cap = dim_cap();
    if dim > cap {
        Err(Error::DimCap { got: dim, cap })
    } else {
        Ok(())
    }
}
