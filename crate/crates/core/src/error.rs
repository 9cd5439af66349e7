use thiserror::Error;

use crate::index_domain::{Index, IndexSet};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index set must have at least two elements, got {0}")]
    IndexSetTooSmall(u64),

    #[error("image table has length {len} but the domain size is {size}")]
    LengthMismatch { len: usize, size: u64 },

    #[error("image at position {position} is {value}, outside [1, {size}]")]
    ImageOutOfRange { position: Index, value: Index, size: u64 },

    #[error("index {index} is not in the domain {domain}")]
    OutOfDomain { index: Index, domain: IndexSet },

    #[error("domain mismatch: {left} vs {right}")]
    DomainMismatch { left: IndexSet, right: IndexSet },

    #[error("duplicate entry for index {0}")]
    DuplicateEntry(Index),

    /// `σ_φ(x)` has infinitely many copies of the nonzero coordinate `x_index`.
    #[error("image is not square-summable: fiber of {index} is infinite")]
    NotInL2 { index: Index },

    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("map is not injective: {first} and {second} share the image {image}")]
    NotInjective { first: Index, second: Index, image: Index },

    #[error("injectivity is only window-certified ({0}); pass an explicit override to proceed")]
    WindowOnlyRefused(String),

    #[error("search exhausted: found {found} of {needed} indices below cap {cap}")]
    SearchExhausted { found: usize, needed: usize, cap: Index },

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
