use thiserror::Error;

use crate::diagram::ParseError;
use crate::poly::PolyError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{what} {size} exceeds the configured cap {cap}; {hint}")]
    Capacity {
        what: &'static str,
        size: usize,
        cap: usize,
        hint: &'static str,
    },
    #[error("{0}")]
    Inconsistent(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
