use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not square-free")]
    NotSquarefree(i64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{a} is not a quadratic residue modulo {p}")]
    NotQuadraticResidue { a: i64, p: u64 },
    #[error("no solution found within search bound {bound}: {what}")]
    SearchExhausted { what: String, bound: u64 },
    #[error("value out of supported range: {0}")]
    OutOfRange(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("squareness test inconclusive at {bits} bits of precision")]
    Inconclusive { bits: u64 },
    #[error("unknown case: {0}")]
    UnknownCase(String),
    #[error("no divisibility certificate applies to d = {0}")]
    NoCertificate(u64),
    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(i64, i64),
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
