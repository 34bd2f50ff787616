use thiserror::Error;

pub type QResult<T> = Result<T, QError>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QError {
    #[error("invalid base q = {0}: need 0 < q < 1")]
    InvalidBase(f64),
    #[error("{what} did not converge within {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },
    #[error("pole of (a;q)_n at negative index: factor {factor} vanishes")]
    PoleAtNegativeIndex { factor: i64 },
    #[error("q-gamma pole at non-positive integer argument {0}")]
    PoleAtNonpositiveInteger(f64),
    #[error("branch of x^nu is ambiguous on the negative real axis")]
    BranchAmbiguity,
    #[error("|z| = {z_abs} outside the annulus ({inner}, {outer})")]
    OutsideAnnulus { inner: f64, z_abs: f64, outer: f64 },
    #[error("|z| = {z_abs} outside the unit disk")]
    OutsideDisk { z_abs: f64 },
    #[error("term {index} of the series has a pole")]
    PoleInRange { index: i64 },
    #[error("product in a denominator vanishes")]
    PoleInProduct,
    #[error("parameter {index}: {source}")]
    Component { index: usize, source: Box<QError> },
    #[error("outside domain: {0}")]
    OutsideDomain(String),
    #[error("invalid series specification: {0}")]
    InvalidSpec(String),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("sampler for {id} starved: {accepted} of {draws} draws accepted")]
    SamplerStarved { id: String, accepted: usize, draws: usize },
    #[error("unknown identity {0}")]
    UnknownIdentity(String),
}
