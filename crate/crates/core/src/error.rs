use thiserror::Error;

/// Errors raised by the engine.
///
/// Everything except [`Error::Invariant`] is a rejection of the input (a
/// violated hypothesis, a malformed job, a cap). `Invariant` signals a bug:
/// an identity that the mathematics guarantees did not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("not injective: determinant is 0")]
    NotInjective,
    #[error("not exact: factor {0}")]
    NotExact(String),
    #[error("endomorphisms do not commute")]
    NotCommuting,
    #[error("independence fails: {0}")]
    NotIndependent(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for input rejections, false for internal invariant violations.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Invariant(_))
    }

    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape",
            Error::RankMismatch(..) => "rank_mismatch",
            Error::NotInjective => "not_injective",
            Error::NotExact(_) => "not_exact",
            Error::NotCommuting => "not_commuting",
            Error::NotIndependent(_) => "not_independent",
            Error::Parameter(_) => "parameter",
            Error::Cap(_) => "cap",
            Error::Parse(_) => "parse",
            Error::Inconclusive(_) => "inconclusive",
            Error::Invariant(_) => "invariant",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
