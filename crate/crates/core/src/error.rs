use thiserror::Error;

/// Errors raised by the evaluators, the oracle, and the renderers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("requires n >= q >= 1 (got n={n}, q={q})")]
    InvalidDomain { n: i64, q: i64 },

    #[error("divergent: q=1 requires odd n (got n={n})")]
    DivergentIntegral { n: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("tolerance {tol:e} unreachable within {panels} panels")]
    ToleranceUnreachable { tol: f64, panels: usize },

    #[error("requested {requested} digits, cap is {cap}")]
    DigitsCap { requested: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
