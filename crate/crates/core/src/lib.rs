//! Exact values of `∫₀^∞ sinⁿx / x^q dx` for integers `n >= q >= 1`, with
//! independent checks: exact series identities, a π-panel Gauss–Legendre
//! quadrature oracle, and a finite-ε reconstruction through the sine and
//! cosine integrals.

pub mod cli;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod precision;
pub mod render;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use exact::{alternating_sum, binomial, c_constant, closed_form, ExactValue, IntegralSpec, Rational};
pub use series::{GaussianRational, TruncatedSeries};
