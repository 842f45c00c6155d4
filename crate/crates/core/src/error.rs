use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the region where the formula is defined.
    #[error("domain error: {quantity} = {value} ({reason})")]
    Domain {
        quantity: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("could not parse quantity `{0}`")]
    Quantity(String),

    #[error("integrator step size underflow after {steps} steps (tolerance {tolerance:e} not reached)")]
    StepUnderflow { steps: usize, tolerance: f64 },

    #[error("non-finite Hamiltonian entry at t = {time:e}")]
    NonFinite { time: f64 },

    #[error("invalid evolution request: {0}")]
    Evolution(String),
}

impl Error {
    pub(crate) fn domain(quantity: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            quantity,
            value,
            reason,
        }
    }
}

/// Rejects zero, negative and NaN inputs.
pub(crate) fn positive(quantity: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(quantity, value, "must be positive and finite"))
    }
}

pub(crate) fn non_negative(quantity: &'static str, value: f64) -> Result<f64> {
    if value >= 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(quantity, value, "must be non-negative and finite"))
    }
}
