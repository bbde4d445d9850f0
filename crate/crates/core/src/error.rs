use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unbound name `{name}` at byte {offset}")]
    UnboundName { name: String, offset: usize },

    #[error("domain error at x = {x}: {what}")]
    Domain { what: String, x: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("accuracy bound exceeded at x = {x}: {what}")]
    Accuracy { what: String, x: f64 },

    #[error("guard violation at x = {x}: {what}")]
    Guard { what: String, x: f64 },

    #[error("superposition constants are proportional (c1*cbar2 - cbar1*c2 = {det})")]
    DeterminantZero { det: f64 },

    #[error("not a total derivative: residual b - a'/2 reaches {residual} at x = {x}")]
    NotTotalDerivative { residual: f64, x: f64 },

    #[error("step size underflow at x = {x}")]
    StepSizeUnderflow { x: f64 },

    #[error("auxiliary condition violated: scaled residual {residual} at x = {x}")]
    AuxiliaryConditionViolated { residual: f64, x: f64 },

    #[error("non-finite intermediate at x = {x}: {what}")]
    NonFinite { what: String, x: f64 },
}

impl Error {
    pub(crate) fn domain(what: impl Into<String>, x: f64) -> Self {
        Error::Domain { what: what.into(), x }
    }

    pub(crate) fn guard(what: impl Into<String>, x: f64) -> Self {
        Error::Guard { what: what.into(), x }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
