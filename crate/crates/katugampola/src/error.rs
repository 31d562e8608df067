use std::fmt;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside its admissible range. `field` names the
    /// offending parameter.
    Domain {
        field: &'static str,
        message: String,
    },
    /// The gamma function was evaluated at one of its poles (0, −1, −2, …).
    GammaPole { x: f64 },
    /// Adaptive quadrature ran out of bisection depth before reaching the
    /// requested tolerance. Carries the best estimate and its error bound.
    ToleranceNotReached { estimate: f64, error_estimate: f64 },
    /// The algebraic pivot `A t^(rho alpha) + 1` of the marching scheme is
    /// numerically singular at a grid point.
    SingularPivot { t: f64 },
    /// The right-hand side disagrees with the initial value: the constraint
    /// at t = 0 forces x(0) = f(0).
    InconsistentInitialValue { f0: f64, x0: f64 },
    /// A computation produced a non-finite value.
    NonFinite { context: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(field: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            field,
            message: message.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { field, message } => write!(f, "invalid {field}: {message}"),
            Error::GammaPole { x } => write!(f, "gamma pole at x = {x}"),
            Error::ToleranceNotReached {
                estimate,
                error_estimate,
            } => write!(
                f,
                "quadrature tolerance not reached (estimate {estimate}, error estimate {error_estimate})"
            ),
            Error::SingularPivot { t } => {
                write!(f, "singular pivot A t^(rho alpha) + 1 near zero at t = {t}")
            }
            Error::InconsistentInitialValue { f0, x0 } => write!(
                f,
                "inconsistent initial value: f(0) = {f0} but x0 = {x0}; the constraint at t = 0 forces x(0) = f(0)"
            ),
            Error::NonFinite { context } => write!(f, "non-finite value in {context}"),
        }
    }
}

impl std::error::Error for Error {}
