use thiserror::Error;

/// Errors raised by the numeric layers (piecewise functions, fuzzy intervals,
/// arithmetic and the oracle).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {x} lies outside the domain [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },

    #[error("shape violation: {0}")]
    Shape(String),

    #[error("disordered parameters: {0}")]
    Order(String),

    #[error("component does not reach membership 1 at the plateau edge: {0}")]
    Gap(String),

    #[error("level {0} is outside (0, 1]")]
    Range(f64),

    #[error("divisor vanishes at {0}")]
    DivisorVanishes(f64),

    #[error("divisor support [{lo}, {hi}] contains zero")]
    DivisorSpansZero { lo: f64, hi: f64 },

    #[error("pointwise result is not monotone: {0}")]
    NonMonotoneResult(String),

    #[error("cannot average an empty list")]
    EmptyList,

    #[error("invalid oracle grid: {0}")]
    Grid(String),

    #[error("no grid point reaches level {0}")]
    EmptyCut(f64),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
