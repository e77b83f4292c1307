use thiserror::Error;

/// Errors produced by the distribution, system, and order-checking routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter failed validation (e.g. `sigma <= 0`).
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// An argument fell outside the domain of the function.
    #[error("{func}: argument {value} outside domain {domain}")]
    Domain {
        func: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// The result cannot be represented (overflow near a boundary).
    #[error("{func}: result out of range at x = {x}")]
    Range { func: &'static str, x: f64 },

    #[error("quantile did not converge for q = {q} after {iterations} iterations (residual {residual:e})")]
    Convergence {
        q: f64,
        iterations: usize,
        residual: f64,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A vector was not in the ordering class an operation required.
    #[error("class mismatch: expected {expected}, found {found}")]
    ClassMismatch {
        expected: &'static str,
        found: &'static str,
    },

    /// A curve denominator was zero, negative, or not finite.
    #[error("nonpositive denominator {value} at x = {x}")]
    NonPositiveDenominator { x: f64, value: f64 },

    /// Random instance generation gave up after its retry budget.
    #[error("generation failed after {attempts} attempts: {constraint}")]
    Generation { attempts: usize, constraint: String },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
