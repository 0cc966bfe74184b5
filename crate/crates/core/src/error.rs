//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by series arithmetic, generators, solvers and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable mismatch: `{left}` vs `{right}`")]
    VariableMismatch { left: String, right: String },

    #[error("coefficient ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("constant term is not a unit of the coefficient ring")]
    NonUnitConstant,

    #[error("constant term must be 1 (factor out the unit first)")]
    ConstantTermNotOne,

    #[error("inner series must have valuation >= 1 for composition")]
    NonzeroInnerConstant,

    #[error("coefficient of order {order} is not an integer: {value}")]
    NonIntegerCoefficient { order: usize, value: String },

    #[error("denominator at order {order} is not invertible modulo {modulus}")]
    NonInvertibleDenominator { order: usize, modulus: u64 },

    #[error("operation needs {needed} known coefficients, series has {available}")]
    PrecisionTooSmall { needed: usize, available: usize },

    #[error("series valuation {valuation} is below the requested shift {shift}")]
    ValuationTooSmall { valuation: usize, shift: usize },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("hypergeometric parameter pole: c + n = 0 at n = {0}")]
    HypergeometricPole(usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("automaton closure exceeded {0} states")]
    MaxStatesExceeded(usize),

    #[error("comparison window underflow: depth {depth} leaves {available} coefficients, need {needed}")]
    WindowUnderflow {
        depth: usize,
        available: usize,
        needed: usize,
    },

    #[error("denominator has zero constant term; not expandable at the origin")]
    ZeroConstantDenominator,

    #[error("expansion cap exceeded: total degree {requested} > limit {limit}")]
    ExpansionTooLarge { requested: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
