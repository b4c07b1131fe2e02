//! Exact Gödel truth values, finite chains, and closed-form family sequences.

mod chain;
mod eventual;
mod truth;

pub use chain::Chain;
pub use eventual::{Direction, EventualExpr, Extremum, Piecewise, PointwiseOp};
pub use truth::{parse_rational, Rational, TruthValue};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("value {0} is outside [0,1]")]
    OutOfRange(Rational),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational literal `{0}`")]
    Syntax(String),
    #[error("a chain needs at least 2 elements, got {0}")]
    ChainTooSmall(usize),
    #[error("chain size {0} exceeds the supported maximum of 256")]
    ChainTooLarge(usize),
}
