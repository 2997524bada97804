//! Exact rational arithmetic and linear algebra.

mod approx;
mod ldlt;
mod matrix;
mod radical;
mod rational;
mod rref;

pub use approx::{best_rational_in_interval, shrink, simplest_between, RationalsInInterval};
pub use ldlt::{ldlt_psd, ldlt_unpivoted, LdlWitness, PsdCheck};
pub use matrix::RatMatrix;
pub use radical::{radical_gram, rat_cholesky_radical, RadicalRow};
pub use rational::{rat, Rational};
pub use rref::{independent_equations, rref, AffineExpr, AffineSolutionSpace, LinearEquation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not positive semidefinite")]
    NotPsd,
    #[error("zero pivot at step {step} with a nonzero column below it")]
    NeedsPivot { step: usize },
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("variable {0} is not in the priority list")]
    UnknownVariable(String),
    #[error("variable {0} listed twice")]
    DuplicateVariable(String),
    #[error("empty interval")]
    EmptyInterval,
    #[error("margin {0} must lie in [0, 1/2)")]
    InvalidMargin(String),
}
