//! Floating-point semidefinite programming by a primal–dual interior-point method.

mod ipm;
mod problem;

pub use ipm::{feasibility, solve, Feasibility, SdpSettings, SdpSolution, SdpStatus};
pub use problem::{Sense, SdpProblem};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SdpError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}
