//! The ρ-algebra of elementary symmetric polynomials on a cross of G□H and
//! the linear system it induces on Gram matrices.

mod binom;
mod fsystem;
mod rhopoly;

pub use binom::{binom_q, binomial, MAX_BINOM_N};
pub use fsystem::{
    all_fvars, build_f_system, default_priority, extended_gram, gram_size, sos_gap, sos_residual, sos_target,
    FEquation, FSystem, FTerm, FVar,
};
pub use rhopoly::{eval_rho_point, inclusion_exclusion, rho_mul, rho_polynomial, square_row, RhoPoly};

/// Largest supported certificate degree.
pub const MAX_D: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RhoError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported degree d = {0}; supported range is 3..={MAX_D}")]
    UnsupportedD(usize),
    #[error("cannot parse {0:?}")]
    Parse(String),
}
