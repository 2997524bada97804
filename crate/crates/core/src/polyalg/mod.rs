//! Polynomials over the graph-pair variables, the encoding ideal and its
//! Gröbner basis, and exhaustive enumeration of the variety.

mod ideal;
mod monomial;
mod polynomial;
mod reduce;
mod var;
mod variety;

pub use ideal::{
    build_fviz, build_generators, closed_form_gb, cross_split, domination_product, CrossSplit,
    MAX_CLOSED_FORM_VERTICES,
};
pub use monomial::Monomial;
pub use polynomial::{Polynomial, TermOrder};
pub use reduce::{buchberger, in_ideal, interreduce, normal_form, s_polynomial};
pub use var::{GraphParams, VarId};
pub use variety::{enumerate_variety, enumerate_x_projection, VarietyCap, VarietyIter, VarietyLayout, VarietyPoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("invalid graph parameters: {0}")]
    InvalidParams(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}
