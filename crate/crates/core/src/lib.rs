//! Sum-of-squares certificates for Vizing's conjecture on graph pairs with
//! domination number one.
//!
//! The crate is layered bottom-up: exact arithmetic ([`exactmath`]), polynomial
//! ideals over the graph-encoding variables ([`polyalg`]), the ρ-algebra and its
//! Gram-matrix equations ([`rhocalc`]), a floating-point SDP solver
//! ([`sdpsolve`]) and the search/verification layer ([`certsearch`]).

pub mod certsearch;
pub mod exactmath;
pub mod polyalg;
pub mod rhocalc;
pub mod sdpsolve;
