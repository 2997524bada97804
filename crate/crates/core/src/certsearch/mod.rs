//! Certificate search, exact verification and the generic SOS pipeline.

mod certificate;
mod pipeline;
pub mod published;
mod search;
mod structure;
mod verify;

pub use certificate::{Certificate, FixSource, Provenance, ANCHOR_NOTE, CERTIFICATE_VERSION};
pub use pipeline::{full_sdp_pipeline, standard_monomials, PIPELINE_MAX_ELL, PIPELINE_MAX_VERTICES, PIPELINE_TRACE_BOUND};
pub use search::{find_certificate, free_variable_bounds, parametrized_sdp, FreeVarPolicy, SearchOptions, VarBounds};
pub use structure::{check_structure_identities, StructureReport, STRUCTURE_TRACE_BOUND};
pub use verify::{symbolic_remainder, verify_bruteforce, verify_exact, BruteMode, BruteOptions, Check, Verdict};

use crate::exactmath::ExactError;
use crate::polyalg::PolyError;
use crate::rhocalc::RhoError;
use crate::sdpsolve::SdpError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SearchError {
    #[error("unsupported degree d = {0}")]
    UnsupportedD(usize),
    #[error("no solution found: {0}")]
    NoSolutionFound(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Rho(#[from] RhoError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Sdp(#[from] SdpError),
}
