use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::exactmath::{
    ldlt_psd, rat_cholesky_radical, rref, LdlWitness, LinearEquation, PsdCheck, RadicalRow, RatMatrix, Rational,
};
use crate::rhocalc::{build_f_system, default_priority, gram_size, FVar};

pub const CERTIFICATE_VERSION: u32 = 1;

pub const ANCHOR_NOTE: &str = "The ρ-coefficients depend only on d: the certificate is valid at every anchor \
vertex (g,h) of G□H and for every pair of graph classes with n_G + n_H - 1 = d and domination number one.";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixSource {
    /// Rounded from the SDP interval.
    Sdp,
    /// Supplied by the caller.
    User,
    /// Taken from a published certificate.
    Published,
}

/// One free-variable assignment made while searching.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub var: FVar,
    pub value: Rational,
    pub source: FixSource,
    /// `[min, max]` of the variable over the PSD set at the time it was fixed.
    pub interval: Option<[f64; 2]>,
    pub margin: Option<Rational>,
    /// Earlier candidates rejected by backtracking.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rejected: Vec<Rational>,
}

/// Exact Gram matrix of a ⌈d/2⌉-SOS certificate, with its PSD witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub d: usize,
    pub m: usize,
    #[serde(rename = "F")]
    pub f: RatMatrix,
    pub ldl: LdlWitness,
    /// Radical-form rows, absent when unpivoted factorisation needs a pivot.
    pub rows: Option<Vec<RadicalRow>>,
    pub provenance: Vec<Provenance>,
    pub anchor_note: String,
}

impl Certificate {
    /// Wraps an exact PSD `f`, computing the witness and the radical rows.
    pub fn from_gram(d: usize, f: RatMatrix, provenance: Vec<Provenance>) -> Result<Certificate, SearchError> {
        let m = gram_size(d);
        if f.nrows() != m || f.ncols() != m {
            return Err(SearchError::InvalidInput(format!("F is {}x{}, expected {m}x{m}", f.nrows(), f.ncols())));
        }
        let ldl = match ldlt_psd(&f)? {
            PsdCheck::Psd(w) => w,
            PsdCheck::NotPsd { value, .. } => {
                return Err(SearchError::InvalidInput(format!("F is not PSD (vᵀFv = {value})")))
            }
        };
        let rows = rat_cholesky_radical(&f, None).ok();
        Ok(Certificate {
            version: CERTIFICATE_VERSION,
            d,
            m,
            f,
            ldl,
            rows,
            provenance,
            anchor_note: ANCHOR_NOTE.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }

    pub fn from_json(s: &str) -> Result<Certificate, SearchError> {
        serde_json::from_str(s).map_err(|e| SearchError::InvalidInput(format!("certificate JSON: {e}")))
    }
}

impl Certificate {
    /// Wraps a Gram matrix taken from the literature. The provenance lists the
    /// free variables in the order the default search would fix them.
    pub fn from_published(d: usize, f: RatMatrix) -> Result<Certificate, SearchError> {
        let m = gram_size(d);
        if f.nrows() != m || f.ncols() != m {
            return Err(SearchError::InvalidInput(format!("F is {}x{}, expected {m}x{m}", f.nrows(), f.ncols())));
        }
        let priority = default_priority(m);
        let mut eqs = build_f_system(d)?.linear_equations();
        let mut provenance = Vec::new();
        loop {
            let space = rref(&eqs, &priority)?;
            let Some(&var) = space.free.first() else { break };
            let value = f[(var.i - 1, var.j - 1)].clone();
            eqs.push(LinearEquation::fix(var, value.clone()));
            provenance.push(Provenance {
                var,
                value,
                source: FixSource::Published,
                interval: None,
                margin: None,
                rejected: Vec::new(),
            });
        }
        Certificate::from_gram(d, f, provenance)
    }
}
