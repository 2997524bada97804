use std::collections::BTreeMap;

use super::SearchError;
use crate::exactmath::{independent_equations, ExactError, LinearEquation, Rational};
use crate::polyalg::{build_fviz, closed_form_gb, normal_form, GraphParams, Monomial, Polynomial, TermOrder};
use crate::sdpsolve::SdpProblem;

/// Largest `n_G + n_H` accepted by [`full_sdp_pipeline`].
pub const PIPELINE_MAX_VERTICES: usize = 6;
pub const PIPELINE_MAX_ELL: usize = 3;
pub const PIPELINE_TRACE_BOUND: f64 = 1e3;

/// Monomials of degree at most `ell` that no leading monomial of `basis` divides, ascending.
pub fn standard_monomials(params: &GraphParams, basis: &[Polynomial], ell: usize) -> Vec<Monomial> {
    let leads: Vec<&Monomial> = basis.iter().filter_map(|p| p.leading().map(|(m, _)| m)).collect();
    let vars = params.variables();
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![(Monomial::one(), 0usize)];
    for _ in 0..ell {
        let mut next = Vec::new();
        for (m, start) in &frontier {
            for (k, &v) in vars.iter().enumerate().skip(*start) {
                let cand = m.mul(&Monomial::var(v));
                if !leads.iter().any(|l| l.divides(&cand)) {
                    next.push((cand, k + 1));
                }
            }
        }
        out.extend(next.iter().map(|(m, _)| m.clone()));
        frontier = next;
    }
    out.sort();
    out
}

type EntryCoeff = ((usize, usize), Rational);

/// The degree-`ell` SOS feasibility problem for `f_viz` on `(n_g, n_h)`:
/// `vᵀ X v ≡ f_viz` modulo the ideal, one equation per normal-form monomial.
pub fn full_sdp_pipeline(n_g: usize, n_h: usize, ell: usize) -> Result<SdpProblem, SearchError> {
    if n_g + n_h > PIPELINE_MAX_VERTICES || ell > PIPELINE_MAX_ELL {
        return Err(SearchError::CapExceeded(format!(
            "pipeline is limited to n_G + n_H <= {PIPELINE_MAX_VERTICES} and ell <= {PIPELINE_MAX_ELL}"
        )));
    }
    let params = GraphParams::new(n_g, n_h)?;
    let basis = closed_form_gb(&params)?;
    let order = TermOrder::default();
    let v = standard_monomials(&params, &basis, ell);
    let n = v.len();

    let mut rows: BTreeMap<Monomial, Vec<EntryCoeff>> = BTreeMap::new();
    for a in 0..n {
        for b in a..n {
            let nf = normal_form(&Polynomial::term(Rational::one(), v[a].mul(&v[b])), &basis, &order);
            let mult = Rational::from(if a == b { 1 } else { 2 });
            for (mono, c) in nf.terms() {
                rows.entry(mono.clone()).or_default().push(((a, b), c * &mult));
            }
        }
    }
    let target = normal_form(&build_fviz(&params), &basis, &order);
    for (mono, _) in target.terms() {
        rows.entry(mono.clone()).or_default();
    }
    let eqs: Vec<LinearEquation<(usize, usize)>> =
        rows.iter().map(|(mono, coeffs)| LinearEquation::new(coeffs.clone(), target.coeff(mono))).collect();
    let keep: Vec<usize> = match independent_equations(&eqs) {
        Ok(k) => k,
        Err(ExactError::Inconsistent) => (0..eqs.len()).collect(),
        Err(e) => return Err(e.into()),
    };

    let mut p = SdpProblem::new(n).with_trace_bound(PIPELINE_TRACE_BOUND);
    for k in keep {
        let coeffs: Vec<((usize, usize), f64)> = eqs[k].coeffs.iter().map(|(ij, c)| (*ij, c.to_f64())).collect();
        p.add_entry_constraint(&coeffs, eqs[k].rhs.to_f64());
    }
    Ok(p)
}
