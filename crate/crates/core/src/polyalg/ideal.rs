use super::{GraphParams, PolyError, Polynomial, VarId};

/// Largest `n_G + n_H` for which the closed-form basis is materialised.
pub const MAX_CLOSED_FORM_VERTICES: usize = 16;

/// Generators of the ideal whose variety is the set of graph pairs (G, H) with
/// γ(G) = γ(H) = 1, dominators at vertex 1, together with dominating sets of G□H.
///
/// Order: vertex Booleans, G-edge Booleans, H-edge Booleans, dominator
/// constraints for G then H, and one domination product per vertex of G□H.
pub fn build_generators(params: &GraphParams) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = params.vertices().map(|(g, h)| Polynomial::boolean(VarId::x(g, h))).collect();
    out.extend(params.g_edges().map(Polynomial::boolean));
    out.extend(params.h_edges().map(Polynomial::boolean));
    out.extend((2..=params.n_g).map(|g| Polynomial::one_minus_var(VarId::edge_g(1, g))));
    out.extend((2..=params.n_h).map(|h| Polynomial::one_minus_var(VarId::edge_h(1, h))));
    for (g, h) in params.vertices() {
        out.push(domination_product(params, g, h));
    }
    out
}

/// `(1 − x_gh) ∏_{g'≠g} (1 − e_gg' x_g'h) ∏_{h'≠h} (1 − e_hh' x_gh')`, which vanishes
/// exactly when (g, h) is dominated.
pub fn domination_product(params: &GraphParams, g: usize, h: usize) -> Polynomial {
    let mut factors = vec![Polynomial::one_minus_var(VarId::x(g, h))];
    for g2 in (1..=params.n_g).filter(|&g2| g2 != g) {
        factors.push(Polynomial::one() - Polynomial::var(VarId::edge_g(g, g2)) * Polynomial::var(VarId::x(g2, h)));
    }
    for h2 in (1..=params.n_h).filter(|&h2| h2 != h) {
        factors.push(Polynomial::one() - Polynomial::var(VarId::edge_h(h, h2)) * Polynomial::var(VarId::x(g, h2)));
    }
    Polynomial::product(factors)
}

/// Σ x_gh − 1: nonnegative on the variety iff the domination bound holds.
pub fn build_fviz(params: &GraphParams) -> Polynomial {
    let mut p = Polynomial::constant(-crate::exactmath::Rational::one());
    for (g, h) in params.vertices() {
        p = p + Polynomial::var(VarId::x(g, h));
    }
    p
}

/// Split of the cross of (g, h) used by the closed-form basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossSplit {
    /// Vertices of U, each paired with the edge variable that stands in for it.
    pub u: Vec<((usize, usize), VarId)>,
    /// The rest of the cross, including (g, h) itself.
    pub u_bar: Vec<(usize, usize)>,
}

pub fn cross_split(params: &GraphParams, g: usize, h: usize) -> CrossSplit {
    let mut u = Vec::new();
    if h != 1 {
        for h2 in (1..=params.n_h).filter(|&h2| h2 != 1 && h2 != h) {
            u.push(((g, h2), VarId::edge_h(h, h2)));
        }
    }
    if g != 1 {
        for g2 in (1..=params.n_g).filter(|&g2| g2 != 1 && g2 != g) {
            u.push(((g2, h), VarId::edge_g(g, g2)));
        }
    }
    let u_bar = params.cross(g, h).into_iter().filter(|v| !u.iter().any(|(w, _)| w == v)).collect();
    CrossSplit { u, u_bar }
}

/// The reduced Gröbner basis in closed form, for the default term order.
///
/// Order: dominator edges (G then H), Booleans of the remaining G- and H-edges,
/// vertex Booleans, then for each (g, h) and each subset M of U (as a bitmask)
/// the element `∏_{Ū}(x − 1) ∏_{M}(x − 1) ∏_{U∖M}(e − 1)`.
pub fn closed_form_gb(params: &GraphParams) -> Result<Vec<Polynomial>, PolyError> {
    if params.n_g + params.n_h > MAX_CLOSED_FORM_VERTICES {
        return Err(PolyError::TooLarge(format!(
            "closed-form basis for ({}, {}) exceeds n_G + n_H = {MAX_CLOSED_FORM_VERTICES}",
            params.n_g, params.n_h
        )));
    }
    let mut out: Vec<Polynomial> = (2..=params.n_g).map(|g| Polynomial::var_minus_one(VarId::edge_g(1, g))).collect();
    out.extend((2..=params.n_h).map(|h| Polynomial::var_minus_one(VarId::edge_h(1, h))));
    out.extend(params.free_edges().into_iter().map(Polynomial::boolean));
    out.extend(params.vertices().map(|(g, h)| Polynomial::boolean(VarId::x(g, h))));
    for (g, h) in params.vertices() {
        let split = cross_split(params, g, h);
        let base = Polynomial::product(split.u_bar.iter().map(|&(a, b)| Polynomial::var_minus_one(VarId::x(a, b))));
        for mask in 0u64..(1u64 << split.u.len()) {
            let mut p = base.clone();
            for (bit, &((a, b), e)) in split.u.iter().enumerate() {
                let v = if mask >> bit & 1 == 1 { VarId::x(a, b) } else { e };
                p = p * Polynomial::var_minus_one(v);
            }
            out.push(p);
        }
    }
    Ok(out)
}
