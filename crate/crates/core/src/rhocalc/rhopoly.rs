use serde::{Deserialize, Serialize};

use super::binom::{binom_q, binomial};
use super::RhoError;
use crate::exactmath::Rational;
use crate::polyalg::{GraphParams, Polynomial, VarId};

/// Linear combination `Σ coeffs[i] ρ^i`, `0 ≤ i ≤ d`, in the algebra where
/// ρ^i is the i-th elementary symmetric polynomial in d Boolean variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoPoly {
    pub coeffs: Vec<Rational>,
}

impl RhoPoly {
    pub fn zero(d: usize) -> Self {
        RhoPoly { coeffs: vec![Rational::zero(); d + 1] }
    }

    /// ρ^i in degree `d`.
    pub fn basis(d: usize, i: usize) -> Self {
        let mut p = Self::zero(d);
        p.coeffs[i] = Rational::one();
        p
    }

    pub fn d(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &RhoPoly) -> Result<RhoPoly, RhoError> {
        same_d(self, other)?;
        Ok(RhoPoly { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &RhoPoly) -> Result<RhoPoly, RhoError> {
        same_d(self, other)?;
        Ok(RhoPoly { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &Rational) -> RhoPoly {
        RhoPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Value when exactly `t` of the d variables are one.
    pub fn eval_at_count(&self, t: usize) -> Rational {
        self.coeffs.iter().enumerate().map(|(i, c)| c * eval_rho_point(i, t)).sum()
    }

    /// The polynomial in the vertex variables of the cross of `(g, h)`.
    pub fn lift(&self, params: &GraphParams, g: usize, h: usize) -> Result<Polynomial, RhoError> {
        if self.d() != params.d() {
            return Err(RhoError::DimensionMismatch(format!("ρ-degree {} for graphs with d = {}", self.d(), params.d())));
        }
        let mut out = Polynomial::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out + rho_polynomial(params, g, h, i).scale(c);
            }
        }
        Ok(out)
    }
}

fn same_d(a: &RhoPoly, b: &RhoPoly) -> Result<(), RhoError> {
    if a.coeffs.len() != b.coeffs.len() {
        return Err(RhoError::DimensionMismatch(format!("degrees {} and {}", a.d(), b.d())));
    }
    Ok(())
}

/// Product modulo the Boolean relations: for i ≤ j,
/// ρ^i ρ^j = Σ_{r=0}^{min(i, d−j)} C(i, r) C(j+r, i) ρ^{j+r}.
pub fn rho_mul(a: &RhoPoly, b: &RhoPoly) -> Result<RhoPoly, RhoError> {
    same_d(a, b)?;
    let d = a.d();
    let mut out = RhoPoly::zero(d);
    for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            let (lo, hi) = (i.min(j), i.max(j));
            let xy = x * y;
            for r in 0..=lo.min(d - hi) {
                let c = binomial(lo, r) * binomial(hi + r, lo);
                out.coeffs[hi + r] += &xy * Rational::from(c);
            }
        }
    }
    Ok(out)
}

/// Σ (−1)^i ρ^i, the expansion of ∏ (1 − x) over the d variables.
pub fn inclusion_exclusion(d: usize) -> RhoPoly {
    RhoPoly {
        coeffs: (0..=d).map(|i| if i % 2 == 0 { Rational::one() } else { -Rational::one() }).collect(),
    }
}

/// Square of `Σ_{i=0}^{⌈d/2⌉} c_i ρ^i` from the closed-form coefficient formula.
#[allow(clippy::needless_range_loop)]
pub fn square_row(c: &[Rational], d: usize) -> Result<RhoPoly, RhoError> {
    let m = d.div_ceil(2);
    if c.len() != m + 1 {
        return Err(RhoError::DimensionMismatch(format!("row of length {} for d = {d}, expected {}", c.len(), m + 1)));
    }
    let mut out = RhoPoly::zero(d);
    for k in 0..=d {
        let mut acc = Rational::zero();
        for i in k.div_ceil(2)..=k.min(m) {
            acc += &c[i] * &c[i] * binom_q(i, k - i) * binom_q(k, i);
        }
        let mut cross = Rational::zero();
        for j in (k + 1).div_ceil(2)..=k.min(m) {
            for i in k - j..j {
                cross += &c[i] * &c[j] * binom_q(i, k - j) * binom_q(k, i);
            }
        }
        out.coeffs[k] = acc + cross * Rational::from(2);
    }
    Ok(out)
}

/// ρ^i at a 0/1 point with `t` ones among the d variables: C(t, i).
pub fn eval_rho_point(i: usize, t: usize) -> Rational {
    binom_q(t, i)
}

/// ρ^i_{gh}: sum of all products of `i` distinct vertex variables from the cross of (g, h).
pub fn rho_polynomial(params: &GraphParams, g: usize, h: usize, i: usize) -> Polynomial {
    let cross: Vec<VarId> = params.cross(g, h).into_iter().map(|(a, b)| VarId::x(a, b)).collect();
    let mut out = Polynomial::zero();
    let n = cross.len();
    if i > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..i).collect();
    loop {
        out.add_term(
            crate::polyalg::Monomial::from_powers(idx.iter().map(|&k| (cross[k], 1))),
            Rational::one(),
        );
        // Next i-subset in lexicographic order.
        let Some(p) = (0..i).rev().find(|&p| idx[p] != p + n - i) else {
            break;
        };
        idx[p] += 1;
        for q in p + 1..i {
            idx[q] = idx[q - 1] + 1;
        }
    }
    out
}
