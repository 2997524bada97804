use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::binom::binomial;
use super::rhopoly::{inclusion_exclusion, rho_mul, RhoPoly};
use super::RhoError;
use crate::exactmath::{LinearEquation, RatMatrix, Rational};

/// Entry `F_{i,j}` of the Gram matrix, `1 ≤ i ≤ j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FVar {
    pub i: usize,
    pub j: usize,
}

impl FVar {
    /// Canonicalises so that `i ≤ j`.
    pub fn new(i: usize, j: usize) -> Self {
        FVar { i: i.min(j), j: i.max(j) }
    }

    pub fn is_diagonal(&self) -> bool {
        self.i == self.j
    }
}

impl fmt::Display for FVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}_{}", self.i, self.j)
    }
}

impl FromStr for FVar {
    type Err = RhoError;

    fn from_str(s: &str) -> Result<Self, RhoError> {
        let bad = || RhoError::Parse(s.to_string());
        let rest = s.strip_prefix("F_").ok_or_else(bad)?;
        let (i, j) = rest.split_once('_').ok_or_else(bad)?;
        let (i, j): (usize, usize) = (i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?);
        if i == 0 || j == 0 {
            return Err(bad());
        }
        Ok(FVar::new(i, j))
    }
}

impl Serialize for FVar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FVar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// ⌈d/2⌉.
pub fn gram_size(d: usize) -> usize {
    d.div_ceil(2)
}

/// All `F_{i,j}`, `i ≤ j ≤ m`, lexicographically.
pub fn all_fvars(m: usize) -> Vec<FVar> {
    (1..=m).flat_map(|i| (i..=m).map(move |j| FVar::new(i, j))).collect()
}

/// Default free-variable priority: diagonal entries by index, then the
/// off-diagonal ones lexicographically.
pub fn default_priority(m: usize) -> Vec<FVar> {
    let mut v: Vec<FVar> = (1..=m).map(|i| FVar::new(i, i)).collect();
    v.extend(all_fvars(m).into_iter().filter(|f| !f.is_diagonal()));
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FTerm {
    pub i: usize,
    pub j: usize,
    pub coeff: Rational,
}

/// `lhs_sign · (F_{1,1} + 1) = Σ coeff · F_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FEquation {
    pub k: usize,
    pub lhs_sign: i8,
    pub terms: Vec<FTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FSystem {
    pub d: usize,
    pub equations: Vec<FEquation>,
}

/// Linear conditions on the ⌈d/2⌉-square Gram matrix F, one per 2 ≤ k ≤ d, with
/// `F_{0,j} = −F_{1,j}` substituted.
pub fn build_f_system(d: usize) -> Result<FSystem, RhoError> {
    if !(3..=super::MAX_D).contains(&d) {
        return Err(RhoError::UnsupportedD(d));
    }
    let m = gram_size(d);
    let mut equations = Vec::with_capacity(d - 1);
    for k in 2..=d {
        let mut acc: std::collections::BTreeMap<FVar, i128> = std::collections::BTreeMap::new();
        let mut put = |i: usize, j: usize, c: i128| {
            let (i, j, c) = if i == 0 { (1, j, -c) } else { (i, j, c) };
            *acc.entry(FVar::new(i, j)).or_insert(0) += c;
        };
        for i in k.div_ceil(2)..=k.min(m) {
            put(i, i, (binomial(i, k - i) * binomial(k, i)) as i128);
        }
        for j in (k + 1).div_ceil(2)..=k.min(m) {
            for i in k - j..j {
                put(i, j, 2 * (binomial(i, k - j) * binomial(k, i)) as i128);
            }
        }
        let terms = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(v, c)| FTerm { i: v.i, j: v.j, coeff: Rational::from(c) })
            .collect();
        equations.push(FEquation { k, lhs_sign: if k % 2 == 0 { 1 } else { -1 }, terms });
    }
    Ok(FSystem { d, equations })
}

impl FSystem {
    pub fn m(&self) -> usize {
        gram_size(self.d)
    }

    /// `Σ coeff · F − lhs_sign · F_{1,1} = lhs_sign` for each equation.
    pub fn linear_equations(&self) -> Vec<LinearEquation<FVar>> {
        self.equations
            .iter()
            .map(|eq| {
                let sign = Rational::from(eq.lhs_sign);
                let mut coeffs: Vec<(FVar, Rational)> =
                    eq.terms.iter().map(|t| (FVar::new(t.i, t.j), t.coeff.clone())).collect();
                coeffs.push((FVar::new(1, 1), -sign.clone()));
                LinearEquation::new(coeffs, sign)
            })
            .collect()
    }

    /// `rhs − lhs` of every equation at `f`.
    pub fn residuals(&self, f: &RatMatrix) -> Result<Vec<(usize, Rational)>, RhoError> {
        let m = self.m();
        if f.nrows() != m || f.ncols() != m {
            return Err(RhoError::DimensionMismatch(format!("F is {}x{}, expected {m}x{m}", f.nrows(), f.ncols())));
        }
        Ok(self
            .equations
            .iter()
            .map(|eq| {
                let rhs: Rational = eq.terms.iter().map(|t| &t.coeff * &f[(t.i - 1, t.j - 1)]).sum();
                let lhs = Rational::from(eq.lhs_sign) * (&f[(0, 0)] + Rational::one());
                (eq.k, rhs - lhs)
            })
            .collect())
    }

    pub fn is_satisfied_by(&self, f: &RatMatrix) -> bool {
        self.residuals(f).is_ok_and(|r| r.iter().all(|(_, x)| x.is_zero()))
    }
}

/// Gram matrix over ρ⁰..ρ^m induced by F through `c_{w,0} = −c_{w,1}`.
pub fn extended_gram(f: &RatMatrix) -> RatMatrix {
    let m = f.nrows();
    RatMatrix::from_fn(m + 1, m + 1, |i, j| match (i, j) {
        (0, 0) => f[(0, 0)].clone(),
        (0, j) => -&f[(0, j - 1)],
        (i, 0) => -&f[(i - 1, 0)],
        (i, j) => f[(i - 1, j - 1)].clone(),
    })
}

/// Σ_w s_w² in the ρ-basis: Σ_{i,j} G_ij ρ^i ρ^j with G the extended Gram matrix of F.
pub fn sos_residual(f: &RatMatrix, d: usize) -> Result<RhoPoly, RhoError> {
    let m = gram_size(d);
    if f.nrows() != m || f.ncols() != m {
        return Err(RhoError::DimensionMismatch(format!("F is {}x{}, expected {m}x{m} for d = {d}", f.nrows(), f.ncols())));
    }
    let g = extended_gram(f);
    let mut out = RhoPoly::zero(d);
    for i in 0..=m {
        for j in 0..=m {
            if !g[(i, j)].is_zero() {
                let p = rho_mul(&RhoPoly::basis(d, i), &RhoPoly::basis(d, j))?;
                out = out.add(&p.scale(&g[(i, j)]))?;
            }
        }
    }
    Ok(out)
}

/// What the SOS must reduce to: `(F_{1,1} + 1) · Σ(−1)^i ρ^i + ρ¹ − ρ⁰`.
/// The inclusion–exclusion part lies in the ideal, so this is ρ¹ − ρ⁰ modulo it.
pub fn sos_target(f11: &Rational, d: usize) -> RhoPoly {
    let mut t = inclusion_exclusion(d).scale(&(f11 + Rational::one()));
    t.coeffs[1] += Rational::one();
    t.coeffs[0] -= Rational::one();
    t
}

/// `sos_residual(F) − sos_target(F_{1,1})`; zero iff F satisfies every equation
/// of the system (the ρ⁰ and ρ¹ coefficients agree for any F).
pub fn sos_gap(f: &RatMatrix, d: usize) -> Result<RhoPoly, RhoError> {
    sos_residual(f, d)?.sub(&sos_target(&f[(0, 0)], d))
}
