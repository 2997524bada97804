use serde::{Deserialize, Serialize};

use super::{ExactError, RatMatrix, Rational};

/// Exact factorisation `Pᵀ F P = L D Lᵀ`, with `L` unit lower triangular and `D ≥ 0`.
///
/// `permutation[k]` is the row of `F` moved to position `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LdlWitness {
    pub permutation: Vec<usize>,
    #[serde(rename = "L")]
    pub l: RatMatrix,
    #[serde(rename = "D")]
    pub d: Vec<Rational>,
}

impl LdlWitness {
    pub fn dim(&self) -> usize {
        self.d.len()
    }

    /// L D Lᵀ, in permuted coordinates.
    pub fn product(&self) -> RatMatrix {
        let n = self.dim();
        RatMatrix::from_fn(n, n, |i, j| {
            (0..=i.min(j)).map(|k| &self.l[(i, k)] * &self.d[k] * &self.l[(j, k)]).sum()
        })
    }

    /// Checks every structural property and that the factorisation reproduces `f` exactly.
    pub fn certifies(&self, f: &RatMatrix) -> bool {
        let n = self.dim();
        if !f.is_square() || f.nrows() != n || self.l.nrows() != n || self.l.ncols() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in &self.permutation {
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        if self.permutation.len() != n || self.d.iter().any(Rational::is_negative) {
            return false;
        }
        for i in 0..n {
            if !self.l[(i, i)].is_one() || (i + 1..n).any(|j| !self.l[(i, j)].is_zero()) {
                return false;
            }
        }
        let prod = self.product();
        (0..n).all(|i| (0..n).all(|j| prod[(i, j)] == f[(self.permutation[i], self.permutation[j])]))
    }

    pub fn is_identity_permutation(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// Outcome of an exact semidefiniteness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdCheck {
    Psd(LdlWitness),
    /// `vᵀ F v = value < 0`.
    NotPsd { v: Vec<Rational>, value: Rational },
}

impl PsdCheck {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdCheck::Psd(_))
    }
}

/// Diagonally pivoted LDLᵀ over the rationals.
pub fn ldlt_psd(f: &RatMatrix) -> Result<PsdCheck, ExactError> {
    if !f.is_symmetric() {
        return Err(ExactError::NotSymmetric);
    }
    let n = f.nrows();
    let mut s = f.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut l = RatMatrix::identity(n);
    let mut d = Vec::with_capacity(n);

    for k in 0..n {
        let mut p = k;
        for i in k + 1..n {
            if s[(i, i)] > s[(p, p)] {
                p = i;
            }
        }
        if s[(p, p)].is_negative() {
            let mut w = vec![Rational::zero(); n];
            w[p] = Rational::one();
            return Ok(not_psd(f, &l, &perm, k, w));
        }
        if p != k {
            swap_sym(&mut s, k, p);
            perm.swap(k, p);
            for c in 0..k {
                let t = l[(k, c)].clone();
                l[(k, c)] = l[(p, c)].clone();
                l[(p, c)] = t;
            }
        }
        let piv = s[(k, k)].clone();
        if piv.is_zero() {
            // Every remaining diagonal entry is zero; PSD iff the block vanishes.
            for i in k..n {
                for j in i + 1..n {
                    if !s[(i, j)].is_zero() {
                        let mut w = vec![Rational::zero(); n];
                        w[i] = Rational::one();
                        w[j] = if s[(i, j)].is_positive() { -Rational::one() } else { Rational::one() };
                        return Ok(not_psd(f, &l, &perm, k, w));
                    }
                }
            }
            d.extend(std::iter::repeat_n(Rational::zero(), n - k));
            break;
        }
        for i in k + 1..n {
            l[(i, k)] = &s[(i, k)] / &piv;
        }
        for i in k + 1..n {
            if l[(i, k)].is_zero() {
                continue;
            }
            for j in k + 1..=i {
                let delta = &l[(i, k)] * &s[(k, j)];
                s[(i, j)] -= &delta;
                if i != j {
                    s[(j, i)] = s[(i, j)].clone();
                }
            }
        }
        for i in k + 1..n {
            s[(i, k)] = Rational::zero();
            s[(k, i)] = Rational::zero();
        }
        d.push(piv);
    }
    Ok(PsdCheck::Psd(LdlWitness { permutation: perm, l, d }))
}

/// LDLᵀ without pivoting. Fails with `NeedsPivot` when a zero pivot sits above a
/// nonzero column and with `NotPsd` on a negative pivot.
pub fn ldlt_unpivoted(f: &RatMatrix) -> Result<LdlWitness, ExactError> {
    if !f.is_symmetric() {
        return Err(ExactError::NotSymmetric);
    }
    let n = f.nrows();
    let mut s = f.clone();
    let mut l = RatMatrix::identity(n);
    let mut d = Vec::with_capacity(n);
    for k in 0..n {
        let piv = s[(k, k)].clone();
        if piv.is_negative() {
            return Err(ExactError::NotPsd);
        }
        if piv.is_zero() {
            if (k + 1..n).any(|i| !s[(i, k)].is_zero()) {
                return Err(ExactError::NeedsPivot { step: k });
            }
            d.push(piv);
            continue;
        }
        for i in k + 1..n {
            l[(i, k)] = &s[(i, k)] / &piv;
        }
        for i in k + 1..n {
            for j in k + 1..=i {
                let delta = &l[(i, k)] * &s[(k, j)];
                s[(i, j)] -= &delta;
                if i != j {
                    s[(j, i)] = s[(i, j)].clone();
                }
            }
        }
        d.push(piv);
    }
    Ok(LdlWitness { permutation: (0..n).collect(), l, d })
}

fn swap_sym(s: &mut RatMatrix, a: usize, b: usize) {
    s.swap_rows(a, b);
    for i in 0..s.nrows() {
        let t = s[(i, a)].clone();
        s[(i, a)] = s[(i, b)].clone();
        s[(i, b)] = t;
    }
}

/// Pulls a direction `w` of negative curvature in the Schur complement at step `k`
/// back to original coordinates: v = P L⁻ᵀ w.
fn not_psd(f: &RatMatrix, l: &RatMatrix, perm: &[usize], k: usize, w: Vec<Rational>) -> PsdCheck {
    let n = w.len();
    let mut u = w;
    for i in (0..k).rev() {
        let mut acc = u[i].clone();
        for j in i + 1..n {
            if !l[(j, i)].is_zero() {
                acc -= &l[(j, i)] * &u[j];
            }
        }
        u[i] = acc;
    }
    let mut v = vec![Rational::zero(); n];
    for (i, &p) in perm.iter().enumerate() {
        v[p] = u[i].clone();
    }
    let value = f.quadratic_form(&v).expect("square matrix");
    debug_assert!(value.is_negative());
    PsdCheck::NotPsd { v, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn antidiagonal_is_not_psd() {
        let f = m(&[&[0, 1], &[1, 0]]);
        match ldlt_psd(&f).unwrap() {
            PsdCheck::NotPsd { v, value } => {
                assert_eq!(v, vec![rat(1, 1), rat(-1, 1)]);
                assert_eq!(value, rat(-2, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn singular_psd_has_zero_pivots() {
        let f = m(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]]);
        let PsdCheck::Psd(w) = ldlt_psd(&f).unwrap() else { panic!() };
        assert!(w.certifies(&f));
        assert_eq!(w.d.iter().filter(|x| x.is_zero()).count(), 2);
    }

    #[test]
    fn negative_schur_complement() {
        let f = m(&[&[2, 3], &[3, 2]]);
        let PsdCheck::NotPsd { v, value } = ldlt_psd(&f).unwrap() else { panic!() };
        assert_eq!(f.quadratic_form(&v).unwrap(), value);
        assert!(value.is_negative());
    }

    #[test]
    fn asymmetric_rejected() {
        let f = m(&[&[1, 2], &[0, 1]]);
        assert_eq!(ldlt_psd(&f), Err(ExactError::NotSymmetric));
    }

    #[test]
    fn unpivoted_needs_pivot() {
        let f = m(&[&[0, 0, 0], &[0, 1, 1], &[0, 1, 1]]);
        assert!(ldlt_unpivoted(&f).unwrap().certifies(&f));
        let g = m(&[&[0, 1], &[1, 1]]);
        assert_eq!(ldlt_unpivoted(&g), Err(ExactError::NeedsPivot { step: 0 }));
    }
}
