use serde::{Deserialize, Serialize};

use super::{ldlt_unpivoted, ExactError, LdlWitness, RatMatrix, Rational};

/// One Cholesky row `√radicand · coeffs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalRow {
    pub radicand: Rational,
    pub coeffs: Vec<Rational>,
}

/// Cholesky factor of `f` with rational row coefficients and rational radicands,
/// so that `f = Σ_w radicand_w · coeffs_w coeffs_wᵀ`.
///
/// Uses `witness` when it is an unpermuted factorisation of `f`, otherwise
/// refactors without pivoting.
pub fn rat_cholesky_radical(f: &RatMatrix, witness: Option<&LdlWitness>) -> Result<Vec<RadicalRow>, ExactError> {
    let owned;
    let w = match witness {
        Some(w) if w.is_identity_permutation() && w.certifies(f) => w,
        _ => {
            owned = ldlt_unpivoted(f)?;
            &owned
        }
    };
    let n = w.dim();
    Ok((0..n)
        .map(|k| RadicalRow { radicand: w.d[k].clone(), coeffs: (0..n).map(|i| w.l[(i, k)].clone()).collect() })
        .collect())
}

/// Σ radicand · coeffs coeffsᵀ.
pub fn radical_gram(rows: &[RadicalRow]) -> Result<RatMatrix, ExactError> {
    let n = rows.first().map_or(0, |r| r.coeffs.len());
    if rows.iter().any(|r| r.coeffs.len() != n) {
        return Err(ExactError::DimensionMismatch("radical rows of unequal length".into()));
    }
    Ok(RatMatrix::from_fn(n, n, |i, j| rows.iter().map(|r| &r.radicand * &r.coeffs[i] * &r.coeffs[j]).sum()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn roundtrip_small() {
        let f = RatMatrix::from_rows(vec![vec![rat(4, 1), rat(2, 1)], vec![rat(2, 1), rat(3, 1)]]).unwrap();
        let rows = rat_cholesky_radical(&f, None).unwrap();
        assert_eq!(rows[0].radicand, rat(4, 1));
        assert_eq!(rows[0].coeffs, vec![rat(1, 1), rat(1, 2)]);
        assert_eq!(rows[1].radicand, rat(2, 1));
        assert_eq!(radical_gram(&rows).unwrap(), f);
    }
}
