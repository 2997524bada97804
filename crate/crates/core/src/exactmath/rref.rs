use std::collections::BTreeMap;
use std::fmt::Debug;

use super::{ExactError, Rational};

/// `Σ coeffs · var = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearEquation<V> {
    pub coeffs: Vec<(V, Rational)>,
    pub rhs: Rational,
}

impl<V> LinearEquation<V> {
    pub fn new(coeffs: Vec<(V, Rational)>, rhs: Rational) -> Self {
        LinearEquation { coeffs, rhs }
    }
}

impl<V: Ord> LinearEquation<V> {
    pub fn fix(var: V, value: Rational) -> Self {
        LinearEquation { coeffs: vec![(var, Rational::one())], rhs: value }
    }

    pub fn residual(&self, values: &BTreeMap<V, Rational>) -> Option<Rational> {
        let mut lhs = Rational::zero();
        for (v, c) in &self.coeffs {
            lhs += c * values.get(v)?;
        }
        Some(lhs - &self.rhs)
    }
}

/// `constant + Σ coeffs · free`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineExpr<V> {
    pub constant: Rational,
    pub coeffs: Vec<(V, Rational)>,
}

impl<V: Ord> AffineExpr<V> {
    pub fn eval(&self, free_values: &BTreeMap<V, Rational>) -> Option<Rational> {
        let mut acc = self.constant.clone();
        for (v, c) in &self.coeffs {
            acc += c * free_values.get(v)?;
        }
        Some(acc)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Solution set of a consistent linear system, parametrised by its free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSpace<V> {
    /// Free variables in caller priority order.
    pub free: Vec<V>,
    pub dependent: BTreeMap<V, AffineExpr<V>>,
}

impl<V: Ord + Clone> AffineSolutionSpace<V> {
    pub fn is_free(&self, v: &V) -> bool {
        self.free.contains(v)
    }

    /// Expression of any variable of the system in terms of the free ones.
    pub fn expr(&self, v: &V) -> AffineExpr<V> {
        match self.dependent.get(v) {
            Some(e) => e.clone(),
            None => AffineExpr { constant: Rational::zero(), coeffs: vec![(v.clone(), Rational::one())] },
        }
    }

    /// Values of every variable once the free ones are assigned.
    pub fn assign(&self, free_values: &BTreeMap<V, Rational>) -> Option<BTreeMap<V, Rational>> {
        let mut out = BTreeMap::new();
        for v in &self.free {
            out.insert(v.clone(), free_values.get(v)?.clone());
        }
        for (v, e) in &self.dependent {
            out.insert(v.clone(), e.eval(free_values)?);
        }
        Some(out)
    }
}

/// Reduced row echelon form of `equations` over the variables listed in `priority`.
///
/// Variables earlier in `priority` are kept free whenever possible: columns are
/// pivoted in reverse priority order, so the least preferred variables become
/// dependent first.
pub fn rref<V: Ord + Clone + Debug>(
    equations: &[LinearEquation<V>],
    priority: &[V],
) -> Result<AffineSolutionSpace<V>, ExactError> {
    let n = priority.len();
    let mut col_of: BTreeMap<&V, usize> = BTreeMap::new();
    for (i, v) in priority.iter().rev().enumerate() {
        if col_of.insert(v, i).is_some() {
            return Err(ExactError::DuplicateVariable(format!("{v:?}")));
        }
    }
    let var_at = |c: usize| &priority[n - 1 - c];

    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(equations.len());
    for eq in equations {
        let mut row = vec![Rational::zero(); n + 1];
        for (v, c) in &eq.coeffs {
            let col = *col_of.get(v).ok_or_else(|| ExactError::UnknownVariable(format!("{v:?}")))?;
            row[col] += c;
        }
        row[n] = eq.rhs.clone();
        rows.push(row);
    }

    let pivots = eliminate(&mut rows, n);
    for row in rows.iter().skip(pivots.len()) {
        if !row[n].is_zero() {
            return Err(ExactError::Inconsistent);
        }
    }

    let pivot_cols: Vec<usize> = pivots.clone();
    let mut free = Vec::new();
    for v in priority {
        if !pivot_cols.contains(&col_of[v]) {
            free.push(v.clone());
        }
    }
    let mut dependent = BTreeMap::new();
    for (r, &pc) in pivot_cols.iter().enumerate() {
        let row = &rows[r];
        let mut coeffs = Vec::new();
        for v in &free {
            let c = &row[col_of[v]];
            if !c.is_zero() {
                coeffs.push((v.clone(), -c));
            }
        }
        dependent.insert(var_at(pc).clone(), AffineExpr { constant: row[n].clone(), coeffs });
    }
    Ok(AffineSolutionSpace { free, dependent })
}

/// Indices of a maximal linearly independent subset of `equations`, taken greedily
/// in input order. Fails when the system is inconsistent.
pub fn independent_equations<V: Ord + Clone + Debug>(
    equations: &[LinearEquation<V>],
) -> Result<Vec<usize>, ExactError> {
    let mut cols: BTreeMap<&V, usize> = BTreeMap::new();
    for eq in equations {
        for (v, _) in &eq.coeffs {
            let next = cols.len();
            cols.entry(v).or_insert(next);
        }
    }
    let n = cols.len();
    // Rows already accepted, kept in echelon form keyed by pivot column.
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut kept = Vec::new();
    for (idx, eq) in equations.iter().enumerate() {
        let mut row = vec![Rational::zero(); n + 1];
        for (v, c) in &eq.coeffs {
            row[cols[v]] += c;
        }
        row[n] = eq.rhs.clone();
        for (pc, b) in &basis {
            if !row[*pc].is_zero() {
                let f = row[*pc].clone();
                for (x, y) in row.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        match (0..n).find(|&c| !row[c].is_zero()) {
            Some(pc) => {
                let inv = row[pc].recip()?;
                for x in row.iter_mut() {
                    *x *= &inv;
                }
                basis.push((pc, row));
                kept.push(idx);
            }
            None if !row[n].is_zero() => return Err(ExactError::Inconsistent),
            None => {}
        }
    }
    Ok(kept)
}

/// In-place Gauss–Jordan on the first `ncols` columns; returns pivot columns by row.
fn eliminate(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn prefers_early_variables_free() {
        // a + b + c = 1, a - c = 0
        let eqs = vec![
            LinearEquation::new(vec![("a", rat(1, 1)), ("b", rat(1, 1)), ("c", rat(1, 1))], rat(1, 1)),
            LinearEquation::new(vec![("a", rat(1, 1)), ("c", rat(-1, 1))], rat(0, 1)),
        ];
        let s = rref(&eqs, &["a", "b", "c"]).unwrap();
        assert_eq!(s.free, vec!["a"]);
        let mut vals = BTreeMap::new();
        vals.insert("a", rat(1, 3));
        let all = s.assign(&vals).unwrap();
        assert_eq!(all["c"], rat(1, 3));
        assert_eq!(all["b"], rat(1, 3));

        let s = rref(&eqs, &["c", "b", "a"]).unwrap();
        assert_eq!(s.free, vec!["c"]);
    }

    #[test]
    fn inconsistent_and_unknown() {
        let eqs = vec![LinearEquation::fix("a", rat(1, 1)), LinearEquation::fix("a", rat(2, 1))];
        assert_eq!(rref(&eqs, &["a"]), Err(ExactError::Inconsistent));
        assert!(matches!(rref(&eqs, &["b"]), Err(ExactError::UnknownVariable(_))));
    }

    #[test]
    fn independent_subset() {
        let eqs = vec![
            LinearEquation::new(vec![(0, rat(1, 1)), (1, rat(1, 1))], rat(2, 1)),
            LinearEquation::new(vec![(0, rat(2, 1)), (1, rat(2, 1))], rat(4, 1)),
            LinearEquation::new(vec![(1, rat(1, 1))], rat(1, 1)),
        ];
        assert_eq!(independent_equations(&eqs).unwrap(), vec![0, 2]);
        let bad = vec![eqs[0].clone(), LinearEquation::new(vec![(0, rat(2, 1)), (1, rat(2, 1))], rat(5, 1))];
        assert_eq!(independent_equations(&bad), Err(ExactError::Inconsistent));
    }
}
