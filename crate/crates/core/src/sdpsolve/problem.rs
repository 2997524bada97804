use nalgebra::DMatrix;

use super::SdpError;

/// `optimise ⟨C, X⟩ s.t. ⟨A_i, X⟩ = b_i, X ⪰ 0`, optionally with `tr X ≤ trace_bound`.
#[derive(Clone, Debug)]
pub struct SdpProblem {
    pub n: usize,
    pub objective: DMatrix<f64>,
    pub constraints: Vec<(DMatrix<f64>, f64)>,
    pub trace_bound: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

impl SdpProblem {
    pub fn new(n: usize) -> Self {
        SdpProblem { n, objective: DMatrix::zeros(n, n), constraints: Vec::new(), trace_bound: None }
    }

    pub fn with_trace_bound(mut self, bound: f64) -> Self {
        self.trace_bound = Some(bound);
        self
    }

    /// Symmetric matrix with `v` at (i, j) and (j, i).
    pub fn sym_unit(n: usize, i: usize, j: usize, v: f64) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(n, n);
        a[(i, j)] = v;
        a[(j, i)] = v;
        a
    }

    /// Adds `⟨A, X⟩ = b` from the coefficient of every entry `X_ij`, `i ≤ j`.
    /// Off-diagonal coefficients are split over both triangles.
    pub fn add_entry_constraint(&mut self, coeffs: &[((usize, usize), f64)], b: f64) {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &((i, j), c) in coeffs {
            if i == j {
                a[(i, i)] += c;
            } else {
                a[(i, j)] += c / 2.0;
                a[(j, i)] += c / 2.0;
            }
        }
        self.constraints.push((a, b));
    }

    pub fn validate(&self) -> Result<(), SdpError> {
        let check = |m: &DMatrix<f64>, what: &str| -> Result<(), SdpError> {
            if m.nrows() != self.n || m.ncols() != self.n {
                return Err(SdpError::InvalidProblem(format!("{what} is {}x{}, expected {}", m.nrows(), m.ncols(), self.n)));
            }
            if m.iter().any(|x| !x.is_finite()) {
                return Err(SdpError::InvalidProblem(format!("{what} has non-finite entries")));
            }
            for i in 0..self.n {
                for j in 0..i {
                    let (a, b) = (m[(i, j)], m[(j, i)]);
                    if (a - b).abs() > 1e-12 * (1.0 + a.abs().max(b.abs())) {
                        return Err(SdpError::InvalidProblem(format!("{what} is not symmetric")));
                    }
                }
            }
            Ok(())
        };
        if self.n == 0 {
            return Err(SdpError::InvalidProblem("empty matrix variable".into()));
        }
        check(&self.objective, "objective")?;
        for (k, (a, b)) in self.constraints.iter().enumerate() {
            check(a, &format!("constraint {k}"))?;
            if !b.is_finite() {
                return Err(SdpError::InvalidProblem(format!("constraint {k} has non-finite right-hand side")));
            }
        }
        if let Some(t) = self.trace_bound {
            if !(t.is_finite() && t > 0.0) {
                return Err(SdpError::InvalidProblem(format!("trace bound {t} must be positive")));
            }
        }
        Ok(())
    }
}
