use std::collections::BTreeMap;

use super::{Certificate, FixSource, Provenance, SearchError};
use crate::exactmath::{
    ldlt_psd, rref, shrink, AffineSolutionSpace, ExactError, LinearEquation, PsdCheck, RatMatrix, Rational,
    RationalsInInterval,
};
use crate::rhocalc::{all_fvars, build_f_system, default_priority, gram_size, FVar, MAX_D};
use crate::sdpsolve::{solve, Sense, SdpProblem, SdpSettings, SdpStatus};

/// Order in which free variables are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum FreeVarPolicy {
    /// Diagonal entries by index, then off-diagonal entries lexicographically.
    #[default]
    DiagonalFirst,
    /// A permutation of all `F_{i,j}`, most preferred free variable first.
    Explicit(Vec<FVar>),
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Fraction cut from each end of an SDP interval before rounding.
    pub margin: Rational,
    pub fixed: BTreeMap<FVar, Rational>,
    pub max_backtracks: usize,
    pub policy: FreeVarPolicy,
    /// Largest denominator tried when re-rounding after a backtrack.
    pub max_denominator: u64,
    pub trace_bound: Option<f64>,
    pub sdp: SdpSettings,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            margin: Rational::new(1, 20),
            fixed: BTreeMap::new(),
            max_backtracks: 8,
            policy: FreeVarPolicy::DiagonalFirst,
            max_denominator: 1 << 20,
            trace_bound: None,
            sdp: SdpSettings::default(),
        }
    }
}

impl SearchOptions {
    pub fn fix(mut self, var: FVar, value: Rational) -> Self {
        self.fixed.insert(var, value);
        self
    }

    fn priority(&self, m: usize) -> Result<Vec<FVar>, SearchError> {
        match &self.policy {
            FreeVarPolicy::DiagonalFirst => Ok(default_priority(m)),
            FreeVarPolicy::Explicit(order) => {
                let mut sorted = order.clone();
                sorted.sort();
                if sorted != all_fvars(m) {
                    return Err(SearchError::InvalidInput(format!(
                        "explicit order must list every F_i_j with i <= j <= {m} exactly once"
                    )));
                }
                Ok(order.clone())
            }
        }
    }
}

/// Range of a free variable over the current PSD set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VarBounds {
    pub lo: f64,
    pub hi: f64,
}

struct Frame {
    var: FVar,
    value: Rational,
    bounds: VarBounds,
    candidates: RationalsInInterval,
    rejected: Vec<Rational>,
}

/// Walks the free variables of the F-system, fixing each to a simple rational
/// inside its SDP range, until an exactly PSD Gram matrix remains.
pub fn find_certificate(d: usize, opts: &SearchOptions) -> Result<Certificate, SearchError> {
    if !(3..=MAX_D).contains(&d) {
        return Err(SearchError::UnsupportedD(d));
    }
    if opts.margin.is_negative() || opts.margin >= Rational::new(1, 2) {
        return Err(SearchError::InvalidInput(format!("margin {} outside [0, 1/2)", opts.margin)));
    }
    let m = gram_size(d);
    for v in opts.fixed.keys() {
        if v.j > m {
            return Err(SearchError::InvalidInput(format!("{v} is outside the {m}x{m} Gram matrix")));
        }
    }
    let priority = opts.priority(m)?;
    let mut base = build_f_system(d)?.linear_equations();
    base.extend(opts.fixed.iter().map(|(v, c)| LinearEquation::fix(*v, c.clone())));

    let mut frames: Vec<Frame> = Vec::new();
    let mut backtracks = 0usize;
    loop {
        let mut eqs = base.clone();
        eqs.extend(frames.iter().map(|f| LinearEquation::fix(f.var, f.value.clone())));
        let space = match rref(&eqs, &priority) {
            Ok(s) => s,
            Err(ExactError::Inconsistent) if frames.is_empty() => {
                return Err(SearchError::NoSolutionFound("the fixed values contradict the F-system".into()))
            }
            Err(e) => return Err(e.into()),
        };
        let failure = match space.free.first() {
            Some(&var) => match free_variable_bounds(&space, var, m, opts.trace_bound, &opts.sdp) {
                Ok(bounds) => {
                    let (a, b) = shrink(bounds.lo, bounds.hi, &opts.margin)?;
                    let mut candidates = RationalsInInterval::new(a, b).with_max_denominator(opts.max_denominator);
                    let value = candidates.next().ok_or(ExactError::EmptyInterval)?;
                    frames.push(Frame { var, value, bounds, candidates, rejected: Vec::new() });
                    continue;
                }
                Err(reason) => reason,
            },
            None => {
                let f = materialize(&space, m);
                match ldlt_psd(&f)? {
                    PsdCheck::Psd(_) => return Certificate::from_gram(d, f, provenance(opts, &frames)),
                    PsdCheck::NotPsd { value, .. } => format!("rounded F is not PSD (vᵀFv = {value})"),
                }
            }
        };
        backtracks += 1;
        if backtracks > opts.max_backtracks {
            return Err(SearchError::NoSolutionFound(format!("{failure}; gave up after {} backtracks", opts.max_backtracks)));
        }
        loop {
            let Some(top) = frames.last_mut() else {
                return Err(SearchError::NoSolutionFound(failure));
            };
            match top.candidates.next() {
                Some(next) => {
                    let old = std::mem::replace(&mut top.value, next);
                    top.rejected.push(old);
                    break;
                }
                None => {
                    frames.pop();
                }
            }
        }
    }
}

fn provenance(opts: &SearchOptions, frames: &[Frame]) -> Vec<Provenance> {
    let user = opts.fixed.iter().map(|(v, c)| Provenance {
        var: *v,
        value: c.clone(),
        source: FixSource::User,
        interval: None,
        margin: None,
        rejected: Vec::new(),
    });
    let sdp = frames.iter().map(|f| Provenance {
        var: f.var,
        value: f.value.clone(),
        source: FixSource::Sdp,
        interval: Some([f.bounds.lo, f.bounds.hi]),
        margin: Some(opts.margin.clone()),
        rejected: f.rejected.clone(),
    });
    user.chain(sdp).collect()
}

/// Gram matrix of a fully determined solution space.
fn materialize(space: &AffineSolutionSpace<FVar>, m: usize) -> RatMatrix {
    let empty = BTreeMap::new();
    RatMatrix::from_fn(m, m, |i, j| {
        space.expr(&FVar::new(i + 1, j + 1)).eval(&empty).expect("no free variables remain")
    })
}

/// PSD matrices of the parametrised family: one equality per dependent entry.
pub fn parametrized_sdp(space: &AffineSolutionSpace<FVar>, m: usize, trace_bound: Option<f64>) -> SdpProblem {
    let mut p = SdpProblem::new(m);
    if let Some(t) = trace_bound {
        p = p.with_trace_bound(t);
    }
    for (v, e) in &space.dependent {
        let mut coeffs = vec![((v.i - 1, v.j - 1), 1.0)];
        coeffs.extend(e.coeffs.iter().map(|(w, c)| ((w.i - 1, w.j - 1), -c.to_f64())));
        p.add_entry_constraint(&coeffs, e.constant.to_f64());
    }
    p
}

/// `[min, max]` of `var` over the PSD matrices of `space`.
pub fn free_variable_bounds(
    space: &AffineSolutionSpace<FVar>,
    var: FVar,
    m: usize,
    trace_bound: Option<f64>,
    settings: &SdpSettings,
) -> Result<VarBounds, String> {
    let mut p = parametrized_sdp(space, m, trace_bound);
    p.objective = SdpProblem::sym_unit(m, var.i - 1, var.j - 1, if var.is_diagonal() { 1.0 } else { 0.5 });
    let (lo, hi) = std::thread::scope(|s| {
        let lo = s.spawn(|| solve(&p, Sense::Minimize, settings));
        let hi = solve(&p, Sense::Maximize, settings);
        (lo.join().expect("SDP thread panicked"), hi)
    });
    let (lo, hi) = (lo.map_err(|e| e.to_string())?, hi.map_err(|e| e.to_string())?);
    for (what, sol) in [("min", &lo), ("max", &hi)] {
        if !matches!(sol.status, SdpStatus::Optimal | SdpStatus::NearOptimal) {
            return Err(format!("{what} SDP for {var} ended with {:?}", sol.status));
        }
    }
    let (a, b) = (lo.primal_objective, hi.primal_objective);
    if a <= b {
        Ok(VarBounds { lo: a, hi: b })
    } else if a - b <= 1e-7 * (1.0 + a.abs()) {
        Ok(VarBounds { lo: b, hi: a })
    } else {
        Err(format!("SDP bounds for {var} are inverted: [{a}, {b}]"))
    }
}
