use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Certificate, SearchError, CERTIFICATE_VERSION};
use crate::exactmath::{ldlt_psd, radical_gram, PsdCheck, RatMatrix, Rational};
use crate::polyalg::{
    build_fviz, closed_form_gb, enumerate_variety, enumerate_x_projection, normal_form, GraphParams, Polynomial,
    TermOrder, VarId, VarietyCap,
};
use crate::rhocalc::{binomial, build_f_system, extended_gram, gram_size, rho_polynomial, sos_residual, sos_target};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of a verification: every check that was run, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub checks: Vec<Check>,
}

impl Verdict {
    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn extend(&mut self, other: Verdict) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {:<28} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Exact checks of a certificate against the F-system of its degree.
pub fn verify_exact(c: &Certificate) -> Verdict {
    let mut v = Verdict::default();
    v.push("version", c.version == CERTIFICATE_VERSION, format!("version {}", c.version));
    let system = match build_f_system(c.d) {
        Ok(s) => s,
        Err(e) => {
            v.push("degree", false, e.to_string());
            return v;
        }
    };
    let m = gram_size(c.d);
    let shape_ok = c.m == m && c.f.nrows() == m && c.f.ncols() == m;
    v.push("shape", shape_ok, format!("m = {}, F is {}x{}, expected {m}x{m}", c.m, c.f.nrows(), c.f.ncols()));
    if !shape_ok {
        return v;
    }
    v.push("symmetric", c.f.is_symmetric(), "");
    match system.residuals(&c.f) {
        Ok(res) => {
            for (eq, (k, r)) in system.equations.iter().zip(res) {
                let rhs: Rational = eq.terms.iter().map(|t| &t.coeff * &c.f[(t.i - 1, t.j - 1)]).sum();
                let lhs = Rational::from(eq.lhs_sign) * (&c.f[(0, 0)] + Rational::one());
                let detail = if r.is_zero() { format!("{lhs} = {rhs}") } else { format!("{lhs} ≠ {rhs}") };
                v.push(format!("equation k={k}"), r.is_zero(), detail);
            }
        }
        Err(e) => v.push("equations", false, e.to_string()),
    }
    let ldl_ok = c.ldl.certifies(&c.f);
    v.push("ldl reconstruction", ldl_ok, if ldl_ok { "P L D Lᵀ Pᵀ = F, D ≥ 0" } else { "witness does not factor F" });
    match ldlt_psd(&c.f) {
        Ok(PsdCheck::Psd(_)) => v.push("psd recomputed", true, ""),
        Ok(PsdCheck::NotPsd { value, .. }) => v.push("psd recomputed", false, format!("vᵀFv = {value}")),
        Err(e) => v.push("psd recomputed", false, e.to_string()),
    }
    if let Some(rows) = &c.rows {
        let gram_ok = radical_gram(rows).is_ok_and(|g| g == c.f);
        v.push("rows gram", gram_ok, format!("{} rows", rows.len()));
        let tri = rows.iter().enumerate().all(|(w, r)| r.coeffs.iter().take(w).all(Rational::is_zero));
        v.push("rows triangular", tri, "");
    }
    match sos_residual(&c.f, c.d) {
        Ok(res) => {
            let ok = res == sos_target(&c.f[(0, 0)], c.d);
            v.push("sos identity", ok, if ok { "Σ s_w² = (F11+1)·IE + ρ¹ − ρ⁰" } else { "ρ-expansion differs" });
        }
        Err(e) => v.push("sos identity", false, e.to_string()),
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BruteMode {
    /// Full variety when it fits the cap, otherwise its vertex projection.
    #[default]
    Auto,
    Full,
    /// Dominating sets of the complete product only.
    Projection,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BruteOptions {
    /// Anchor vertices; every vertex when `None`.
    pub anchors: Option<Vec<(usize, usize)>>,
    pub cap: VarietyCap,
    pub mode: BruteMode,
}

/// SOS value minus `t − 1` for each count t of chosen vertices in the cross,
/// which must vanish for the check to pass.
fn cross_defect(f: &RatMatrix) -> impl Fn(usize) -> Rational {
    let g = extended_gram(f);
    move |t| {
        let b: Vec<Rational> = (0..g.nrows()).map(|i| Rational::from(binomial(t, i))).collect();
        g.quadratic_form(&b).expect("length matches") - Rational::from(t as i64 - 1)
    }
}

/// Evaluates the certificate at every 0/1 point of the variety for the split
/// `(n_g, n_h)` and compares against `Σ x − 1`.
pub fn verify_bruteforce(c: &Certificate, n_g: usize, n_h: usize, opts: &BruteOptions) -> Result<Verdict, SearchError> {
    let params = GraphParams::new(n_g, n_h)?;
    if params.d() != c.d {
        return Err(SearchError::InvalidInput(format!("split ({n_g}, {n_h}) has d = {}, certificate has d = {}", params.d(), c.d)));
    }
    if c.f.nrows() != gram_size(c.d) || c.f.ncols() != gram_size(c.d) {
        return Err(SearchError::InvalidInput("F has the wrong shape".into()));
    }
    let n = n_g * n_h;
    if n > opts.cap.max_vertices {
        return Err(SearchError::CapExceeded(format!("{n} vertices exceed the cap of {}", opts.cap.max_vertices)));
    }
    let anchors: Vec<(usize, usize)> = match &opts.anchors {
        Some(a) => a.clone(),
        None => params.vertices().collect(),
    };
    if let Some(&(g, h)) = anchors.iter().find(|&&(g, h)| g == 0 || h == 0 || g > n_g || h > n_h) {
        return Err(SearchError::InvalidInput(format!("anchor ({g}, {h}) is not a vertex")));
    }
    let bit = |g: usize, h: usize| 1u64 << ((g - 1) * n_h + (h - 1));
    let masks: Vec<u64> =
        anchors.iter().map(|&(g, h)| params.cross(g, h).into_iter().fold(0, |m, (a, b)| m | bit(a, b))).collect();
    let defect = cross_defect(&c.f);
    let table: Vec<bool> = (0..=n_g + n_h - 1).map(|t| defect(t).is_zero()).collect();

    let mut stats = vec![(0u64, None::<u64>); anchors.len()];
    let mut negative = None;
    let mut points = 0u64;
    let mut check = |x: u64| {
        points += 1;
        if x.count_ones() == 0 {
            negative.get_or_insert(x);
        }
        for (s, &mask) in stats.iter_mut().zip(&masks) {
            s.0 += 1;
            if !table[(x & mask).count_ones() as usize] {
                s.1.get_or_insert(x);
            }
        }
    };
    let full = match opts.mode {
        BruteMode::Full => true,
        BruteMode::Projection => false,
        BruteMode::Auto => enumerate_variety(&params, &opts.cap).is_ok(),
    };
    let mode_name = if full {
        enumerate_variety(&params, &opts.cap)?.for_each(|p| check(p.x_mask));
        "variety"
    } else {
        enumerate_x_projection(&params, opts.cap.max_vertices)?.for_each(&mut check);
        "x-projection"
    };

    let mut v = Verdict::default();
    let split = format!("({n_g},{n_h})");
    for (&(g, h), (count, bad)) in anchors.iter().zip(&stats) {
        let detail = match bad {
            None => format!("{count} {mode_name} points"),
            Some(x) => format!("mismatch at x = {x:#b}"),
        };
        v.push(format!("brute {split} anchor ({g},{h})"), bad.is_none(), detail);
    }
    let all = (1u64 << n) - 1;
    let ones_ok = masks.iter().all(|&mask| {
        let t = (all & mask).count_ones() as usize;
        let value = defect(t) + Rational::from(t as i64 - 1) + Rational::from((all & !mask).count_ones());
        value == Rational::from(n as i64 - 1)
    });
    v.push(format!("brute {split} all-ones"), ones_ok, format!("SOS value {} expected", n - 1));
    v.push(format!("brute {split} f ≥ 0"), negative.is_none(), format!("{points} points"));
    Ok(v)
}

/// Normal form of `SOS − f_viz` modulo the closed-form basis, for one anchor.
/// Zero iff the certificate is an identity in the coordinate ring.
pub fn symbolic_remainder(c: &Certificate, n_g: usize, n_h: usize, anchor: (usize, usize)) -> Result<Polynomial, SearchError> {
    let params = GraphParams::new(n_g, n_h)?;
    if params.d() != c.d {
        return Err(SearchError::InvalidInput(format!("split ({n_g}, {n_h}) does not have d = {}", c.d)));
    }
    let (g, h) = anchor;
    let basis = closed_form_gb(&params)?;
    let order = TermOrder::default();
    let gram = extended_gram(&c.f);
    let rho: Vec<Polynomial> = (0..gram.nrows()).map(|i| normal_form(&rho_polynomial(&params, g, h, i), &basis, &order)).collect();
    let mut sos = Polynomial::zero();
    for i in 0..rho.len() {
        for j in 0..rho.len() {
            if !gram[(i, j)].is_zero() {
                let p = normal_form(&(rho[i].clone() * rho[j].clone()), &basis, &order);
                sos = sos + p.scale(&gram[(i, j)]);
            }
        }
    }
    let cross = params.cross(g, h);
    for v in params.vertices().filter(|v| !cross.contains(v)) {
        let x = Polynomial::var(VarId::x(v.0, v.1));
        sos = sos + x.clone() * x;
    }
    Ok(normal_form(&(sos - build_fviz(&params)), &basis, &order))
}
