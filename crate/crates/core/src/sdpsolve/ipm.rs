use nalgebra::{DMatrix, DVector};

use super::{Sense, SdpError, SdpProblem};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SdpSettings {
    pub feas_tol: f64,
    pub gap_tol: f64,
    pub max_iter: usize,
    /// Feasibility problems whose minimal violation exceeds this are reported infeasible.
    pub infeasibility_margin: f64,
    pub step_fraction: f64,
    /// Accuracy accepted as [`SdpStatus::NearOptimal`] when progress stalls.
    pub reduced_tol: f64,
    /// Iterations without improvement before stopping.
    pub stall_iter: usize,
}

impl Default for SdpSettings {
    fn default() -> Self {
        SdpSettings { feas_tol: 1e-8, gap_tol: 1e-8, max_iter: 200, infeasibility_margin: 1e-4, step_fraction: 0.95, reduced_tol: 1e-6, stall_iter: 15 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdpStatus {
    Optimal,
    /// Stalled, best iterate within `reduced_tol`.
    NearOptimal,
    PrimalInfeasible,
    DualInfeasible,
    MaxIterations,
    NumericalTrouble,
}

#[derive(Clone, Debug)]
pub struct SdpSolution {
    pub status: SdpStatus,
    pub x: DMatrix<f64>,
    pub y: Vec<f64>,
    pub primal_objective: f64,
    pub dual_objective: f64,
    pub primal_infeasibility: f64,
    pub dual_infeasibility: f64,
    pub relative_gap: f64,
    pub iterations: usize,
}

#[derive(Clone, Debug)]
pub enum Feasibility {
    Feasible { x: DMatrix<f64>, measure: f64 },
    LikelyInfeasible { measure: f64 },
}

/// Sparse symmetric matrix, every nonzero listed (both triangles).
#[derive(Clone, Debug)]
struct Sparse {
    entries: Vec<(usize, usize, f64)>,
}

impl Sparse {
    fn from_dense(m: &DMatrix<f64>) -> Self {
        let mut entries = Vec::new();
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                if m[(i, j)] != 0.0 {
                    entries.push((i, j, m[(i, j)]));
                }
            }
        }
        Sparse { entries }
    }

    fn dot(&self, m: &DMatrix<f64>) -> f64 {
        self.entries.iter().map(|&(i, j, a)| a * m[(i, j)]).sum()
    }

    fn add_to(&self, m: &mut DMatrix<f64>, scale: f64) {
        for &(i, j, a) in &self.entries {
            m[(i, j)] += scale * a;
        }
    }

    fn norm(&self) -> f64 {
        self.entries.iter().map(|e| e.2 * e.2).sum::<f64>().sqrt()
    }
}

/// `min ⟨C, X⟩ + cᵀs  s.t.  ⟨A_i, X⟩ + a_iᵀ s = b_i,  X ⪰ 0,  s ≥ 0`.
struct Conic {
    n: usize,
    c: DMatrix<f64>,
    c_lp: DVector<f64>,
    a: Vec<Sparse>,
    a_lp: DMatrix<f64>,
    b: DVector<f64>,
}

impl Conic {
    fn mc(&self) -> usize {
        self.a.len()
    }

    fn k(&self) -> usize {
        self.c_lp.len()
    }

    fn a_op(&self, x: &DMatrix<f64>, s: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(self.mc(), |i, _| self.a[i].dot(x)) + &self.a_lp * s
    }

    fn a_adj(&self, y: &DVector<f64>) -> (DMatrix<f64>, DVector<f64>) {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (ai, &yi) in self.a.iter().zip(y.iter()) {
            if yi != 0.0 {
                ai.add_to(&mut m, yi);
            }
        }
        (m, self.a_lp.transpose() * y)
    }
}

struct Iterate {
    x: DMatrix<f64>,
    s: DVector<f64>,
    y: DVector<f64>,
    z: DMatrix<f64>,
    zl: DVector<f64>,
}

fn sym(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

fn inner(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.component_mul(b).sum()
}

fn max_step_lp(s: &DVector<f64>, ds: &DVector<f64>) -> f64 {
    s.iter().zip(ds.iter()).filter(|(_, &d)| d < 0.0).map(|(&v, &d)| -v / d).fold(f64::INFINITY, f64::min)
}

struct Direction {
    dx: DMatrix<f64>,
    ds: DVector<f64>,
    dy: DVector<f64>,
    dz: DMatrix<f64>,
    dzl: DVector<f64>,
    /// Scaled blocks `G⁻¹ dX G⁻ᵀ` and `Gᵀ dZ G`.
    dx_s: DMatrix<f64>,
    dz_s: DMatrix<f64>,
}

/// Nesterov–Todd scaling `W = G Gᵀ`, with `G⁻¹ X G⁻ᵀ = Gᵀ Z G = diag(λ)`.
struct NtScaling {
    g: DMatrix<f64>,
    lambda: DVector<f64>,
}

fn nt_scaling(x: &DMatrix<f64>, z: &DMatrix<f64>) -> Option<NtScaling> {
    let l = x.clone().cholesky()?.l();
    let r = z.clone().cholesky()?.l();
    let svd = (r.transpose() * &l).svd(false, true);
    let v_t = svd.v_t?;
    let lambda = svd.singular_values;
    if lambda.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
        return None;
    }
    let inv_sqrt = DMatrix::from_diagonal(&lambda.map(|v| 1.0 / v.sqrt()));
    // Rᵀ L = U Λ Vᵀ gives G = L V Λ^{-1/2}.
    let g = &l * v_t.transpose() * &inv_sqrt;
    Some(NtScaling { g, lambda })
}

/// Largest α with `Λ + α D ⪰ 0` for diagonal positive Λ.
fn max_step_scaled(lambda: &DVector<f64>, d: &DMatrix<f64>) -> f64 {
    let n = lambda.len();
    let m = DMatrix::from_fn(n, n, |i, j| d[(i, j)] / (lambda[i] * lambda[j]).sqrt());
    let lam = nalgebra::SymmetricEigen::new(sym(&m)).eigenvalues.min();
    if lam < 0.0 {
        -1.0 / lam
    } else {
        f64::INFINITY
    }
}

/// Normal equations `M dy = r` with `M = KᵀK`, solved through a QR factor of K.
enum SchurFactor {
    Qr(DMatrix<f64>),
    Chol(nalgebra::Cholesky<f64, nalgebra::Dyn>),
}

impl SchurFactor {
    fn new(k: DMatrix<f64>) -> Option<SchurFactor> {
        let mc = k.ncols();
        if k.nrows() >= mc {
            let r = k.clone().qr().r();
            let dmax = r.diagonal().amax();
            if r.diagonal().iter().all(|v| v.abs() > 1e-14 * dmax.max(1e-300)) {
                return Some(SchurFactor::Qr(r));
            }
        }
        let m = k.transpose() * &k;
        let reg = 1e-12 * m.diagonal().amax().max(1e-300);
        let mr = m + DMatrix::identity(mc, mc) * reg;
        mr.cholesky().map(SchurFactor::Chol)
    }

    fn solve(&self, rhs: &DVector<f64>) -> DVector<f64> {
        match self {
            SchurFactor::Qr(r) => {
                let w = r.transpose().solve_lower_triangular(rhs).unwrap_or_else(|| DVector::zeros(rhs.len()));
                r.solve_upper_triangular(&w).unwrap_or_else(|| DVector::zeros(rhs.len()))
            }
            SchurFactor::Chol(c) => c.solve(rhs),
        }
    }
}

fn solve_conic(p: &Conic, settings: &SdpSettings, init_scale: Option<f64>) -> SdpSolution {
    let (n, k, mc) = (p.n, p.k(), p.mc());
    let nb = p.b.norm();
    let nc = (p.c.norm_squared() + p.c_lp.norm_squared()).sqrt();
    let max_a = p.a.iter().map(Sparse::norm).fold(0.0, f64::max);
    let xi_default = p
        .a
        .iter()
        .zip(p.b.iter())
        .map(|(a, &b)| (1.0 + b.abs()) / (1.0 + a.norm()))
        .fold((n as f64).sqrt().max(10.0), |acc, v| acc.max(n as f64 * v));
    let xi = init_scale.unwrap_or(xi_default);
    let eta = (n as f64).sqrt().max(10.0).max(max_a).max(nc);
    let mut it = Iterate {
        x: DMatrix::identity(n, n) * xi,
        s: DVector::from_element(k, xi),
        y: DVector::zeros(mc),
        z: DMatrix::identity(n, n) * eta,
        zl: DVector::from_element(k, eta),
    };
    let nu = (n + k) as f64;
    let mut status = SdpStatus::MaxIterations;
    let mut iterations = 0;
    let mut stats = (f64::NAN, f64::NAN, f64::NAN, f64::NAN, f64::NAN);
    let mut best: Option<Best> = None;

    for iter in 0..=settings.max_iter {
        iterations = iter;
        let rp = &p.b - p.a_op(&it.x, &it.s);
        let (aty, aty_lp) = p.a_adj(&it.y);
        let rd = &p.c - &it.z - &aty;
        let rd_lp = &p.c_lp - &it.zl - &aty_lp;
        let pobj = inner(&p.c, &it.x) + p.c_lp.dot(&it.s);
        let dobj = p.b.dot(&it.y);
        let pinf = rp.norm() / (1.0 + nb);
        let dinf = (rd.norm_squared() + rd_lp.norm_squared()).sqrt() / (1.0 + nc);
        let gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
        stats = (pobj, dobj, pinf, dinf, gap);
        if pinf <= settings.feas_tol && dinf <= settings.feas_tol && gap <= settings.gap_tol {
            status = SdpStatus::Optimal;
            break;
        }
        let merit = pinf.max(dinf).max(gap);
        if merit.is_finite() && best.as_ref().is_none_or(|b| merit < b.0) {
            best = Some((merit, iter, it.x.clone(), it.y.clone(), stats));
        }
        if best.as_ref().is_some_and(|b| iter - b.1 >= settings.stall_iter) {
            status = SdpStatus::NumericalTrouble;
            break;
        }
        // Rays: (y, Z) with Aᵀy + Z ≈ 0 and bᵀy > 0, or X with A(X) ≈ 0 and ⟨C, X⟩ < 0.
        if dobj > 0.0 && dobj > 1e6 * (1.0 + nc) {
            let ray = ((&aty + &it.z).norm_squared() + (&aty_lp + &it.zl).norm_squared()).sqrt();
            if ray / dobj < settings.feas_tol.sqrt() {
                status = SdpStatus::PrimalInfeasible;
                break;
            }
        }
        if pobj < 0.0 && -pobj > 1e6 * (1.0 + nb) {
            let ray = p.a_op(&it.x, &it.s).norm();
            if ray / -pobj < settings.feas_tol.sqrt() {
                status = SdpStatus::DualInfeasible;
                break;
            }
        }
        if iter == settings.max_iter {
            break;
        }

        let Some(nt) = nt_scaling(&it.x, &it.z) else {
            status = SdpStatus::NumericalTrouble;
            break;
        };
        let lam = &nt.lambda;
        let mu = (lam.norm_squared() + it.s.dot(&it.zl)) / nu;
        let scale_z = |m: &DMatrix<f64>| sym(&(nt.g.transpose() * m * &nt.g));
        let a_s: Vec<DMatrix<f64>> = p
            .a
            .iter()
            .map(|a| {
                let mut d = DMatrix::zeros(n, n);
                a.add_to(&mut d, 1.0);
                scale_z(&d)
            })
            .collect();
        let ratio = DVector::from_fn(k, |l, _| it.s[l] / it.zl[l]);
        let mut kmat = DMatrix::zeros(n * n + k, mc);
        for (i, ai) in a_s.iter().enumerate() {
            kmat.view_mut((0, i), (n * n, 1)).copy_from_slice(ai.as_slice());
            for l in 0..k {
                kmat[(n * n + l, i)] = ratio[l].sqrt() * p.a_lp[(i, l)];
            }
        }
        let Some(schur) = SchurFactor::new(kmat) else {
            status = SdpStatus::NumericalTrouble;
            break;
        };
        let rd_s = scale_z(&rd);
        let direction = |tau: f64, corr: Option<(&DMatrix<f64>, &DVector<f64>)>| {
            // Λ Y + Y Λ = 2 (τI − Λ² − corr), Y = dX̃ + dZ̃.
            let y = DMatrix::from_fn(n, n, |i, j| {
                let mut r = if i == j { tau - lam[i] * lam[i] } else { 0.0 };
                if let Some((c, _)) = corr {
                    r -= c[(i, j)];
                }
                2.0 * r / (lam[i] + lam[j])
            });
            let mut r_s = DVector::from_fn(k, |l, _| tau / it.zl[l] - it.s[l]);
            if let Some((_, c)) = corr {
                r_s -= c;
            }
            let t_s = &y - &rd_s;
            let t_lp = &r_s - ratio.component_mul(&rd_lp);
            let rhs = DVector::from_fn(mc, |i, _| rp[i] - inner(&a_s[i], &t_s) - p.a_lp.row(i).transpose().dot(&t_lp));
            let dy = schur.solve(&rhs);
            let mut dz_s = rd_s.clone();
            for (ai, &v) in a_s.iter().zip(dy.iter()) {
                dz_s -= ai * v;
            }
            let dx_s = sym(&(&y - &dz_s));
            let (ady, ady_lp) = p.a_adj(&dy);
            let dz = sym(&(&rd - &ady));
            let dzl = &rd_lp - &ady_lp;
            let dx = sym(&(&nt.g * &dx_s * nt.g.transpose()));
            let ds = &r_s - ratio.component_mul(&dzl);
            Direction { dx, ds, dy, dz, dzl, dx_s, dz_s }
        };
        let steps = |d: &Direction| {
            let ap = max_step_scaled(lam, &d.dx_s).min(max_step_lp(&it.s, &d.ds));
            let ad = max_step_scaled(lam, &d.dz_s).min(max_step_lp(&it.zl, &d.dzl));
            (ap, ad)
        };

        let pred = direction(0.0, None);
        let (ap, ad) = steps(&pred);
        let (ap, ad) = (ap.min(1.0), ad.min(1.0));
        let mu_aff = (DMatrix::from_diagonal(lam) + &pred.dx_s * ap)
            .component_mul(&(DMatrix::from_diagonal(lam) + &pred.dz_s * ad))
            .sum()
            + (&it.s + &pred.ds * ap).dot(&(&it.zl + &pred.dzl * ad));
        let mu_aff = mu_aff / nu;
        let sigma = (mu_aff / mu).clamp(0.0, 1.0).powi(3);
        let corr_x = sym(&(&pred.dx_s * &pred.dz_s));
        let corr_s = DVector::from_fn(k, |l, _| pred.ds[l] * pred.dzl[l] / it.zl[l]);
        let mut dir = direction(sigma * mu, Some((&corr_x, &corr_s)));
        let (mut ap2, mut ad2) = steps(&dir);
        if ap2.min(ad2) < 0.5 * ap.min(ad) {
            let centred = direction(sigma.max(0.3) * mu, None);
            let (a3, d3) = steps(&centred);
            if a3.min(d3) > ap2.min(ad2) {
                dir = centred;
                (ap2, ad2) = (a3, d3);
            }
        }
        let gamma = settings.step_fraction;
        let ap = (gamma * ap2).min(1.0);
        let ad = (gamma * ad2).min(1.0);
        if !(ap > 1e-12 || ad > 1e-12) {
            status = SdpStatus::NumericalTrouble;
            break;
        }
        it.x = sym(&(&it.x + &dir.dx * ap));
        it.s += &dir.ds * ap;
        it.y += &dir.dy * ad;
        it.z = sym(&(&it.z + &dir.dz * ad));
        it.zl += &dir.dzl * ad;
    }
    if !matches!(status, SdpStatus::Optimal | SdpStatus::PrimalInfeasible | SdpStatus::DualInfeasible) {
        if let Some((merit, _, x, y, st)) = best {
            if merit <= settings.reduced_tol {
                status = SdpStatus::NearOptimal;
                it.x = x;
                it.y = y;
                stats = st;
            }
        }
    }
    let (pobj, dobj, pinf, dinf, gap) = stats;
    SdpSolution {
        status,
        x: it.x,
        y: it.y.iter().copied().collect(),
        primal_objective: pobj,
        dual_objective: dobj,
        primal_infeasibility: pinf,
        dual_infeasibility: dinf,
        relative_gap: gap,
        iterations,
    }
}

fn to_conic(p: &SdpProblem, sign: f64) -> Conic {
    let n = p.n;
    let mut a: Vec<Sparse> = p.constraints.iter().map(|(m, _)| Sparse::from_dense(m)).collect();
    let mut b: Vec<f64> = p.constraints.iter().map(|c| c.1).collect();
    let k = usize::from(p.trace_bound.is_some());
    let mut a_lp = DMatrix::zeros(a.len() + k, k);
    if let Some(t) = p.trace_bound {
        a.push(Sparse::from_dense(&DMatrix::identity(n, n)));
        b.push(t);
        a_lp[(a.len() - 1, 0)] = 1.0;
    }
    Conic { n, c: &p.objective * sign, c_lp: DVector::zeros(k), a, a_lp, b: DVector::from_vec(b) }
}

fn initial_scale(p: &SdpProblem) -> Option<f64> {
    p.trace_bound.map(|t| 1.0 + t / p.n as f64)
}

/// Merit, iteration, x, y and (pobj, dobj, pinf, dinf, gap) of the best iterate.
type Best = (f64, usize, DMatrix<f64>, DVector<f64>, (f64, f64, f64, f64, f64));

pub fn solve(p: &SdpProblem, sense: Sense, settings: &SdpSettings) -> Result<SdpSolution, SdpError> {
    p.validate()?;
    let sign = if sense == Sense::Minimize { 1.0 } else { -1.0 };
    let conic = to_conic(p, sign);
    let mut sol = solve_conic(&conic, settings, initial_scale(p));
    sol.primal_objective *= sign;
    sol.dual_objective *= sign;
    if sense == Sense::Maximize {
        sol.y.iter_mut().for_each(|v| *v = -*v);
    }
    sol.y.truncate(p.constraints.len());
    Ok(sol)
}

/// Minimises the total violation `Σ |⟨A_i, X⟩ − b_i|` over `X ⪰ 0` (within the
/// trace bound when one is set).
pub fn feasibility(p: &SdpProblem, settings: &SdpSettings) -> Result<Feasibility, SdpError> {
    p.validate()?;
    let n = p.n;
    let mc = p.constraints.len();
    let kt = usize::from(p.trace_bound.is_some());
    let k = 2 * mc + kt;
    let mut a: Vec<Sparse> = p.constraints.iter().map(|(m, _)| Sparse::from_dense(m)).collect();
    let mut b: Vec<f64> = p.constraints.iter().map(|c| c.1).collect();
    let mut a_lp = DMatrix::zeros(mc + kt, k);
    for i in 0..mc {
        a_lp[(i, i)] = 1.0;
        a_lp[(i, mc + i)] = -1.0;
    }
    if let Some(t) = p.trace_bound {
        a.push(Sparse::from_dense(&DMatrix::identity(n, n)));
        b.push(t);
        a_lp[(mc, 2 * mc)] = 1.0;
    }
    let mut c_lp = DVector::from_element(k, 1.0);
    if kt == 1 {
        c_lp[2 * mc] = 0.0;
    }
    let conic = Conic { n, c: DMatrix::zeros(n, n), c_lp, a, a_lp, b: DVector::from_vec(b) };
    let sol = solve_conic(&conic, settings, initial_scale(p));
    match sol.status {
        SdpStatus::Optimal | SdpStatus::NearOptimal | SdpStatus::MaxIterations | SdpStatus::NumericalTrouble => {
            let measure = sol.primal_objective.max(sol.dual_objective).max(0.0);
            let measure = if matches!(sol.status, SdpStatus::Optimal | SdpStatus::NearOptimal) { measure } else { sol.primal_objective.max(0.0) };
            if measure <= settings.infeasibility_margin {
                Ok(Feasibility::Feasible { x: sol.x, measure })
            } else {
                Ok(Feasibility::LikelyInfeasible { measure })
            }
        }
        SdpStatus::PrimalInfeasible => Ok(Feasibility::LikelyInfeasible { measure: f64::INFINITY }),
        SdpStatus::DualInfeasible => Err(SdpError::Numerical("violation problem reported unbounded".into())),
    }
}
