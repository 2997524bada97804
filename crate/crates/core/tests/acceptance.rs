//! One PASS/FAIL line per acceptance criterion. Runs as a plain binary.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use vizing_sos::certsearch::*;
use vizing_sos::exactmath::{rat, RadicalRow, RatMatrix, Rational};
use vizing_sos::polyalg::*;
use vizing_sos::rhocalc::{rho_mul, FVar, RhoPoly};
use vizing_sos::sdpsolve::{feasibility, Feasibility, SdpSettings};

const BOUND_TOL: f64 = 5e-3;
const TUPLE_TOL: f64 = 1e-10;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn d5_fixed() -> Outcome {
    let opts = SearchOptions::default().fix(FVar::new(1, 1), Rational::from(6)).fix(FVar::new(2, 2), Rational::from(3));
    let c = find_certificate(5, &opts).map_err(|e| e.to_string())?;
    let want = RatMatrix::from_rows(vec![
        vec![rat(6, 1), rat(-4, 1), rat(59, 40)],
        vec![rat(-4, 1), rat(3, 1), rat(-5, 4)],
        vec![rat(59, 40), rat(-5, 4), rat(3, 5)],
    ])
    .unwrap();
    ensure(c.f == want, || format!("F = {:?}", c.f))?;
    let v = verify_exact(&c);
    ensure(v.all_passed(), || v.to_string())?;
    Ok(format!("{} exact checks green", v.checks.len()))
}

fn within(x: f64, want: f64) -> bool {
    (x - want).abs() <= BOUND_TOL
}

fn d5_bounds() -> Outcome {
    let c = find_certificate(5, &SearchOptions::default()).map_err(|e| e.to_string())?;
    let p = c.provenance.iter().find(|p| p.var == FVar::new(1, 1)).ok_or("F_1_1 not in provenance")?;
    let [a, b] = p.interval.ok_or("no interval for F_1_1")?;
    let (wa, wb) = (4.68455, 38.41658);
    ensure(within(a, wa) && within(b, wb), || format!("F_1_1 in [{a:.6}, {b:.6}]"))?;

    let c = find_certificate(5, &SearchOptions::default().fix(FVar::new(1, 1), Rational::from(6))).map_err(|e| e.to_string())?;
    let p = c.provenance.iter().find(|p| p.var == FVar::new(2, 2)).ok_or("F_2_2 not in provenance")?;
    let [e, f] = p.interval.ok_or("no interval for F_2_2")?;
    let (we, wf) = (2.64289, 3.26414);
    ensure(within(e, we) && within(f, wf), || format!("F_2_2 in [{e:.6}, {f:.6}]"))?;
    Ok(format!("F_1_1 in [{a:.5}, {b:.5}], F_2_2 in [{e:.5}, {f:.5}]"))
}

fn groebner_oracle() -> Outcome {
    let order = TermOrder::default();
    let monic = |b: &[Polynomial]| b.iter().map(|p| p.monic(&order)).collect::<BTreeSet<_>>();
    for (g, h) in [(2, 2), (3, 2), (2, 3)] {
        let params = GraphParams::new(g, h).unwrap();
        let closed = closed_form_gb(&params).map_err(|e| e.to_string())?;
        let computed = buchberger(&build_generators(&params), &order);
        ensure(monic(&computed) == monic(&closed), || format!("({g},{h}) bases differ"))?;
    }
    let params = GraphParams::new(3, 3).unwrap();
    let basis = closed_form_gb(&params).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], &order);
            ensure(normal_form(&s, &basis, &order).is_zero(), || format!("(3,3) S({i},{j}) ≠ 0"))?;
            pairs += 1;
        }
    }
    Ok(format!("3 bases identical, {pairs} S-polynomials of (3,3) reduce to 0"))
}

fn rho_products() -> Outcome {
    let r = |v: &[i64]| RhoPoly { coeffs: v.iter().map(|&x| Rational::from(x)).collect() };
    let b = RhoPoly::basis;
    let cases = [
        ("d=4 ρ1ρ1", rho_mul(&b(4, 1), &b(4, 1)), r(&[0, 1, 2, 0, 0])),
        ("d=4 ρ2ρ2", rho_mul(&b(4, 2), &b(4, 2)), r(&[0, 0, 1, 6, 6])),
        ("d=4 ρ1ρ2", rho_mul(&b(4, 1), &b(4, 2)), r(&[0, 0, 2, 3, 0])),
        ("d=3 ρ1ρ1", rho_mul(&b(3, 1), &b(3, 1)), r(&[0, 1, 2, 0])),
        ("d=3 ρ2ρ2", rho_mul(&b(3, 2), &b(3, 2)), r(&[0, 0, 1, 6])),
    ];
    for (name, got, want) in cases {
        let got = got.map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{name}: {:?}", got.coeffs))?;
    }
    Ok("5 products exact".into())
}

/// Σ radicand · c cᵀ, written out independently of the library.
fn gram_by_hand(rows: &[RadicalRow]) -> RatMatrix {
    let m = rows[0].coeffs.len();
    let mut out = RatMatrix::from_fn(m, m, |_, _| Rational::zero());
    for row in rows {
        for i in 0..m {
            for j in 0..m {
                out[(i, j)] += &row.radicand * &row.coeffs[i] * &row.coeffs[j];
            }
        }
    }
    out
}

fn published_regression() -> Outcome {
    let d6 = gram_by_hand(&published::d6_rows());
    let want = RatMatrix::from_rows(vec![
        vec![rat(5, 1), rat(-3, 1), rat(21, 20)],
        vec![rat(-3, 1), rat(2, 1), rat(-3, 4)],
        vec![rat(21, 20), rat(-3, 4), rat(3, 10)],
    ])
    .unwrap();
    ensure(d6 == want, || format!("d=6 Gram {d6:?}"))?;
    let cases = [(6, d6), (7, gram_by_hand(&published::d7_rows())), (8, gram_by_hand(&published::d8_rows()))];
    for (d, f) in cases {
        let c = Certificate::from_published(d, f).map_err(|e| format!("d={d}: {e}"))?;
        let v = verify_exact(&c);
        ensure(v.all_passed(), || format!("d={d}\n{v}"))?;
    }
    let printed = gram_by_hand(&published::d8_rows_as_printed());
    let rejected = Certificate::from_published(8, printed).map_or(true, |c| !verify_exact(&c).all_passed());
    ensure(rejected, || "d=8 with c14 = -8/108 unexpectedly verifies".into())?;
    Ok("d=6,7,8 verify; d=8 uses c14 = -8/105".into())
}

fn structure() -> Outcome {
    let r = check_structure_identities([4, 6, 8, 10, 12, 14], &SdpSettings::default()).map_err(|e| e.to_string())?;
    ensure(r.exact.all_passed(), || r.exact.to_string())?;
    Ok(format!("{} exact identities", r.exact.checks.len()))
}

fn end_to_end(certs: &mut Vec<Certificate>) -> Outcome {
    let limit = Duration::from_secs(120);
    let mut times = Vec::new();
    for d in 3..=10 {
        let t = Instant::now();
        let c = find_certificate(d, &SearchOptions::default()).map_err(|e| format!("d={d}: {e}"))?;
        let el = t.elapsed();
        ensure(el < limit, || format!("d={d} took {el:.1?}"))?;
        let v = verify_exact(&c);
        ensure(v.all_passed(), || format!("d={d}\n{v}"))?;
        times.push(format!("{d}:{:.0}ms", el.as_secs_f64() * 1e3));
        certs.push(c);
    }
    let mut extra = Vec::new();
    for d in [11, 12] {
        let res = find_certificate(d, &SearchOptions::default());
        let ok = res.as_ref().is_ok_and(|c| verify_exact(c).all_passed());
        extra.push(format!("d={d} {}", if ok { "found" } else { "not found" }));
    }
    Ok(format!("{}; best effort {}", times.join(" "), extra.join(", ")))
}

fn brute(certs: &[Certificate]) -> Outcome {
    let params = GraphParams::new(2, 2).unwrap();
    let n22 = enumerate_variety(&params, &VarietyCap::default()).map_err(|e| e.to_string())?.count();
    ensure(n22 == 11, || format!("(2,2) variety has {n22} points"))?;
    ensure(!certs.is_empty(), || "no certificates from the search".into())?;
    let mut splits = Vec::new();
    for c in certs {
        for g in 2..c.d {
            let h = c.d + 1 - g;
            if h < 2 || g * h > 12 {
                continue;
            }
            let v = verify_bruteforce(c, g, h, &BruteOptions::default()).map_err(|e| format!("({g},{h}): {e}"))?;
            ensure(v.all_passed(), || format!("d={} ({g},{h})\n{v}", c.d))?;
            splits.push(format!("({g},{h})"));
        }
    }
    Ok(format!("(2,2) has 11 points; {} splits checked: {}", splits.len(), splits.join(" ")))
}

fn min_degree() -> Outcome {
    let s = SdpSettings::default();
    let mut out = Vec::new();
    for (g, h) in [(2, 2), (3, 2)] {
        let p1 = full_sdp_pipeline(g, h, 1).map_err(|e| e.to_string())?;
        let f1 = feasibility(&p1, &s).map_err(|e| e.to_string())?;
        ensure(matches!(f1, Feasibility::LikelyInfeasible { .. }), || format!("({g},{h}) ell=1 feasible"))?;
        let p2 = full_sdp_pipeline(g, h, 2).map_err(|e| e.to_string())?;
        let f2 = feasibility(&p2, &s).map_err(|e| e.to_string())?;
        ensure(matches!(f2, Feasibility::Feasible { .. }), || format!("({g},{h}) ell=2 not feasible"))?;
        out.push(format!("({g},{h}) ell=1 likely infeasible, ell=2 feasible"));
    }
    Ok(format!("numerical evidence: {}", out.join("; ")))
}

fn tuples() -> Outcome {
    let mut worst = 0f64;
    for (a, b) in published::d3_real_tuples() {
        let r = published::d3_tuple_residuals(a, b);
        let s = published::f_system_residuals_f64(3, &published::tuple_gram(a, b, 0.0));
        worst = r.iter().chain(&s).fold(worst, |w, x| w.max(x.abs()));
    }
    for (a, b, dl) in published::d4_real_tuples() {
        let r = published::d4_tuple_residuals(a, b, dl);
        let s = published::f_system_residuals_f64(4, &published::tuple_gram(a, b, dl));
        worst = r.iter().chain(&s).fold(worst, |w, x| w.max(x.abs()));
    }
    ensure(worst <= TUPLE_TOL, || format!("max residual {worst:.3e}"))?;
    Ok(format!("4 pairs, 4 triples, max residual {worst:.1e}"))
}

fn main() {
    let mut certs = Vec::new();
    let mut failed = 0;
    let mut run = |n: usize, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let el = t.elapsed();
        let res = match (res, limit) {
            (Ok(_), Some(l)) if el > l => Err(format!("exceeded {l:?}")),
            (r, _) => r,
        };
        match res {
            Ok(detail) => println!("PASS {n:2} {name}: {detail} [{el:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {n:2} {name}: {detail} [{el:.2?}]");
            }
        }
    };
    run(1, "d=5 fixed Gram, exact", Some(Duration::from_secs(5)), &mut d5_fixed);
    run(2, "d=5 free-variable bounds", Some(Duration::from_secs(10)), &mut d5_bounds);
    run(3, "Gröbner oracle", Some(Duration::from_secs(120)), &mut groebner_oracle);
    run(4, "ρ-products", None, &mut rho_products);
    run(5, "published certificates d=6,7,8", None, &mut published_regression);
    run(6, "even-d structural identities", Some(Duration::from_secs(30)), &mut structure);
    run(7, "end-to-end search d=3..10", None, &mut || end_to_end(&mut certs));
    run(8, "brute-force variety oracle", None, &mut || brute(&certs));
    run(9, "minimum-degree SDP evidence", Some(Duration::from_secs(60)), &mut min_degree);
    run(10, "real tuple spot checks", None, &mut tuples);
    if failed > 0 {
        std::process::exit(1);
    }
}
