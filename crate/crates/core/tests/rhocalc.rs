use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use vizing_sos::certsearch::published;
use vizing_sos::exactmath::*;
use vizing_sos::polyalg::{GraphParams, VarId};
use vizing_sos::rhocalc::*;

fn r(v: &[i64]) -> RhoPoly {
    RhoPoly { coeffs: v.iter().map(|&x| Rational::from(x)).collect() }
}

fn basis(d: usize, i: usize) -> RhoPoly {
    RhoPoly::basis(d, i)
}

fn choose(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn runner(seed: u8) -> TestRunner {
    TestRunner::new_with_rng(Config { cases: 64, ..Config::default() }, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

#[test]
fn d4_products() {
    assert_eq!(rho_mul(&basis(4, 1), &basis(4, 1)).unwrap(), r(&[0, 1, 2, 0, 0]));
    assert_eq!(rho_mul(&basis(4, 2), &basis(4, 2)).unwrap(), r(&[0, 0, 1, 6, 6]));
    assert_eq!(rho_mul(&basis(4, 1), &basis(4, 2)).unwrap(), r(&[0, 0, 2, 3, 0]));
}

#[test]
fn d3_products() {
    assert_eq!(rho_mul(&basis(3, 1), &basis(3, 1)).unwrap(), r(&[0, 1, 2, 0]));
    assert_eq!(rho_mul(&basis(3, 2), &basis(3, 2)).unwrap(), r(&[0, 0, 1, 6]));
}

#[test]
fn mismatched_degrees_rejected() {
    assert!(rho_mul(&basis(3, 1), &basis(4, 1)).is_err());
    assert!(basis(3, 1).add(&basis(5, 1)).is_err());
}

#[test]
fn binomials_match_table() {
    for n in 0..=30 {
        for k in 0..=n + 1 {
            assert_eq!(binomial(n, k), choose(n, k), "C({n},{k})");
        }
    }
}

// A ρ-polynomial of degree d is determined by its values at t = 0..=d ones,
// and ρ^i takes the value C(t, i) there.
#[test]
fn product_agrees_with_pointwise_values() {
    let mut run = runner(11);
    let strat = (3usize..=12).prop_flat_map(|d| (Just(d), 0..=d, 0..=d));
    run.run(&strat, |(d, i, j)| {
        let p = rho_mul(&basis(d, i), &basis(d, j)).unwrap();
        for t in 0..=d {
            let expect = Rational::from(choose(t, i) * choose(t, j));
            prop_assert_eq!(p.eval_at_count(t), expect);
        }
        Ok(())
    })
    .unwrap();
}

#[test]
fn square_row_agrees_with_product() {
    let mut run = runner(12);
    let strat = (3usize..=10).prop_flat_map(|d| (Just(d), prop::collection::vec(-9i64..=9, d.div_ceil(2) + 1)));
    run.run(&strat, |(d, c)| {
        let c: Vec<Rational> = c.into_iter().map(Rational::from).collect();
        let s = RhoPoly { coeffs: (0..=d).map(|i| c.get(i).cloned().unwrap_or_else(Rational::zero)).collect() };
        prop_assert_eq!(square_row(&c, d).unwrap(), rho_mul(&s, &s).unwrap());
        Ok(())
    })
    .unwrap();
}

#[test]
fn lifted_polynomial_counts_subsets() {
    let params = GraphParams::new(3, 2).unwrap();
    let cross = params.cross(1, 2);
    assert_eq!(cross.len(), 4);
    for mask in 0u32..16 {
        let on: Vec<(usize, usize)> = cross.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, v)| *v).collect();
        let point = |v: VarId| on.iter().any(|&(g, h)| v == VarId::x(g, h));
        for i in 0..=4 {
            let p = rho_polynomial(&params, 1, 2, i);
            assert_eq!(p.eval_boolean(&point), eval_rho_point(i, on.len()));
        }
    }
}

#[test]
fn inclusion_exclusion_vanishes_off_zero() {
    for d in 3..=10 {
        let p = inclusion_exclusion(d);
        assert_eq!(p.eval_at_count(0), Rational::one());
        for t in 1..=d {
            assert!(p.eval_at_count(t).is_zero());
        }
    }
}

#[test]
fn d5_system_shape() {
    let s = build_f_system(5).unwrap();
    assert_eq!(s.d, 5);
    assert_eq!(s.equations.iter().map(|e| e.k).collect::<Vec<_>>(), vec![2, 3, 4, 5]);
    assert!(build_f_system(2).is_err());
    assert!(build_f_system(MAX_D + 1).is_err());
}

#[test]
fn published_grams_satisfy_system() {
    let cases = [
        (5, published::d5_gram()),
        (5, published::gram_of(&published::d5_rows())),
        (6, published::gram_of(&published::d6_rows())),
        (7, published::gram_of(&published::d7_rows())),
        (8, published::gram_of(&published::d8_rows())),
    ];
    for (d, f) in cases {
        let s = build_f_system(d).unwrap();
        assert!(s.is_satisfied_by(&f), "d = {d}");
        assert!(sos_gap(&f, d).unwrap().is_zero(), "d = {d}");
    }
    let bad = published::gram_of(&published::d8_rows_as_printed());
    assert!(!build_f_system(8).unwrap().is_satisfied_by(&bad));
    assert!(!sos_gap(&bad, 8).unwrap().is_zero());
}

// The gap vanishes exactly when every residual does, and its k-th coefficient
// is the k-th residual for k ≥ 2.
#[test]
fn sos_gap_tracks_residuals() {
    let mut run = runner(13);
    let strat = (3usize..=9).prop_flat_map(|d| {
        let m = d.div_ceil(2);
        (Just(d), prop::collection::vec(-20i64..=20, m * m))
    });
    run.run(&strat, |(d, v)| {
        let m = d.div_ceil(2);
        let f = RatMatrix::from_fn(m, m, |i, j| rat(v[i.min(j) * m + i.max(j)], 3));
        let gap = sos_gap(&f, d).unwrap();
        prop_assert!(gap.coeffs[0].is_zero());
        prop_assert!(gap.coeffs[1].is_zero());
        let res = build_f_system(d).unwrap().residuals(&f).unwrap();
        for (k, x) in res {
            prop_assert_eq!(&gap.coeffs[k], &x);
        }
        Ok(())
    })
    .unwrap();
}

#[test]
fn sos_residual_matches_squared_rows() {
    let rows = published::d7_rows();
    let f = published::gram_of(&rows);
    let lhs = sos_residual(&f, 7).unwrap();
    let mut rhs = RhoPoly::zero(7);
    for row in &rows {
        let mut c = vec![-&row.coeffs[0]];
        c.extend(row.coeffs.iter().cloned());
        rhs = rhs.add(&square_row(&c, 7).unwrap().scale(&row.radicand)).unwrap();
    }
    assert_eq!(lhs, rhs);
}

#[test]
fn d4_and_d3_real_tuples_solve_system() {
    for (a, b, dl) in published::d4_real_tuples() {
        for x in published::d4_tuple_residuals(a, b, dl) {
            assert!(x.abs() < 1e-10);
        }
        for x in published::f_system_residuals_f64(4, &published::tuple_gram(a, b, dl)) {
            assert!(x.abs() < 1e-10);
        }
    }
    for (a, b) in published::d3_real_tuples() {
        for x in published::d3_tuple_residuals(a, b) {
            assert!(x.abs() < 1e-10);
        }
        for x in published::f_system_residuals_f64(3, &published::tuple_gram(a, b, 0.0)) {
            assert!(x.abs() < 1e-10);
        }
    }
}

#[test]
fn fvar_order_and_priority() {
    assert_eq!(gram_size(7), 4);
    assert_eq!(all_fvars(2), vec![FVar::new(1, 1), FVar::new(1, 2), FVar::new(2, 2)]);
    assert_eq!(default_priority(2), vec![FVar::new(1, 1), FVar::new(2, 2), FVar::new(1, 2)]);
    assert_eq!(serde_json::to_string(&FVar::new(2, 1)).unwrap(), "\"F_1_2\"");
}
