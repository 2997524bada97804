use std::collections::BTreeMap;

use proptest::prelude::*;
use vizing_sos::exactmath::*;
use vizing_sos::rhocalc::{build_f_system, default_priority, FVar};

fn mat(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from(v)).collect()).collect()).unwrap()
}

#[test]
fn rational_text_roundtrip() {
    for s in ["0", "-3", "59/40", "-5/4", "123456789012345678901234567891/7"] {
        let r: Rational = s.parse().unwrap();
        assert_eq!(r.to_string(), s);
    }
    assert_eq!("0.25".parse::<Rational>().unwrap(), rat(1, 4));
    assert_eq!("6/4".parse::<Rational>().unwrap(), rat(3, 2));
    assert!("1/0".parse::<Rational>().is_err());
    assert!("x".parse::<Rational>().is_err());
    assert!(Rational::zero().recip().is_err());
}

#[test]
fn from_f64_is_exact() {
    assert_eq!(Rational::from_f64(0.1).unwrap().to_f64(), 0.1);
    assert_ne!(Rational::from_f64(0.1).unwrap(), rat(1, 10));
    assert_eq!(Rational::from_f64(-2.5).unwrap(), rat(-5, 2));
}

#[test]
fn best_rational_examples() {
    let m = rat(1, 20);
    assert_eq!(best_rational_in_interval(4.68455, 38.41658, &m).unwrap(), Rational::from(7));
    assert_eq!(best_rational_in_interval(0.2, 0.4, &Rational::zero()).unwrap(), rat(1, 3));
    assert_eq!(best_rational_in_interval(-0.5, 0.5, &Rational::zero()).unwrap(), Rational::zero());
    assert_eq!(best_rational_in_interval(-3.7, -3.2, &Rational::zero()).unwrap(), rat(-7, 2));
    assert!(best_rational_in_interval(2.0, 1.0, &Rational::zero()).is_err());
    assert!(best_rational_in_interval(0.0, 1.0, &rat(1, 2)).is_err());
}

#[test]
fn interval_enumeration_by_denominator() {
    let got: Vec<Rational> = RationalsInInterval::new(rat(1, 5), rat(1, 2)).take(5).collect();
    assert_eq!(got, vec![rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 5), rat(2, 5)]);
    let point: Vec<Rational> = RationalsInInterval::new(rat(3, 7), rat(3, 7)).collect();
    assert_eq!(point, vec![rat(3, 7)]);
    assert_eq!(RationalsInInterval::new(rat(1, 3), rat(1, 2)).with_max_denominator(3).count(), 2);
}

#[test]
fn d5_rref_matches_hand_elimination() {
    let sys = build_f_system(5).unwrap();
    let space = rref(&sys.linear_equations(), &default_priority(3)).unwrap();
    assert_eq!(space.free, vec![FVar::new(1, 1), FVar::new(2, 2)]);
    let f11 = FVar::new(1, 1);
    let f22 = FVar::new(2, 2);
    let check = |v: FVar, c: Rational, a: Rational, b: Rational| {
        let e = space.expr(&v);
        let mut got: BTreeMap<FVar, Rational> = e.coeffs.iter().cloned().collect();
        got.retain(|_, x| !x.is_zero());
        let mut want = BTreeMap::new();
        if !a.is_zero() {
            want.insert(f11, a);
        }
        if !b.is_zero() {
            want.insert(f22, b);
        }
        assert_eq!((e.constant, got), (c, want), "{v}");
    };
    check(FVar::new(1, 2), rat(1, 2), rat(-1, 2), rat(-1, 2));
    check(FVar::new(1, 3), rat(-133, 40), rat(47, 40), rat(-3, 4));
    check(FVar::new(2, 3), rat(7, 4), rat(-1, 2), Rational::zero());
    check(FVar::new(3, 3), rat(-6, 5), rat(3, 10), Rational::zero());
}

#[test]
fn rref_detects_inconsistency() {
    let eqs = vec![
        LinearEquation::new(vec![("a", rat(1, 1)), ("b", rat(1, 1))], rat(1, 1)),
        LinearEquation::new(vec![("a", rat(2, 1)), ("b", rat(2, 1))], rat(3, 1)),
    ];
    assert_eq!(rref(&eqs, &["a", "b"]), Err(ExactError::Inconsistent));
    assert_eq!(independent_equations(&eqs), Err(ExactError::Inconsistent));
    assert!(rref(&eqs[..1], &["a"]).is_err());
}

#[test]
fn ldlt_examples() {
    let f = mat(&[&[4, 2], &[2, 3]]);
    let PsdCheck::Psd(w) = ldlt_psd(&f).unwrap() else { panic!() };
    assert!(w.certifies(&f));
    assert_eq!(w.d, vec![Rational::from(4), Rational::from(2)]);

    let g = mat(&[&[1, 2], &[2, 1]]);
    let PsdCheck::NotPsd { v, value } = ldlt_psd(&g).unwrap() else { panic!() };
    assert!(value.is_negative());
    assert_eq!(g.quadratic_form(&v).unwrap(), value);

    let h = mat(&[&[0, 1], &[1, 0]]);
    let PsdCheck::NotPsd { v, .. } = ldlt_psd(&h).unwrap() else { panic!() };
    assert_eq!(v, vec![Rational::one(), -Rational::one()]);

    let singular = mat(&[&[0, 0], &[0, 1]]);
    assert!(ldlt_psd(&singular).unwrap().is_psd());
    assert!(ldlt_unpivoted(&mat(&[&[0, 0, 0], &[0, 1, 1], &[0, 1, 2]])).is_ok());
    assert_eq!(ldlt_unpivoted(&mat(&[&[0, 1], &[1, 1]])), Err(ExactError::NeedsPivot { step: 0 }));
    assert_eq!(ldlt_unpivoted(&mat(&[&[1, 2], &[2, 1]])), Err(ExactError::NotPsd));
    assert!(ldlt_psd(&mat(&[&[1, 2], &[3, 4]])).is_err());
}

#[test]
fn tampered_witness_is_rejected() {
    let f = mat(&[&[4, 2], &[2, 3]]);
    let PsdCheck::Psd(mut w) = ldlt_psd(&f).unwrap() else { panic!() };
    w.d[1] = Rational::from(-2);
    assert!(!w.certifies(&f));
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

fn small_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(small_rational(), n * n)
        .prop_map(move |v| RatMatrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_seed: proptest::test_runner::RngSeed::Fixed(0), ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert!(Rational::from_f64(a.to_f64()).is_some());
    }

    #[test]
    fn gram_products_are_psd(b in small_matrix(4), rank in 1usize..=4) {
        let b = RatMatrix::from_fn(4, rank, |i, j| b[(i, j)].clone());
        let f = b.mul(&b.transpose()).unwrap();
        match ldlt_psd(&f).unwrap() {
            PsdCheck::Psd(w) => prop_assert!(w.certifies(&f)),
            PsdCheck::NotPsd { .. } => prop_assert!(false, "B Bᵀ reported indefinite"),
        }
    }

    #[test]
    fn indefinite_witness_is_genuine(a in small_matrix(4)) {
        let f = RatMatrix::from_fn(4, 4, |i, j| &a[(i, j)] + &a[(j, i)]);
        match ldlt_psd(&f).unwrap() {
            PsdCheck::Psd(w) => {
                prop_assert!(w.certifies(&f));
                let ev = nalgebra::SymmetricEigen::new(nalgebra::DMatrix::from_fn(4, 4, |i, j| f[(i, j)].to_f64())).eigenvalues;
                prop_assert!(ev.min() > -1e-9);
            }
            PsdCheck::NotPsd { v, value } => {
                prop_assert!(value.is_negative());
                prop_assert_eq!(f.quadratic_form(&v).unwrap(), value);
            }
        }
    }

    #[test]
    fn radical_rows_reproduce_gram(b in small_matrix(3)) {
        let f = b.mul(&b.transpose()).unwrap();
        if let Ok(rows) = rat_cholesky_radical(&f, None) {
            prop_assert_eq!(radical_gram(&rows).unwrap(), f);
            for (w, r) in rows.iter().enumerate() {
                prop_assert!(r.coeffs[..w].iter().all(Rational::is_zero));
            }
        }
    }

    #[test]
    fn simplest_has_minimal_denominator(p in -40i64..40, q in 1i64..12, w in 1i64..30) {
        let a = rat(p, q);
        let b = &a + &rat(w, 37);
        let s = simplest_between(&a, &b);
        prop_assert!(a <= s && s <= b);
        // Oracle: scan denominators upwards.
        let den = s.denom().clone();
        for d in 1..den.to_string().parse::<i64>().unwrap() {
            let lo = (&a * &Rational::from(d)).ceil();
            prop_assert!(Rational::from(lo) > &b * &Rational::from(d), "denominator {} fits", d);
        }
    }

    #[test]
    fn rref_solutions_satisfy_system(cs in proptest::collection::vec(-5i64..=5, 12), rhs in proptest::collection::vec(-5i64..=5, 3), free in proptest::collection::vec(-5i64..=5, 4)) {
        let vars = ["a", "b", "c", "d"];
        let eqs: Vec<LinearEquation<&str>> = (0..3)
            .map(|r| LinearEquation::new((0..4).map(|k| (vars[k], Rational::from(cs[r * 4 + k]))).collect(), Rational::from(rhs[r])))
            .collect();
        if let Ok(space) = rref(&eqs, &vars) {
            let assignment: BTreeMap<&str, Rational> = space.free.iter().zip(&free).map(|(v, x)| (*v, Rational::from(*x))).collect();
            let values = space.assign(&assignment).unwrap();
            for eq in &eqs {
                prop_assert!(eq.residual(&values).unwrap().is_zero());
            }
        }
    }
}
