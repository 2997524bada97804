use std::collections::BTreeSet;

use proptest::prelude::*;
use vizing_sos::exactmath::Rational;
use vizing_sos::polyalg::*;

fn monic_set(basis: &[Polynomial], order: &TermOrder) -> BTreeSet<Polynomial> {
    basis.iter().map(|p| p.monic(order)).collect()
}

fn assert_oracle(n_g: usize, n_h: usize) {
    let params = GraphParams::new(n_g, n_h).unwrap();
    let order = TermOrder::default();
    let closed = closed_form_gb(&params).unwrap();
    let computed = buchberger(&build_generators(&params), &order);
    assert_eq!(monic_set(&computed, &order), monic_set(&closed, &order), "({n_g}, {n_h})");
}

#[test]
fn buchberger_matches_closed_form_2_2() {
    assert_oracle(2, 2);
}

#[test]
fn buchberger_matches_closed_form_3_2() {
    assert_oracle(3, 2);
}

#[test]
fn buchberger_matches_closed_form_2_3() {
    assert_oracle(2, 3);
}

#[test]
fn closed_form_3_3_is_groebner() {
    let params = GraphParams::new(3, 3).unwrap();
    let order = TermOrder::default();
    let basis = closed_form_gb(&params).unwrap();
    assert_eq!(basis.len(), 40);
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], &order);
            assert!(normal_form(&s, &basis, &order).is_zero(), "S({i}, {j})");
        }
    }
    for g in build_generators(&params) {
        assert!(in_ideal(&g, &basis, &order), "{g}");
    }
}

#[test]
fn basis_sizes() {
    assert_eq!(closed_form_gb(&GraphParams::new(2, 2).unwrap()).unwrap().len(), 10);
    assert_eq!(closed_form_gb(&GraphParams::new(3, 3).unwrap()).unwrap().len(), 40);
    assert!(closed_form_gb(&GraphParams::new(9, 8).unwrap()).is_err());
}

#[test]
fn closed_form_element_text() {
    let params = GraphParams::new(2, 2).unwrap();
    let basis = closed_form_gb(&params).unwrap();
    assert_eq!(basis[0].to_string(), "e_g12 - 1");
    assert_eq!(basis[1].to_string(), "e_h12 - 1");
}

#[test]
fn fviz_is_nonnegative_on_variety() {
    let params = GraphParams::new(2, 3).unwrap();
    let f = build_fviz(&params);
    for p in enumerate_variety(&params, &VarietyCap::default()).unwrap() {
        let v = f.eval_boolean(&|x| p.value(x));
        assert!(!v.is_negative());
        assert_eq!(v, Rational::from(p.num_x() as i64 - 1));
    }
}

#[test]
fn variety_points_satisfy_generators() {
    for (g, h) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
        let params = GraphParams::new(g, h).unwrap();
        let gens = build_generators(&params);
        let mut count = 0;
        for p in enumerate_variety(&params, &VarietyCap::default()).unwrap() {
            count += 1;
            for q in &gens {
                assert!(q.eval_boolean(&|x| p.value(x)).is_zero());
            }
        }
        if (g, h) == (2, 2) {
            assert_eq!(count, 11);
        }
    }
}

/// Oracle: every 0/1 assignment of all variables, filtered by the generators.
#[test]
fn variety_matches_exhaustive_filter() {
    for (g, h) in [(2, 2), (3, 2), (1, 3)] {
        let params = GraphParams::new(g, h).unwrap();
        let vars = params.variables();
        let gens = build_generators(&params);
        let mut oracle = BTreeSet::new();
        for mask in 0u64..1 << vars.len() {
            let val = |v: VarId| mask >> vars.iter().position(|w| *w == v).unwrap() & 1 == 1;
            if gens.iter().all(|q| q.eval_boolean(&val).is_zero()) {
                let point: Vec<bool> = vars.iter().map(|&v| val(v)).collect();
                oracle.insert(point);
            }
        }
        let enumerated: BTreeSet<Vec<bool>> = enumerate_variety(&params, &VarietyCap::default())
            .unwrap()
            .map(|p| vars.iter().map(|&v| p.value(v)).collect())
            .collect();
        assert_eq!(enumerated, oracle, "({g}, {h})");
        let xs: BTreeSet<u64> = enumerate_variety(&params, &VarietyCap::default()).unwrap().map(|p| p.x_mask).collect();
        let proj: BTreeSet<u64> = enumerate_x_projection(&params, 12).unwrap().collect();
        assert_eq!(xs, proj);
    }
}

#[test]
fn variety_cap_enforced() {
    let params = GraphParams::new(4, 4).unwrap();
    assert!(enumerate_variety(&params, &VarietyCap::default()).is_err());
    assert!(enumerate_x_projection(&params, 12).is_err());
    assert!(GraphParams::new(0, 3).is_err());
}

#[test]
fn var_names_roundtrip() {
    for v in [VarId::x(1, 2), VarId::edge_g(1, 3), VarId::edge_h(2, 3), VarId::x(10, 2), VarId::edge_h(3, 11)] {
        let s = v.to_string();
        assert_eq!(s.parse::<VarId>().unwrap(), v, "{s}");
    }
    assert_eq!(VarId::x(1, 2).to_string(), "x_12");
    assert_eq!(VarId::x(10, 2).to_string(), "x_10_2");
    assert!("y_12".parse::<VarId>().is_err());
}

#[test]
fn polynomial_json_roundtrip() {
    let params = GraphParams::new(2, 2).unwrap();
    for p in closed_form_gb(&params).unwrap() {
        let s = serde_json::to_string(&p).unwrap();
        let q: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}

fn any_monomial() -> impl Strategy<Value = Monomial> {
    let vars = GraphParams::new(2, 3).unwrap().variables();
    proptest::collection::vec((0..vars.len(), 0u32..3), 0..4)
        .prop_map(move |v| Monomial::from_powers(v.into_iter().map(|(i, e)| (vars[i], e))))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, rng_seed: proptest::test_runner::RngSeed::Fixed(0), ..ProptestConfig::default() })]

    #[test]
    fn term_order_is_monomial_order(a in any_monomial(), b in any_monomial(), c in any_monomial()) {
        prop_assert!(Monomial::one() <= a);
        if a < b {
            prop_assert!(a.mul(&c) < b.mul(&c));
        }
        prop_assert!(a.divides(&a.mul(&b)));
        prop_assert_eq!(a.quotient_of(&a.mul(&b)), Some(b.clone()));
        let l = a.lcm(&b);
        prop_assert!(a.divides(&l) && b.divides(&l));
    }

    #[test]
    fn normal_form_agrees_on_variety(a in any_monomial(), b in any_monomial(), c in -3i64..=3) {
        let params = GraphParams::new(2, 3).unwrap();
        let basis = closed_form_gb(&params).unwrap();
        let order = TermOrder::default();
        let p = Polynomial::term(Rational::from(c), a) + Polynomial::term(Rational::one(), b);
        let nf = normal_form(&p, &basis, &order);
        for pt in enumerate_variety(&params, &VarietyCap::default()).unwrap() {
            let val = |x: VarId| pt.value(x);
            prop_assert_eq!(p.eval_boolean(&val), nf.eval_boolean(&val));
        }
        prop_assert_eq!(normal_form(&nf, &basis, &order), nf);
    }
}
