use std::collections::BTreeSet;

use super::{Monomial, Polynomial, TermOrder};
use crate::exactmath::Rational;

/// Full reduction of `p` by `basis`: no term of the result is divisible by a
/// leading monomial of `basis`. Among several applicable divisors the earliest
/// basis element is used.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial], order: &TermOrder) -> Polynomial {
    let leads: Vec<(Monomial, Rational)> = basis
        .iter()
        .filter_map(|b| order.leading(b).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let basis: Vec<&Polynomial> = basis.iter().filter(|b| !b.is_zero()).collect();
    let mut rest = p.clone();
    let mut out = Polynomial::zero();
    while let Some((m, c)) = order.leading(&rest).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(i) => {
                let q = leads[i].0.quotient_of(&m).expect("divides");
                rest.sub_scaled(&(&c / &leads[i].1), &q, basis[i]);
            }
            None => {
                rest.remove_term(&m);
                out.add_term(m, c);
            }
        }
    }
    out
}

/// `lcm/lt(f) · f − lcm/lt(g) · g`, with leading terms taken monic.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &TermOrder) -> Polynomial {
    let (fm, fc) = order.leading(f).expect("nonzero");
    let (gm, gc) = order.leading(g).expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_monomial(&fm.quotient_of(&l).unwrap()).scale(&fc.recip().unwrap());
    let b = g.mul_monomial(&gm.quotient_of(&l).unwrap()).scale(&gc.recip().unwrap());
    a - b
}

/// Reduced Gröbner basis by Buchberger's algorithm with the coprime-leading-term
/// and chain criteria, pairs taken smallest lcm first. The output is monic and
/// sorted by leading monomial.
pub fn buchberger(generators: &[Polynomial], order: &TermOrder) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in generators {
        let r = normal_form(g, &basis, order);
        if !r.is_zero() {
            basis.push(r.monic(order));
        }
    }
    let lead = |p: &Polynomial| order.leading(p).unwrap().0.clone();

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while !pairs.is_empty() {
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| order.cmp(&lead(&basis[a.0]).lcm(&lead(&basis[a.1])), &lead(&basis[b.0]).lcm(&lead(&basis[b.1]))))
            .unwrap();
        pairs.remove(&(i, j));
        let (li, lj) = (lead(&basis[i]), lead(&basis[j]));
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lead(&basis[k]).divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j], order), &basis, order);
        if !r.is_zero() {
            let n = basis.len();
            basis.push(r.monic(order));
            for k in 0..n {
                pairs.insert((k, n));
            }
        }
    }
    interreduce(basis, order)
}

/// Reduced form of a Gröbner basis: minimal, monic, fully reduced, sorted.
pub fn interreduce(basis: Vec<Polynomial>, order: &TermOrder) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = basis.into_iter().filter(|p| !p.is_zero()).collect();
    let lead = |p: &Polynomial| order.leading(p).unwrap().0.clone();
    let mut minimal: Vec<Polynomial> = Vec::new();
    basis.sort_by(|a, b| order.cmp(&lead(a), &lead(b)));
    for p in basis {
        let lp = lead(&p);
        if !minimal.iter().any(|q| lead(q).divides(&lp)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, p)| p.clone()).collect();
        let (lm, lc) = order.leading(&minimal[k]).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut tail = minimal[k].clone();
        tail.remove_term(&lm);
        let mut r = normal_form(&tail, &others, order);
        r.add_term(lm, lc);
        out.push(r.monic(order));
    }
    out.sort_by(|a, b| order.cmp(&lead(a), &lead(b)));
    out
}

/// Whether `p` lies in the ideal generated by the Gröbner basis `basis`.
pub fn in_ideal(p: &Polynomial, basis: &[Polynomial], order: &TermOrder) -> bool {
    normal_form(p, basis, order).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::VarId;

    #[test]
    fn textbook_ideal() {
        // <x² − y, xy − 1> has reduced basis {y² − x, xy − 1, x² − y} under graded lex x > y.
        let x = Polynomial::var(VarId::x(1, 1));
        let y = Polynomial::var(VarId::x(1, 2));
        let one = Polynomial::one();
        let gb = buchberger(&[&x * &x - y.clone(), &x * &y - one.clone()], &TermOrder::default());
        let expect = vec![&x * &x - y.clone(), &x * &y - one, &y * &y - x.clone()];
        let mut got = gb.clone();
        got.sort();
        let mut want = expect;
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn normal_form_is_reduced() {
        let x = Polynomial::var(VarId::x(1, 1));
        let basis = vec![Polynomial::boolean(VarId::x(1, 1))];
        let p = &(&x * &x) * &x;
        assert_eq!(normal_form(&p, &basis, &TermOrder::default()), x);
    }
}
