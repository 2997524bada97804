use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExactError, Rational};

/// Simplest rational (smallest denominator, then smallest magnitude) in
/// `[lo + margin·w, hi − margin·w]` with `w = hi − lo`, taken over the exact
/// binary values of the endpoints.
pub fn best_rational_in_interval(lo: f64, hi: f64, margin: &Rational) -> Result<Rational, ExactError> {
    let (a, b) = shrink(lo, hi, margin)?;
    Ok(simplest_between(&a, &b))
}

/// The shrunken interval used by [`best_rational_in_interval`].
pub fn shrink(lo: f64, hi: f64, margin: &Rational) -> Result<(Rational, Rational), ExactError> {
    if margin.is_negative() || *margin >= Rational::new(1, 2) {
        return Err(ExactError::InvalidMargin(margin.to_string()));
    }
    let (Some(lo), Some(hi)) = (Rational::from_f64(lo), Rational::from_f64(hi)) else {
        return Err(ExactError::EmptyInterval);
    };
    if hi < lo {
        return Err(ExactError::EmptyInterval);
    }
    let w = &hi - &lo;
    Ok((&lo + margin * &w, &hi - margin * &w))
}

/// Simplest rational in the closed interval `[a, b]`, `a ≤ b`.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    assert!(a <= b, "empty interval");
    if !a.is_positive() && !b.is_negative() {
        return Rational::zero();
    }
    if b.is_negative() {
        return -simplest_positive(&-b, &-a);
    }
    simplest_positive(a, b)
}

// Stern–Brocot descent for 0 < a ≤ b.
fn simplest_positive(a: &Rational, b: &Rational) -> Rational {
    let fl = a.floor();
    let fl_r = Rational::from_integer(fl.clone());
    if *a == fl_r {
        return fl_r;
    }
    let next = Rational::from_integer(&fl + BigInt::one());
    if next <= *b {
        return next;
    }
    // a and b share the integer part and b < fl + 1.
    let lo = (b - &fl_r).recip().expect("b > fl");
    let hi = (a - &fl_r).recip().expect("a > fl");
    fl_r + simplest_positive(&lo, &hi).recip().expect("positive")
}

/// Every rational in `[a, b]` ordered by denominator, then magnitude, then value.
/// Starts with the simplest one.
pub struct RationalsInInterval {
    a: Rational,
    b: Rational,
    den: BigInt,
    pending: std::vec::IntoIter<Rational>,
    max_den: Option<BigInt>,
    degenerate: bool,
}

impl RationalsInInterval {
    pub fn new(a: Rational, b: Rational) -> Self {
        assert!(a <= b, "empty interval");
        if a == b {
            let pending = vec![a.clone()].into_iter();
            return RationalsInInterval { a, b, den: BigInt::zero(), pending, max_den: None, degenerate: true };
        }
        RationalsInInterval { a, b, den: BigInt::zero(), pending: Vec::new().into_iter(), max_den: None, degenerate: false }
    }

    /// Stop once denominators exceed `max_den`.
    pub fn with_max_denominator(mut self, max_den: u64) -> Self {
        self.max_den = Some(BigInt::from(max_den));
        self
    }
}

impl Iterator for RationalsInInterval {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        loop {
            if let Some(r) = self.pending.next() {
                return Some(r);
            }
            if self.degenerate {
                return None;
            }
            self.den += 1;
            if let Some(max) = &self.max_den {
                if &self.den > max {
                    return None;
                }
            }
            let q = self.den.clone();
            let qa = Rational::from_integer(q.clone()) * &self.a;
            let qb = Rational::from_integer(q.clone()) * &self.b;
            let mut batch = Vec::new();
            let mut p = qa.ceil();
            let top = qb.floor();
            while p <= top {
                if num_integer::Integer::gcd(&p, &q).is_one() {
                    batch.push(Rational::new(p.clone(), q.clone()));
                }
                p += 1;
            }
            batch.sort_by(|x, y| x.abs().cmp(&y.abs()).then(x.cmp(y)));
            self.pending = batch.into_iter();
        }
    }
}
