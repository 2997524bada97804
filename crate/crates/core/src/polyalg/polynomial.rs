use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, VarId};
use crate::exactmath::Rational;

/// Term order on monomials: graded lexicographic under a variable priority.
///
/// The default priority is the derived order of [`VarId`]; a custom priority
/// lists variables from most to least significant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermOrder {
    rank: Option<BTreeMap<VarId, usize>>,
}

impl TermOrder {
    pub fn with_priority(priority: &[VarId]) -> Self {
        TermOrder { rank: Some(priority.iter().enumerate().map(|(i, &v)| (v, i)).collect()) }
    }

    pub fn is_default(&self) -> bool {
        self.rank.is_none()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.rank {
            None => a.cmp(b),
            Some(rank) => a.degree().cmp(&b.degree()).then_with(|| {
                let key = |m: &Monomial| {
                    let mut v: Vec<(usize, u32)> = m
                        .powers()
                        .iter()
                        .map(|&(x, e)| (*rank.get(&x).unwrap_or_else(|| panic!("{x} missing from priority")), e))
                        .collect();
                    v.sort_unstable();
                    v
                };
                super::monomial::lex_cmp(&key(a), &key(b))
            }),
        }
    }

    pub fn leading<'a>(&self, p: &'a Polynomial) -> Option<(&'a Monomial, &'a Rational)> {
        match &self.rank {
            None => p.terms.last_key_value(),
            Some(_) => p.terms.iter().max_by(|x, y| self.cmp(x.0, y.0)),
        }
    }
}

/// Sparse polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(v: VarId) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    /// `v − 1`.
    pub fn var_minus_one(v: VarId) -> Self {
        Self::var(v) - Self::one()
    }

    /// `1 − v`.
    pub fn one_minus_var(v: VarId) -> Self {
        Self::one() - Self::var(v)
    }

    /// `v² − v`.
    pub fn boolean(v: VarId) -> Self {
        Self::var(v) * Self::var_minus_one(v)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Leading term under the default order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn remove_term(&mut self, m: &Monomial) -> Option<Rational> {
        self.terms.remove(m)
    }

    /// `self − c · m · other`.
    pub fn sub_scaled(&mut self, c: &Rational, m: &Monomial, other: &Polynomial) {
        for (om, oc) in &other.terms {
            self.add_term(m.mul(om), -(c * oc));
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    /// Scaled so the leading coefficient under `order` is one.
    pub fn monic(&self, order: &TermOrder) -> Polynomial {
        match order.leading(self) {
            Some((_, c)) => self.scale(&c.recip().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Evaluation at a point; variables absent from `point` are an error.
    pub fn eval(&self, point: &dyn Fn(VarId) -> Option<Rational>) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.powers() {
                t *= point(v)?.pow(e);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Evaluation at a 0/1 point.
    pub fn eval_boolean(&self, point: &dyn Fn(VarId) -> bool) -> Rational {
        self.terms.iter().filter(|(m, _)| m.vars().all(point)).map(|(_, c)| c).sum()
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut v: Vec<VarId> = self.terms.keys().flat_map(|m| m.vars().collect::<Vec<_>>()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn product(factors: impl IntoIterator<Item = Polynomial>) -> Polynomial {
        factors.into_iter().fold(Polynomial::one(), |acc, f| acc * f)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<VarId> for Polynomial {
    fn from(v: VarId) -> Self {
        Polynomial::var(v)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: Rational,
    monomial: Vec<(VarId, u32)>,
}

impl Serialize for Polynomial {
    /// Term list, leading term first.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| TermRepr { coeff: c.clone(), monomial: m.powers().to_vec() })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut p = Polynomial::zero();
        for t in terms {
            p.add_term(Monomial::from_powers(t.monomial), t.coeff);
        }
        Ok(p)
    }
}
