//! Multivariate polynomials over ℚ(i) in named indeterminates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use super::ordered::OrderedPoly;
use crate::error::{Error, Result};

/// Ordered registry of indeterminate names shared by polynomials.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        assert!(v.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        for (i, n) in v.iter().enumerate() {
            assert!(!v[..i].contains(n), "duplicate variable {n}");
        }
        VarSet(Arc::new(v))
    }

    pub fn empty() -> Self {
        VarSet(Arc::new(Vec::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// Union keeping `self`'s order, new names appended.
    pub fn union(&self, other: &VarSet) -> VarSet {
        if self == other {
            return self.clone();
        }
        let mut v = self.0.as_ref().clone();
        for n in other.0.iter() {
            if !v.contains(n) {
                v.push(n.clone());
            }
        }
        VarSet::new(&v)
    }

    pub fn with(&self, name: &str) -> VarSet {
        if self.contains(name) {
            self.clone()
        } else {
            let mut v = self.0.as_ref().clone();
            v.push(name.to_string());
            VarSet::new(&v)
        }
    }

    fn ptr_eq_or_eq(&self, other: &VarSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse polynomial: exponent vector → nonzero coefficient.
#[derive(Clone)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl MultiPoly {
    pub fn zero(vars: &VarSet) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: GaussianRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, GaussianRational::one())
    }

    pub fn var(vars: &VarSet, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::var(i), GaussianRational::one());
        Ok(p)
    }

    pub fn monomial(vars: &VarSet, m: Monomial, c: GaussianRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.vars.index_of(name) {
            Some(i) => self
                .terms
                .keys()
                .map(|m| m.exp(i) as u32)
                .max()
                .unwrap_or(0),
            None => 0,
        }
    }

    /// Names of the variables that actually occur.
    pub fn used_vars(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0))
            .map(|i| self.vars.names()[i].clone())
            .collect()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    /// Re-express over another registry containing every used variable.
    pub fn with_vars(&self, vars: &VarSet) -> Result<Self> {
        if self.vars.ptr_eq_or_eq(vars) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, n) in self.vars.names().iter().enumerate() {
            match vars.index_of(n) {
                Some(j) => map.push(j),
                None if self.terms.keys().all(|m| m.exp(i) == 0) => map.push(usize::MAX),
                None => return Err(Error::UnknownVariable(n.clone())),
            }
        }
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one();
            for (i, &dst) in map.iter().enumerate() {
                if dst != usize::MAX {
                    nm.set_exp(dst, m.exp(i));
                }
            }
            out.terms.insert(nm, c.clone());
        }
        Ok(out)
    }

    /// Both operands over a common registry.
    pub fn align(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if a.vars.ptr_eq_or_eq(&b.vars) {
            return (a.clone(), b.clone());
        }
        let vars = a.vars.union(&b.vars);
        (
            a.with_vars(&vars).expect("union contains all"),
            b.with_vars(&vars).expect("union contains all"),
        )
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    fn add_same(&self, other: &Self, negate: bool) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            if negate {
                out.add_term(*m, &-c);
            } else {
                out.add_term(*m, c);
            }
        }
        out
    }

    fn mul_same(&self, other: &Self) -> Self {
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self::zero(&self.vars);
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    /// Non-negative integer power; negative exponents are rejected.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::NegativeExponent(n));
        }
        let mut acc = Self::one(&self.vars);
        let mut sq = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(Monomial, GaussianRational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, c)| (*m, c.clone()))
    }

    /// Scale by the inverse of the leading coefficient so the result is monic.
    /// Idempotent; rejects the zero polynomial.
    pub fn content_normalize(&self, order: MonomialOrder) -> Result<Self> {
        let (_, lc) = self.leading_term(order).ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(&lc.inv()?))
    }

    /// Normal form of `self` modulo `divisors` (multivariate division).
    pub fn reduce(&self, divisors: &[MultiPoly], order: MonomialOrder) -> MultiPoly {
        self.divide(divisors, order).1
    }

    /// Multivariate division: returns quotients `q` and remainder `r` with
    /// `self = Σ q_i·d_i + r` and no term of `r` divisible by any `LT(d_i)`.
    pub fn divide(
        &self,
        divisors: &[MultiPoly],
        order: MonomialOrder,
    ) -> (Vec<MultiPoly>, MultiPoly) {
        let mut vars = self.vars.clone();
        for d in divisors {
            vars = vars.union(&d.vars);
        }
        let conv = |p: &MultiPoly| OrderedPoly::from_multi(&p.with_vars(&vars).unwrap(), order);
        let divs: Vec<OrderedPoly> = divisors.iter().map(conv).filter(|d| !d.is_zero()).collect();
        let (qs, r) = conv(self).divide_with_quotients(&divs, order);
        (
            qs.into_iter().map(|q| q.to_multi(&vars)).collect(),
            r.to_multi(&vars),
        )
    }

    /// Partial derivative.
    pub fn derivative(&self, name: &str) -> Self {
        let Some(i) = self.vars.index_of(name) else {
            return Self::zero(&self.vars);
        };
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                let mut nm = *m;
                nm.set_exp(i, e - 1);
                out.add_term(nm, &(c * &GaussianRational::from_int(e as i64)));
            }
        }
        out
    }

    /// Substitute a polynomial for one variable.
    pub fn substitute(&self, name: &str, value: &MultiPoly) -> Self {
        let Some(i) = self.vars.index_of(name) else {
            return self.clone();
        };
        let vars = self.vars.union(&value.vars);
        let value = value.with_vars(&vars).unwrap();
        let me = self.with_vars(&vars).unwrap();
        // group by exponent of the substituted variable
        let mut by_exp: BTreeMap<u16, MultiPoly> = BTreeMap::new();
        for (m, c) in &me.terms {
            let e = m.exp(i);
            let mut rest = *m;
            rest.set_exp(i, 0);
            by_exp
                .entry(e)
                .or_insert_with(|| MultiPoly::zero(&vars))
                .add_term(rest, c);
        }
        let mut out = MultiPoly::zero(&vars);
        let mut power = MultiPoly::one(&vars);
        let mut cur = 0u16;
        for (e, coeff) in by_exp {
            while cur < e {
                power = &power * &value;
                cur += 1;
            }
            out = &out + &(&coeff * &power);
        }
        out
    }

    pub fn specialize(&self, name: &str, value: &GaussianRational) -> Self {
        let Some(i) = self.vars.index_of(name) else {
            return self.clone();
        };
        let mut out = Self::zero(&self.vars);
        let mut pows: Vec<GaussianRational> = vec![GaussianRational::one()];
        for (m, c) in &self.terms {
            let e = m.exp(i) as usize;
            while pows.len() <= e {
                let next = pows.last().unwrap() * value;
                pows.push(next);
            }
            let mut nm = *m;
            nm.set_exp(i, 0);
            out.add_term(nm, &(c * &pows[e]));
        }
        out
    }

    /// Evaluate with every used variable bound.
    pub fn eval(&self, values: &BTreeMap<String, GaussianRational>) -> Result<GaussianRational> {
        let mut p = self.clone();
        for (n, v) in values {
            p = p.specialize(n, v);
        }
        p.constant_value()
            .ok_or_else(|| Error::UnknownVariable(p.used_vars().join(",")))
    }

    /// The distinct weighted degrees of the terms.
    pub fn weighted_degrees(&self, weights: &BTreeMap<String, i64>) -> Vec<i64> {
        let w: Vec<i64> = self
            .vars
            .names()
            .iter()
            .map(|n| weights.get(n).copied().unwrap_or(0))
            .collect();
        let mut ds: Vec<i64> = self.terms.keys().map(|m| m.weighted_degree(&w)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Canonical unit multiple used for deduplication: monic under grevlex.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.content_normalize(MonomialOrder::GrevLex).unwrap()
    }

    /// Rescale by a positive rational so that all coefficients are Gaussian
    /// integers with no common integer factor.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(&c.denominator_lcm());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            for part in [c.re(), c.im()] {
                let n = (part * BigRational::from_integer(l.clone())).to_integer();
                g = g.gcd(&n);
            }
        }
        self.scale(&GaussianRational::real(BigRational::new(l, g)))
    }

    /// Drop unused variables and sort the registry by name.
    pub fn compact(&self) -> Self {
        let mut used = self.used_vars();
        used.sort();
        self.with_vars(&VarSet::new(&used)).unwrap()
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars.ptr_eq_or_eq(&other.vars) {
            return self.terms == other.terms;
        }
        let (a, b) = MultiPoly::align(self, other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        if self.vars.ptr_eq_or_eq(&rhs.vars) {
            self.add_same(rhs, false)
        } else {
            let (a, b) = MultiPoly::align(self, rhs);
            a.add_same(&b, false)
        }
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        if self.vars.ptr_eq_or_eq(&rhs.vars) {
            self.add_same(rhs, true)
        } else {
            let (a, b) = MultiPoly::align(self, rhs);
            a.add_same(&b, true)
        }
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.vars.ptr_eq_or_eq(&rhs.vars) {
            self.mul_same(rhs)
        } else {
            let (a, b) = MultiPoly::align(self, rhs);
            a.mul_same(&b)
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned_poly {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned_poly!(Add add, Sub sub, Mul mul);

impl fmt::Display for MultiPoly {
    /// Infix form with terms in descending grevlex order, e.g. `x^2 + 2*x*y - 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(b.0, a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_real() && c.is_negative_leading();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            for (i, n) in self.vars.names().iter().enumerate() {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(n.clone()),
                    e => factors.push(format!("{n}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn binomial_square() {
        let xy = p("x + y");
        assert_eq!(&xy * &xy, p("x^2 + 2*x*y + y^2"));
        assert_eq!(xy.pow(2).unwrap(), p("x^2 + 2 x y + y^2"));
    }

    #[test]
    fn gaussian_norm_as_constant_poly() {
        assert_eq!(&p("1 + I") * &p("1 - I"), p("2"));
    }

    #[test]
    fn annihilator_and_negative_power() {
        let q = p("3*x^2*y - 7/5*z + 1");
        assert!((&q * &MultiPoly::zero(q.vars())).is_zero());
        assert!(matches!(q.pow(-1), Err(Error::NegativeExponent(-1))));
    }

    #[test]
    fn merges_registries_by_name() {
        let a = p("x + y");
        let b = p("z - y");
        let s = &a + &b;
        assert_eq!(s, p("x + z"));
        assert_eq!(s.vars().names(), ["x", "y", "z"]);
    }

    #[test]
    fn reduce_examples() {
        let g = MonomialOrder::GrevLex;
        assert!(p("x^2").reduce(&[p("x")], g).is_zero());
        assert_eq!(p("x^2*y").reduce(&[p("x^2 - 1")], g), p("y"));
        // y > x, so the leading term of y - x is y
        let vars = VarSet::new(&["y", "x"]);
        let xy1 = p("x*y - 1").with_vars(&vars).unwrap();
        let d = [
            p("x^2 - 1").with_vars(&vars).unwrap(),
            p("y - x").with_vars(&vars).unwrap(),
        ];
        assert!(xy1.reduce(&d, g).is_zero());
        assert_eq!(p("x + 1").reduce(&[], g), p("x + 1"));
    }

    #[test]
    fn content_normalize_examples() {
        let g = MonomialOrder::GrevLex;
        assert_eq!(p("2*x + 4").content_normalize(g).unwrap(), p("x + 2"));
        assert_eq!(p("I*x").content_normalize(g).unwrap(), p("x"));
        let m = p("x^2 - 3*y");
        assert_eq!(m.content_normalize(g).unwrap(), m);
        assert!(MultiPoly::zero(m.vars()).content_normalize(g).is_err());
    }

    #[test]
    fn substitute_and_specialize() {
        let q = p("x^2 + x*y");
        assert_eq!(q.substitute("x", &p("y + 1")), p("2*y^2 + 3*y + 1"));
        assert_eq!(
            q.specialize("y", &GaussianRational::from_int(2)),
            p("x^2 + 2*x")
        );
        assert_eq!(q.derivative("x"), p("2*x + y"));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p("x^2 + 2*x*y - 1/2").to_string(), "x^2 + 2*x*y - 1/2");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(p("I*x + 1").to_string(), "I*x + 1");
    }
}
