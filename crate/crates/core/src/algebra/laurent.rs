//! Laurent polynomials in one variable with multivariate coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::gaussian::GaussianRational;
use super::poly::{MultiPoly, VarSet};

/// `Σ c_m ζ^m` with `m ∈ ℤ` and `c_m` polynomials over a shared registry.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: VarSet,
    coeffs: BTreeMap<i32, MultiPoly>,
}

impl LaurentPoly {
    pub fn zero(vars: &VarSet) -> Self {
        Self {
            vars: vars.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: MultiPoly) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i32, c: MultiPoly) -> Self {
        let vars = c.vars().clone();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { vars, coeffs }
    }

    /// `ζ^exp` with unit coefficient.
    pub fn zeta_pow(vars: &VarSet, exp: i32) -> Self {
        Self::monomial(exp, MultiPoly::one(vars))
    }

    /// Build from `(exponent, coefficient)` pairs with rational coefficients.
    pub fn from_consts(vars: &VarSet, terms: &[(i32, GaussianRational)]) -> Self {
        let mut out = Self::zero(vars);
        for (e, c) in terms {
            out.add_coeff(*e, &MultiPoly::constant(vars, c.clone()));
        }
        out
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl DoubleEndedIterator<Item = (&i32, &MultiPoly)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, exp: i32) -> MultiPoly {
        self.coeffs
            .get(&exp)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.vars))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// A single term `c·ζ^m`, if that is all there is.
    pub fn as_monomial(&self) -> Option<(i32, &MultiPoly)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn with_vars(&self, vars: &VarSet) -> Self {
        if &self.vars == vars {
            return self.clone();
        }
        Self {
            vars: vars.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (*e, c.with_vars(vars).expect("registry covers coefficients")))
                .collect(),
        }
    }

    fn add_coeff(&mut self, exp: i32, c: &MultiPoly) {
        if c.is_zero() {
            return;
        }
        let c = c
            .with_vars(&self.vars)
            .expect("registry covers coefficients");
        match self.coeffs.get_mut(&exp) {
            Some(cur) => {
                *cur = &*cur + &c;
                if cur.is_zero() {
                    self.coeffs.remove(&exp);
                }
            }
            None => {
                self.coeffs.insert(exp, c);
            }
        }
    }

    /// Multiply by `ζ^m`: every exponent shifts by exactly `m`.
    pub fn shift(&self, m: i32) -> Self {
        Self {
            vars: self.vars.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        let mut out = Self::zero(&self.vars.union(c.vars()));
        for (e, k) in &self.coeffs {
            out.add_coeff(*e, &(k * c));
        }
        out
    }

    pub fn scale_const(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(|(e, k)| (*e, k.scale(c))).collect(),
        }
    }

    /// The Euler derivation `ζ·d/dζ`.
    pub fn euler_derivative(&self) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.coeffs {
            if *e != 0 {
                out.coeffs
                    .insert(*e, c.scale(&GaussianRational::from_int(*e as i64)));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(MultiPoly::one(&self.vars));
        let mut sq = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Substitute constant values for coefficient variables.
    pub fn specialize(&self, name: &str, value: &GaussianRational) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.coeffs {
            out.add_coeff(*e, &c.specialize(name, value));
        }
        out
    }

    /// `ζ ↦ ζ^k` for a nonzero integer `k`.
    pub fn compose_power(&self, k: i32) -> Self {
        assert!(k != 0);
        Self {
            vars: self.vars.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e * k, c.clone()))
                .collect(),
        }
    }

    /// Exact quotient by a constant-coefficient-free monomial content, returning
    /// the lowest exponent that was divided out.
    pub fn normalize_shift(&self) -> (i32, Self) {
        match self.min_exp() {
            Some(m) => (m, self.shift(-m)),
            None => (0, self.clone()),
        }
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let vars = self.vars.union(&rhs.vars);
        let mut out = self.with_vars(&vars);
        for (e, c) in &rhs.coeffs {
            out.add_coeff(*e, c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let vars = self.vars.union(&rhs.vars);
        let a = self.with_vars(&vars);
        let b = rhs.with_vars(&vars);
        let mut acc: BTreeMap<i32, MultiPoly> = BTreeMap::new();
        for (e1, c1) in &a.coeffs {
            for (e2, c2) in &b.coeffs {
                let prod = c1 * c2;
                let slot = acc.entry(e1 + e2).or_insert_with(|| MultiPoly::zero(&vars));
                *slot = &*slot + &prod;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { vars, coeffs: acc }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| match *e {
                0 => format!("({c})"),
                1 => format!("({c})*zeta"),
                e => format!("({c})*zeta^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
