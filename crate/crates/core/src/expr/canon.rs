//! The internal sum-of-products representation behind canonical `Expr`s.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Expr, Func};
use crate::algebra::GaussianRational;

/// Sorted atom powers with nonzero exponents.
pub(crate) type Factors = Vec<(Expr, i64)>;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Canon {
    pub terms: BTreeMap<Factors, GaussianRational>,
}

fn merge_factors(a: &Factors, b: &Factors) -> Factors {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            let e = a[i].1 + b[j].1;
            if e != 0 {
                out.push((a[i].0.clone(), e));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Canon {
    pub fn zero() -> Self {
        Canon {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Canon { terms }
    }

    /// A bare atom (symbol, derivative, function application or sum base).
    pub fn atom(a: Expr) -> Self {
        Self::atom_pow(a, 1)
    }

    fn atom_pow(a: Expr, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(a, e)], GaussianRational::one());
        Canon { terms }
    }

    pub fn atom_apply(f: Func, arg: Expr) -> Self {
        let arg = arg.canonical_fast();
        if arg.is_zero() {
            match f {
                Func::Exp | Func::Cosh | Func::Cos => return Self::one(),
                Func::Sinh | Func::Tanh | Func::Sin | Func::Tan => return Self::zero(),
                _ => {}
            }
        }
        Self::atom(Expr::Apply(f, Box::new(arg)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Canon) -> Canon {
        let (mut out, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (f, c) in &small.terms {
            out.add_term(f.clone(), c.clone());
        }
        out
    }

    pub fn add_term(&mut self, f: Factors, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&f) {
            Some(cur) => {
                *cur += &c;
                if cur.is_zero() {
                    self.terms.remove(&f);
                }
            }
            None => {
                self.terms.insert(f, c);
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Canon {
        if c.is_zero() {
            return Canon::zero();
        }
        Canon {
            terms: self.terms.iter().map(|(f, k)| (f.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Canon) -> Canon {
        let mut out = Canon::zero();
        for (fa, ca) in &self.terms {
            for (fb, cb) in &other.terms {
                out.add_term(merge_factors(fa, fb), ca * cb);
            }
        }
        out
    }

    fn single_term(&self) -> Option<(&Factors, &GaussianRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn pow(&self, n: i64) -> Canon {
        if n == 0 {
            return Canon::one();
        }
        if n == 1 {
            return self.clone();
        }
        if let Some((f, c)) = self.single_term() {
            let c = c.pow(n).expect("division by zero in symbolic expression");
            let f: Factors = f.iter().map(|(a, e)| (a.clone(), e * n)).collect();
            let mut terms = BTreeMap::new();
            terms.insert(f, c);
            return Canon { terms };
        }
        if self.is_zero() {
            if n > 0 {
                return Canon::zero();
            }
            panic!("division by zero in symbolic expression");
        }
        if n > 0 {
            let mut acc = Canon::one();
            let mut sq = self.clone();
            let mut e = n;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc.mul(&sq);
                }
                e >>= 1;
                if e > 0 {
                    sq = sq.mul(&sq);
                }
            }
            return acc;
        }
        // negative power of a genuine sum: normalize the base so that its
        // first term has unit coefficient, then keep it as an atom
        let lead = self.terms.values().next().unwrap().clone();
        let inv = lead.inv().expect("nonzero");
        let base = self.scale(&inv).into_expr();
        Canon::atom_pow(base, n).scale(&lead.pow(n).expect("nonzero"))
    }

    /// Convert a canonical `Expr` back without re-normalizing its atoms.
    pub fn from_expr(e: &Expr) -> Canon {
        match e {
            Expr::Num(c) => Canon::constant(c.clone()),
            Expr::Add(xs) => {
                let mut out = Canon::zero();
                for x in xs {
                    let (f, c) = term_parts(x);
                    out.add_term(f, c);
                }
                out
            }
            _ => {
                let (f, c) = term_parts(e);
                let mut out = Canon::zero();
                out.add_term(f, c);
                out
            }
        }
    }

    /// Canonicalize an arbitrary tree.
    pub fn from_raw(e: &Expr) -> Canon {
        match e {
            Expr::Num(c) => Canon::constant(c.clone()),
            Expr::Sym(_) | Expr::Fun(_) => Canon::atom(e.clone()),
            Expr::Add(xs) => xs
                .iter()
                .fold(Canon::zero(), |acc, x| acc.add(&Canon::from_raw(x))),
            Expr::Mul(xs) => xs
                .iter()
                .fold(Canon::one(), |acc, x| acc.mul(&Canon::from_raw(x))),
            Expr::Pow(b, n) => Canon::from_raw(b).pow(*n),
            Expr::Apply(f, a) => Canon::atom_apply(*f, Canon::from_raw(a).into_expr()),
        }
    }

    pub fn into_expr(self) -> Expr {
        let mut terms: Vec<Expr> = self
            .terms
            .into_iter()
            .map(|(f, c)| build_term(f, c))
            .collect();
        match terms.len() {
            0 => Expr::zero(),
            1 => terms.pop().unwrap(),
            _ => Expr::Add(terms),
        }
    }
}

fn build_term(f: Factors, c: GaussianRational) -> Expr {
    if f.is_empty() {
        return Expr::Num(c);
    }
    let mut parts: Vec<Expr> = Vec::with_capacity(f.len() + 1);
    if !c.is_one() {
        parts.push(Expr::Num(c));
    }
    for (a, e) in f {
        parts.push(if e == 1 { a } else { Expr::Pow(Box::new(a), e) });
    }
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        Expr::Mul(parts)
    }
}

fn term_parts(e: &Expr) -> (Factors, GaussianRational) {
    match e {
        Expr::Num(c) => (Vec::new(), c.clone()),
        Expr::Mul(xs) => {
            let mut c = GaussianRational::one();
            let mut f = Vec::with_capacity(xs.len());
            for x in xs {
                match x {
                    Expr::Num(k) => c = &c * k,
                    Expr::Pow(b, n) => f.push(((**b).clone(), *n)),
                    a => f.push((a.clone(), 1)),
                }
            }
            (f, c)
        }
        Expr::Pow(b, n) => (vec![((**b).clone(), *n)], GaussianRational::one()),
        a => (vec![(a.clone(), 1)], GaussianRational::one()),
    }
}

impl Expr {
    /// Canonicalize, skipping the work when the tree is already a plain atom.
    pub(crate) fn canonical_fast(&self) -> Expr {
        match self {
            Expr::Num(_) | Expr::Sym(_) | Expr::Fun(_) => self.clone(),
            _ => self.canonical(),
        }
    }
}
