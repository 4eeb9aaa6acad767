//! Term-sorted polynomial representation used by division and Gröbner code.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{MultiPoly, VarSet};

/// Terms sorted in strictly descending order under `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedPoly {
    pub(crate) terms: Vec<(Monomial, GaussianRational)>,
    pub(crate) order: MonomialOrder,
}

impl OrderedPoly {
    pub fn zero(order: MonomialOrder) -> Self {
        Self {
            terms: Vec::new(),
            order,
        }
    }

    pub fn from_multi(p: &MultiPoly, order: MonomialOrder) -> Self {
        let mut terms: Vec<_> = p.terms().map(|(m, c)| (*m, c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Self { terms, order }
    }

    pub fn to_multi(&self, vars: &VarSet) -> MultiPoly {
        MultiPoly::from_terms(vars, self.terms.iter().cloned())
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

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &GaussianRational {
        &self.terms[0].1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn monic(mut self) -> Self {
        if self.terms.is_empty() || self.terms[0].1.is_one() {
            return self;
        }
        let inv = self.terms[0].1.inv().expect("nonzero lead");
        for t in &mut self.terms {
            t.1 = &t.1 * &inv;
        }
        self
    }

    /// Sugar-free degree of the leading monomial.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    /// `self - c·m·other`, merged in order.
    pub fn sub_scaled(
        &self,
        c: &GaussianRational,
        m: &Monomial,
        other: &OrderedPoly,
    ) -> OrderedPoly {
        let ord = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let neg = -c;
        while i < self.terms.len() || j < other.terms.len() {
            let take = if i == self.terms.len() {
                Ordering::Less
            } else if j == other.terms.len() {
                Ordering::Greater
            } else {
                ord.cmp(&self.terms[i].0, &other.terms[j].0.mul(m))
            };
            match take {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (om, oc) = &other.terms[j];
                    out.push((om.mul(m), oc * &neg));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &self.terms[i].1 + &(&other.terms[j].1 * &neg);
                    if !v.is_zero() {
                        out.push((self.terms[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        OrderedPoly {
            terms: out,
            order: ord,
        }
    }

    /// Full reduction; returns quotients alongside the remainder.
    pub fn divide_with_quotients(
        &self,
        divs: &[OrderedPoly],
        order: MonomialOrder,
    ) -> (Vec<OrderedPoly>, OrderedPoly) {
        let mut quotients: Vec<Vec<(Monomial, GaussianRational)>> = vec![Vec::new(); divs.len()];
        let mut rem = Vec::new();
        let mut p = self.clone();
        while !p.is_zero() {
            let (m, c) = p.terms[0].clone();
            match divs.iter().position(|d| d.lm().divides(&m)) {
                Some(k) => {
                    let d = &divs[k];
                    let q = d.lm().quotient_of(&m);
                    let qc = &c / d.lc();
                    p = p.sub_scaled(&qc, &q, d);
                    quotients[k].push((q, qc));
                }
                None => {
                    rem.push(p.terms.remove(0));
                }
            }
        }
        let qs = quotients
            .into_iter()
            .map(|mut t| {
                t.sort_by(|a, b| order.cmp(&b.0, &a.0));
                // quotient monomials can repeat only if a divisor was used twice
                // for the same monomial, which cannot happen
                OrderedPoly { terms: t, order }
            })
            .collect();
        (qs, OrderedPoly { terms: rem, order })
    }

    /// Remainder of full reduction by `divs`.
    pub fn reduce(&self, divs: &[OrderedPoly]) -> OrderedPoly {
        let mut rem = Vec::new();
        let mut p = self.clone();
        while !p.is_zero() {
            let m = p.terms[0].0;
            match divs.iter().find(|d| d.lm().divides(&m)) {
                Some(d) => {
                    let q = d.lm().quotient_of(&m);
                    let qc = &p.terms[0].1 / d.lc();
                    p = p.sub_scaled(&qc, &q, d);
                }
                None => rem.push(p.terms.remove(0)),
            }
        }
        OrderedPoly {
            terms: rem,
            order: self.order,
        }
    }

    pub fn one(order: MonomialOrder) -> Self {
        Self {
            terms: vec![(Monomial::one(), GaussianRational::one())],
            order,
        }
    }
}
