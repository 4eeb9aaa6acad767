//! Buchberger's algorithm with the product and chain criteria
//! (Gebauer–Möller installation) and the normal selection strategy.

use std::cmp::Ordering;

use crate::algebra::{Monomial, MonomialOrder, MultiPoly, OrderedPoly, VarSet};
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_BOUND: u32 = 40;

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Full reduction of `p` modulo `basis` (top and tail), made monic.
pub(crate) fn normal_form(p: &OrderedPoly, basis: &[&OrderedPoly]) -> OrderedPoly {
    let mut rem: Vec<(Monomial, crate::algebra::GaussianRational)> = Vec::new();
    let mut cur = p.clone();
    while !cur.is_zero() {
        let m = *cur.lm();
        match basis.iter().find(|b| b.lm().divides(&m)) {
            Some(b) => {
                let q = b.lm().quotient_of(&m);
                let c = cur.lc() / b.lc();
                cur = cur.sub_scaled(&c, &q, b);
            }
            None => {
                // move the leading term to the remainder without shifting the vector
                let t = cur.terms.remove(0);
                rem.push(t);
            }
        }
    }
    OrderedPoly {
        terms: rem,
        order: p.order,
    }
    .monic()
}

fn spoly(f: &OrderedPoly, g: &OrderedPoly, lcm: &Monomial) -> OrderedPoly {
    let mf = f.lm().quotient_of(lcm);
    let mg = g.lm().quotient_of(lcm);
    // f, g are monic: S = mf·f − mg·g
    let zero = OrderedPoly::zero(f.order);
    let one = crate::algebra::GaussianRational::from_int(1);
    let a = zero.sub_scaled(&-one.clone(), &mf, f);
    a.sub_scaled(&one, &mg, g)
}

struct Engine {
    order: MonomialOrder,
    polys: Vec<OrderedPoly>,
    /// indices of the current (not yet superseded) basis
    basis: Vec<usize>,
    pairs: Vec<Pair>,
    bound: u32,
}

impl Engine {
    fn update(&mut self, h: usize) {
        let lh = *self.polys[h].lm();
        // candidate new pairs
        let mut c: Vec<Pair> = self
            .basis
            .iter()
            .map(|&g| Pair {
                i: g,
                j: h,
                lcm: self.polys[g].lm().lcm(&lh),
            })
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = c.pop() {
            let coprime = self.polys[p.i].lm().is_coprime(&lh);
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|p| !self.polys[p.i].lm().is_coprime(&lh))
            .collect();
        // chain criterion on old pairs
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && polys[p.i].lm().lcm(&lh) != p.lcm
                && polys[p.j].lm().lcm(&lh) != p.lcm)
        });
        self.pairs.extend(e);
        self.basis.retain(|&g| !lh.divides(polys[g].lm()));
        self.basis.push(h);
    }

    fn select(&mut self) -> Pair {
        let order = self.order;
        let (k, _) = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|a, b| match order.cmp(&a.1.lcm, &b.1.lcm) {
                Ordering::Equal => (a.1.i, a.1.j).cmp(&(b.1.i, b.1.j)),
                o => o,
            })
            .unwrap();
        self.pairs.swap_remove(k)
    }

    fn current(&self) -> Vec<&OrderedPoly> {
        self.basis.iter().map(|&i| &self.polys[i]).collect()
    }

    fn run(&mut self) -> Result<()> {
        while !self.pairs.is_empty() {
            let p = self.select();
            if p.lcm.degree() > self.bound {
                return Err(Error::DegreeBoundExceeded(self.bound));
            }
            let s = spoly(&self.polys[p.i], &self.polys[p.j], &p.lcm);
            let h = normal_form(&s, &self.current());
            if h.is_zero() {
                continue;
            }
            if h.is_constant() {
                self.polys.push(h);
                self.basis = vec![self.polys.len() - 1];
                self.pairs.clear();
                return Ok(());
            }
            self.polys.push(h);
            let idx = self.polys.len() - 1;
            self.update(idx);
        }
        Ok(())
    }
}

/// Reduced Gröbner basis over the union registry of the inputs, monic and
/// sorted by increasing leading monomial. The unit ideal yields `[1]`.
pub fn groebner(
    polys: &[MultiPoly],
    order: MonomialOrder,
    degree_bound: u32,
) -> Result<Vec<MultiPoly>> {
    let mut vars = VarSet::empty();
    for p in polys {
        vars = vars.union(p.vars());
    }
    let ord = groebner_ordered(
        polys
            .iter()
            .map(|p| OrderedPoly::from_multi(&p.with_vars(&vars).expect("union"), order))
            .collect(),
        order,
        degree_bound,
    )?;
    Ok(ord.iter().map(|p| p.to_multi(&vars)).collect())
}

pub(crate) fn groebner_ordered(
    input: Vec<OrderedPoly>,
    order: MonomialOrder,
    degree_bound: u32,
) -> Result<Vec<OrderedPoly>> {
    let mut eng = Engine {
        order,
        polys: Vec::new(),
        basis: Vec::new(),
        pairs: Vec::new(),
        bound: degree_bound,
    };
    // inter-reduce the input first so that the pair queue starts small
    let mut inputs: Vec<OrderedPoly> = input
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic())
        .collect();
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for p in inputs {
        let h = normal_form(&p, &eng.current());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![OrderedPoly::one(order)]);
        }
        eng.polys.push(h);
        let idx = eng.polys.len() - 1;
        eng.update(idx);
    }
    eng.run()?;
    Ok(reduce_basis(
        eng.current().into_iter().cloned().collect(),
        order,
    ))
}

/// Make a Gröbner basis reduced: minimal leading monomials, fully
/// inter-reduced, monic, sorted.
pub(crate) fn reduce_basis(mut g: Vec<OrderedPoly>, order: MonomialOrder) -> Vec<OrderedPoly> {
    if g.iter().any(|p| p.is_constant()) {
        return vec![OrderedPoly::one(order)];
    }
    g.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<OrderedPoly> = Vec::new();
    for p in g {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.retain(|q| !p.lm().divides(q.lm()));
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&OrderedPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p)
            .collect();
        out.push(normal_form(&minimal[k], &others));
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    out
}

/// True if every polynomial reduces to zero modulo the basis.
pub fn in_ideal(p: &MultiPoly, basis: &[MultiPoly], order: MonomialOrder) -> bool {
    p.reduce(basis, order).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn polys(v: &VarSet, ss: &[&str]) -> Vec<MultiPoly> {
        ss.iter().map(|s| parse_poly(s, v).unwrap()).collect()
    }

    #[test]
    fn small_example() {
        let v = VarSet::new(&["x", "y"]);
        let g = groebner(
            &polys(&v, &["x^2 - 1", "x*y - 1"]),
            MonomialOrder::GrevLex,
            40,
        )
        .unwrap();
        assert_eq!(g, polys(&v, &["x - y", "y^2 - 1"]));
        // the ideal is the same as the one generated by {x² − 1, y − x}
        let h = groebner(
            &polys(&v, &["x^2 - 1", "y - x"]),
            MonomialOrder::GrevLex,
            40,
        )
        .unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn unit_and_single() {
        let v = VarSet::new(&["x", "y"]);
        let g = groebner(&polys(&v, &["1"]), MonomialOrder::GrevLex, 40).unwrap();
        assert_eq!(g, polys(&v, &["1"]));
        let g = groebner(&polys(&v, &["x^2 + 3*x*y - 1"]), MonomialOrder::GrevLex, 40).unwrap();
        assert_eq!(g, polys(&v, &["x^2 + 3*x*y - 1"]));
        let g = groebner(&polys(&v, &["x - 1", "x - 2"]), MonomialOrder::Lex, 40).unwrap();
        assert_eq!(g, polys(&v, &["1"]));
    }

    #[test]
    fn lex_basis_is_triangular() {
        let v = VarSet::new(&["x", "y", "z"]);
        let eqs = polys(
            &v,
            &["x^2 + y + z - 1", "x + y^2 + z - 1", "x + y + z^2 - 1"],
        );
        let g = groebner(&eqs, MonomialOrder::Lex, 40).unwrap();
        // the last element is univariate in z
        let last = &g[0];
        assert_eq!(last.used_vars(), vec!["z".to_string()]);
        for e in &eqs {
            assert!(in_ideal(e, &g, MonomialOrder::Lex));
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        let v = VarSet::new(&["x", "y", "z"]);
        let eqs = polys(&v, &["x^3 - y*z^2 + 1", "y^3 - x*z + 2", "z^3 - x^2*y + 3"]);
        assert!(matches!(
            groebner(&eqs, MonomialOrder::GrevLex, 4),
            Err(Error::DegreeBoundExceeded(4))
        ));
    }
}
