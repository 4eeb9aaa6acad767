//! Multivariate gcd over ℚ(i) by recursive primitive pseudo-remainder
//! sequences.

use super::univariate::UniPoly;
use crate::algebra::{GaussianRational, Monomial, MonomialOrder, MultiPoly};

/// Coefficients of `p` as a polynomial in the variable at slot `i`.
fn coeffs_in(p: &MultiPoly, i: usize) -> Vec<MultiPoly> {
    let deg = p.terms().map(|(m, _)| m.exp(i) as usize).max().unwrap_or(0);
    let mut out: Vec<Vec<(Monomial, _)>> = vec![Vec::new(); deg + 1];
    for (m, c) in p.terms() {
        let mut r = *m;
        r.set_exp(i, 0);
        out[m.exp(i) as usize].push((r, c.clone()));
    }
    out.into_iter()
        .map(|ts| MultiPoly::from_terms(p.vars(), ts))
        .collect()
}

fn from_coeffs(cs: &[MultiPoly], i: usize, like: &MultiPoly) -> MultiPoly {
    let mut terms = Vec::new();
    for (e, c) in cs.iter().enumerate() {
        for (m, a) in c.terms() {
            let mut r = *m;
            r.set_exp(i, e as u16);
            terms.push((r, a.clone()));
        }
    }
    MultiPoly::from_terms(like.vars(), terms)
}

fn trim(mut cs: Vec<MultiPoly>) -> Vec<MultiPoly> {
    while cs.len() > 1 && cs.last().is_some_and(|c| c.is_zero()) {
        cs.pop();
    }
    cs
}

/// Exact quotient; `None` if `d` does not divide `p`.
pub(crate) fn divide_exact(p: &MultiPoly, d: &MultiPoly) -> Option<MultiPoly> {
    let (q, r) = p.divide(std::slice::from_ref(d), MonomialOrder::GrevLex);
    r.is_zero()
        .then(|| q.into_iter().next().unwrap().with_vars(p.vars()).unwrap())
}

fn prem(f: &[MultiPoly], g: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let lg = &g[dg];
    while r.len() > dg && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        let mut next: Vec<MultiPoly> = r.iter().map(|c| c * lg).collect();
        for (k, gc) in g.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(&lr * gc);
        }
        next.pop();
        r = trim(next);
        if r.is_empty() {
            r.push(MultiPoly::zero(f[0].vars()));
        }
    }
    r
}

fn used_slots(p: &MultiPoly) -> Vec<usize> {
    (0..p.vars().len())
        .filter(|&i| p.terms().any(|(m, _)| m.exp(i) > 0))
        .collect()
}

fn content(cs: &[MultiPoly]) -> MultiPoly {
    let mut g = MultiPoly::zero(cs[0].vars());
    for c in cs {
        g = gcd(&g, c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

/// Proves that variable slot `i` does not occur in gcd(f, g): at an integer
/// point for the other variables that keeps both leading coefficients in
/// x_i, the univariate gcd is constant. `false` means "not proven".
fn absent_from_gcd(f: &MultiPoly, g: &MultiPoly, i: usize) -> bool {
    const PRIMES: [i64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];
    let x = &f.vars().names()[i];
    for attempt in 0..2 {
        let (mut fs, mut gs) = (f.clone(), g.clone());
        for (k, n) in f.vars().names().iter().enumerate() {
            if k == i {
                continue;
            }
            let v = GaussianRational::from_int(
                PRIMES[(k + 3 * attempt) % PRIMES.len()] * (1 + attempt as i64),
            );
            fs = fs.specialize(n, &v);
            gs = gs.specialize(n, &v);
        }
        if fs.degree_in(x) != f.degree_in(x) || gs.degree_in(x) != g.degree_in(x) {
            continue;
        }
        let (Some(a), Some(b)) = (UniPoly::from_multi(&fs, x), UniPoly::from_multi(&gs, x)) else {
            continue;
        };
        return a.gcd(&b).degree() == 0;
    }
    false
}

/// Greatest common divisor, monic under grevlex (0 only if both are 0).
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (f, g) = MultiPoly::align(f, g);
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(f.vars());
    }
    // cheap exits: divisibility either way
    if f.num_terms() <= g.num_terms() {
        if divide_exact(&g, &f).is_some() {
            return f.monic();
        }
    } else if divide_exact(&f, &g).is_some() {
        return g.monic();
    }
    let uf = used_slots(&f);
    let ug = used_slots(&g);
    if !uf
        .iter()
        .any(|i| ug.contains(i) && !absent_from_gcd(&f, &g, *i))
    {
        return MultiPoly::one(f.vars());
    }
    // one side is free of a variable: fold it against the other's coefficients
    let fold = |mut h: MultiPoly, cs: &[MultiPoly]| {
        for c in cs {
            h = gcd(&h, c);
            if h.is_constant() {
                break;
            }
        }
        h
    };
    if let Some(&i) = uf.iter().find(|i| !ug.contains(i)) {
        return fold(g, &coeffs_in(&f, i));
    }
    if let Some(&i) = ug.iter().find(|i| !uf.contains(i)) {
        return fold(f, &coeffs_in(&g, i));
    }
    let deg = |p: &MultiPoly, i: usize| p.terms().map(|(m, _)| m.exp(i)).max().unwrap_or(0);
    let i = *uf
        .iter()
        .min_by_key(|&&i| deg(&f, i).max(deg(&g, i)))
        .unwrap();
    let mut a = coeffs_in(&f, i);
    let mut b = coeffs_in(&g, i);
    // gcd of the contents, starting from the smaller side
    let c = if f.num_terms() <= g.num_terms() {
        fold(content(&a), &b)
    } else {
        fold(content(&b), &a)
    };
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let pp = |cs: Vec<MultiPoly>| -> Vec<MultiPoly> {
        let cont = content(&cs);
        cs.iter()
            .map(|x| divide_exact(x, &cont).expect("content divides"))
            .collect()
    };
    b = pp(b);
    loop {
        let r = prem(&a, &b);
        if r.iter().all(|x| x.is_zero()) {
            break;
        }
        if r.len() == 1 {
            // the primitive parts are coprime in this variable
            return c.monic();
        }
        a = b;
        b = pp(r);
    }
    let h = from_coeffs(&b, i, &f);
    (&c * &h).monic()
}

/// Product of the distinct irreducible factors, up to a unit.
pub fn squarefree(p: &MultiPoly) -> MultiPoly {
    if p.is_constant() {
        return p.monic();
    }
    let mut g = p.clone();
    for v in p.used_vars() {
        g = gcd(&g, &p.derivative(&v));
        if g.is_constant() {
            return p.monic();
        }
    }
    divide_exact(p, &g).expect("gcd divides").monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, VarSet};

    #[test]
    fn gcd_of_products() {
        let v = VarSet::new(&["c", "d", "k"]);
        let p = |s: &str| parse_poly(s, &v).unwrap();
        let g = gcd(&p("(c + d)^3*(k - c)"), &p("(c + d)^2*(c - d)*k"));
        assert_eq!(g, p("(c + d)^2").monic());
        assert_eq!(gcd(&p("c^2 - d^2"), &p("c - d")), p("c - d"));
        assert!(gcd(&p("c + 1"), &p("d + 1")).is_constant());
        assert_eq!(
            squarefree(&p("k*(c + d)^4*(c - d)^2")),
            p("k*(c + d)*(c - d)").monic()
        );
    }

    #[test]
    fn gaussian_factors() {
        let v = VarSet::new(&["x", "y"]);
        let p = |s: &str| parse_poly(s, &v).unwrap();
        let g = gcd(&p("x^2 + y^2"), &p("(x + I*y)*(x - 2)"));
        assert_eq!(g, p("x + I*y").monic());
    }
}
