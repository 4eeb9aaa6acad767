//! Conversions between canonical expressions and parameter polynomials.

use num_traits::One;

use super::Expr;
use crate::algebra::{GaussianRational, Monomial, MultiPoly, VarSet};
use crate::error::{Error, Result};

/// Read a canonical expression that is a polynomial in plain symbols.
/// Every symbol must already be in `vars`.
pub fn poly_from_expr(e: &Expr, vars: &VarSet) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(vars);
    for term in e.terms() {
        let mut c = GaussianRational::one();
        let mut m = Monomial::one();
        let factors: Vec<Expr> = match term {
            Expr::Mul(xs) => xs,
            t => vec![t],
        };
        for f in factors {
            let (base, n) = match f {
                Expr::Pow(b, n) => (*b, n),
                other => (other, 1),
            };
            match base {
                Expr::Num(k) => c = &c * &k,
                Expr::Sym(s) if n >= 0 => {
                    let i = vars
                        .index_of(&s)
                        .ok_or_else(|| Error::UnknownVariable(s.clone()))?;
                    m.set_exp(i, m.exp(i) + n as u16);
                }
                other => {
                    return Err(Error::Normalization(format!(
                        "coefficient {} is not polynomial in the parameters",
                        other.to_infix()
                    )))
                }
            }
        }
        out.add_term(m, &c);
    }
    Ok(out)
}

pub fn expr_from_poly(p: &MultiPoly) -> Expr {
    let names = p.vars().names();
    Expr::sum(p.terms().map(|(m, c)| {
        let mut parts = vec![Expr::Num(c.clone())];
        for (i, name) in names.iter().enumerate() {
            let e = m.exp(i);
            if e > 0 {
                parts.push(Expr::sym(name).pow(e as i64));
            }
        }
        Expr::product(parts)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let vars = VarSet::new(&["mu", "d"]);
        let e: Expr = "3/4*mu^2*d - I*d + 2".parse().unwrap();
        let p = poly_from_expr(&e, &vars).unwrap();
        assert_eq!(expr_from_poly(&p), e);
        let bad: Expr = "1/mu".parse().unwrap();
        assert!(poly_from_expr(&bad, &vars).is_err());
    }
}
