//! Differentiation and substitution on canonical expressions.

use std::collections::BTreeMap;

use num_traits::One;

use super::canon::{Canon, Factors};
use super::{Derivative, Expr, Func};
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};

fn d_atom(a: &Expr, var: &str) -> Result<Canon> {
    match a {
        Expr::Sym(s) => Ok(if s == var {
            Canon::one()
        } else {
            Canon::zero()
        }),
        Expr::Fun(d) => match d.args.iter().position(|x| x == var) {
            Some(i) => {
                let mut d = d.clone();
                d.orders[i] += 1;
                Ok(Canon::atom(Expr::Fun(d)))
            }
            None => Ok(Canon::zero()),
        },
        Expr::Add(_) => d_canon(&Canon::from_expr(a), var),
        Expr::Apply(f, arg) => {
            let darg = d_canon(&Canon::from_expr(arg), var)?;
            if *f != Func::Log && darg.clone().into_expr().depends_on(var) {
                return Err(Error::NonLinearArgument(
                    f.name().to_string(),
                    var.to_string(),
                ));
            }
            let at = |g: Func| Canon::atom(Expr::Apply(g, arg.clone()));
            let one = Canon::one();
            let outer = match f {
                Func::Exp => at(Func::Exp),
                Func::Log => Canon::from_expr(arg).pow(-1),
                Func::Sinh => at(Func::Cosh),
                Func::Cosh => at(Func::Sinh),
                Func::Tanh => one.add(&at(Func::Tanh).pow(2).scale(&-GaussianRational::one())),
                Func::Coth => one.add(&at(Func::Coth).pow(2).scale(&-GaussianRational::one())),
                Func::Sin => at(Func::Cos),
                Func::Cos => at(Func::Sin).scale(&-GaussianRational::one()),
                Func::Tan => one.add(&at(Func::Tan).pow(2)),
                Func::Cot => one
                    .add(&at(Func::Cot).pow(2))
                    .scale(&-GaussianRational::one()),
            };
            Ok(outer.mul(&darg))
        }
        // numbers, products and powers never appear as atoms
        _ => unreachable!("not an atom: {a:?}"),
    }
}

pub(crate) fn d_canon(c: &Canon, var: &str) -> Result<Canon> {
    let mut out = Canon::zero();
    let mut cache: BTreeMap<&Expr, Canon> = BTreeMap::new();
    for (factors, coef) in &c.terms {
        for (i, (a, e)) in factors.iter().enumerate() {
            if !a.depends_on(var) {
                continue;
            }
            if !cache.contains_key(a) {
                cache.insert(a, d_atom(a, var)?);
            }
            let da = &cache[a];
            if da.is_zero() {
                continue;
            }
            let mut rest: Factors = factors.clone();
            if *e == 1 {
                rest.remove(i);
            } else {
                rest[i].1 = e - 1;
            }
            let mut t = Canon::zero();
            t.add_term(rest, coef * &GaussianRational::from_int(*e));
            out = out.add(&t.mul(da));
        }
    }
    Ok(out)
}

pub(crate) fn differentiate_once(e: &Expr, var: &str) -> Result<Expr> {
    Ok(d_canon(&Canon::from_expr(e), var)?.into_expr())
}

/// `∂^order e / ∂var^order`. Fails if some function atom other than `log`
/// has an argument that is not linear in `var`.
pub fn differentiate(e: &Expr, var: &str, order: u32) -> Result<Expr> {
    let mut c = Canon::from_expr(e);
    for _ in 0..order {
        if c.is_zero() {
            break;
        }
        c = d_canon(&c, var)?;
    }
    Ok(c.into_expr())
}

/// Simultaneous substitution. A binding for a symbol replaces it; a binding
/// for an unknown-function name replaces every derivative atom of that
/// function by the matching derivative of the bound expression, which must
/// be written in the function's own argument names.
pub fn substitute(e: &Expr, bindings: &BTreeMap<String, Expr>) -> Result<Expr> {
    let mut cache = BTreeMap::new();
    subst(e, bindings, &mut cache)
}

fn subst(
    e: &Expr,
    b: &BTreeMap<String, Expr>,
    cache: &mut BTreeMap<Derivative, Expr>,
) -> Result<Expr> {
    Ok(match e {
        Expr::Num(_) => e.clone(),
        Expr::Sym(s) => b.get(s).cloned().unwrap_or_else(|| e.clone()),
        Expr::Fun(d) => match b.get(&d.name) {
            Some(f) => {
                if let Some(v) = cache.get(d) {
                    return Ok(v.clone());
                }
                let mut v = f.clone();
                for (arg, o) in d.args.iter().zip(&d.orders) {
                    v = differentiate(&v, arg, *o)?;
                }
                cache.insert(d.clone(), v.clone());
                v
            }
            None => e.clone(),
        },
        Expr::Add(xs) => Expr::sum(
            xs.iter()
                .map(|x| subst(x, b, cache))
                .collect::<Result<Vec<_>>>()?,
        ),
        Expr::Mul(xs) => Expr::product(
            xs.iter()
                .map(|x| subst(x, b, cache))
                .collect::<Result<Vec<_>>>()?,
        ),
        Expr::Pow(x, n) => {
            let base = subst(x, b, cache)?;
            if *n < 0 && base.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            base.pow(*n)
        }
        Expr::Apply(f, a) => Expr::apply(*f, subst(a, b, cache)?),
    })
}

/// Replace every unknown-function derivative atom via `f`.
pub fn replace_derivatives(e: &Expr, f: &dyn Fn(&Derivative) -> Expr) -> Expr {
    match e {
        Expr::Num(_) | Expr::Sym(_) => e.clone(),
        Expr::Fun(d) => f(d),
        Expr::Add(xs) => Expr::sum(xs.iter().map(|x| replace_derivatives(x, f))),
        Expr::Mul(xs) => Expr::product(xs.iter().map(|x| replace_derivatives(x, f))),
        Expr::Pow(x, n) => replace_derivatives(x, f).pow(*n),
        Expr::Apply(g, a) => Expr::apply(*g, replace_derivatives(a, f)),
    }
}

impl Expr {
    /// Convenience wrapper for a single symbol binding.
    pub fn subs(&self, name: &str, value: &Expr) -> Result<Expr> {
        let mut b = BTreeMap::new();
        b.insert(name.to_string(), value.clone());
        substitute(self, &b)
    }

    pub fn diff(&self, var: &str, order: u32) -> Result<Expr> {
        differentiate(self, var, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Expr {
        s.parse().unwrap()
    }

    #[test]
    fn hyperbolic_rules() {
        assert_eq!(e("sinh(2*x)").diff("x", 1).unwrap(), e("2*cosh(2*x)"));
        assert_eq!(e("tanh(k*x)").diff("x", 1).unwrap(), e("k - k*tanh(k*x)^2"));
        assert_eq!(e("cot(x)").diff("x", 1).unwrap(), e("-1 - cot(x)^2"));
        assert_eq!(
            e("exp(a*x + b)").diff("x", 2).unwrap(),
            e("a^2*exp(a*x + b)")
        );
        assert_eq!(
            e("log(1 + exp(x))").diff("x", 1).unwrap(),
            e("exp(x)/(1 + exp(x))")
        );
    }

    #[test]
    fn nonlinear_argument_is_rejected() {
        let err = e("sinh(x^2)").diff("x", 1).unwrap_err();
        assert!(matches!(err, Error::NonLinearArgument(_, _)));
        // log arguments are exempt
        assert!(e("log(1 + x^2)").diff("x", 1).is_ok());
    }

    #[test]
    fn reciprocal_sum() {
        // d/dx 1/(1 + cosh x) = -sinh x/(1 + cosh x)^2
        assert_eq!(
            e("1/(1 + cosh(x))").diff("x", 1).unwrap(),
            e("-sinh(x)*(1 + cosh(x))^(-2)")
        );
    }

    #[test]
    fn function_binding_differentiates() {
        let pde = e("u(x,t)").diff("t", 1).unwrap() + e("u(x,t)").diff("x", 3).unwrap();
        let mut b = BTreeMap::new();
        b.insert("u".to_string(), e("exp(k*x - k^3*t)"));
        assert_eq!(substitute(&pde, &b).unwrap(), Expr::zero());
    }
}
