//! High-precision numeric residuals.
//!
//! Derivatives are not taken symbolically here: u is evaluated as a
//! truncated Taylor series (a jet) in x or t, so this path is independent of
//! the ζ-engine.

use std::collections::BTreeMap;

use astro_float_num::{BigFloat, Consts, Radix, RoundingMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::catalog::ClosedFormSolution;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};
use crate::expr::{substitute, Derivative, Expr, Func};
use crate::model::{self, PdeCoefficients, T, X};

const RM: RoundingMode = RoundingMode::ToEven;

/// Extra decimal digits carried beyond the requested precision. Near the
/// singularity guard the 7th derivative amplifies rounding by about 10¹².
pub const GUARD_DIGITS: usize = 10;

/// Denominators smaller than this in modulus reject the sample.
pub const POLE_GUARD: f64 = 1e-3;

#[derive(Clone, Debug)]
pub struct NumericOptions {
    pub samples: usize,
    /// decimal digits
    pub precision: usize,
    pub seed: u64,
    /// half-width of the sampling box in x and t
    pub half_width: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        Self {
            samples: 50,
            precision: 50,
            seed: 7,
            half_width: 5.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericReport {
    pub max_residual: f64,
    pub accepted: usize,
    pub rejected: usize,
}

#[derive(Clone, Debug)]
struct Cx {
    re: BigFloat,
    im: BigFloat,
}

enum Fail {
    Guard,
    Err(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Err(e)
    }
}

struct Num {
    p: usize,
    cc: Consts,
    guard2: BigFloat,
}

impl Num {
    fn new(digits: usize) -> Self {
        let p = ((digits + GUARD_DIGITS) as f64 * std::f64::consts::LOG2_10).ceil() as usize;
        let g = BigFloat::from_f64(POLE_GUARD, p);
        Self {
            p,
            cc: Consts::new().expect("constants cache"),
            guard2: g.mul(&g, p, RM),
        }
    }

    fn zero(&self) -> Cx {
        Cx {
            re: BigFloat::from_i64(0, self.p),
            im: BigFloat::from_i64(0, self.p),
        }
    }

    fn real(&self, x: BigFloat) -> Cx {
        Cx {
            re: x,
            im: BigFloat::from_i64(0, self.p),
        }
    }

    fn int(&self, n: i64) -> Cx {
        self.real(BigFloat::from_i64(n, self.p))
    }

    fn rational(&mut self, q: &num_rational::BigRational) -> BigFloat {
        let n = BigFloat::parse(&q.numer().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        let d = BigFloat::parse(&q.denom().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        n.div(&d, self.p, RM)
    }

    fn gaussian(&mut self, c: &GaussianRational) -> Cx {
        Cx {
            re: self.rational(c.re()),
            im: self.rational(c.im()),
        }
    }

    fn add(&self, a: &Cx, b: &Cx) -> Cx {
        Cx {
            re: a.re.add(&b.re, self.p, RM),
            im: a.im.add(&b.im, self.p, RM),
        }
    }

    fn sub(&self, a: &Cx, b: &Cx) -> Cx {
        Cx {
            re: a.re.sub(&b.re, self.p, RM),
            im: a.im.sub(&b.im, self.p, RM),
        }
    }

    fn mul(&self, a: &Cx, b: &Cx) -> Cx {
        let p = self.p;
        Cx {
            re: a.re.mul(&b.re, p, RM).sub(&a.im.mul(&b.im, p, RM), p, RM),
            im: a.re.mul(&b.im, p, RM).add(&a.im.mul(&b.re, p, RM), p, RM),
        }
    }

    fn scale(&self, a: &Cx, s: &BigFloat) -> Cx {
        Cx {
            re: a.re.mul(s, self.p, RM),
            im: a.im.mul(s, self.p, RM),
        }
    }

    fn norm2(&self, a: &Cx) -> BigFloat {
        let p = self.p;
        a.re.mul(&a.re, p, RM).add(&a.im.mul(&a.im, p, RM), p, RM)
    }

    fn recip(&self, a: &Cx) -> std::result::Result<Cx, Fail> {
        let n = self.norm2(a);
        if n.cmp(&self.guard2).is_none_or(|c| c <= 0) {
            return Err(Fail::Guard);
        }
        let p = self.p;
        Ok(Cx {
            re: a.re.div(&n, p, RM),
            im: a.im.div(&n, p, RM).neg(),
        })
    }

    fn exp(&mut self, z: &Cx) -> Cx {
        let p = self.p;
        let m = z.re.exp(p, RM, &mut self.cc);
        Cx {
            re: m.mul(&z.im.cos(p, RM, &mut self.cc), p, RM),
            im: m.mul(&z.im.sin(p, RM, &mut self.cc), p, RM),
        }
    }

    fn times_i(&self, a: &Cx) -> Cx {
        Cx {
            re: a.im.neg(),
            im: a.re.clone(),
        }
    }

    fn abs_f64(&mut self, a: &Cx) -> f64 {
        let r = self.norm2(a).sqrt(self.p, RM);
        r.format(Radix::Dec, RM, &mut self.cc)
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .unwrap_or(f64::INFINITY)
    }
}

/// Taylor coefficients c_0 … c_n of a function of one variable.
type Jet = Vec<Cx>;

struct Evaluator<'a> {
    num: Num,
    order: usize,
    /// the jet variable and its base point
    var: &'a str,
    point: BTreeMap<String, Cx>,
}

impl Evaluator<'_> {
    fn constant(&self, c: Cx) -> Jet {
        let mut j = vec![self.num.zero(); self.order + 1];
        j[0] = c;
        j
    }

    fn jadd(&self, a: &Jet, b: &Jet) -> Jet {
        a.iter().zip(b).map(|(x, y)| self.num.add(x, y)).collect()
    }

    fn jsub(&self, a: &Jet, b: &Jet) -> Jet {
        a.iter().zip(b).map(|(x, y)| self.num.sub(x, y)).collect()
    }

    fn jmul(&self, a: &Jet, b: &Jet) -> Jet {
        (0..=self.order)
            .map(|k| {
                let mut s = self.num.zero();
                for j in 0..=k {
                    s = self.num.add(&s, &self.num.mul(&a[j], &b[k - j]));
                }
                s
            })
            .collect()
    }

    fn jrecip(&self, a: &Jet) -> std::result::Result<Jet, Fail> {
        let inv0 = self.num.recip(&a[0])?;
        let mut b = vec![inv0.clone()];
        for k in 1..=self.order {
            let mut s = self.num.zero();
            for j in 1..=k {
                s = self.num.add(&s, &self.num.mul(&a[j], &b[k - j]));
            }
            b.push(self.num.mul(&self.num.sub(&self.num.zero(), &s), &inv0));
        }
        Ok(b)
    }

    fn jpow(&self, a: &Jet, n: i64) -> std::result::Result<Jet, Fail> {
        let base = if n < 0 { self.jrecip(a)? } else { a.clone() };
        let mut acc = self.constant(self.num.int(1));
        for _ in 0..n.unsigned_abs() {
            acc = self.jmul(&acc, &base);
        }
        Ok(acc)
    }

    /// exp(a_0 + a_1 h) as a jet.
    fn jexp(&mut self, a0: &Cx, a1: &Cx) -> Jet {
        let e0 = self.num.exp(a0);
        let mut out = vec![e0];
        for k in 1..=self.order {
            let t = self.num.mul(&out[k - 1], a1);
            let kf = BigFloat::from_i64(k as i64, self.num.p);
            let inv = BigFloat::from_i64(1, self.num.p).div(&kf, self.num.p, RM);
            out.push(self.num.scale(&t, &inv));
        }
        out
    }

    fn atom(&mut self, f: Func, arg: &Jet) -> std::result::Result<Jet, Fail> {
        if arg
            .iter()
            .skip(2)
            .any(|c| !c.re.is_zero() || !c.im.is_zero())
        {
            return Err(Error::NonLinearArgument(f.name().into(), self.var.into()).into());
        }
        let a0 = arg[0].clone();
        let a1 = if self.order >= 1 {
            arg[1].clone()
        } else {
            self.num.zero()
        };
        let half = BigFloat::from_f64(0.5, self.num.p);
        let neg = |n: &Num, z: &Cx| n.sub(&n.zero(), z);
        let pair = |me: &mut Self, z0: &Cx, z1: &Cx| {
            let ep = me.jexp(z0, z1);
            let (m0, m1) = (neg(&me.num, z0), neg(&me.num, z1));
            let em = me.jexp(&m0, &m1);
            (ep, em)
        };
        let hyper = |me: &mut Self, z0: &Cx, z1: &Cx| {
            let (ep, em) = pair(me, z0, z1);
            let s: Jet = me
                .jsub(&ep, &em)
                .iter()
                .map(|c| me.num.scale(c, &half))
                .collect();
            let c: Jet = me
                .jadd(&ep, &em)
                .iter()
                .map(|c| me.num.scale(c, &half))
                .collect();
            (s, c)
        };
        // sin z = −i·sinh(iz), cos z = cosh(iz)
        let trig = |me: &mut Self| {
            let (z0, z1) = (me.num.times_i(&a0), me.num.times_i(&a1));
            let (sh, ch) = hyper(me, &z0, &z1);
            let s: Jet = sh
                .iter()
                .map(|c| neg(&me.num, &me.num.times_i(c)))
                .collect();
            (s, ch)
        };
        Ok(match f {
            Func::Exp => self.jexp(&a0, &a1),
            Func::Sinh => hyper(self, &a0, &a1).0,
            Func::Cosh => hyper(self, &a0, &a1).1,
            Func::Tanh => {
                let (s, c) = hyper(self, &a0, &a1);
                self.jmul(&s, &self.jrecip(&c)?)
            }
            Func::Coth => {
                let (s, c) = hyper(self, &a0, &a1);
                self.jmul(&c, &self.jrecip(&s)?)
            }
            Func::Sin => trig(self).0,
            Func::Cos => trig(self).1,
            Func::Tan => {
                let (s, c) = trig(self);
                self.jmul(&s, &self.jrecip(&c)?)
            }
            Func::Cot => {
                let (s, c) = trig(self);
                self.jmul(&c, &self.jrecip(&s)?)
            }
            Func::Log => {
                return Err(
                    Error::Normalization("log atoms are not evaluated numerically".into()).into(),
                )
            }
        })
    }

    fn eval(
        &mut self,
        e: &Expr,
        fun: &dyn Fn(&Derivative) -> Option<Cx>,
    ) -> std::result::Result<Jet, Fail> {
        Ok(match e {
            Expr::Num(c) => {
                let v = self.num.gaussian(c);
                self.constant(v)
            }
            Expr::Sym(s) => {
                let v = self
                    .point
                    .get(s)
                    .cloned()
                    .ok_or_else(|| Error::UnknownVariable(s.clone()))?;
                let mut j = self.constant(v);
                if s == self.var && self.order >= 1 {
                    j[1] = self.num.int(1);
                }
                j
            }
            Expr::Fun(d) => {
                let v = fun(d).ok_or_else(|| Error::UnknownVariable(d.name.clone()))?;
                self.constant(v)
            }
            Expr::Add(xs) => {
                let mut acc = self.constant(self.num.zero());
                for x in xs {
                    let v = self.eval(x, fun)?;
                    acc = self.jadd(&acc, &v);
                }
                acc
            }
            Expr::Mul(xs) => {
                let mut acc = self.constant(self.num.int(1));
                for x in xs {
                    let v = self.eval(x, fun)?;
                    acc = self.jmul(&acc, &v);
                }
                acc
            }
            Expr::Pow(b, n) => {
                let v = self.eval(b, fun)?;
                self.jpow(&v, *n)?
            }
            Expr::Apply(f, a) => {
                let v = self.eval(a, fun)?;
                self.atom(*f, &v)?
            }
        })
    }
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// |PDE residual| at one point, or `Fail::Guard` near a pole.
fn residual_at(
    u: &Expr,
    pde: &Expr,
    point: &BTreeMap<String, Cx>,
    digits: usize,
) -> std::result::Result<Cx, Fail> {
    let mk = |var: &'static str, order: usize| Evaluator {
        num: Num::new(digits),
        order,
        var,
        point: point.clone(),
    };
    let none = |_: &Derivative| None;
    let mut ex = mk(X, 7);
    let jx = ex.eval(u, &none)?;
    let mut et = mk(T, 1);
    let jt = et.eval(u, &none)?;
    let mut derivs: BTreeMap<(u32, u32), Cx> = BTreeMap::new();
    for (k, c) in jx.iter().enumerate() {
        let f = BigFloat::from_i64(factorial(k), ex.num.p);
        derivs.insert((k as u32, 0), ex.num.scale(c, &f));
    }
    derivs.insert((0, 1), jt[1].clone());
    let lookup = move |d: &Derivative| derivs.get(&(d.order_in(X), d.order_in(T))).cloned();
    let mut scalar = mk(X, 0);
    let r = scalar.eval(pde, &lookup)?;
    Ok(r[0].clone())
}

/// Maximum |residual| of the PDE for `coeffs` at pseudo-random points
/// (x, t) in the sampling box, skipping points near poles.
pub fn numeric_residual(
    sol: &ClosedFormSolution,
    coeffs: &PdeCoefficients,
    params: &BTreeMap<String, GaussianRational>,
    opts: &NumericOptions,
) -> Result<NumericReport> {
    if opts.precision < 30 {
        return Err(Error::InvalidConfig(format!(
            "precision {} below 30 digits",
            opts.precision
        )));
    }
    let bindings: BTreeMap<String, Expr> = params
        .iter()
        .map(|(k, v)| (k.clone(), Expr::Num(v.clone())))
        .collect();
    for r in &sol.relations {
        if !substitute(r, &bindings)?.is_zero() {
            return Err(Error::InvalidConfig(format!(
                "parameters violate the relation {r} = 0"
            )));
        }
    }
    let u = substitute(&sol.expr, &bindings)?;
    if let Some(s) = u.symbols().into_iter().find(|s| s != X && s != T) {
        return Err(Error::UnknownVariable(s));
    }
    let pde = model::build_pde(coeffs);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut num = Num::new(opts.precision);
    let mut report = NumericReport {
        max_residual: 0.0,
        accepted: 0,
        rejected: 0,
    };
    let attempts = opts.samples * 20;
    for _ in 0..attempts {
        if report.accepted == opts.samples {
            break;
        }
        let x: f64 = rng.gen_range(-opts.half_width..=opts.half_width);
        let t: f64 = rng.gen_range(-opts.half_width..=opts.half_width);
        let mut point = BTreeMap::new();
        point.insert(X.to_string(), num.real(BigFloat::from_f64(x, num.p)));
        point.insert(T.to_string(), num.real(BigFloat::from_f64(t, num.p)));
        match residual_at(&u, &pde, &point, opts.precision) {
            Ok(r) => {
                report.accepted += 1;
                report.max_residual = report.max_residual.max(num.abs_f64(&r));
            }
            Err(Fail::Guard) => report.rejected += 1,
            Err(Fail::Err(e)) => return Err(e),
        }
    }
    if report.accepted == 0 {
        return Err(Error::NoValidSamples);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::catalog::entry;

    fn params(kv: &[(&str, i64, i64)]) -> BTreeMap<String, GaussianRational> {
        kv.iter()
            .map(|(k, n, d)| (k.to_string(), GaussianRational::ratio(*n, *d)))
            .collect()
    }

    #[test]
    fn exact_entry_has_tiny_residual() {
        let u1 = entry("u1").unwrap();
        let r = numeric_residual(
            &u1,
            &PdeCoefficients::kk7(),
            &params(&[("mu", 1, 1)]),
            &NumericOptions {
                samples: 10,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.accepted, 10);
        assert!(r.max_residual < 1e-40, "{r:?}");
    }

    #[test]
    fn perturbed_entry_is_detected() {
        let mut u0 = entry("u0").unwrap();
        u0.expr = &u0.expr + &Expr::rat(1, 10);
        let r = numeric_residual(
            &u0,
            &PdeCoefficients::kk7(),
            &params(&[("k", 1, 1), ("delta", 0, 1)]),
            &NumericOptions {
                samples: 10,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(r.max_residual > 1e-2, "{r:?}");
    }

    #[test]
    fn zero_solves_the_linear_core() {
        let mut z = entry("u0").unwrap();
        z.expr = Expr::zero();
        z.relations.clear();
        let r = numeric_residual(
            &z,
            &PdeCoefficients::zero(),
            &BTreeMap::new(),
            &NumericOptions::default(),
        )
        .unwrap();
        assert_eq!(r.max_residual, 0.0);
    }

    #[test]
    fn low_precision_is_rejected() {
        let u1 = entry("u1").unwrap();
        let opts = NumericOptions {
            precision: 20,
            ..Default::default()
        };
        assert!(numeric_residual(
            &u1,
            &PdeCoefficients::kk7(),
            &params(&[("mu", 1, 1)]),
            &opts
        )
        .is_err());
    }
}
