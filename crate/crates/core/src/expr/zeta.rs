//! Exponential normal form: rewriting expressions built from exp, hyperbolic
//! and trigonometric atoms of one linear phase as rational functions of a
//! single exponential ζ.
//!
//! With ζ = exp(s·(θ + δ₀)), every atom argument q·(θ + δ₀) becomes an
//! integer power ζ^{q/s} (or ζ^{iq/s} for trigonometric atoms), and a
//! derivative in an independent variable v acts as `s·∂θ/∂v · ζ d/dζ`.
//! Denominators are kept factored over a shared table so that derivatives
//! and sums never need polynomial gcds.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::canon::Canon;
use super::convert::{expr_from_poly, poly_from_expr};
use super::{Derivative, Expr, Func};
use crate::algebra::{GaussianRational, LaurentPoly, MonomialOrder, MultiPoly, VarSet};
use crate::error::{Error, Result};

/// A phase θ = Σ f_v·v, linear in the independent variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Phase {
    pub indep: Vec<String>,
    pub coeffs: Vec<Expr>,
}

impl Phase {
    /// Extract the linear part of `e` in `indep`; any constant part is
    /// dropped (it is absorbed into the ζ offset).
    pub fn new(e: &Expr, indep: &[&str]) -> Result<Phase> {
        let (c, _) = e
            .linear_coefficients(indep)
            .ok_or_else(|| Error::Normalization(format!("phase {e} is not linear")))?;
        Ok(Phase {
            indep: indep.iter().map(|s| s.to_string()).collect(),
            coeffs: indep
                .iter()
                .map(|v| c.get(*v).cloned().unwrap_or_else(Expr::zero))
                .collect(),
        })
    }

    /// θ = frequency·var.
    pub fn single(var: &str, frequency: &Expr) -> Phase {
        Phase {
            indep: vec![var.to_string()],
            coeffs: vec![frequency.clone()],
        }
    }

    pub fn to_expr(&self) -> Expr {
        Expr::sum(
            self.indep
                .iter()
                .zip(&self.coeffs)
                .map(|(v, c)| c * &Expr::sym(v)),
        )
    }
}

/// A rational function N(ζ)/D(ζ) with ζ = exp(scale·(θ + offset)).
///
/// Canonical: both sides are polynomials in ζ with no common power of ζ,
/// and the denominator's top coefficient is 1 whenever it is a constant.
#[derive(Clone, Debug)]
pub struct RationalForm {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
    pub scale: GaussianRational,
    pub offset: MultiPoly,
}

impl RationalForm {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Same rational function (cross-multiplication), same ζ.
    pub fn equivalent(&self, other: &RationalForm) -> bool {
        self.scale == other.scale
            && self.offset == other.offset
            && (&self.numerator * &other.denominator) == (&other.numerator * &self.denominator)
    }
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.numerator, self.denominator)
    }
}

/// `num / Π factors[j]^den[j]`.
#[derive(Clone, Debug)]
pub struct ZFrac {
    pub num: LaurentPoly,
    pub den: Vec<u32>,
}

impl ZFrac {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// Shared state for one ζ: the coefficient registry, derivative multipliers
/// and the denominator factor table.
pub struct ZetaEngine {
    vars: VarSet,
    indep: Vec<String>,
    dmul: Vec<MultiPoly>,
    scale: GaussianRational,
    offset: MultiPoly,
    factors: Vec<LaurentPoly>,
    dfactors: Vec<LaurentPoly>,
    powers: Vec<Vec<LaurentPoly>>,
}

struct AtomShape {
    /// q for hyperbolic atoms, i·q for trigonometric ones
    value: GaussianRational,
    offset: MultiPoly,
}

fn lcm_of_denominators(vals: &[GaussianRational]) -> BigInt {
    vals.iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(&v.denominator_lcm()))
}

impl ZetaEngine {
    /// Build an engine able to rewrite every expression in `exprs`.
    /// `params` lists coefficient names in registry order; any further
    /// symbols found are appended in sorted order.
    pub fn new(phase: &Phase, exprs: &[&Expr], params: &[&str]) -> Result<ZetaEngine> {
        let mut names: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        let mut extra: Vec<String> = Vec::new();
        for e in exprs.iter().copied().chain(phase.coeffs.iter()) {
            for s in e.symbols() {
                if !phase.indep.contains(&s) && !names.contains(&s) && !extra.contains(&s) {
                    extra.push(s);
                }
            }
        }
        extra.sort();
        names.extend(extra);
        let vars = VarSet::new(&names);
        let f: Vec<MultiPoly> = phase
            .coeffs
            .iter()
            .map(|c| poly_from_expr(c, &vars))
            .collect::<Result<_>>()?;
        if f.iter().all(|c| c.is_zero()) {
            return Err(Error::Normalization("phase is identically zero".into()));
        }

        let mut shapes: Vec<AtomShape> = Vec::new();
        for e in exprs {
            for (func, arg) in e.atoms() {
                if func == Func::Log {
                    return Err(Error::Normalization(
                        "log atoms have no exponential normal form".into(),
                    ));
                }
                let mut s = Self::shape(&arg, phase, &f, &vars)?;
                if func.is_trigonometric() {
                    s.value = &s.value * &GaussianRational::i();
                }
                shapes.push(s);
            }
        }

        let mut offset = MultiPoly::zero(&vars);
        if let Some(first) = shapes.first() {
            offset = first.offset.clone();
            if shapes.iter().any(|s| s.offset != offset) {
                return Err(Error::IncommensurateFrequency(
                    "atoms have different phase offsets".into(),
                ));
            }
        }
        let values: Vec<GaussianRational> = shapes.iter().map(|s| s.value.clone()).collect();
        let l = GaussianRational::real(BigRational::from_integer(lcm_of_denominators(&values)));
        let scale = if values.iter().all(|v| v.is_real()) {
            l.inv()?
        } else if values.iter().all(|v| v.is_imaginary()) {
            &GaussianRational::i() * &l.inv()?
        } else {
            return Err(Error::IncommensurateFrequency(
                "hyperbolic and trigonometric atoms share a phase".into(),
            ));
        };
        let dmul = f.iter().map(|c| c.scale(&scale)).collect();
        Ok(ZetaEngine {
            vars,
            indep: phase.indep.clone(),
            dmul,
            scale,
            offset,
            factors: Vec::new(),
            dfactors: Vec::new(),
            powers: Vec::new(),
        })
    }

    fn shape(arg: &Expr, phase: &Phase, f: &[MultiPoly], vars: &VarSet) -> Result<AtomShape> {
        let indep: Vec<&str> = phase.indep.iter().map(|s| s.as_str()).collect();
        let (c, rest) = arg
            .linear_coefficients(&indep)
            .ok_or_else(|| Error::NonLinearArgument(arg.to_infix(), indep.join(",")))?;
        let mut q: Option<GaussianRational> = None;
        for (v, fv) in phase.indep.iter().zip(f) {
            let cv = match c.get(v) {
                Some(e) => poly_from_expr(e, vars)?,
                None => MultiPoly::zero(vars),
            };
            if fv.is_zero() {
                if !cv.is_zero() {
                    return Err(Error::IncommensurateFrequency(arg.to_infix()));
                }
                continue;
            }
            let (m, lc) = fv.leading_term(MonomialOrder::GrevLex).unwrap();
            let ratio = &cv.coeff(&m) / &lc;
            if fv.scale(&ratio) != cv {
                return Err(Error::IncommensurateFrequency(arg.to_infix()));
            }
            match &q {
                Some(q0) if *q0 != ratio => {
                    return Err(Error::IncommensurateFrequency(arg.to_infix()))
                }
                _ => q = Some(ratio),
            }
        }
        let q = q.filter(|q| !q.is_zero()).ok_or_else(|| {
            Error::IncommensurateFrequency(format!(
                "{} does not depend on the phase",
                arg.to_infix()
            ))
        })?;
        let rest = poly_from_expr(&rest, vars)?;
        Ok(AtomShape {
            offset: rest.scale(&q.inv()?),
            value: q,
        })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn scale(&self) -> &GaussianRational {
        &self.scale
    }

    pub fn offset(&self) -> &MultiPoly {
        &self.offset
    }

    pub fn factors(&self) -> &[LaurentPoly] {
        &self.factors
    }

    fn var_index(&self, v: &str) -> Result<usize> {
        self.indep
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| Error::UnknownVariable(v.to_string()))
    }

    pub fn constant(&self, c: MultiPoly) -> ZFrac {
        ZFrac {
            num: LaurentPoly::constant(c.with_vars(&self.vars).expect("registry")),
            den: Vec::new(),
        }
    }

    pub fn laurent(&self, num: LaurentPoly) -> ZFrac {
        ZFrac {
            num: num.with_vars(&self.vars),
            den: Vec::new(),
        }
    }

    fn factor_pow(&mut self, j: usize, k: u32) -> LaurentPoly {
        let k = k as usize;
        while self.powers[j].len() <= k {
            let next = &self.powers[j][self.powers[j].len() - 1] * &self.factors[j];
            self.powers[j].push(next);
        }
        self.powers[j][k].clone()
    }

    fn register_factor(&mut self, f: LaurentPoly) -> usize {
        if let Some(j) = self.factors.iter().position(|g| *g == f) {
            return j;
        }
        self.dfactors.push(f.euler_derivative());
        self.powers.push(vec![
            LaurentPoly::constant(MultiPoly::one(&self.vars)),
            f.clone(),
        ]);
        self.factors.push(f);
        self.factors.len() - 1
    }

    pub fn add(&mut self, a: &ZFrac, b: &ZFrac) -> ZFrac {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let n = a.den.len().max(b.den.len());
        let get = |v: &Vec<u32>, j: usize| v.get(j).copied().unwrap_or(0);
        let mut den = vec![0; n];
        let mut na = a.num.clone();
        let mut nb = b.num.clone();
        for (j, slot) in den.iter_mut().enumerate() {
            let (ea, eb) = (get(&a.den, j), get(&b.den, j));
            *slot = ea.max(eb);
            if ea < eb {
                na = &na * &self.factor_pow(j, eb - ea);
            } else if eb < ea {
                nb = &nb * &self.factor_pow(j, ea - eb);
            }
        }
        let num = &na + &nb;
        if num.is_zero() {
            return ZFrac {
                num,
                den: Vec::new(),
            };
        }
        ZFrac { num, den }
    }

    pub fn neg(&self, a: &ZFrac) -> ZFrac {
        ZFrac {
            num: -&a.num,
            den: a.den.clone(),
        }
    }

    pub fn sub(&mut self, a: &ZFrac, b: &ZFrac) -> ZFrac {
        let nb = self.neg(b);
        self.add(a, &nb)
    }

    pub fn mul(&mut self, a: &ZFrac, b: &ZFrac) -> ZFrac {
        let num = &a.num * &b.num;
        if num.is_zero() {
            return ZFrac {
                num,
                den: Vec::new(),
            };
        }
        let n = a.den.len().max(b.den.len());
        let den = (0..n)
            .map(|j| a.den.get(j).unwrap_or(&0) + b.den.get(j).unwrap_or(&0))
            .collect();
        ZFrac { num, den }
    }

    pub fn scale_poly(&self, a: &ZFrac, c: &MultiPoly) -> ZFrac {
        ZFrac {
            num: a.num.scale(c),
            den: a.den.clone(),
        }
    }

    pub fn recip(&mut self, a: &ZFrac) -> Result<ZFrac> {
        if a.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut num = LaurentPoly::constant(MultiPoly::one(&self.vars));
        for (j, e) in a.den.iter().enumerate() {
            if *e > 0 {
                num = &num * &self.factor_pow(j, *e);
            }
        }
        let (m, rest) = a.num.normalize_shift();
        let num = num.shift(-m);
        let top = rest.coeff(rest.max_exp().unwrap());
        if rest.num_terms() == 1 {
            if let Some(c) = top.constant_value() {
                return Ok(ZFrac {
                    num: num.scale_const(&c.inv()?),
                    den: Vec::new(),
                });
            }
        }
        let (f, c) = match top.constant_value() {
            Some(c) => (rest.scale_const(&c.inv()?), c),
            None => (rest, GaussianRational::one()),
        };
        let j = self.register_factor(f);
        let mut den = vec![0; j + 1];
        den[j] = 1;
        Ok(ZFrac {
            num: num.scale_const(&c.inv()?),
            den,
        })
    }

    pub fn pow(&mut self, a: &ZFrac, n: i64) -> Result<ZFrac> {
        let base = if n < 0 { self.recip(a)? } else { a.clone() };
        let mut acc = self.constant(MultiPoly::one(&self.vars));
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// ∂/∂v of a fraction.
    pub fn derivative(&mut self, a: &ZFrac, v: &str) -> Result<ZFrac> {
        let k = self.var_index(v)?;
        Ok(self.derivative_idx(a, k))
    }

    fn derivative_idx(&mut self, a: &ZFrac, k: usize) -> ZFrac {
        let m = self.dmul[k].clone();
        if m.is_zero() || a.is_zero() {
            return ZFrac {
                num: LaurentPoly::zero(&self.vars),
                den: Vec::new(),
            };
        }
        let live: Vec<usize> = (0..a.den.len()).filter(|j| a.den[*j] > 0).collect();
        let mut t1 = a.num.euler_derivative();
        for j in &live {
            t1 = &t1 * &self.factors[*j];
        }
        let mut t2 = LaurentPoly::zero(&self.vars);
        for j in &live {
            let mut p =
                self.dfactors[*j].scale_const(&GaussianRational::from_int(a.den[*j] as i64));
            for l in &live {
                if l != j {
                    p = &p * &self.factors[*l];
                }
            }
            t2 = &t2 + &p;
        }
        let num = (&t1 - &(&a.num * &t2)).scale(&m);
        let mut den = a.den.clone();
        for j in &live {
            den[*j] += 1;
        }
        if num.is_zero() {
            return ZFrac {
                num,
                den: Vec::new(),
            };
        }
        ZFrac { num, den }
    }

    fn atom(&mut self, f: Func, arg: &Expr) -> Result<ZFrac> {
        let phase = Phase {
            indep: self.indep.clone(),
            coeffs: self
                .dmul
                .iter()
                .map(|c| expr_from_poly(&c.scale(&self.scale.inv().unwrap())))
                .collect(),
        };
        let f_polys: Vec<MultiPoly> = self
            .dmul
            .iter()
            .map(|c| c.scale(&self.scale.inv().unwrap()))
            .collect();
        let mut shape = Self::shape(arg, &phase, &f_polys, &self.vars)?;
        if f.is_trigonometric() {
            shape.value = &shape.value * &GaussianRational::i();
        }
        if shape.offset != self.offset {
            return Err(Error::IncommensurateFrequency(
                "phase offset mismatch".into(),
            ));
        }
        let n = (&shape.value / &self.scale).re().to_integer();
        let n: i32 = n
            .try_into()
            .map_err(|_| Error::IncommensurateFrequency("frequency ratio too large".into()))?;
        let one = GaussianRational::one();
        let half = GaussianRational::ratio(1, 2);
        let i = GaussianRational::i();
        let v = |e: i32| LaurentPoly::zeta_pow(&self.vars, e);
        let lin = |c1: GaussianRational, e1: i32, c0: GaussianRational, e0: i32| {
            &v(e1).scale_const(&c1) + &v(e0).scale_const(&c0)
        };
        let quot = |me: &mut Self, num: LaurentPoly, den: LaurentPoly| -> Result<ZFrac> {
            let d = me.recip(&ZFrac {
                num: den,
                den: Vec::new(),
            })?;
            let nf = me.laurent(num);
            Ok(me.mul(&nf, &d))
        };
        Ok(match f {
            Func::Exp => self.laurent(v(n)),
            Func::Sinh => self.laurent(lin(half.clone(), n, -&half, -n)),
            Func::Cosh => self.laurent(lin(half.clone(), n, half.clone(), -n)),
            Func::Tanh => quot(
                self,
                lin(one.clone(), 2 * n, -&one, 0),
                lin(one.clone(), 2 * n, one.clone(), 0),
            )?,
            Func::Coth => quot(
                self,
                lin(one.clone(), 2 * n, one.clone(), 0),
                lin(one.clone(), 2 * n, -&one, 0),
            )?,
            // sin z = (e^{iz} - e^{-iz})/(2i)
            Func::Sin => {
                let c = -&(&half * &i);
                self.laurent(lin(c.clone(), n, -&c, -n))
            }
            Func::Cos => self.laurent(lin(half.clone(), n, half.clone(), -n)),
            Func::Tan => quot(
                self,
                lin(-&i, 2 * n, i.clone(), 0),
                lin(one.clone(), 2 * n, one.clone(), 0),
            )?,
            Func::Cot => quot(
                self,
                lin(i.clone(), 2 * n, i.clone(), 0),
                lin(one.clone(), 2 * n, -&one, 0),
            )?,
            Func::Log => unreachable!("rejected at construction"),
        })
    }

    /// Rewrite a canonical expression. Derivative atoms of functions named in
    /// `bindings` are replaced by the corresponding derivatives of the bound
    /// fraction; any other derivative atom or bare independent variable is an
    /// error.
    pub fn to_frac(&mut self, e: &Expr, bindings: &BTreeMap<String, ZFrac>) -> Result<ZFrac> {
        let mut cache: HashMap<Expr, ZFrac> = HashMap::new();
        let mut dcache: BTreeMap<Derivative, ZFrac> = BTreeMap::new();
        self.frac_rec(e, bindings, &mut cache, &mut dcache)
    }

    fn frac_rec(
        &mut self,
        e: &Expr,
        bindings: &BTreeMap<String, ZFrac>,
        cache: &mut HashMap<Expr, ZFrac>,
        dcache: &mut BTreeMap<Derivative, ZFrac>,
    ) -> Result<ZFrac> {
        let c = Canon::from_expr(e);
        let mut acc = ZFrac {
            num: LaurentPoly::zero(&self.vars),
            den: Vec::new(),
        };
        for (factors, coef) in &c.terms {
            let mut t = self.laurent(LaurentPoly::constant(MultiPoly::constant(
                &self.vars,
                coef.clone(),
            )));
            for (a, n) in factors {
                let af = match cache.get(a) {
                    Some(f) => f.clone(),
                    None => {
                        let f = self.atom_frac(a, bindings, cache, dcache)?;
                        cache.insert(a.clone(), f.clone());
                        f
                    }
                };
                let p = self.pow(&af, *n)?;
                t = self.mul(&t, &p);
            }
            acc = self.add(&acc, &t);
        }
        Ok(acc)
    }

    fn atom_frac(
        &mut self,
        a: &Expr,
        bindings: &BTreeMap<String, ZFrac>,
        cache: &mut HashMap<Expr, ZFrac>,
        dcache: &mut BTreeMap<Derivative, ZFrac>,
    ) -> Result<ZFrac> {
        match a {
            Expr::Sym(s) => {
                if self.indep.contains(s) {
                    return Err(Error::Normalization(format!(
                        "{s} occurs outside the phase"
                    )));
                }
                let p = MultiPoly::var(&self.vars, s)?;
                Ok(self.constant(p))
            }
            Expr::Fun(d) => {
                if let Some(f) = dcache.get(d) {
                    return Ok(f.clone());
                }
                let base = bindings
                    .get(&d.name)
                    .ok_or_else(|| Error::UnknownVariable(d.name.clone()))?
                    .clone();
                // build up through lower derivatives so they are shared
                let mut cur = base;
                let mut partial = Derivative {
                    name: d.name.clone(),
                    args: d.args.clone(),
                    orders: vec![0; d.args.len()],
                };
                for (i, (arg, o)) in d.args.iter().zip(&d.orders).enumerate() {
                    let k = self.var_index(arg)?;
                    for _ in 0..*o {
                        partial.orders[i] += 1;
                        cur = match dcache.get(&partial) {
                            Some(f) => f.clone(),
                            None => {
                                let f = self.derivative_idx(&cur, k);
                                dcache.insert(partial.clone(), f.clone());
                                f
                            }
                        };
                    }
                }
                Ok(cur)
            }
            Expr::Add(_) => self.frac_rec(a, bindings, cache, dcache),
            Expr::Apply(f, arg) => self.atom(*f, arg),
            _ => unreachable!("not an atom"),
        }
    }

    /// Expand the factored denominator and normalize.
    pub fn to_rational_form(&mut self, a: &ZFrac) -> RationalForm {
        let mut den = LaurentPoly::constant(MultiPoly::one(&self.vars));
        for (j, e) in a.den.iter().enumerate() {
            if *e > 0 {
                den = &den * &self.factor_pow(j, *e);
            }
        }
        let mut num = a.num.clone();
        let lo = num.min_exp().unwrap_or(0).min(0);
        num = num.shift(-lo);
        den = den.shift(-lo);
        // strip a common power of ζ
        let common = num.min_exp().unwrap_or(0).min(den.min_exp().unwrap_or(0));
        if common > 0 && !num.is_zero() {
            num = num.shift(-common);
            den = den.shift(-common);
        }
        if let Some(c) = den.coeff(den.max_exp().unwrap()).constant_value() {
            let inv = c.inv().expect("nonzero");
            num = num.scale_const(&inv);
            den = den.scale_const(&inv);
        }
        RationalForm {
            numerator: num,
            denominator: den,
            scale: self.scale.clone(),
            offset: self.offset.clone(),
        }
    }
}

/// Normal form of `e` in ζ = exp(s·(frequency·var + δ₀)).
pub fn exponential_normal_form(e: &Expr, var: &str, frequency: &Expr) -> Result<RationalForm> {
    normal_form(e, &Phase::single(var, frequency))
}

/// Normal form of `e` for a general linear phase.
pub fn normal_form(e: &Expr, phase: &Phase) -> Result<RationalForm> {
    let mut eng = ZetaEngine::new(phase, &[e], &[])?;
    let f = eng.to_frac(e, &BTreeMap::new())?;
    Ok(eng.to_rational_form(&f))
}

/// Coefficients of the powers of ζ in the numerator, highest first.
pub fn zeta_coefficients(rf: &RationalForm) -> Vec<(i32, MultiPoly)> {
    rf.numerator
        .coeffs()
        .rev()
        .map(|(e, c)| (*e, c.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Expr {
        s.parse().unwrap()
    }

    fn lp(vars: &VarSet, terms: &[(i32, i64)]) -> LaurentPoly {
        let t: Vec<(i32, GaussianRational)> =
            terms.iter().map(|(e, c)| (*e, (*c).into())).collect();
        LaurentPoly::from_consts(vars, &t)
    }

    #[test]
    fn tanh_and_cosh() {
        let rf = exponential_normal_form(&e("tanh(mu*xi)"), "xi", &e("mu")).unwrap();
        let v = rf.numerator.vars().clone();
        assert_eq!(rf.numerator, lp(&v, &[(2, 1), (0, -1)]));
        assert_eq!(rf.denominator, lp(&v, &[(2, 1), (0, 1)]));

        let rf = exponential_normal_form(&e("cosh(mu*xi)"), "xi", &e("mu")).unwrap();
        let v = rf.numerator.vars().clone();
        let want = RationalForm {
            numerator: lp(&v, &[(2, 1), (0, 1)]),
            denominator: lp(&v, &[(1, 2)]),
            scale: GaussianRational::one(),
            offset: MultiPoly::zero(&v),
        };
        assert!(rf.equivalent(&want));
    }

    #[test]
    fn classical_identities_vanish() {
        for s in [
            "cosh(x)^2 - sinh(x)^2 - 1",
            "sin(2*x)^2 + cos(2*x)^2 - 1",
            "tanh(x)*coth(x) - 1",
            "tan(x)*cot(x) - 1",
            "sinh(2*x) - 2*sinh(x)*cosh(x)",
            "1 - tanh(x)^2 - 1/cosh(x)^2",
            "cos(x) - (exp(I*x) + exp(-I*x))/2",
        ] {
            let rf = exponential_normal_form(&e(s), "x", &Expr::one()).unwrap();
            assert!(rf.is_zero(), "{s} -> {rf}");
        }
    }

    #[test]
    fn trigonometric_atoms_use_imaginary_scale() {
        let rf = exponential_normal_form(&e("tan(mu*xi)"), "xi", &e("mu")).unwrap();
        assert_eq!(rf.scale, GaussianRational::i());
        let rf = exponential_normal_form(&e("sinh(x/2)"), "x", &Expr::one()).unwrap();
        assert_eq!(rf.scale, GaussianRational::ratio(1, 2));
    }

    #[test]
    fn incommensurate_or_mixed_atoms_are_rejected() {
        assert!(matches!(
            exponential_normal_form(&e("sinh(x) + sin(x)"), "x", &Expr::one()),
            Err(Error::IncommensurateFrequency(_))
        ));
        assert!(exponential_normal_form(&e("sinh(a*x) + sinh(b*x)"), "x", &e("a")).is_err());
        assert!(exponential_normal_form(&e("x*sinh(x)"), "x", &Expr::one()).is_err());
    }

    #[test]
    fn offsets_are_absorbed() {
        let rf = exponential_normal_form(&e("tanh(k*x + delta)"), "x", &e("k")).unwrap();
        assert!(!rf.offset.is_zero());
        assert!(
            exponential_normal_form(&e("tanh(k*x + delta) + tanh(k*x)"), "x", &e("k")).is_err()
        );
    }

    #[test]
    fn second_derivative_of_log_gives_squared_denominator() {
        // ∂xx log(1 + exp(kx)) = k² ζ/(1 + ζ)²
        let u = e("A*log(1 + exp(k*x - w*t))").diff("x", 2).unwrap() + e("B");
        let phase = Phase::new(&e("k*x - w*t"), &["x", "t"]).unwrap();
        let rf = normal_form(&u, &phase).unwrap();
        let v = rf.numerator.vars().clone();
        assert_eq!(rf.denominator, lp(&v, &[(2, 1), (1, 2), (0, 1)]));
        let p = |s: &str| crate::algebra::parse_poly(s, &v).unwrap();
        let num = &(&LaurentPoly::monomial(2, p("B"))
            + &LaurentPoly::monomial(1, p("A*k^2 + 2*B")))
            + &LaurentPoly::monomial(0, p("B"));
        assert_eq!(rf.numerator, num);
    }

    #[test]
    fn engine_derivative_matches_symbolic_derivative() {
        let u = e("p + a*tanh(mu*xi) + b*coth(mu*xi)^2");
        let phase = Phase::single("xi", &e("mu"));
        let du = u.diff("xi", 3).unwrap();
        let mut eng = ZetaEngine::new(&phase, &[&u, &du], &[]).unwrap();
        let f = eng.to_frac(&u, &BTreeMap::new()).unwrap();
        let mut g = f.clone();
        for _ in 0..3 {
            g = eng.derivative(&g, "xi").unwrap();
        }
        let h = eng.to_frac(&du, &BTreeMap::new()).unwrap();
        let diff = eng.sub(&g, &h);
        assert!(diff.is_zero());
    }
}
