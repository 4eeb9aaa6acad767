//! Symbolic expressions in x, t, ξ with exponential, hyperbolic and
//! trigonometric atoms.
//!
//! Every constructor returns the canonical form: an expanded sum of
//! constant-folded products of atom powers, with atoms and terms in a fixed
//! total order. Structural equality of canonical forms is therefore a sound
//! (but not complete) zero test; the complete test for the atom classes used
//! here goes through [`zeta::exponential_normal_form`].

mod canon;
mod convert;
mod diff;
mod parse;
pub mod zeta;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::GaussianRational;

pub use convert::{expr_from_poly, poly_from_expr};
pub use diff::{differentiate, replace_derivatives, substitute};
pub use zeta::{
    exponential_normal_form, normal_form, zeta_coefficients, Phase, RationalForm, ZFrac, ZetaEngine,
};

use canon::Canon;

/// Elementary functions that may wrap a (linear) argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Exp,
    Log,
    Sinh,
    Cosh,
    Tanh,
    Coth,
    Sin,
    Cos,
    Tan,
    Cot,
}

impl Func {
    pub fn name(&self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Coth => "coth",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Cot => "cot",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "coth" => Func::Coth,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "cot" => Func::Cot,
            _ => return None,
        })
    }

    pub fn is_hyperbolic(&self) -> bool {
        matches!(
            self,
            Func::Exp | Func::Sinh | Func::Cosh | Func::Tanh | Func::Coth
        )
    }

    pub fn is_trigonometric(&self) -> bool {
        matches!(self, Func::Sin | Func::Cos | Func::Tan | Func::Cot)
    }
}

/// A derivative of an unknown function, e.g. `u_{xxt}` is
/// `Derivative { name: "u", args: [x, t], orders: [2, 1] }`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Derivative {
    pub name: String,
    pub args: Vec<String>,
    pub orders: Vec<u32>,
}

impl Derivative {
    pub fn new(name: &str, args: &[&str], orders: &[u32]) -> Self {
        assert_eq!(args.len(), orders.len());
        Self {
            name: name.to_string(),
            args: args.iter().map(|s| s.to_string()).collect(),
            orders: orders.to_vec(),
        }
    }

    pub fn order_in(&self, var: &str) -> u32 {
        self.args
            .iter()
            .position(|a| a == var)
            .map_or(0, |i| self.orders[i])
    }

    pub fn total_order(&self) -> u32 {
        self.orders.iter().sum()
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Num(GaussianRational),
    Sym(String),
    Fun(Derivative),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, i64),
    Apply(Func, Box<Expr>),
}

impl Expr {
    pub fn num(c: GaussianRational) -> Expr {
        Expr::Num(c)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Num(GaussianRational::from_int(n))
    }

    pub fn rat(n: i64, d: i64) -> Expr {
        Expr::Num(GaussianRational::ratio(n, d))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn imag() -> Expr {
        Expr::Num(GaussianRational::i())
    }

    pub fn sym(name: &str) -> Expr {
        Expr::Sym(name.to_string())
    }

    pub fn fun(name: &str, args: &[&str], orders: &[u32]) -> Expr {
        Expr::Fun(Derivative::new(name, args, orders))
    }

    pub fn apply(f: Func, arg: Expr) -> Expr {
        Canon::atom_apply(f, arg).into_expr()
    }

    pub fn exp(arg: Expr) -> Expr {
        Expr::apply(Func::Exp, arg)
    }

    pub fn log(arg: Expr) -> Expr {
        Expr::apply(Func::Log, arg)
    }

    pub fn sum<I: IntoIterator<Item = Expr>>(items: I) -> Expr {
        let mut acc = Canon::zero();
        for e in items {
            acc = acc.add(&Canon::from_expr(&e));
        }
        acc.into_expr()
    }

    pub fn product<I: IntoIterator<Item = Expr>>(items: I) -> Expr {
        let mut acc = Canon::one();
        for e in items {
            acc = acc.mul(&Canon::from_expr(&e));
        }
        acc.into_expr()
    }

    /// Integer power. Panics when inverting the zero expression.
    pub fn pow(&self, n: i64) -> Expr {
        Canon::from_expr(self).pow(n).into_expr()
    }

    pub fn recip(&self) -> Expr {
        self.pow(-1)
    }

    /// Re-canonicalize an arbitrary (possibly hand-built) tree.
    pub fn canonical(&self) -> Expr {
        Canon::from_raw(self).into_expr()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Num(c) if c.is_zero())
    }

    pub fn as_num(&self) -> Option<&GaussianRational> {
        match self {
            Expr::Num(c) => Some(c),
            _ => None,
        }
    }

    /// True if the symbol occurs anywhere (including inside atoms and as a
    /// derivative argument).
    pub fn depends_on(&self, var: &str) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Sym(s) => s == var,
            Expr::Fun(d) => d.args.iter().any(|a| a == var),
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().any(|x| x.depends_on(var)),
            Expr::Pow(b, _) => b.depends_on(var),
            Expr::Apply(_, a) => a.depends_on(var),
        }
    }

    /// Every symbol name, sorted.
    pub fn symbols(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Num(_) => {}
                Expr::Sym(s) => out.push(s.clone()),
                Expr::Fun(d) => out.extend(d.args.iter().cloned()),
                Expr::Add(xs) | Expr::Mul(xs) => xs.iter().for_each(|x| walk(x, out)),
                Expr::Pow(b, _) => walk(b, out),
                Expr::Apply(_, a) => walk(a, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// Every function atom `f(arg)` occurring in the tree.
    pub fn atoms(&self) -> Vec<(Func, Expr)> {
        fn walk(e: &Expr, out: &mut Vec<(Func, Expr)>) {
            match e {
                Expr::Add(xs) | Expr::Mul(xs) => xs.iter().for_each(|x| walk(x, out)),
                Expr::Pow(b, _) => walk(b, out),
                Expr::Apply(f, a) => {
                    out.push((*f, (**a).clone()));
                    walk(a, out);
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// Every unknown-function derivative atom.
    pub fn derivatives(&self) -> Vec<Derivative> {
        fn walk(e: &Expr, out: &mut Vec<Derivative>) {
            match e {
                Expr::Fun(d) => out.push(d.clone()),
                Expr::Add(xs) | Expr::Mul(xs) => xs.iter().for_each(|x| walk(x, out)),
                Expr::Pow(b, _) => walk(b, out),
                Expr::Apply(_, a) => walk(a, out),
                _ => {}
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// True if no explicit imaginary unit appears in any coefficient.
    pub fn is_manifestly_real(&self) -> bool {
        match self {
            Expr::Num(c) => c.is_real(),
            Expr::Sym(_) | Expr::Fun(_) => true,
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().all(|x| x.is_manifestly_real()),
            Expr::Pow(b, _) => b.is_manifestly_real(),
            Expr::Apply(_, a) => a.is_manifestly_real(),
        }
    }

    /// Terms of the canonical sum (a single term for non-sums).
    pub fn terms(&self) -> Vec<Expr> {
        match self {
            Expr::Add(xs) => xs.clone(),
            e if e.is_zero() => Vec::new(),
            e => vec![e.clone()],
        }
    }

    /// Split a linear form `Σ c_v·v + rest` over `vars` into per-variable
    /// coefficients and the variable-free remainder. Returns `None` when the
    /// expression is not linear in `vars`.
    pub fn linear_coefficients(&self, vars: &[&str]) -> Option<(BTreeMap<String, Expr>, Expr)> {
        let mut coeffs: BTreeMap<String, Vec<Expr>> = BTreeMap::new();
        let mut rest = Vec::new();
        for term in self.terms() {
            let hits: Vec<&&str> = vars.iter().filter(|v| term.depends_on(v)).collect();
            match hits.len() {
                0 => rest.push(term),
                1 => {
                    let v = *hits[0];
                    let c = diff::differentiate_once(&term, v).ok()?;
                    if c.depends_on(v) {
                        return None;
                    }
                    // term must be exactly c·v
                    if (&c * &Expr::sym(v)) != term {
                        return None;
                    }
                    coeffs.entry(v.to_string()).or_default().push(c);
                }
                _ => return None,
            }
        }
        Some((
            coeffs.into_iter().map(|(k, v)| (k, Expr::sum(v))).collect(),
            Expr::sum(rest),
        ))
    }

    /// Prefix serialization: `(+ a (* 2 b))`, rationals as `p/q`, `I` for √−1.
    pub fn to_prefix(&self) -> String {
        let mut s = String::new();
        write_prefix(self, &mut s);
        s
    }

    pub fn parse_prefix(s: &str) -> crate::Result<Expr> {
        parse::parse_prefix(s)
    }

    /// Readable infix rendering.
    pub fn to_infix(&self) -> String {
        infix(self, 0)
    }
}

fn num_prefix(c: &GaussianRational, out: &mut String) {
    if c.is_real() {
        out.push_str(&c.to_string());
        return;
    }
    let re = GaussianRational::real(c.re().clone());
    let im = GaussianRational::real(c.im().clone());
    let imag = if im.is_one() {
        "I".to_string()
    } else {
        format!("(* {im} I)")
    };
    if re.is_zero() {
        out.push_str(&imag);
    } else {
        out.push_str(&format!("(+ {re} {imag})"));
    }
}

fn write_prefix(e: &Expr, out: &mut String) {
    match e {
        Expr::Num(c) => num_prefix(c, out),
        Expr::Sym(s) => out.push_str(s),
        Expr::Fun(d) => {
            if d.total_order() == 0 {
                out.push_str(&format!("({} {})", d.name, d.args.join(" ")));
            } else {
                out.push_str(&format!("(D {} ({})", d.name, d.args.join(" ")));
                for o in &d.orders {
                    out.push_str(&format!(" {o}"));
                }
                out.push(')');
            }
        }
        Expr::Add(xs) | Expr::Mul(xs) => {
            out.push_str(if matches!(e, Expr::Add(_)) {
                "(+"
            } else {
                "(*"
            });
            for x in xs {
                out.push(' ');
                write_prefix(x, out);
            }
            out.push(')');
        }
        Expr::Pow(b, n) => {
            out.push_str("(^ ");
            write_prefix(b, out);
            out.push_str(&format!(" {n})"));
        }
        Expr::Apply(f, a) => {
            out.push_str(&format!("({} ", f.name()));
            write_prefix(a, out);
            out.push(')');
        }
    }
}

// precedence: 0 sum, 1 product, 2 power/atom
fn infix(e: &Expr, ctx: u8) -> String {
    let s = match e {
        Expr::Num(c) => {
            let s = c.to_string();
            if ctx > 0 && (s.contains('/') || s.starts_with('-')) && !s.starts_with('(') {
                return format!("({s})");
            }
            s
        }
        Expr::Sym(s) => s.clone(),
        Expr::Fun(d) => {
            if d.total_order() == 0 {
                format!("{}({})", d.name, d.args.join(","))
            } else {
                let sub: String = d
                    .args
                    .iter()
                    .zip(&d.orders)
                    .map(|(a, o)| a.repeat(*o as usize))
                    .collect();
                format!("{}_{}", d.name, sub)
            }
        }
        Expr::Add(xs) => {
            let mut s = String::new();
            for (i, x) in xs.iter().enumerate() {
                let t = infix(x, 0);
                if i == 0 {
                    s.push_str(&t);
                } else if let Some(rest) = t.strip_prefix('-') {
                    s.push_str(" - ");
                    s.push_str(rest);
                } else {
                    s.push_str(" + ");
                    s.push_str(&t);
                }
            }
            if ctx > 0 {
                return format!("({s})");
            }
            s
        }
        Expr::Mul(xs) => {
            let mut parts = Vec::new();
            let mut sign = "";
            for x in xs {
                match x {
                    Expr::Num(c) if c.is_real() && (-c).is_one() => sign = "-",
                    Expr::Num(c) if c.is_real() && c.is_negative_leading() => {
                        sign = "-";
                        parts.push((-c).to_string());
                    }
                    _ => parts.push(infix(x, 1)),
                }
            }
            let s = format!("{sign}{}", parts.join("*"));
            if ctx > 1 {
                return format!("({s})");
            }
            s
        }
        Expr::Pow(b, n) => {
            if *n < 0 {
                format!("{}^({n})", infix(b, 2))
            } else {
                format!("{}^{n}", infix(b, 2))
            }
        }
        Expr::Apply(f, a) => format!("{}({})", f.name(), infix(a, 0)),
    };
    s
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_infix())
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_prefix())
    }
}

impl Expr {
    /// Evaluate in double-precision complex arithmetic. Every symbol must be
    /// bound; unknown-function atoms are rejected.
    pub fn eval_complex(
        &self,
        env: &BTreeMap<String, rustfft::num_complex::Complex64>,
    ) -> crate::Result<rustfft::num_complex::Complex64> {
        use rustfft::num_complex::Complex64 as C;
        Ok(match self {
            Expr::Num(c) => {
                let (re, im) = c.to_f64();
                C::new(re, im)
            }
            Expr::Sym(s) => *env
                .get(s)
                .ok_or_else(|| crate::Error::UnknownVariable(s.clone()))?,
            Expr::Fun(d) => return Err(crate::Error::UnknownVariable(d.name.clone())),
            Expr::Add(xs) => xs
                .iter()
                .map(|x| x.eval_complex(env))
                .sum::<crate::Result<C>>()?,
            Expr::Mul(xs) => xs
                .iter()
                .map(|x| x.eval_complex(env))
                .product::<crate::Result<C>>()?,
            Expr::Pow(b, n) => b.eval_complex(env)?.powi(*n as i32),
            Expr::Apply(f, a) => {
                let z = a.eval_complex(env)?;
                match f {
                    Func::Exp => z.exp(),
                    Func::Log => z.ln(),
                    Func::Sinh => z.sinh(),
                    Func::Cosh => z.cosh(),
                    Func::Tanh => z.tanh(),
                    Func::Coth => z.tanh().inv(),
                    Func::Sin => z.sin(),
                    Func::Cos => z.cos(),
                    Func::Tan => z.tan(),
                    Func::Cot => z.tan().inv(),
                }
            }
        })
    }
}

impl std::str::FromStr for Expr {
    type Err = crate::Error;
    /// Infix syntax, e.g. `mu^2/3 - mu^2/2*coth(mu*(x + 4*mu^6/3*t))^2`.
    fn from_str(s: &str) -> crate::Result<Expr> {
        parse::parse_infix(s)
    }
}

impl From<GaussianRational> for Expr {
    fn from(c: GaussianRational) -> Self {
        Expr::Num(c)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        Expr::int(n)
    }
}

impl<'a> Add<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        Canon::from_expr(self)
            .add(&Canon::from_expr(rhs))
            .into_expr()
    }
}

impl<'a> Sub<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        Canon::from_expr(self)
            .add(&Canon::from_expr(rhs).scale(&-GaussianRational::one()))
            .into_expr()
    }
}

impl<'a> Mul<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        Canon::from_expr(self)
            .mul(&Canon::from_expr(rhs))
            .into_expr()
    }
}

impl<'a> Div<&'a Expr> for &'a Expr {
    type Output = Expr;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Expr) -> Expr {
        self * &rhs.recip()
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Canon::from_expr(self)
            .scale(&-GaussianRational::one())
            .into_expr()
    }
}

macro_rules! forward_owned_expr {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr { (&self).$m(rhs) }
        }
    )*};
}
forward_owned_expr!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}
