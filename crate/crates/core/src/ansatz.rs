//! The three trial-solution families and coefficient matching.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianRational, MultiPoly, VarSet};
use crate::error::{Error, Result};
use crate::expr::{zeta_coefficients, Expr, Func, Phase, RationalForm, ZetaEngine};
use crate::model::{self, PdeCoefficients, TravelingWaveOde, LAMBDA, T, U, V, X, XI};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnsatzFamily {
    ColeHopf,
    TanhCoth,
    SinhCosh,
}

impl AnsatzFamily {
    pub fn name(&self) -> &'static str {
        match self {
            AnsatzFamily::ColeHopf => "cole-hopf",
            AnsatzFamily::TanhCoth => "tanh-coth",
            AnsatzFamily::SinhCosh => "sinh-cosh",
        }
    }
}

impl FromStr for AnsatzFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cole-hopf" => Ok(AnsatzFamily::ColeHopf),
            "tanh-coth" => Ok(AnsatzFamily::TanhCoth),
            "sinh-cosh" => Ok(AnsatzFamily::SinhCosh),
            _ => Err(Error::Parse(format!("unknown ansatz family {s:?}"))),
        }
    }
}

impl fmt::Display for AnsatzFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family plus optional fixed values for some of its unknowns.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzSpec {
    pub family: AnsatzFamily,
    pub fixed: BTreeMap<String, Expr>,
}

impl AnsatzSpec {
    pub fn new(family: AnsatzFamily) -> Self {
        Self {
            family,
            fixed: BTreeMap::new(),
        }
    }

    /// Fix one unknown to a value.
    pub fn with(mut self, name: &str, value: Expr) -> Self {
        self.fixed.insert(name.to_string(), value);
        self
    }

    /// Keep only the named amplitudes; every other amplitude is set to 0.
    pub fn restricted_to(mut self, keep: &[&str]) -> Self {
        for a in self.amplitudes() {
            if !keep.contains(&a) {
                self.fixed.insert(a.to_string(), Expr::zero());
            }
        }
        self
    }

    /// Every unknown of the family, in registry order.
    pub fn all_unknowns(&self) -> &'static [&'static str] {
        match self.family {
            AnsatzFamily::ColeHopf => &["A", "B", "omega"],
            AnsatzFamily::TanhCoth => &["a", "b", "c", "d", "p", "lambda"],
            AnsatzFamily::SinhCosh => &["c", "d", "kappa", "p", "lambda"],
        }
    }

    /// Unknowns still free after `fixed`.
    pub fn unknowns(&self) -> Vec<&'static str> {
        self.all_unknowns()
            .iter()
            .copied()
            .filter(|u| !self.fixed.contains_key(*u))
            .collect()
    }

    /// Unknowns whose simultaneous vanishing makes the ansatz constant.
    pub fn amplitudes(&self) -> Vec<&'static str> {
        match self.family {
            AnsatzFamily::ColeHopf => vec!["A"],
            AnsatzFamily::TanhCoth => vec!["a", "b", "c", "d"],
            AnsatzFamily::SinhCosh => vec!["kappa"],
        }
    }

    /// The frequency symbol normalized to 1 before solving.
    pub fn scale_symbol(&self) -> &'static str {
        match self.family {
            AnsatzFamily::ColeHopf => "k",
            _ => "mu",
        }
    }

    pub fn speed_symbol(&self) -> &'static str {
        match self.family {
            AnsatzFamily::ColeHopf => "omega",
            _ => LAMBDA,
        }
    }

    /// Scaling weights under u → s²u(sx, s⁷t).
    pub fn weights(&self) -> BTreeMap<String, i64> {
        let w: &[(&str, i64)] = match self.family {
            AnsatzFamily::ColeHopf => &[("A", 0), ("B", 2), ("omega", 7), ("k", 1)],
            AnsatzFamily::TanhCoth => &[
                ("a", 2),
                ("b", 2),
                ("c", 2),
                ("d", 2),
                ("p", 2),
                ("lambda", 6),
                ("mu", 1),
            ],
            AnsatzFamily::SinhCosh => &[
                ("c", 0),
                ("d", 0),
                ("kappa", 2),
                ("p", 2),
                ("lambda", 6),
                ("mu", 1),
            ],
        };
        w.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    /// The independent variables and phase θ of the family.
    pub fn phase(&self) -> Phase {
        match self.family {
            AnsatzFamily::ColeHopf => Phase {
                indep: vec![X.into(), T.into()],
                coeffs: vec![Expr::sym("k"), -Expr::sym("omega")],
            },
            _ => Phase::single(XI, &Expr::sym("mu")),
        }
    }

    /// True if every amplitude is fixed to zero.
    pub fn is_empty(&self) -> bool {
        self.amplitudes()
            .iter()
            .all(|a| self.fixed.get(*a).is_some_and(|v| v.is_zero()))
    }

    /// Registry for the derived system: free unknowns, then the scale.
    pub fn registry(&self) -> Vec<&'static str> {
        let mut r = self.unknowns();
        r.push(self.scale_symbol());
        r
    }

    /// Default nondegeneracy constraints over `vars`.
    pub fn constraints(&self, vars: &VarSet) -> Vec<Constraint> {
        let var = |n: &str| MultiPoly::var(&vars.with(n), n).expect("registry");
        let mut out = vec![Constraint::NonZero(var(self.scale_symbol()))];
        let amps: Vec<MultiPoly> = self
            .amplitudes()
            .into_iter()
            .filter(|a| !self.fixed.contains_key(*a))
            .map(var)
            .collect();
        match amps.len() {
            0 => {}
            1 => out.push(Constraint::NonZero(amps[0].clone())),
            _ => out.push(Constraint::NotAllZero(amps)),
        }
        // the rational form is also constant when both shape terms vanish
        if self.family == AnsatzFamily::SinhCosh {
            let shape: Vec<MultiPoly> = ["c", "d"]
                .into_iter()
                .filter(|n| !self.fixed.contains_key(*n))
                .map(var)
                .collect();
            if shape.len() == 2 {
                out.push(Constraint::NotAllZero(shape));
            } else if let Some(s) = shape.into_iter().next() {
                let other = if self.fixed.contains_key("c") {
                    "c"
                } else {
                    "d"
                };
                if self.fixed[other].is_zero() {
                    out.push(Constraint::NonZero(s));
                }
            }
        }
        out
    }

    /// The equation this family is matched against.
    pub fn equation(&self, coeffs: &PdeCoefficients) -> Equation {
        let pde = model::build_pde(coeffs);
        match self.family {
            AnsatzFamily::ColeHopf => Equation::Pde(pde),
            _ => Equation::Ode(model::reduce_to_traveling_ode(&pde)),
        }
    }

    /// Derive the constrained system for `coeffs`.
    pub fn derive(&self, coeffs: &PdeCoefficients) -> Result<PolySystem> {
        if self.is_empty() {
            return Err(Error::EmptyAnsatz);
        }
        let ansatz = build_ansatz(self)?;
        let mut sys = derive_system_in(
            &self.equation(coeffs),
            &ansatz,
            &self.phase(),
            &self.registry(),
        )?;
        sys.constraints = self.constraints(&sys.vars);
        Ok(sys)
    }
}

/// Either a PDE residual in u(x,t) or a traveling-wave ODE in v(ξ).
#[derive(Clone, Debug)]
pub enum Equation {
    Pde(Expr),
    Ode(TravelingWaveOde),
}

impl Equation {
    fn residual_and_unknown(&self) -> (&Expr, &'static str) {
        match self {
            Equation::Pde(e) => (e, U),
            Equation::Ode(o) => (&o.residual, V),
        }
    }
}

/// The trial solution of a family, with fixed unknowns substituted.
pub fn build_ansatz(spec: &AnsatzSpec) -> Result<Expr> {
    let s = Expr::sym;
    let raw = match spec.family {
        AnsatzFamily::ColeHopf => {
            let theta = Expr::sum([&s("k") * &s(X), -(&s("omega") * &s(T)), s("delta")]);
            let log = Expr::log(&Expr::one() + &Expr::exp(theta));
            &(&s("A") * &log.diff(X, 2)?) + &s("B")
        }
        AnsatzFamily::TanhCoth => {
            let arg = &s("mu") * &s(XI);
            let th = Expr::apply(Func::Tanh, arg.clone());
            let ct = Expr::apply(Func::Coth, arg);
            Expr::sum([
                s("p"),
                &s("a") * &th,
                &s("b") * &ct,
                &s("c") * &th.pow(2),
                &s("d") * &ct.pow(2),
            ])
        }
        AnsatzFamily::SinhCosh => {
            let arg = &s("mu") * &s(XI);
            let den = Expr::sum([
                Expr::one(),
                &s("c") * &Expr::apply(Func::Sinh, arg.clone()),
                &s("d") * &Expr::apply(Func::Cosh, arg),
            ]);
            &s("p") + &(&s("kappa") / &den)
        }
    };
    crate::expr::substitute(&raw, &spec.fixed)
}

/// Nondegeneracy requirement attached to a system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// The polynomial must not vanish.
    NonZero(MultiPoly),
    /// At least one of the polynomials must not vanish.
    NotAllZero(Vec<MultiPoly>),
}

impl Constraint {
    /// Whether a point satisfies the constraint (`None` if it cannot be
    /// decided because some variable is unbound).
    pub fn holds_at(&self, values: &BTreeMap<String, GaussianRational>) -> Option<bool> {
        let nz = |p: &MultiPoly| p.eval(values).ok().map(|v| !num_traits::Zero::is_zero(&v));
        match self {
            Constraint::NonZero(p) => nz(p),
            Constraint::NotAllZero(ps) => {
                let mut undecided = false;
                for p in ps {
                    match nz(p) {
                        Some(true) => return Some(true),
                        None => undecided = true,
                        Some(false) => {}
                    }
                }
                if undecided {
                    None
                } else {
                    Some(false)
                }
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::NonZero(p) => write!(f, "{p} != 0"),
            Constraint::NotAllZero(ps) => {
                let s: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "not all zero: {}", s.join(", "))
            }
        }
    }
}

/// Polynomial equations (each = 0) with nondegeneracy constraints.
#[derive(Clone, Debug)]
pub struct PolySystem {
    pub vars: VarSet,
    pub equations: Vec<MultiPoly>,
    /// ζ-power each equation was collected from (when known).
    pub powers: Vec<Option<i32>>,
    pub constraints: Vec<Constraint>,
}

/// Canonical representative of `p` up to units of ℚ(i) and positive
/// rationals: integer-primitive, then the lexicographically least printed
/// form among ±p, ±i·p.
pub fn unit_representative(p: &MultiPoly) -> MultiPoly {
    let q = p.primitive();
    let i = GaussianRational::i();
    let mut cands = vec![q.clone(), -&q];
    if !q.is_real() {
        let iq = q.scale(&i);
        cands.push(-&iq);
        cands.push(iq);
    }
    cands
        .into_iter()
        .map(|c| (c.to_string(), c))
        .min_by(|a, b| a.0.cmp(&b.0))
        .unwrap()
        .1
}

impl PolySystem {
    pub fn new(vars: &VarSet) -> Self {
        Self {
            vars: vars.clone(),
            equations: Vec::new(),
            powers: Vec::new(),
            constraints: Vec::new(),
        }
    }

    /// Build from equations, deduplicating up to unit scaling and dropping
    /// zeros.
    pub fn from_equations(vars: &VarSet, eqs: impl IntoIterator<Item = MultiPoly>) -> Self {
        let mut s = Self::new(vars);
        for e in eqs {
            s.push(e, None);
        }
        s
    }

    /// Add an equation unless it is zero or a unit multiple of one present.
    pub fn push(&mut self, eq: MultiPoly, power: Option<i32>) -> bool {
        if eq.is_zero() {
            return false;
        }
        let vars = self.vars.union(eq.vars());
        if vars != self.vars {
            self.vars = vars.clone();
            for e in &mut self.equations {
                *e = e.with_vars(&vars).expect("superset");
            }
        }
        let rep = unit_representative(&eq.with_vars(&self.vars).expect("superset"));
        let key = rep.monic();
        if self.equations.iter().any(|e| e.monic() == key) {
            return false;
        }
        self.equations.push(rep);
        self.powers.push(power);
        true
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Drop registry names used by no equation, keeping the order of the rest.
    pub fn compact(&self) -> PolySystem {
        let mut used: Vec<String> = Vec::new();
        for e in &self.equations {
            for v in e.used_vars() {
                if !used.contains(&v) {
                    used.push(v);
                }
            }
        }
        let names: Vec<&String> = self
            .vars
            .names()
            .iter()
            .filter(|n| used.contains(n))
            .collect();
        let vars = VarSet::new(&names);
        PolySystem {
            equations: self
                .equations
                .iter()
                .map(|e| e.with_vars(&vars).expect("used"))
                .collect(),
            powers: self.powers.clone(),
            constraints: Vec::new(),
            vars,
        }
    }

    /// Substitute a constant for a variable in every equation and constraint.
    pub fn specialize(&self, name: &str, value: &GaussianRational) -> PolySystem {
        let mut out = PolySystem::new(&self.vars);
        for (e, pw) in self.equations.iter().zip(&self.powers) {
            out.push(e.specialize(name, value), *pw);
        }
        out.constraints = self
            .constraints
            .iter()
            .filter_map(|c| match c {
                Constraint::NonZero(p) => {
                    let q = p.specialize(name, value);
                    (!q.is_constant()).then_some(Constraint::NonZero(q))
                }
                Constraint::NotAllZero(ps) => {
                    let qs: Vec<MultiPoly> = ps.iter().map(|p| p.specialize(name, value)).collect();
                    if qs.iter().any(|q| q.is_constant() && !q.is_zero()) {
                        None
                    } else {
                        Some(Constraint::NotAllZero(
                            qs.into_iter().filter(|q| !q.is_zero()).collect(),
                        ))
                    }
                }
            })
            .collect();
        out
    }

    /// Fail unless every equation is weighted-homogeneous.
    pub fn check_homogeneous(&self, weights: &BTreeMap<String, i64>) -> Result<()> {
        for e in &self.equations {
            if e.weighted_degrees(weights).len() > 1 {
                return Err(Error::NotHomogeneous(e.to_string()));
            }
        }
        Ok(())
    }

    /// Equations as unit-normalized strings, sorted: a comparison key for
    /// systems that is insensitive to order and scaling.
    pub fn normalized_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .equations
            .iter()
            .map(|e| unit_representative(&e.compact()).to_string())
            .collect();
        v.sort();
        v
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, pw)) in self.equations.iter().zip(&self.powers).enumerate() {
            match pw {
                Some(p) => writeln!(f, "eq{:02} [zeta^{p}]: {e} = 0", i + 1)?,
                None => writeln!(f, "eq{:02}: {e} = 0", i + 1)?,
            }
        }
        for c in &self.constraints {
            writeln!(f, "require: {c}")?;
        }
        Ok(())
    }
}

/// One equation per ζ-power of the numerator, deduplicated.
pub fn laurent_collect(r: &RationalForm) -> PolySystem {
    let mut s = PolySystem::new(r.numerator.vars());
    for (p, c) in zeta_coefficients(r) {
        s.push(c, Some(p));
    }
    s
}

/// Substitute `ansatz` for the unknown function, normalize in ζ and collect.
pub fn derive_system(equation: &Equation, ansatz: &Expr, phase: &Phase) -> Result<PolySystem> {
    derive_system_in(equation, ansatz, phase, &[])
}

fn derive_system_in(
    equation: &Equation,
    ansatz: &Expr,
    phase: &Phase,
    registry: &[&str],
) -> Result<PolySystem> {
    if ansatz.is_zero() {
        return Err(Error::EmptyAnsatz);
    }
    let (residual, unknown) = equation.residual_and_unknown();
    let mut eng = ZetaEngine::new(phase, &[ansatz, residual], registry)?;
    let a = eng.to_frac(ansatz, &BTreeMap::new())?;
    let mut b = BTreeMap::new();
    b.insert(unknown.to_string(), a);
    let r = eng.to_frac(residual, &b)?;
    let rf = eng.to_rational_form(&r);
    Ok(laurent_collect(&rf).compact())
}

/// Convenience: the constant 1 as a polynomial over `vars`.
pub fn one(vars: &VarSet) -> MultiPoly {
    MultiPoly::constant(vars, GaussianRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn kk7() -> PdeCoefficients {
        PdeCoefficients::kk7()
    }

    #[test]
    fn cole_hopf_system_has_the_four_equations() {
        let spec = AnsatzSpec::new(AnsatzFamily::ColeHopf);
        let sys = spec.derive(&kk7()).unwrap();
        assert_eq!(sys.len(), 4, "{sys}");
        let first = parse_poly(
            "-A k^9-42 A B k^7-504 A B^2 k^5-2016 A B^3 k^3+A omega k^2",
            &sys.vars,
        )
        .unwrap();
        assert!(
            sys.equations.iter().any(|e| e.monic() == first.monic()),
            "{sys}"
        );
        let w = spec.weights();
        sys.check_homogeneous(&w).unwrap();
    }

    #[test]
    fn constant_ansatz_gives_empty_system() {
        let ode = AnsatzSpec::new(AnsatzFamily::TanhCoth).equation(&kk7());
        let sys =
            derive_system(&ode, &Expr::sym("p"), &Phase::single(XI, &Expr::sym("mu"))).unwrap();
        assert!(sys.is_empty());
    }

    #[test]
    fn restricted_tanh_coth_admits_the_coth_square_solution() {
        let spec = AnsatzSpec::new(AnsatzFamily::TanhCoth).restricted_to(&["d"]);
        let sys = spec.derive(&kk7()).unwrap();
        let v = &sys.vars;
        let vals: BTreeMap<String, GaussianRational> = [
            ("mu", GaussianRational::from_int(1)),
            ("d", GaussianRational::ratio(-1, 2)),
            ("p", GaussianRational::ratio(1, 3)),
            ("lambda", GaussianRational::ratio(4, 3)),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        for e in &sys.equations {
            assert!(num_traits::Zero::is_zero(&e.eval(&vals).unwrap()), "{e}");
        }
        assert!(v.contains("lambda"));
        assert!(spec.weights().contains_key("lambda"));
    }

    #[test]
    fn full_families_are_homogeneous() {
        for fam in [AnsatzFamily::TanhCoth, AnsatzFamily::SinhCosh] {
            let spec = AnsatzSpec::new(fam);
            let sys = spec.derive(&kk7()).unwrap();
            sys.check_homogeneous(&spec.weights()).unwrap();
            assert!(sys.len() > 5);
        }
    }

    #[test]
    fn dedup_collapses_negatives() {
        let v = VarSet::new(&["x", "y"]);
        let p = parse_poly("2*x - 4*y", &v).unwrap();
        let s = PolySystem::from_equations(&v, [p.clone(), -&p, p.scale(&GaussianRational::i())]);
        assert_eq!(s.len(), 1);
        assert_eq!(s.equations[0].to_string(), "-x + 2*y");
    }

    #[test]
    fn empty_ansatz_is_rejected() {
        let spec = AnsatzSpec::new(AnsatzFamily::TanhCoth).restricted_to(&[]);
        assert!(matches!(spec.derive(&kk7()), Err(Error::EmptyAnsatz)));
    }
}
