//! Certification of closed-form solutions: exact residuals through the
//! ζ-engine, high-precision numeric residuals, and the μ → iμ continuation
//! to trigonometric partners.

mod catalog;
mod numeric;

use std::collections::BTreeMap;

use serde::Serialize;

pub use catalog::{
    catalog, entry, misprinted_u0, sample_parameters, ClosedFormSolution, Kind, Provenance,
};
pub use numeric::{numeric_residual, NumericOptions, NumericReport, GUARD_DIGITS, POLE_GUARD};

use crate::algebra::{LaurentPoly, MonomialOrder};
use crate::ansatz::{build_ansatz, unit_representative, AnsatzFamily, AnsatzSpec};
use crate::error::{Error, Result};
use crate::expr::{
    expr_from_poly, poly_from_expr, substitute, Expr, Func, Phase, RationalForm, ZetaEngine,
};
use crate::model::{self, PdeCoefficients, LAMBDA, T, U, X, XI};
use crate::solver::{groebner, SolutionVariety, DEFAULT_DEGREE_BOUND};

/// The ζ phase of an expression in x, t: the linear part of its first
/// function atom (x itself when there is none).
fn phase_of(e: &Expr) -> Result<Phase> {
    match e.atoms().first() {
        Some((_, arg)) => Phase::new(arg, &[X, T]),
        None => Ok(Phase {
            indep: vec![X.into(), T.into()],
            coeffs: vec![Expr::one(), Expr::zero()],
        }),
    }
}

/// Reduce every ζ-coefficient of the numerator modulo the relations.
fn reduce_numerator(rf: &mut RationalForm, relations: &[Expr]) -> Result<()> {
    if relations.is_empty() || rf.numerator.is_zero() {
        return Ok(());
    }
    let vars = rf.numerator.vars().clone();
    let rels = relations
        .iter()
        .map(|r| poly_from_expr(r, &vars))
        .collect::<Result<Vec<_>>>()?;
    let basis = groebner(&rels, MonomialOrder::GrevLex, DEFAULT_DEGREE_BOUND)?;
    let mut num = LaurentPoly::zero(&vars);
    for (e, c) in rf.numerator.coeffs() {
        let r = c.reduce(&basis, MonomialOrder::GrevLex);
        if !r.is_zero() {
            num = &num + &LaurentPoly::monomial(*e, r.with_vars(&vars)?);
        }
    }
    rf.numerator = num;
    Ok(())
}

/// The PDE residual of `sol` as a rational function of ζ, with the
/// numerator reduced modulo the solution's relations.
pub fn residual_form(sol: &ClosedFormSolution, coeffs: &PdeCoefficients) -> Result<RationalForm> {
    let pde = model::build_pde(coeffs);
    let phase = phase_of(&sol.expr)?;
    let mut eng = ZetaEngine::new(&phase, &[&sol.expr, &pde], &[])?;
    let u = eng.to_frac(&sol.expr, &BTreeMap::new())?;
    let mut b = BTreeMap::new();
    b.insert(U.to_string(), u);
    let r = eng.to_frac(&pde, &b)?;
    let mut rf = eng.to_rational_form(&r);
    reduce_numerator(&mut rf, &sol.relations)?;
    Ok(rf)
}

/// Rebuild N(ζ)/D(ζ) as an expression in x, t.
fn form_to_expr(rf: &RationalForm, phase: &Phase) -> Expr {
    if rf.is_zero() {
        return Expr::zero();
    }
    let theta = &phase.to_expr() + &expr_from_poly(&rf.offset);
    let zeta = |k: i32| Expr::exp(&Expr::Num(rf.scale.clone()) * &(&Expr::int(k as i64) * &theta));
    let side = |p: &LaurentPoly| Expr::sum(p.coeffs().map(|(k, c)| &expr_from_poly(c) * &zeta(*k)));
    &side(&rf.numerator) / &side(&rf.denominator)
}

/// The PDE residual of `sol`; the canonical zero when the solution is
/// exact.
pub fn symbolic_residual(sol: &ClosedFormSolution, coeffs: &PdeCoefficients) -> Result<Expr> {
    let rf = residual_form(sol, coeffs)?;
    Ok(form_to_expr(&rf, &phase_of(&sol.expr)?))
}

/// Whether `s1` and `s2` agree after applying `identification` to both.
pub fn equivalence_check(
    s1: &ClosedFormSolution,
    s2: &ClosedFormSolution,
    identification: &BTreeMap<String, Expr>,
) -> Result<bool> {
    let a = substitute(&s1.expr, identification)?;
    let b = substitute(&s2.expr, identification)?;
    let diff = &a - &b;
    if diff.is_zero() {
        return Ok(true);
    }
    let mut relations = Vec::new();
    for r in s1.relations.iter().chain(&s2.relations) {
        relations.push(substitute(r, identification)?);
    }
    let phase = phase_of(&diff)?;
    let mut eng = ZetaEngine::new(&phase, &[&diff], &[])?;
    let f = eng.to_frac(&diff, &BTreeMap::new())?;
    let mut rf = eng.to_rational_form(&f);
    reduce_numerator(&mut rf, &relations)?;
    Ok(rf.is_zero())
}

/// tanh(iz) = i tan z, coth(iz) = −i cot z, sinh(iz) = i sin z,
/// cosh(iz) = cos z, and the inverse rules for trigonometric atoms.
fn rotate_atoms(e: &Expr) -> Expr {
    match e {
        Expr::Add(xs) => Expr::sum(xs.iter().map(rotate_atoms)),
        Expr::Mul(xs) => Expr::product(xs.iter().map(rotate_atoms)),
        Expr::Pow(b, n) => rotate_atoms(b).pow(*n),
        Expr::Apply(f, arg) => {
            let z = &**arg * &(-Expr::imag());
            if arg.is_manifestly_real() || !z.is_manifestly_real() {
                return e.clone();
            }
            let i = Expr::imag();
            let (g, factor) = match f {
                Func::Tanh => (Func::Tan, i),
                Func::Coth => (Func::Cot, -i),
                Func::Sinh => (Func::Sin, i),
                Func::Cosh => (Func::Cos, Expr::one()),
                Func::Tan => (Func::Tanh, i),
                Func::Cot => (Func::Coth, -i),
                Func::Sin => (Func::Sinh, i),
                Func::Cos => (Func::Cosh, Expr::one()),
                Func::Exp | Func::Log => return e.clone(),
            };
            &factor * &Expr::apply(g, z)
        }
        _ => e.clone(),
    }
}

fn has_trig_denominator(e: &Expr) -> bool {
    match e {
        Expr::Add(xs) | Expr::Mul(xs) => xs.iter().any(has_trig_denominator),
        Expr::Pow(b, n) => {
            (*n < 0 && b.atoms().iter().any(|(f, _)| f.is_trigonometric()))
                || has_trig_denominator(b)
        }
        Expr::Apply(f, _) => matches!(f, Func::Tan | Func::Cot),
        _ => false,
    }
}

fn other_radical(r: &str) -> String {
    match r {
        "r" => "s".into(),
        "s" => "r".into(),
        _ => format!("{r}_c"),
    }
}

/// Substitute μ → iμ (or k → ik) and rewrite to a manifestly real form.
///
/// Radical symbols that end up multiplied by i are renamed: r with
/// r² = d² − 1 becomes −i·s with s² = 1 − d².
pub fn periodic_continue(sol: &ClosedFormSolution) -> Result<ClosedFormSolution> {
    let scale = Expr::sym(&sol.scale);
    let mut rot = BTreeMap::new();
    rot.insert(sol.scale.clone(), &Expr::imag() * &scale);
    let mut expr = rotate_atoms(&substitute(&sol.expr, &rot)?);
    let mut relations: Vec<Expr> = sol
        .relations
        .iter()
        .map(|r| substitute(r, &rot))
        .collect::<Result<_>>()?;
    let mut params: BTreeMap<String, Expr> = sol
        .params
        .iter()
        .map(|(k, v)| Ok((k.clone(), substitute(v, &rot)?)))
        .collect::<Result<_>>()?;
    // coefficients of odd atoms pick up ±i, squares flip sign
    let flips: &[(&str, Expr)] = match sol.family {
        AnsatzFamily::TanhCoth => &[
            ("a", Expr::imag()),
            ("b", -Expr::imag()),
            ("c", Expr::int(-1)),
            ("d", Expr::int(-1)),
        ],
        AnsatzFamily::SinhCosh => &[("c", Expr::imag())],
        AnsatzFamily::ColeHopf => &[],
    };
    for (k, f) in flips {
        if let Some(v) = params.get_mut(*k) {
            *v = &*v * f;
        }
    }
    let mut radicals = sol.radicals.clone();
    if !expr.is_manifestly_real() && !radicals.is_empty() {
        let mut ren = BTreeMap::new();
        for r in &mut radicals {
            let s = other_radical(r);
            ren.insert(r.clone(), &(-Expr::imag()) * &Expr::sym(&s));
            *r = s;
        }
        expr = substitute(&expr, &ren)?;
        for r in relations.iter_mut() {
            *r = substitute(r, &ren)?;
        }
        for v in params.values_mut() {
            *v = substitute(v, &ren)?;
        }
    }
    if !expr.is_manifestly_real() {
        return Err(Error::NotReal(expr.to_string()));
    }
    let periodic = expr.atoms().iter().any(|(f, _)| f.is_trigonometric());
    let kind = match (
        periodic,
        has_trig_denominator(&expr) || sol.kind.is_singular(),
    ) {
        (true, true) => Kind::SingularPeriodic,
        (true, false) => Kind::Periodic,
        (false, true) => Kind::SingularHyperbolic,
        (false, false) => Kind::Soliton,
    };
    Ok(ClosedFormSolution {
        id: sol
            .partner()
            .unwrap_or_else(|| format!("{}-continued", sol.id)),
        family: sol.family,
        expr,
        kind,
        provenance: sol.provenance,
        scale: sol.scale.clone(),
        params,
        speed: (sol.speed.0.clone(), substitute(&sol.speed.1, &rot)?),
        relations,
        radicals,
    })
}

fn normalized_relations(rs: &[Expr]) -> Result<Vec<String>> {
    let mut vars = crate::algebra::VarSet::empty();
    for r in rs {
        for s in r.symbols() {
            vars = vars.with(&s);
        }
    }
    let mut out = rs
        .iter()
        .map(|r| Ok(unit_representative(&poly_from_expr(r, &vars)?).to_string()))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Structural equality of two closed forms after canonicalization: the same
/// expression and the same relations up to units.
pub fn same_form(a: &ClosedFormSolution, b: &ClosedFormSolution) -> bool {
    a.expr.canonical() == b.expr.canonical()
        && normalized_relations(&a.relations).ok() == normalized_relations(&b.relations).ok()
}

/// Turn a solver variety into a closed form u(x, t): instantiate the ansatz
/// and, for traveling-wave families, set ξ = x + λt.
pub fn from_variety(
    spec: &AnsatzSpec,
    variety: &SolutionVariety,
    id: &str,
) -> Result<ClosedFormSolution> {
    let mut spec = spec.clone();
    let mut params = BTreeMap::new();
    for (k, v) in &variety.values {
        let e = expr_from_poly(v);
        params.insert(k.clone(), e.clone());
        spec = spec.with(k, e);
    }
    let u = build_ansatz(&spec)?;
    let speed_name = spec.speed_symbol().to_string();
    let speed = params
        .remove(&speed_name)
        .unwrap_or_else(|| Expr::sym(&speed_name));
    let expr = match spec.family {
        AnsatzFamily::ColeHopf => u,
        _ => {
            let xi = &Expr::sym(X) + &(&speed * &Expr::sym(T));
            let mut b = BTreeMap::new();
            b.insert(XI.to_string(), xi);
            b.insert(LAMBDA.to_string(), speed.clone());
            substitute(&u, &b)?
        }
    };
    let hyper_singular = expr.atoms().iter().any(|(f, _)| matches!(f, Func::Coth));
    Ok(ClosedFormSolution {
        id: id.to_string(),
        family: spec.family,
        expr,
        kind: if hyper_singular {
            Kind::SingularHyperbolic
        } else {
            Kind::Soliton
        },
        provenance: Provenance::Pipeline,
        scale: spec.scale_symbol().to_string(),
        params,
        speed: (speed_name, speed),
        relations: variety.relations.iter().map(expr_from_poly).collect(),
        radicals: Vec::new(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpeedRecord {
    pub symbol: String,
    pub value: String,
}

/// One catalog entry as exported to JSON; exact values are strings.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogRecord {
    pub id: String,
    pub family: AnsatzFamily,
    pub kind: Kind,
    pub provenance: Provenance,
    pub params: BTreeMap<String, String>,
    pub speed: SpeedRecord,
    pub relations: Vec<String>,
    pub expression: String,
    pub prefix: String,
}

impl From<&ClosedFormSolution> for CatalogRecord {
    fn from(s: &ClosedFormSolution) -> Self {
        CatalogRecord {
            id: s.id.clone(),
            family: s.family,
            kind: s.kind,
            provenance: s.provenance,
            params: s
                .params
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect(),
            speed: SpeedRecord {
                symbol: s.speed.0.clone(),
                value: s.speed.1.to_string(),
            },
            relations: s.relations.iter().map(|r| format!("{r} = 0")).collect(),
            expression: s.expr.to_string(),
            prefix: s.expr.to_prefix(),
        }
    }
}

/// The catalog as a pretty-printed JSON array.
pub fn catalog_json(entries: &[ClosedFormSolution]) -> String {
    let recs: Vec<CatalogRecord> = entries.iter().map(CatalogRecord::from).collect();
    serde_json::to_string_pretty(&recs).expect("catalog serializes")
}

/// Outcome of certifying one solution against an equation.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub id: String,
    pub exact: bool,
    pub max_residual: f64,
    /// numeric threshold 10^(6 − precision)
    pub tolerance: f64,
    pub samples: usize,
    pub rejected: usize,
}

impl Verdict {
    pub fn pass(&self) -> bool {
        self.exact && self.max_residual < self.tolerance
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}: symbolic {}, max|R| = {:.3e} (< {:.0e}), {} samples",
            if self.pass() { "PASS" } else { "FAIL" },
            self.id,
            if self.exact { "zero" } else { "nonzero" },
            self.max_residual,
            self.tolerance,
            self.samples
        )
    }
}

/// Symbolic residual plus the high-precision numeric check at the sample
/// parameters of `sample_parameters`.
pub fn certify(
    sol: &ClosedFormSolution,
    coeffs: &PdeCoefficients,
    opts: &NumericOptions,
) -> Result<Verdict> {
    let exact = symbolic_residual(sol, coeffs)?.is_zero();
    let mut params = BTreeMap::new();
    for (k, v) in sample_parameters(sol) {
        let n = v
            .as_num()
            .cloned()
            .ok_or_else(|| Error::InvalidConfig(format!("non-numeric sample for {k}")))?;
        params.insert(k, n);
    }
    let r = numeric_residual(sol, coeffs, &params, opts)?;
    Ok(Verdict {
        id: sol.id.clone(),
        exact,
        max_residual: r.max_residual,
        tolerance: 10f64.powi(6 - opts.precision as i32),
        samples: r.accepted,
        rejected: r.rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kk7() -> PdeCoefficients {
        PdeCoefficients::kk7()
    }

    fn bind(kv: &[(&str, &str)]) -> BTreeMap<String, Expr> {
        kv.iter()
            .map(|(k, v)| (k.to_string(), v.parse().unwrap()))
            .collect()
    }

    #[test]
    fn u9_and_constants_are_exact() {
        assert!(symbolic_residual(&entry("u9").unwrap(), &kk7())
            .unwrap()
            .is_zero());
        let mut c = entry("u0").unwrap();
        c.expr = "B".parse().unwrap();
        assert!(symbolic_residual(&c, &kk7()).unwrap().is_zero());
    }

    #[test]
    fn misprint_fails() {
        let r = symbolic_residual(&misprinted_u0(), &kk7()).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn radical_entry_is_exact_modulo_its_relation() {
        let u15 = entry("u15").unwrap();
        assert!(residual_form(&u15, &kk7()).unwrap().is_zero());
        let mut bare = u15.clone();
        bare.relations.clear();
        assert!(!residual_form(&bare, &kk7()).unwrap().is_zero());
    }

    #[test]
    fn continuation_pairs() {
        for (a, b) in [("u1", "u2"), ("u9", "u10"), ("u11", "u12"), ("u15", "u16")] {
            let c = periodic_continue(&entry(a).unwrap()).unwrap();
            let want = entry(b).unwrap();
            assert!(same_form(&c, &want), "{a}: {} vs {}", c.expr, want.expr);
            assert_eq!(c.speed, want.speed, "{a}");
            assert_eq!(c.params, want.params, "{a}");
            assert_eq!(c.kind, want.kind, "{a}");
        }
    }

    #[test]
    fn rotation_rule_in_isolation() {
        let e: Expr = "sinh(I*mu*x)".parse().unwrap();
        assert_eq!(rotate_atoms(&e), "I*sin(mu*x)".parse::<Expr>().unwrap());
    }

    #[test]
    fn cole_hopf_soliton_matches_u9() {
        let id = bind(&[("k", "mu"), ("delta", "0")]);
        assert!(equivalence_check(&entry("u0").unwrap(), &entry("u9").unwrap(), &id).unwrap());
        let none = BTreeMap::new();
        assert!(!equivalence_check(&entry("u1").unwrap(), &entry("u3").unwrap(), &none).unwrap());
        let u5 = entry("u5").unwrap();
        assert!(equivalence_check(&u5, &u5, &none).unwrap());
    }

    #[test]
    fn json_uses_exact_strings() {
        let j = catalog_json(&[entry("u9").unwrap()]);
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v[0]["id"], "u9");
        assert_eq!(v[0]["family"], "sinh-cosh");
        assert_eq!(v[0]["params"]["p"], "-1/24*mu^2");
        assert_eq!(v[0]["kind"], "soliton");
    }
}
