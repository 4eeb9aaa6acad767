//! Exact solution of polynomial systems over ℚ(i).
//!
//! The solver splits the variety into components by recursion: monomial
//! factors, linear eliminations, univariate roots in ℚ(i), and finally
//! Gröbner bases for whatever remains. Components that cannot be written
//! with rational values keep their defining lex basis as relations.

mod gcd;
mod groebner;
mod univariate;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{GaussianRational, Monomial, MonomialOrder, MultiPoly, VarSet};
use crate::ansatz::{Constraint, PolySystem};
use crate::error::{Error, Result};

pub use gcd::{gcd, squarefree};
pub use groebner::{groebner, in_ideal, DEFAULT_DEGREE_BOUND};
pub use univariate::{rational_roots, UniPoly};

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Maximum total degree of an S-pair before giving up.
    pub degree_bound: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            degree_bound: DEFAULT_DEGREE_BOUND,
        }
    }
}

/// One component of the solution set.
///
/// Variables are free, have an explicit polynomial `value` in the free ones,
/// or are bound by `relations` (a lex Gröbner basis over `vars`, whose order
/// lists bound variables before free ones).
#[derive(Clone, Debug)]
pub struct SolutionVariety {
    pub vars: VarSet,
    pub free: Vec<String>,
    pub values: BTreeMap<String, MultiPoly>,
    pub relations: Vec<MultiPoly>,
}

impl SolutionVariety {
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// Variables fixed only implicitly, through the relations.
    pub fn implicit(&self) -> Vec<String> {
        self.vars
            .names()
            .iter()
            .filter(|n| !self.free.contains(n) && !self.values.contains_key(*n))
            .cloned()
            .collect()
    }

    pub fn is_point(&self) -> bool {
        self.free.is_empty()
            && self.relations.is_empty()
            && self.values.values().all(|v| v.is_constant())
    }

    /// The coordinates of a zero-dimensional rational component.
    pub fn point(&self) -> Option<BTreeMap<String, GaussianRational>> {
        if !self.is_point() {
            return None;
        }
        Some(
            self.values
                .iter()
                .map(|(k, v)| (k.clone(), v.constant_value().unwrap()))
                .collect(),
        )
    }

    /// Whether a full assignment lies on this component.
    pub fn contains(&self, pt: &BTreeMap<String, GaussianRational>) -> bool {
        for (k, v) in &self.values {
            match (pt.get(k), v.eval(pt)) {
                (Some(x), Ok(y)) if *x == y => {}
                _ => return false,
            }
        }
        self.relations
            .iter()
            .all(|r| r.eval(pt).is_ok_and(|v| v.is_zero()))
    }

    /// Substitute constants for free variables.
    pub fn specialize(&self, assignment: &BTreeMap<String, GaussianRational>) -> SolutionVariety {
        let mut out = self.clone();
        for (k, c) in assignment {
            if !out.free.contains(k) {
                continue;
            }
            out.free.retain(|f| f != k);
            for v in out.values.values_mut() {
                *v = v.specialize(k, c);
            }
            out.relations = out
                .relations
                .iter()
                .map(|r| r.specialize(k, c))
                .filter(|r| !r.is_zero())
                .collect();
            out.values
                .insert(k.clone(), MultiPoly::constant(&out.vars, c.clone()));
        }
        out
    }

    fn same_as(&self, other: &SolutionVariety) -> bool {
        let mut a = self.free.clone();
        let mut b = other.free.clone();
        a.sort();
        b.sort();
        a == b
            && self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .all(|(k, v)| other.values.get(k) == Some(v))
            && self.relations.len() == other.relations.len()
            && self.relations.iter().all(|r| other.relations.contains(r))
    }
}

impl fmt::Display for SolutionVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for n in self.vars.names() {
            if let Some(v) = self.values.get(n) {
                parts.push(format!("{n} = {v}"));
            }
        }
        write!(f, "{{{}}}", parts.join(", "))?;
        if !self.free.is_empty() {
            write!(f, " free: {}", self.free.join(", "))?;
        }
        for r in &self.relations {
            write!(f, " where {r} = 0")?;
        }
        Ok(())
    }
}

/// Solve `sys` subject to its constraints.
pub fn solve_system(sys: &PolySystem, opts: &SolveOptions) -> Result<Vec<SolutionVariety>> {
    let vars = sys.vars.clone();
    let eqs: Vec<MultiPoly> = sys
        .equations
        .iter()
        .map(|e| e.with_vars(&vars))
        .collect::<Result<_>>()?;
    let constraints: Vec<Constraint> = sys
        .constraints
        .iter()
        .map(|c| match c {
            Constraint::NonZero(p) => p.with_vars(&vars.union(p.vars())).map(Constraint::NonZero),
            Constraint::NotAllZero(ps) => ps
                .iter()
                .map(|p| p.with_vars(&vars.union(p.vars())))
                .collect::<Result<Vec<_>>>()
                .map(Constraint::NotAllZero),
        })
        .collect::<Result<_>>()?;
    let mut s = Solver {
        vars,
        constraints,
        opts: *opts,
        out: Vec::new(),
    };
    s.branch(eqs, BTreeMap::new(), Vec::new())?;
    Ok(s.out)
}

/// Solve a weighted-homogeneous system by fixing `scale` = 1 and restoring
/// the scale through the weights afterwards.
pub fn solve_scaled(
    sys: &PolySystem,
    scale: &str,
    weights: &BTreeMap<String, i64>,
    opts: &SolveOptions,
) -> Result<Vec<SolutionVariety>> {
    sys.check_homogeneous(weights)?;
    let unit = sys.specialize(scale, &GaussianRational::from_int(1));
    // heavier variables first, so that lighter ones are left free and the
    // rescaled values stay polynomial in the scale
    let mut names: Vec<&String> = sys.vars.names().iter().filter(|n| *n != scale).collect();
    names.sort_by_key(|n| -weights.get(*n).copied().unwrap_or(0));
    let vars = VarSet::new(&names);
    let mut unit = PolySystem {
        vars: vars.clone(),
        ..unit
    };
    unit.equations = unit
        .equations
        .iter()
        .map(|e| e.with_vars(&vars))
        .collect::<Result<_>>()?;
    let comps = solve_system(&unit, opts)?;
    comps
        .iter()
        .map(|c| weight_rescale(c, scale, weights))
        .collect()
}

fn homogenize(
    p: &MultiPoly,
    scale: &str,
    weights: &BTreeMap<String, i64>,
    target: Option<i64>,
) -> Result<MultiPoly> {
    if p.is_zero() {
        return Ok(p.clone());
    }
    let vars = p.vars().with(scale);
    let p = p.with_vars(&vars)?;
    let si = vars.index_of(scale).unwrap();
    let w: Vec<i64> = vars
        .names()
        .iter()
        .map(|n| weights.get(n).copied().unwrap_or(0))
        .collect();
    let degs: Vec<i64> = p.terms().map(|(m, _)| m.weighted_degree(&w)).collect();
    let top = target.unwrap_or_else(|| *degs.iter().max().unwrap());
    let mut terms = Vec::new();
    for ((m, c), d) in p.terms().zip(degs) {
        let sw = weights.get(scale).copied().unwrap_or(1);
        let gap = top - d;
        if gap < 0 || gap % sw != 0 {
            return Err(Error::NotHomogeneous(p.to_string()));
        }
        let mut nm = *m;
        nm.set_exp(si, m.exp(si) + (gap / sw) as u16);
        terms.push((nm, c.clone()));
    }
    Ok(MultiPoly::from_terms(&vars, terms))
}

/// Map a component found at scale 1 back to general scale: every variable
/// of weight w picks up scale^w.
pub fn weight_rescale(
    v: &SolutionVariety,
    scale: &str,
    weights: &BTreeMap<String, i64>,
) -> Result<SolutionVariety> {
    let vars = v.vars.with(scale);
    let mut values = BTreeMap::new();
    let mut relations = Vec::new();
    for (k, p) in &v.values {
        if k == scale {
            continue;
        }
        let w = weights.get(k).copied().unwrap_or(0);
        let p = p.with_vars(&vars)?;
        match homogenize(&p, scale, weights, Some(w)) {
            Ok(h) => {
                values.insert(k.clone(), h);
            }
            // a value needing negative powers of the scale becomes the
            // relation scale^m·(k − value) = 0
            Err(Error::NotHomogeneous(_)) => {
                let rel = &MultiPoly::var(&vars, k)? - &p;
                relations.push(homogenize(&rel, scale, weights, None)?);
            }
            Err(e) => return Err(e),
        }
    }
    for r in &v.relations {
        relations.push(homogenize(&r.with_vars(&vars)?, scale, weights, None)?);
    }
    let mut free = vec![scale.to_string()];
    free.extend(v.free.iter().filter(|f| *f != scale).cloned());
    Ok(SolutionVariety {
        vars,
        free,
        values,
        relations,
    })
}

struct Solver {
    vars: VarSet,
    constraints: Vec<Constraint>,
    opts: SolveOptions,
    out: Vec<SolutionVariety>,
}

fn var_index(m: &Monomial, vars: &VarSet) -> Vec<usize> {
    (0..vars.len()).filter(|&i| m.exp(i) > 0).collect()
}

fn clean(eqs: Vec<MultiPoly>) -> Option<Vec<MultiPoly>> {
    let mut out: Vec<MultiPoly> = Vec::new();
    for e in eqs {
        if e.is_zero() {
            continue;
        }
        if e.is_constant() {
            return None;
        }
        let m = e.monic();
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Some(out)
}

/// Monomial dividing every term of `p`.
fn monomial_content(p: &MultiPoly) -> Monomial {
    let mut it = p.terms().map(|(m, _)| *m);
    let first = it.next().unwrap_or_else(Monomial::one);
    it.fold(first, |a, b| a.gcd(&b))
}

impl Solver {
    fn substituted(&self, p: &MultiPoly, values: &BTreeMap<String, MultiPoly>) -> MultiPoly {
        let mut q = p.with_vars(&self.vars).expect("registry");
        for (k, v) in values {
            if q.degree_in(k) > 0 {
                q = q.substitute(k, v);
            }
        }
        q
    }

    /// Constraint polynomials under the current assignment.
    fn live_constraints(&self, values: &BTreeMap<String, MultiPoly>) -> Option<Vec<Constraint>> {
        let mut out = Vec::new();
        for c in &self.constraints {
            match c {
                Constraint::NonZero(p) => {
                    let q = self.substituted(p, values);
                    if q.is_zero() {
                        return None;
                    }
                    if !q.is_constant() {
                        out.push(Constraint::NonZero(q));
                    }
                }
                Constraint::NotAllZero(ps) => {
                    let qs: Vec<MultiPoly> =
                        ps.iter().map(|p| self.substituted(p, values)).collect();
                    if qs.iter().all(|q| q.is_zero()) {
                        return None;
                    }
                    if !qs.iter().any(|q| q.is_constant() && !q.is_zero()) {
                        out.push(Constraint::NotAllZero(
                            qs.into_iter().filter(|q| !q.is_zero()).collect(),
                        ));
                    }
                }
            }
        }
        Some(out)
    }

    fn assign(
        eqs: &mut [MultiPoly],
        values: &mut BTreeMap<String, MultiPoly>,
        x: &str,
        val: MultiPoly,
    ) {
        for e in eqs.iter_mut() {
            if e.degree_in(x) > 0 {
                *e = e.substitute(x, &val);
            }
        }
        for v in values.values_mut() {
            if v.degree_in(x) > 0 {
                *v = v.substitute(x, &val);
            }
        }
        values.insert(x.to_string(), val);
    }

    fn unbound(&self, values: &BTreeMap<String, MultiPoly>) -> Vec<String> {
        self.vars
            .names()
            .iter()
            .filter(|n| !values.contains_key(*n))
            .cloned()
            .collect()
    }

    /// A variable occurring only as `c·x` with constant c in some equation,
    /// preferring the earliest registry slot.
    fn find_linear(&self, eqs: &[MultiPoly]) -> Option<(String, MultiPoly)> {
        let mut best: Option<(usize, usize, String, MultiPoly)> = None;
        for e in eqs {
            for (i, n) in self.vars.names().iter().enumerate() {
                if e.degree_in(n) != 1 {
                    continue;
                }
                let xm = Monomial::var(i);
                let c = e.coeff(&xm);
                if c.is_zero() || e.terms().any(|(m, _)| m.exp(i) > 0 && *m != xm) {
                    continue;
                }
                let rest = &e.clone() - &MultiPoly::monomial(e.vars(), xm, c.clone());
                let val = rest.scale(&-(c.inv().unwrap()));
                let key = (i, rest.num_terms());
                if best.as_ref().is_none_or(|b| key < (b.0, b.1)) {
                    best = Some((key.0, key.1, n.clone(), val));
                }
            }
        }
        best.map(|b| (b.2, b.3))
    }

    fn branch(
        &mut self,
        eqs: Vec<MultiPoly>,
        values: BTreeMap<String, MultiPoly>,
        nonzero: Vec<MultiPoly>,
    ) -> Result<()> {
        let mut eqs = eqs;
        let mut values = values;
        // factors already split off into a sibling branch
        let mut split: Vec<MultiPoly> = nonzero;
        loop {
            let Some(cleaned) = clean(eqs) else {
                return Ok(());
            };
            eqs = cleaned;
            let Some(live) = self.live_constraints(&values) else {
                return Ok(());
            };
            // divide out factors known to be nonzero
            let mut nonzero: Vec<MultiPoly> = live
                .iter()
                .filter_map(|c| match c {
                    Constraint::NonZero(p) => Some(p.clone()),
                    _ => None,
                })
                .collect();
            for f in &split {
                let f = self.substituted(f, &values);
                if !f.is_constant() {
                    nonzero.push(f);
                }
            }
            saturate(&mut eqs, &nonzero);
            let Some(cleaned) = clean(eqs) else {
                return Ok(());
            };
            eqs = cleaned;
            if let Some(k) = eqs.iter().position(|e| !monomial_content(e).is_one()) {
                let m = monomial_content(&eqs[k]);
                for i in var_index(&m, &self.vars) {
                    let x = self.vars.names()[i].clone();
                    let mut sub = eqs.clone();
                    let mut vals = values.clone();
                    Self::assign(&mut sub, &mut vals, &x, MultiPoly::zero(&self.vars));
                    self.branch(sub, vals, split.clone())?;
                }
                let (q, _) = eqs[k].divide(
                    &[MultiPoly::monomial(
                        &self.vars,
                        m,
                        GaussianRational::from_int(1),
                    )],
                    MonomialOrder::GrevLex,
                );
                eqs[k] = q.into_iter().next().unwrap();
                continue;
            }
            if let Some((x, val)) = self.find_linear(&eqs) {
                Self::assign(&mut eqs, &mut values, &x, val);
                continue;
            }
            match common_factor(&eqs) {
                Some(Shared::Redundant(k)) => {
                    eqs.remove(k);
                    continue;
                }
                Some(Shared::Factor(f)) if eqs.contains(&f.monic()) => {
                    // f is itself an equation: its multiples are redundant
                    let f = f.monic();
                    eqs.retain(|e| *e == f || gcd::divide_exact(e, &f).is_none());
                    continue;
                }
                Some(Shared::Factor(f)) => {
                    let mut with = eqs.clone();
                    with.push(f.clone());
                    self.branch(with, values.clone(), split.clone())?;
                    for e in eqs.iter_mut() {
                        while let Some(q) = gcd::divide_exact(e, &f) {
                            *e = q;
                        }
                    }
                    split.push(f);
                    continue;
                }
                None => {}
            }
            if eqs.is_empty() {
                let free = self.unbound(&values);
                return self.record(values, free, Vec::new(), self.vars.clone());
            }
            let g = groebner(&eqs, MonomialOrder::GrevLex, self.opts.degree_bound)?;
            if g.iter().any(|p| p.is_constant()) {
                return Ok(());
            }
            let mut g: Vec<MultiPoly> = g
                .into_iter()
                .map(|p| p.with_vars(&self.vars).unwrap())
                .collect();
            if saturate(&mut g, &nonzero)
                || g.iter().any(|e| !monomial_content(e).is_one())
                || self.find_linear(&g).is_some()
                || common_factor(&g).is_some()
            {
                eqs = g;
                continue;
            }
            if let Some((x, f)) = self.find_univariate(&g) {
                return self.split_univariate(g, values, &x, &f);
            }
            let unbound = self.unbound(&values);
            let indep = independent_set(&g, &self.vars, &unbound);
            if indep.is_empty() {
                // zero-dimensional: split on the first variable whose
                // minimal polynomial has a root in ℚ(i)
                let mut first: Option<(String, UniPoly)> = None;
                for x in &unbound {
                    if !g.iter().any(|e| e.degree_in(x) > 0) {
                        continue;
                    }
                    let f = minimal_polynomial(&g, &self.vars, x)?;
                    if !rational_roots(&f).is_empty() {
                        return self.split_univariate(g, values, x, &f);
                    }
                    first.get_or_insert((x.clone(), f));
                }
                let (x, f) = first.expect("some variable occurs");
                return self.split_univariate(g, values, &x, &f);
            }
            // positive-dimensional: triangularize with the free variables last
            let order = block_registry(&self.vars, &indep);
            let lex = groebner(
                &g.iter()
                    .map(|p| p.with_vars(&order).unwrap())
                    .collect::<Vec<_>>(),
                MonomialOrder::Lex,
                self.opts.degree_bound,
            )?;
            let lex: Vec<MultiPoly> = lex
                .into_iter()
                .map(|p| p.with_vars(&self.vars).unwrap())
                .collect();
            if let Some((x, f)) = self.find_univariate(&lex) {
                return self.split_univariate(lex, values, &x, &f);
            }
            if lex.iter().any(|e| !monomial_content(e).is_one())
                || self.find_linear(&lex).is_some()
                || common_factor(&lex).is_some()
            {
                eqs = lex;
                continue;
            }
            return self.record_relations(values, &g, &indep);
        }
    }

    fn record_relations(
        &mut self,
        values: BTreeMap<String, MultiPoly>,
        g: &[MultiPoly],
        indep: &[String],
    ) -> Result<()> {
        let order = block_registry(&self.vars, indep);
        let lex = groebner(
            &g.iter()
                .map(|p| p.with_vars(&order).unwrap())
                .collect::<Vec<_>>(),
            MonomialOrder::Lex,
            self.opts.degree_bound,
        )?;
        let values = values
            .into_iter()
            .map(|(k, v)| (k, v.with_vars(&order).unwrap()))
            .collect();
        self.record(values, indep.to_vec(), lex, order)
    }

    fn find_univariate(&self, g: &[MultiPoly]) -> Option<(String, UniPoly)> {
        for e in g {
            let used = e.used_vars();
            if used.len() == 1 {
                if let Some(f) = UniPoly::from_multi(e, &used[0]) {
                    return Some((used[0].clone(), f));
                }
            }
        }
        None
    }

    fn split_univariate(
        &mut self,
        g: Vec<MultiPoly>,
        values: BTreeMap<String, MultiPoly>,
        x: &str,
        f: &UniPoly,
    ) -> Result<()> {
        let roots = rational_roots(f);
        let mut rest = f.squarefree();
        for r in &roots {
            let mut eqs = g.clone();
            let mut vals = values.clone();
            Self::assign(
                &mut eqs,
                &mut vals,
                x,
                MultiPoly::constant(&self.vars, r.clone()),
            );
            self.branch(eqs, vals, Vec::new())?;
            let lin = UniPoly::new(vec![-r, GaussianRational::from_int(1)]);
            rest = rest.div_rem(&lin).0;
        }
        if rest.degree() == 0 {
            return Ok(());
        }
        // component with coordinates outside ℚ(i)
        let mut eqs = g;
        eqs.push(rest.to_multi(&self.vars, x));
        let basis = groebner(&eqs, MonomialOrder::GrevLex, self.opts.degree_bound)?;
        if basis.iter().any(|p| p.is_constant()) {
            return Ok(());
        }
        let basis: Vec<MultiPoly> = basis
            .into_iter()
            .map(|p| p.with_vars(&self.vars).unwrap())
            .collect();
        let unbound = self.unbound(&values);
        let indep = independent_set(&basis, &self.vars, &unbound);
        self.record_relations(values, &basis, &indep)
    }

    fn record(
        &mut self,
        values: BTreeMap<String, MultiPoly>,
        free: Vec<String>,
        relations: Vec<MultiPoly>,
        vars: VarSet,
    ) -> Result<()> {
        let values: BTreeMap<String, MultiPoly> = values
            .into_iter()
            .map(|(k, v)| {
                let v = v.with_vars(&vars).unwrap();
                let v = if relations.is_empty() {
                    v
                } else {
                    v.reduce(&relations, MonomialOrder::Lex)
                };
                (k, v)
            })
            .collect();
        // constraints must not vanish identically on the component
        let vanishes = |p: &MultiPoly| {
            let mut q = p.with_vars(&vars.union(p.vars())).unwrap();
            for (k, v) in &values {
                if q.degree_in(k) > 0 {
                    q = q.substitute(k, v);
                }
            }
            let q = q.with_vars(&vars).unwrap();
            q.is_zero()
                || (!relations.is_empty() && q.reduce(&relations, MonomialOrder::Lex).is_zero())
        };
        for c in &self.constraints {
            let violated = match c {
                Constraint::NonZero(p) => vanishes(p),
                Constraint::NotAllZero(ps) => ps.iter().all(vanishes),
            };
            if violated {
                return Ok(());
            }
        }
        let v = SolutionVariety {
            vars,
            free,
            values,
            relations,
        };
        if !self.out.iter().any(|o| o.same_as(&v)) {
            self.out.push(v);
        }
        Ok(())
    }
}

/// Divide every equation by the known-nonzero factors as often as possible;
/// reports whether anything changed.
fn saturate(eqs: &mut [MultiPoly], nonzero: &[MultiPoly]) -> bool {
    let mut changed = false;
    for e in eqs.iter_mut() {
        for p in nonzero {
            while !e.is_constant() {
                let Some(q) = gcd::divide_exact(e, p) else {
                    break;
                };
                *e = q;
                changed = true;
            }
        }
    }
    changed
}

enum Shared {
    /// equation at this index is a multiple of another one
    Redundant(usize),
    /// nonconstant square-free factor of two equations
    Factor(MultiPoly),
}

fn common_factor(eqs: &[MultiPoly]) -> Option<Shared> {
    for i in 0..eqs.len() {
        for j in i + 1..eqs.len() {
            let g = gcd(&eqs[i], &eqs[j]);
            if g.is_constant() {
                continue;
            }
            if g == eqs[i].monic() {
                return Some(Shared::Redundant(j));
            }
            if g == eqs[j].monic() {
                return Some(Shared::Redundant(i));
            }
            return Some(Shared::Factor(squarefree(&g)));
        }
    }
    None
}

/// Registry with the given free variables moved to the end.
fn block_registry(vars: &VarSet, free: &[String]) -> VarSet {
    let mut names: Vec<&String> = vars.names().iter().filter(|n| !free.contains(n)).collect();
    names.extend(vars.names().iter().filter(|n| free.contains(n)));
    VarSet::new(&names)
}

/// A largest set of unbound variables containing no leading monomial of the
/// grevlex basis `g`; ties prefer later registry variables.
fn independent_set(g: &[MultiPoly], vars: &VarSet, unbound: &[String]) -> Vec<String> {
    let lms: Vec<Monomial> = g
        .iter()
        .filter_map(|p| p.leading_term(MonomialOrder::GrevLex).map(|t| t.0))
        .collect();
    let idx: Vec<usize> = unbound.iter().map(|n| vars.index_of(n).unwrap()).collect();
    let n = idx.len();
    let mut best: Option<(u32, u64)> = None;
    for mask in 0u64..(1 << n) {
        let inside = |m: &Monomial| {
            (0..vars.len()).all(|i| {
                m.exp(i) == 0
                    || idx
                        .iter()
                        .enumerate()
                        .any(|(b, &j)| j == i && mask >> b & 1 == 1)
            })
        };
        if lms.iter().any(inside) {
            continue;
        }
        // weight later registry slots higher
        let score: u64 = (0..n)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| 1u64 << idx[b])
            .sum();
        let key = (mask.count_ones(), score);
        if best.is_none_or(|b| key > b) {
            best = Some(key);
        }
    }
    let score = best.map_or(0, |b| b.1);
    idx.iter()
        .filter(|&&i| score >> i & 1 == 1)
        .map(|&i| vars.names()[i].clone())
        .collect()
}

/// Minimal polynomial of `x` modulo the zero-dimensional ideal with reduced
/// grevlex basis `g`, by linear algebra on normal forms of powers of x.
fn minimal_polynomial(g: &[MultiPoly], vars: &VarSet, x: &str) -> Result<UniPoly> {
    let xp = MultiPoly::var(vars, x)?;
    // pivot monomial -> (vector, combination of powers)
    let mut rows: BTreeMap<Monomial, (MultiPoly, Vec<GaussianRational>)> = BTreeMap::new();
    let mut power = MultiPoly::one(vars);
    for k in 0..=512usize {
        let mut vec = power.clone();
        let mut comb = vec![GaussianRational::zero(); k + 1];
        comb[k] = GaussianRational::from_int(1);
        loop {
            let pivot = vec
                .terms()
                .rev()
                .map(|(m, _)| *m)
                .find(|m| rows.contains_key(m));
            let Some(m) = pivot else { break };
            let (row, rc) = &rows[&m];
            let c = &vec.coeff(&m) / &row.coeff(&m);
            vec = &vec - &row.scale(&c);
            for (a, b) in comb.iter_mut().zip(rc) {
                *a -= &(&c * b);
            }
        }
        if vec.is_zero() {
            return Ok(UniPoly::new(comb).monic());
        }
        let lead = *vec.terms().next_back().unwrap().0;
        rows.insert(lead, (vec, comb));
        power = (&power * &xp).reduce(g, MonomialOrder::GrevLex);
    }
    Err(Error::DegreeBoundExceeded(512))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn sys(vars: &[&str], eqs: &[&str]) -> PolySystem {
        let v = VarSet::new(vars);
        PolySystem::from_equations(&v, eqs.iter().map(|s| parse_poly(s, &v).unwrap()))
    }

    fn gr(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    #[test]
    fn finite_rational_points() {
        let s = sys(&["x", "y"], &["x^2 - 1", "x*y - 1"]);
        let sols = solve_system(&s, &SolveOptions::default()).unwrap();
        let mut pts: Vec<_> = sols.iter().map(|c| c.point().unwrap()).collect();
        pts.sort();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0]["x"], gr(-1, 1));
        assert_eq!(pts[0]["y"], gr(-1, 1));
        assert_eq!(pts[1]["x"], gr(1, 1));
    }

    #[test]
    fn gaussian_points_and_irrational_components() {
        let s = sys(&["x", "y"], &["x^2 + 1", "y - 2*x"]);
        let sols = solve_system(&s, &SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 2);
        assert!(sols.iter().all(|c| c.is_point()));
        let s = sys(&["x", "y"], &["x^2 - 2", "y^2 - x"]);
        let sols = solve_system(&s, &SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(!sols[0].relations.is_empty());
        assert_eq!(sols[0].dimension(), 0);
    }

    #[test]
    fn positive_dimensional_family() {
        // circle times a line: z = x + y, x² + y² = 1
        let s = sys(&["x", "y", "z"], &["x^2 + y^2 - 1", "z - x - y"]);
        let sols = solve_system(&s, &SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 1);
        let c = &sols[0];
        assert_eq!(c.dimension(), 1);
        // x is eliminated linearly, and z is preferred as the free variable
        assert_eq!(c.free, vec!["z".to_string()]);
        assert!(c.values.contains_key("x"));
        assert_eq!(c.relations.len(), 1);
        let pt: BTreeMap<String, GaussianRational> = [
            ("x".into(), gr(3, 5)),
            ("y".into(), gr(4, 5)),
            ("z".into(), gr(7, 5)),
        ]
        .into();
        assert!(c.contains(&pt));
    }

    #[test]
    fn constraints_remove_components() {
        let mut s = sys(&["x", "y"], &["x*y", "y^2 - y"]);
        let v = s.vars.clone();
        s.constraints
            .push(Constraint::NonZero(MultiPoly::var(&v, "y").unwrap()));
        let sols = solve_system(&s, &SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 1);
        let p = sols[0].point().unwrap();
        assert_eq!(p["x"], gr(0, 1));
        assert_eq!(p["y"], gr(1, 1));
    }

    #[test]
    fn minimal_polynomial_of_sum() {
        // x = √2, y = √3: x + y has degree-4 minimal polynomial z⁴ − 10z² + 1
        let v = VarSet::new(&["x", "y", "z"]);
        let eqs: Vec<MultiPoly> = ["x^2 - 2", "y^2 - 3", "z - x - y"]
            .iter()
            .map(|s| parse_poly(s, &v).unwrap())
            .collect();
        let g = groebner(&eqs, MonomialOrder::GrevLex, 40).unwrap();
        let f = minimal_polynomial(&g, &v, "z").unwrap();
        assert_eq!(
            f,
            UniPoly::new(vec![gr(1, 1), gr(0, 1), gr(-10, 1), gr(0, 1), gr(1, 1)])
        );
    }

    #[test]
    fn rescaling_by_weights() {
        // x of weight 2, s of weight 1: x − s² = 0 at s = 1 gives x = 1
        let v = VarSet::new(&["x", "s"]);
        let s = PolySystem::from_equations(&v, [parse_poly("x - s^2", &v).unwrap()]);
        let w: BTreeMap<String, i64> = [("x".to_string(), 2), ("s".to_string(), 1)].into();
        let sols = solve_scaled(&s, "s", &w, &SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].values["x"], parse_poly("s^2", &v).unwrap());
        assert_eq!(sols[0].free, vec!["s".to_string()]);
    }
}
