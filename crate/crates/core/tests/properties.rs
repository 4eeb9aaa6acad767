//! Invariants of the algebra, expression and solver layers, checked on
//! random inputs.

use std::collections::BTreeMap;

use kk7::algebra::{GaussianRational, MonomialOrder, MultiPoly, VarSet};
use kk7::ansatz::{AnsatzFamily, AnsatzSpec, PolySystem};
use kk7::expr::{differentiate, exponential_normal_form, Expr, Func, RationalForm};
use kk7::model::PdeCoefficients;
use kk7::solver::{groebner, in_ideal, solve_scaled, solve_system, SolveOptions};
use kk7::verify::{from_variety, symbolic_residual};
use num_traits::Zero;
use proptest::prelude::*;
use rustfft::num_complex::Complex64;

const VARS: [&str; 3] = ["x", "y", "z"];

fn vars() -> VarSet {
    VarSet::new(&VARS)
}

/// (exponents, numerator, denominator) triples.
type Terms = Vec<([u32; 3], i64, i64)>;

fn terms(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec(
        ([0..=max_deg, 0..=max_deg, 0..=max_deg], -6i64..=6, 1i64..=3),
        0..=max_terms,
    )
}

fn poly(v: &VarSet, ts: &Terms) -> MultiPoly {
    let mut p = MultiPoly::zero(v);
    for (exps, n, d) in ts {
        let mut m = MultiPoly::constant(v, GaussianRational::ratio(*n, *d));
        for (name, e) in VARS.iter().zip(exps) {
            m = &m * &MultiPoly::var(v, name).unwrap().pow(*e as i64).unwrap();
        }
        p = &p + &m;
    }
    p
}

fn nonzero(v: &VarSet, ts: &Terms) -> MultiPoly {
    let p = poly(v, ts);
    if p.is_zero() {
        MultiPoly::one(v)
    } else {
        p
    }
}

const ORDERS: [MonomialOrder; 3] = [
    MonomialOrder::Lex,
    MonomialOrder::GrLex,
    MonomialOrder::GrevLex,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in terms(2, 4), b in terms(2, 4), c in terms(2, 4)) {
        let v = vars();
        let (a, b, c) = (poly(&v, &a), poly(&v, &b), poly(&v, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(&v), a.clone());
    }

    #[test]
    fn division_recombines(
        p in terms(3, 6),
        ds in prop::collection::vec(terms(2, 3), 1..=3),
        o in 0usize..3,
    ) {
        let v = vars();
        let order = ORDERS[o];
        let p = poly(&v, &p);
        let ds: Vec<MultiPoly> = ds.iter().map(|d| nonzero(&v, d)).collect();
        let (qs, r) = p.divide(&ds, order);
        prop_assert_eq!(qs.len(), ds.len());
        let mut back = r.clone();
        for (q, d) in qs.iter().zip(&ds) {
            back = &back + &(q * d);
        }
        prop_assert_eq!(back, p);
        // no remainder term is divisible by a leading monomial
        for d in &ds {
            let (lm, _) = d.leading_term(order).unwrap();
            for (m, _) in r.terms() {
                prop_assert!(!lm.divides(m), "{} in remainder divisible by {}", r, d);
            }
        }
    }

    #[test]
    fn content_normalize_is_idempotent(p in terms(3, 5), o in 0usize..3) {
        let v = vars();
        let p = nonzero(&v, &p);
        let once = p.content_normalize(ORDERS[o]).unwrap();
        let twice = once.content_normalize(ORDERS[o]).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(once.leading_term(ORDERS[o]).unwrap().1, GaussianRational::from_int(1));
    }
}

#[test]
fn content_normalize_rejects_zero() {
    assert!(MultiPoly::zero(&vars())
        .content_normalize(MonomialOrder::Lex)
        .is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groebner_basis_generates_its_inputs(
        fs in prop::collection::vec(terms(2, 3), 1..=3),
        mult in terms(1, 2),
    ) {
        let v = vars();
        let fs: Vec<MultiPoly> = fs.iter().map(|f| poly(&v, f)).collect();
        let order = MonomialOrder::GrevLex;
        let g = match groebner(&fs, order, 12) {
            Ok(g) => g,
            Err(_) => return Err(TestCaseError::reject("degree bound")),
        };
        for f in &fs {
            prop_assert!(in_ideal(f, &g, order), "{} not reduced by {:?}", f, g);
        }
        let combo = &(&poly(&v, &mult) * &fs[0]) + fs.last().unwrap();
        prop_assert!(in_ideal(&combo, &g, order));
        // reduced: every element is monic and irreducible by the others
        for (i, gi) in g.iter().enumerate() {
            prop_assert_eq!(gi.leading_term(order).unwrap().1, GaussianRational::from_int(1));
            let others: Vec<MultiPoly> =
                g.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
            prop_assert_eq!(&gi.reduce(&others, order), gi);
        }
    }

    /// Systems with known rational roots: (x - a)(x - b) = 0, y = c·x + d,
    /// optionally mixed by an invertible combination.
    #[test]
    fn solver_points_zero_the_system(
        a in -4i64..=4, b in -4i64..=4, c in -3i64..=3, d in -3i64..=3, mix in -2i64..=2,
    ) {
        let v = VarSet::new(&["x", "y"]);
        let x = MultiPoly::var(&v, "x").unwrap();
        let y = MultiPoly::var(&v, "y").unwrap();
        let k = |n: i64| MultiPoly::constant(&v, GaussianRational::from_int(n));
        let f = &(&x - &k(a)) * &(&x - &k(b));
        let g = &(&y - &(&k(c) * &x)) - &k(d);
        let eqs = [&f + &(&k(mix) * &g), g.clone()];
        let sys = PolySystem::from_equations(&v, eqs.clone());
        let sols = solve_system(&sys, &SolveOptions::default()).unwrap();
        let mut found = Vec::new();
        for s in &sols {
            let pt = s.point().expect("zero-dimensional");
            for e in &eqs {
                prop_assert!(e.eval(&pt).unwrap().is_zero());
            }
            found.push(pt["x"].clone());
        }
        let mut want = vec![GaussianRational::from_int(a), GaussianRational::from_int(b)];
        want.dedup();
        found.sort_by_key(|g| g.to_string());
        want.sort_by_key(|g| g.to_string());
        prop_assert_eq!(found, want);
    }
}

// ---- expressions -------------------------------------------------------

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::sym("x")),
        Just(Expr::sym("y")),
        (-3i64..=3).prop_map(Expr::int),
        (1i64..=3, 2i64..=4).prop_map(|(n, d)| Expr::rat(n, d)),
    ]
}

fn atom() -> impl Strategy<Value = Expr> {
    let f = prop_oneof![
        Just(Func::Exp),
        Just(Func::Sinh),
        Just(Func::Cosh),
        Just(Func::Tanh),
        Just(Func::Sin),
        Just(Func::Cos),
    ];
    (f, -2i64..=2, prop_oneof![Just("x"), Just("y")])
        .prop_map(|(f, q, v)| Expr::apply(f, Expr::int(q) * Expr::sym(v)))
}

fn tree() -> impl Strategy<Value = Expr> {
    prop_oneof![leaf(), atom()].prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Expr::sum),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Expr::product),
            (inner, 2i64..=3).prop_map(|(e, n)| e.pow(n)),
        ]
    })
}

fn at(x: f64, y: f64) -> BTreeMap<String, Complex64> {
    BTreeMap::from([
        ("x".to_string(), Complex64::new(x, 0.0)),
        ("y".to_string(), Complex64::new(y, 0.0)),
    ])
}

fn close(a: &Expr, b: &Expr) -> bool {
    [(0.3, -0.7), (-0.45, 0.2), (0.8, 0.55)]
        .iter()
        .all(|&(x, y)| {
            let env = at(x, y);
            let (p, q) = (a.eval_complex(&env).unwrap(), b.eval_complex(&env).unwrap());
            (p - q).norm() <= 1e-9 * (1.0 + p.norm().max(q.norm()))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn derivative_is_linear(a in tree(), b in tree(), n in -3i64..=3) {
        let d = |e: &Expr| differentiate(e, "x", 1).unwrap();
        let lhs = d(&(&a + &(Expr::int(n) * &b)));
        let rhs = &d(&a) + &(Expr::int(n) * d(&b));
        prop_assert!(close(&lhs, &rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn product_rule(a in tree(), b in tree()) {
        let d = |e: &Expr| differentiate(e, "x", 1).unwrap();
        let lhs = d(&(&a * &b));
        let rhs = &(&d(&a) * &b) + &(&a * &d(&b));
        prop_assert!(close(&lhs, &rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn mixed_partials_commute(a in tree()) {
        let xy = differentiate(&differentiate(&a, "x", 1).unwrap(), "y", 1).unwrap();
        let yx = differentiate(&differentiate(&a, "y", 1).unwrap(), "x", 1).unwrap();
        prop_assert!(close(&xy, &yx));
    }
}

/// Hyperbolic-only trees in one variable, the class the ζ-rewrite accepts.
fn hyperbolic_tree() -> impl Strategy<Value = Expr> {
    let f = prop_oneof![
        Just(Func::Exp),
        Just(Func::Sinh),
        Just(Func::Cosh),
        Just(Func::Tanh),
    ];
    let atom = (f, 1i64..=3, prop::bool::ANY).prop_map(|(f, q, neg)| {
        let q = if neg { -q } else { q };
        Expr::apply(f, Expr::int(q) * Expr::sym("x"))
    });
    let leaf = prop_oneof![(-3i64..=3).prop_map(Expr::int), atom];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Expr::sum),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Expr::product),
            (inner, 2i64..=3).prop_map(|(e, n)| e.pow(n)),
        ]
    })
}

fn eval_form(rf: &RationalForm, x: f64) -> Complex64 {
    assert!(rf.offset.is_zero());
    let (sr, si) = rf.scale.to_f64();
    let zeta = (Complex64::new(sr, si) * x).exp();
    let side = |lp: &kk7::algebra::LaurentPoly| {
        lp.coeffs()
            .map(|(e, c)| {
                let (re, im) = c.constant_value().unwrap().to_f64();
                Complex64::new(re, im) * zeta.powi(*e)
            })
            .sum::<Complex64>()
    };
    side(&rf.numerator) / side(&rf.denominator)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn normal_form_agrees_numerically(e in hyperbolic_tree()) {
        let rf = exponential_normal_form(&e, "x", &Expr::one()).unwrap();
        for x in [-0.6, 0.15, 0.9] {
            let want = e.eval_complex(&at(x, 0.0)).unwrap();
            let got = eval_form(&rf, x);
            prop_assert!((want - got).norm() <= 1e-9 * (1.0 + want.norm()), "{}: {} vs {}", e, want, got);
        }
    }

    #[test]
    fn normal_form_sees_identities(q in 1i64..=3, e in hyperbolic_tree()) {
        let arg = Expr::int(q) * Expr::sym("x");
        let s = Expr::apply(Func::Sinh, arg.clone());
        let c = Expr::apply(Func::Cosh, arg.clone());
        let t = Expr::apply(Func::Tanh, arg);
        // e·(cosh² − sinh²) = e and e·tanh·cosh = e·sinh
        let one = &(&c * &c) - &(&s * &s);
        let nf = |x: &Expr| exponential_normal_form(x, "x", &Expr::one()).unwrap();
        prop_assert!(nf(&(&e * &one)).equivalent(&nf(&e)));
        prop_assert!(nf(&(&(&e * &t) * &c)).equivalent(&nf(&(&e * &s))));
        prop_assert!(nf(&(&e - &e)).is_zero());
    }
}

// ---- pipeline ------------------------------------------------------------

/// Every solver component for the kk7 families turns into an exact solution.
#[test]
fn solver_output_solves_the_pde() {
    let coeffs = PdeCoefficients::kk7();
    for family in [
        AnsatzFamily::ColeHopf,
        AnsatzFamily::TanhCoth,
        AnsatzFamily::SinhCosh,
    ] {
        let spec = AnsatzSpec::new(family);
        let sys = spec.derive(&coeffs).unwrap();
        let sols = solve_scaled(
            &sys,
            spec.scale_symbol(),
            &spec.weights(),
            &SolveOptions::default(),
        )
        .unwrap();
        assert!(!sols.is_empty());
        for (i, v) in sols.iter().enumerate() {
            let sol = from_variety(&spec, v, &format!("{family}-{i}")).unwrap();
            let r = symbolic_residual(&sol, &coeffs).unwrap();
            assert!(r.is_zero(), "{family} [{i}] {v}: residual {r}");
        }
    }
}
