//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line on
//! stdout (written past the test harness capture so that it shows up in
//! `cargo test` logs).

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use kk7::algebra::{parse_poly, GaussianRational, MultiPoly, VarSet};
use kk7::ansatz::{unit_representative, AnsatzFamily, AnsatzSpec, PolySystem};
use kk7::expr::{differentiate, Expr};
use kk7::model::{flux_decompose, spatial_part, PdeCoefficients, X};
use kk7::solver::{solve_scaled, solve_system, SolutionVariety, SolveOptions};
use kk7::spectral::{integrate, solution_profile, GridState, SimConfig};
use kk7::verify::{self, NumericOptions};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that are measured and reported but not met; see the README
/// section on the simulator for the evidence.
const KNOWN_GAPS: &[u32] = &[8];

struct Outcome {
    pass: bool,
    detail: String,
}

fn line(n: u32, name: &str, o: &Outcome) {
    let mut out = std::io::stdout().lock();
    let tag = if o.pass { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{tag} {n} {name}: {}", o.detail);
}

fn solve_family(family: AnsatzFamily) -> (AnsatzSpec, Vec<SolutionVariety>) {
    let spec = AnsatzSpec::new(family);
    let sys = spec.derive(&PdeCoefficients::kk7()).unwrap();
    let sols = solve_scaled(
        &sys,
        spec.scale_symbol(),
        &spec.weights(),
        &SolveOptions::default(),
    )
    .unwrap();
    (spec, sols)
}

fn has_values(v: &SolutionVariety, want: &[(&str, &str)]) -> bool {
    want.iter().all(|(name, value)| {
        let p = parse_poly(value, &v.vars).unwrap();
        v.values.get(*name) == Some(&p)
    })
}

fn cole_hopf() -> Outcome {
    let t = Instant::now();
    let (_, sols) = solve_family(AnsatzFamily::ColeHopf);
    let found = sols
        .iter()
        .any(|v| has_values(v, &[("A", "1/2"), ("B", "-k^2/24"), ("omega", "-k^7/48")]));
    let secs = t.elapsed().as_secs_f64();
    Outcome {
        pass: found && secs < 30.0,
        detail: format!(
            "A = 1/2, B = -k^2/24, omega = -k^7/48 {} among {} components ({secs:.2} s)",
            if found { "found" } else { "missing" },
            sols.len()
        ),
    }
}

// the reference Cole-Hopf system, speed renamed to omega
const REFERENCE_COLE_HOPF: [&str; 8] = [
    "-A k^9-42 A B k^7-504 A B^2 k^5-2016 A B^3 k^3+A omega k^2",
    "A k^9+42 A B k^7+504 A B^2 k^5+2016 A B^3 k^3-A omega k^2",
    "-441 A^2 k^9+247 A k^9-3276 A^2 B k^7+2310 A B k^7-6048 A^2 B^2 k^5+3528 A B^2 k^5-10080 A B^3 k^3+5 A omega k^2",
    "441 A^2 k^9-247 A k^9+3276 A^2 B k^7-2310 A B k^7+6048 A^2 B^2 k^5-3528 A B^2 k^5+10080 A B^3 k^3-5 A omega k^2",
    "-3402 A^3 k^9+10143 A^2 k^9-4293 A k^9-6048 A^3 B k^7+15876 A^2 B k^7-7938 A B k^7-18144 A^2 B^2 k^5+13608 A B^2 k^5-18144 A B^3 k^3+9 A omega k^2",
    "3402 A^3 k^9-10143 A^2 k^9+4293 A k^9+6048 A^3 B k^7-15876 A^2 B k^7+7938 A B k^7+18144 A^2 B^2 k^5-13608 A B^2 k^5+18144 A B^3 k^3-9 A omega k^2",
    "-2016 A^4 k^9+18774 A^3 k^9-40320 A^2 k^9+15619 A k^9-6048 A^3 B k^7+19152 A^2 B k^7-10290 A B k^7-12096 A^2 B^2 k^5+9576 A B^2 k^5-10080 A B^3 k^3+5 A omega k^2",
    "2016 A^4 k^9-18774 A^3 k^9+40320 A^2 k^9-15619 A k^9+6048 A^3 B k^7-19152 A^2 B k^7+10290 A B k^7+12096 A^2 B^2 k^5-9576 A B^2 k^5+10080 A B^3 k^3-5 A omega k^2",
];

fn system_match() -> Outcome {
    let spec = AnsatzSpec::new(AnsatzFamily::ColeHopf);
    let sys = spec.derive(&PdeCoefficients::kk7()).unwrap();
    let norm = |ps: &[MultiPoly]| {
        let mut s: Vec<String> = ps
            .iter()
            .map(|p| unit_representative(p).to_string())
            .collect();
        s.sort();
        s.dedup();
        s
    };
    let reference: Vec<MultiPoly> = REFERENCE_COLE_HOPF
        .iter()
        .map(|s| parse_poly(s, &sys.vars).unwrap())
        .collect();
    let (ours, theirs) = (norm(&sys.equations), norm(&reference));
    Outcome {
        pass: ours == theirs,
        detail: format!(
            "{} derived vs {} reference equations after collapsing, {}",
            ours.len(),
            theirs.len(),
            if ours == theirs {
                "identical"
            } else {
                "different"
            }
        ),
    }
}

fn ansatz_sets() -> Outcome {
    let t = Instant::now();
    let (_, tc) = solve_family(AnsatzFamily::TanhCoth);
    let tanh_sets: [&[(&str, &str)]; 3] = [
        &[
            ("a", "0"),
            ("b", "0"),
            ("c", "0"),
            ("d", "-mu^2/2"),
            ("p", "mu^2/3"),
            ("lambda", "4*mu^6/3"),
        ],
        &[
            ("a", "0"),
            ("b", "0"),
            ("c", "-mu^2/2"),
            ("d", "0"),
            ("p", "mu^2/3"),
            ("lambda", "4*mu^6/3"),
        ],
        &[
            ("a", "0"),
            ("b", "0"),
            ("c", "-mu^2/2"),
            ("d", "-mu^2/2"),
            ("p", "mu^2/3"),
            ("lambda", "256*mu^6/3"),
        ],
    ];
    let tanh_found = tanh_sets
        .iter()
        .filter(|w| tc.iter().any(|v| has_values(v, w)))
        .count();

    let (_, sc) = solve_family(AnsatzFamily::SinhCosh);
    let common = [
        ("kappa", "mu^2/4"),
        ("p", "-mu^2/24"),
        ("lambda", "mu^6/48"),
    ];
    let i = GaussianRational::i;
    let q = GaussianRational::from_int;
    // (c, d) of the four isolated sets
    let points = [(q(0), q(-1)), (q(0), q(1)), (-i(), q(0)), (i(), q(0))];
    let mut sinh_found = 0;
    for (c, d) in &points {
        let hit = sc.iter().any(|v| {
            has_values(v, &common)
                && [1, 3].iter().all(|&m| {
                    let mu = q(m);
                    let pt = BTreeMap::from([
                        ("mu".to_string(), mu.clone()),
                        (
                            "kappa".to_string(),
                            &(&mu * &mu) * &GaussianRational::ratio(1, 4),
                        ),
                        (
                            "p".to_string(),
                            &(&mu * &mu) * &GaussianRational::ratio(-1, 24),
                        ),
                        (
                            "lambda".to_string(),
                            &mu.pow(6).unwrap() * &GaussianRational::ratio(1, 48),
                        ),
                        ("c".to_string(), c.clone()),
                        ("d".to_string(), d.clone()),
                    ]);
                    v.contains(&pt)
                })
        });
        sinh_found += hit as usize;
    }
    // c = ±sqrt(d^2 - 1): one relation with d free covers both signs
    let family = sc.iter().any(|v| {
        let rel = unit_representative(&parse_poly("c^2 - d^2 + 1", &v.vars).unwrap());
        has_values(v, &common)
            && v.free.contains(&"d".to_string())
            && v.relations.iter().any(|r| unit_representative(r) == rel)
    });
    if family {
        sinh_found += 2;
    }
    let secs = t.elapsed().as_secs_f64();
    Outcome {
        pass: tanh_found == 3 && sinh_found == 6 && secs < 300.0,
        detail: format!(
            "tanh-coth {tanh_found}/3 sets in {} components, sinh-cosh {sinh_found}/6 sets in {} components ({secs:.1} s)",
            tc.len(),
            sc.len()
        ),
    }
}

fn residuals() -> Outcome {
    let kk7 = PdeCoefficients::kk7();
    let opts = NumericOptions::default();
    let mut ok = 0;
    let mut worst = 0.0f64;
    let entries = verify::catalog();
    for sol in &entries {
        let v = verify::certify(sol, &kk7, &opts).unwrap();
        worst = worst.max(v.max_residual);
        if v.exact && v.max_residual < 1e-40 {
            ok += 1;
        }
    }
    let misprint_fails = !verify::symbolic_residual(&verify::misprinted_u0(), &kk7)
        .unwrap()
        .is_zero();
    Outcome {
        pass: ok == entries.len() && entries.len() == 19 && misprint_fails,
        detail: format!(
            "{ok}/{} exact with max|R| = {worst:.2e} at 50 digits; printed u0 {}",
            entries.len(),
            if misprint_fails {
                "rejected"
            } else {
                "accepted"
            }
        ),
    }
}

fn continuation() -> Outcome {
    let mut bad = Vec::new();
    for n in [1, 3, 5, 7, 9, 11, 13] {
        let from = verify::entry(&format!("u{n}")).unwrap();
        let want = verify::entry(&format!("u{}", n + 1)).unwrap();
        let got = verify::periodic_continue(&from).unwrap();
        if !verify::same_form(&got, &want) {
            bad.push(from.id);
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            "u1..u13 map onto u2..u14".into()
        } else {
            format!("mismatch for {}", bad.join(", "))
        },
    }
}

fn cross_method() -> Outcome {
    let id = BTreeMap::from([
        ("k".to_string(), Expr::sym("mu")),
        ("delta".to_string(), Expr::from(0i64)),
    ]);
    let same = verify::equivalence_check(
        &verify::entry("u0").unwrap(),
        &verify::entry("u9").unwrap(),
        &id,
    )
    .unwrap();
    Outcome {
        pass: same,
        detail: format!("u0 with k -> mu, delta -> 0 equals u9: {same}"),
    }
}

fn conservation() -> Outcome {
    let kk7 = PdeCoefficients::kk7();
    let identity = flux_decompose(&kk7)
        .map(|f| differentiate(&f, X, 1).unwrap() == spatial_part(&kk7))
        .unwrap_or(false);
    let refused = flux_decompose(&PdeCoefficients::from_ints([0, 1, 0, 0, 0, 0, 0])).is_none();
    Outcome {
        pass: identity && refused,
        detail: format!("kk7 flux identity {identity}, pure u_x^3 has no flux {refused}"),
    }
}

fn simulation() -> Outcome {
    let t = Instant::now();
    let u9 = verify::entry("u9").unwrap();
    let mu = BTreeMap::from([("mu".to_string(), Expr::from(1i64))]);
    let u = solution_profile(&u9, &mu, 40.0).unwrap();
    let s = GridState::from_fn(256, 40.0, 0.0, &u).unwrap();
    let run = |dt: f64| {
        let r = integrate(
            &s,
            &SimConfig::new(PdeCoefficients::kk7(), dt, 0.05),
            Some(&u),
        )
        .unwrap();
        let (a, b) = (&r.history[0], r.history.last().unwrap());
        (b.max_error.unwrap(), ((b.mass - a.mass) / a.mass).abs())
    };
    let (err, drift) = run(1e-7);
    let secs = t.elapsed().as_secs_f64();

    // halving study in the stable range, floor = the dt = 1e-7 error
    let ladder: Vec<f64> = [4e-7, 2e-7].iter().map(|&dt| run(dt).0).collect();
    let above = ladder.iter().any(|&e| e > 10.0 * err);

    // the same scheme on a grid where the temporal error is visible
    let s32 = GridState::from_fn(32, 40.0, 0.0, &u).unwrap();
    let coarse = |dt: f64| {
        integrate(&s32, &SimConfig::new(PdeCoefficients::kk7(), dt, 1.0), None)
            .unwrap()
            .state
            .values
    };
    let reference = coarse(1e-2 / 64.0);
    let errs: Vec<f64> = (0..4)
        .map(|k| {
            coarse(2.5e-3 / 2f64.powi(k))
                .iter()
                .zip(&reference)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    let ratios: Vec<String> = errs
        .windows(2)
        .map(|w| format!("{:.1}", w[0] / w[1]))
        .collect();
    let order_ok = errs.windows(2).all(|w| w[0] / w[1] >= 8.0);

    // the halving criterion needs an error above the floor at n = 256
    let refinement = above && order_ok;
    Outcome {
        pass: err < 1e-6 && drift < 1e-10 && secs < 300.0 && refinement,
        detail: format!(
            "max error {err:.2e}, mass drift {drift:.1e} ({secs:.0} s); dt 4e-7/2e-7 errors {:.1e}/{:.1e} are at the floor, \
             so no halving ratio is measurable at n = 256; n = 32 halving ratios {}",
            ladder[0],
            ladder[1],
            ratios.join(", ")
        ),
    }
}

fn random_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    let re = GaussianRational::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3));
    let im = GaussianRational::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2));
    &re + &(&im * &GaussianRational::i())
}

/// A zero-dimensional ideal with the given points (distinct first
/// coordinates): the vanishing polynomial of x0 and Lagrange forms for the
/// rest, then mixed by a unitriangular polynomial matrix and shuffled.
fn planted_system(
    rng: &mut ChaCha8Rng,
    names: &[&str],
    pts: &[Vec<GaussianRational>],
) -> PolySystem {
    let vars = VarSet::new(names);
    let x0 = MultiPoly::var(&vars, names[0]).unwrap();
    let c = |g: &GaussianRational| MultiPoly::constant(&vars, g.clone());
    let one = GaussianRational::from_int(1);
    let mut gens = vec![pts.iter().fold(c(&one), |acc, p| &acc * &(&x0 - &c(&p[0])))];
    for (j, name) in names.iter().enumerate().skip(1) {
        let mut interp = c(&GaussianRational::from_int(0));
        for (a, pa) in pts.iter().enumerate() {
            let mut basis = c(&pa[j]);
            for (b, pb) in pts.iter().enumerate() {
                if a != b {
                    let den = (&pa[0] - &pb[0]).inv().unwrap();
                    basis = &basis * &(&(&x0 - &c(&pb[0])) * &c(&den));
                }
            }
            interp = &interp + &basis;
        }
        gens.push(&MultiPoly::var(&vars, name).unwrap() - &interp);
    }
    let monomial = |rng: &mut ChaCha8Rng| {
        let mut m = c(&GaussianRational::from_int(rng.gen_range(-3..=3)));
        for name in names {
            if rng.gen_bool(0.4) {
                m = &m * &MultiPoly::var(&vars, name).unwrap();
            }
        }
        m
    };
    let mut mixed = gens.clone();
    for (a, m) in mixed.iter_mut().enumerate() {
        for g in &gens[a + 1..] {
            let q = monomial(rng);
            *m = &*m + &(&q * g);
        }
    }
    for a in (1..mixed.len()).rev() {
        mixed.swap(a, rng.gen_range(0..=a));
    }
    PolySystem::from_equations(&vars, mixed)
}

fn planted_roots() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let all = ["x", "y", "z"];
    let (mut recovered, mut planted, mut spurious) = (0, 0, 0);
    for _ in 0..20 {
        let nv = rng.gen_range(1..=3);
        let names = &all[..nv];
        let np = rng.gen_range(1..=3);
        let mut pts: Vec<Vec<GaussianRational>> = Vec::new();
        while pts.len() < np {
            let p: Vec<GaussianRational> = (0..nv).map(|_| random_gaussian(&mut rng)).collect();
            if pts.iter().all(|q| q[0] != p[0]) {
                pts.push(p);
            }
        }
        let sys = planted_system(&mut rng, names, &pts);
        let sols = solve_system(&sys, &SolveOptions::default()).unwrap();
        for p in &pts {
            let pt: BTreeMap<String, GaussianRational> = names
                .iter()
                .map(|n| n.to_string())
                .zip(p.iter().cloned())
                .collect();
            // substitution oracle: the planted point really is a root
            assert!(sys.equations.iter().all(|e| e.eval(&pt).unwrap().is_zero()));
            planted += 1;
            recovered += sols.iter().any(|v| v.contains(&pt)) as usize;
        }
        for v in &sols {
            match v.point() {
                Some(pt) if sys.equations.iter().all(|e| e.eval(&pt).unwrap().is_zero()) => {}
                _ => spurious += 1,
            }
        }
    }
    Outcome {
        pass: recovered == planted && spurious == 0,
        detail: format!(
            "{recovered}/{planted} planted roots recovered over 20 systems, {spurious} components off the oracle"
        ),
    }
}

type Check = (u32, &'static str, fn() -> Outcome);

#[test]
fn acceptance_criteria() {
    let checks: [Check; 9] = [
        (1, "cole-hopf reproduction", cole_hopf),
        (2, "cole-hopf system", system_match),
        (3, "ansatz parameter sets", ansatz_sets),
        (4, "residual certification", residuals),
        (5, "periodic continuation", continuation),
        (6, "cross-method consistency", cross_method),
        (7, "conservation structure", conservation),
        (8, "simulation", simulation),
        (9, "planted-root solver oracle", planted_roots),
    ];
    let mut failed = Vec::new();
    // libtest has already written "test acceptance_criteria ... "
    let _ = writeln!(std::io::stdout().lock());
    for (n, name, check) in checks {
        let o = check();
        line(n, name, &o);
        if !o.pass {
            failed.push(n);
        }
    }
    assert_eq!(failed, KNOWN_GAPS, "unexpected acceptance outcome");
}
