//! Groebner bases and exact solving of small polynomial systems.

use kk7::algebra::{parse_poly, MonomialOrder, VarSet};
use kk7::ansatz::PolySystem;
use kk7::solver::{groebner, in_ideal, solve_system, SolveOptions, DEFAULT_DEGREE_BOUND};

fn main() -> kk7::Result<()> {
    let systems: &[(&[&str], &[&str])] = &[
        (&["x", "y"], &["x^2 + y^2 - 25", "x - y - 1"]),
        (&["x", "y", "z"], &["x*y - z", "y*z - x", "z*x - y"]),
        // a curve: one free variable
        (&["a", "b"], &["a^3 - a*b^2"]),
        // complex roots stay exact
        (&["x"], &["x^2 + 4"]),
    ];
    for (names, eqs) in systems {
        let vars = VarSet::new(names);
        let polys = eqs
            .iter()
            .map(|s| parse_poly(s, &vars))
            .collect::<kk7::Result<Vec<_>>>()?;
        println!("== {}", eqs.join(", "));
        let g = groebner(&polys, MonomialOrder::Lex, DEFAULT_DEGREE_BOUND)?;
        for p in &g {
            println!("  basis: {p}");
        }
        assert!(polys.iter().all(|p| in_ideal(p, &g, MonomialOrder::Lex)));
        let sys = PolySystem::from_equations(&vars, polys);
        for v in solve_system(&sys, &SolveOptions::default())? {
            println!("  component: {v}");
        }
    }
    Ok(())
}
