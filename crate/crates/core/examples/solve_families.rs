//! Solve the coefficient-matching systems of every ansatz family for a
//! preset (default kk7) and print the solution components.

use kk7::ansatz::{AnsatzFamily, AnsatzSpec};
use kk7::model::preset;
use kk7::solver::{solve_scaled, SolveOptions};

fn main() -> kk7::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "kk7".into());
    let coeffs = preset(&name)?;
    for family in [
        AnsatzFamily::ColeHopf,
        AnsatzFamily::TanhCoth,
        AnsatzFamily::SinhCosh,
    ] {
        let spec = AnsatzSpec::new(family);
        let sys = spec.derive(&coeffs)?;
        let t = std::time::Instant::now();
        let sols = solve_scaled(
            &sys,
            spec.scale_symbol(),
            &spec.weights(),
            &SolveOptions::default(),
        )?;
        println!(
            "== {family}: {} components ({:.2?})",
            sols.len(),
            t.elapsed()
        );
        for s in &sols {
            println!("  {s}");
        }
    }
    Ok(())
}
