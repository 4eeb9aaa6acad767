//! Build the seventh-order PDE for each preset, reduce it to the traveling
//! wave ODE and look for a conservation-law flux.

use kk7::expr::differentiate;
use kk7::model::{
    build_pde, flux_decompose, preset, reduce_to_traveling_ode, spatial_part, PdeCoefficients, X,
};

fn main() -> kk7::Result<()> {
    let mut cases: Vec<(String, PdeCoefficients)> = ["kk7", "lax7", "ski7"]
        .iter()
        .map(|n| Ok((n.to_string(), preset(n)?)))
        .collect::<kk7::Result<_>>()?;
    // u_x^3 alone has no flux
    cases.push((
        "u_x^3".into(),
        PdeCoefficients::from_ints([0, 1, 0, 0, 0, 0, 0]),
    ));
    for (name, coeffs) in &cases {
        let pde = build_pde(coeffs);
        println!("== {name}");
        println!("  pde: {pde} = 0");
        let ode = reduce_to_traveling_ode(&pde);
        println!("  ode in xi, speed {}: {} = 0", ode.speed, ode.residual);
        println!(
            "  flux obstruction a2 - a3/2 + a4 = {}",
            coeffs.flux_obstruction()
        );
        match flux_decompose(coeffs) {
            Some(f) => {
                let ok = differentiate(&f, X, 1)? == spatial_part(coeffs);
                println!("  flux F = {f}  (d/dx F reproduces the spatial part: {ok})");
            }
            None => println!("  no flux: the mass integral is not conserved"),
        }
    }
    Ok(())
}
