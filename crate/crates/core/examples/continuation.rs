//! Continue each real soliton to its periodic partner (mu -> i mu) and check
//! the result against the catalog and the PDE.

use kk7::model::PdeCoefficients;
use kk7::verify::{catalog, certify, entry, periodic_continue, same_form, NumericOptions};

fn main() -> kk7::Result<()> {
    let coeffs = PdeCoefficients::kk7();
    let opts = NumericOptions::default();
    for sol in catalog() {
        let Some(partner) = sol.partner() else {
            continue;
        };
        if sol.kind.is_periodic() {
            continue;
        }
        let cont = periodic_continue(&sol)?;
        let target = entry(&partner).expect("catalog partner");
        let verdict = certify(&cont, &coeffs, &opts)?;
        println!("{} -> {}: {}", sol.id, partner, cont.expr);
        println!(
            "    matches catalog: {}; {}",
            same_form(&cont, &target),
            verdict
        );
    }
    Ok(())
}
