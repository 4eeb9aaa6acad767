//! Certify every catalog entry against kk7, exactly and numerically.

use kk7::model::PdeCoefficients;
use kk7::verify::{self, NumericOptions};

fn main() -> kk7::Result<()> {
    let kk7 = PdeCoefficients::kk7();
    let opts = NumericOptions::default();
    for sol in verify::catalog() {
        let v = verify::certify(&sol, &kk7, &opts)?;
        println!("{v} [{}; {} near poles]", sol.kind, v.rejected);
    }
    let bad = verify::misprinted_u0();
    let r = verify::symbolic_residual(&bad, &kk7)?;
    println!("misprinted u0: residual is zero? {}", r.is_zero());
    Ok(())
}
