//! Derive the coefficient-matching systems of all three ansatz families for
//! the Kaup-Kupershmidt preset and print them.

use kk7::ansatz::{AnsatzFamily, AnsatzSpec};
use kk7::model::preset;

fn main() -> kk7::Result<()> {
    let coeffs = preset("kk7")?;
    for family in [
        AnsatzFamily::ColeHopf,
        AnsatzFamily::TanhCoth,
        AnsatzFamily::SinhCosh,
    ] {
        let spec = AnsatzSpec::new(family);
        let t = std::time::Instant::now();
        let sys = spec.derive(&coeffs)?;
        println!(
            "== {family}: {} equations in {:?} ({:.2?})",
            sys.len(),
            sys.vars,
            t.elapsed()
        );
        print!("{sys}");
    }
    Ok(())
}
