//! Integrate the u9 soliton with the pseudo-spectral solver and write the
//! diagnostics history as CSV.
//!
//!     cargo run --release --example soliton_run -- [n] [dt] [T] [out.csv]

use std::collections::BTreeMap;

use kk7::expr::Expr;
use kk7::model::PdeCoefficients;
use kk7::spectral::{history_csv, integrate, solution_profile, GridState, SimConfig};
use kk7::verify::entry;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(Ok(128), |s| s.parse())?;
    let dt: f64 = args.get(1).map_or(Ok(2.5e-7), |s| s.parse())?;
    let t_final: f64 = args.get(2).map_or(Ok(2e-3), |s| s.parse())?;
    let length = 40.0;

    let u9 = entry("u9").expect("catalog");
    let params = BTreeMap::from([("mu".to_string(), Expr::one())]);
    let exact = solution_profile(&u9, &params, length)?;
    let initial = GridState::from_fn(n, length, 0.0, &exact)?;

    let mut config = SimConfig::new(PdeCoefficients::kk7(), dt, t_final);
    config.record_every = ((t_final / dt).round() as usize / 10).max(1);
    let t = std::time::Instant::now();
    let result = integrate(&initial, &config, Some(&exact))?;
    let (first, last) = (&result.history[0], result.history.last().unwrap());
    println!(
        "{} steps of {:e} in {:.2?}: max error {:.2e}, mass drift {:.1e}",
        result.steps,
        result.dt,
        t.elapsed(),
        last.max_error.unwrap_or(f64::NAN),
        (last.mass - first.mass).abs() / first.mass.abs()
    );
    let csv = history_csv(&result.history);
    match args.get(3) {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}
