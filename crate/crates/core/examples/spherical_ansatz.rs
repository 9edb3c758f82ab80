//! A static spherically symmetric pair along a radial line. With diagonal
//! vielbeins and a radial separation vector the frame rotation is trivial.
//!
//! ```text
//! cargo run --release --example spherical_ansatz
//! ```

use bimetric::config::{load_config, Sector};
use bimetric::pipeline::run_decomposition;
use bimetric::Mat3;

fn main() -> bimetric::Result<()> {
    let cfg = load_config(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/spherical.cfg"))?;
    let result = run_decomposition(&cfg)?;
    print!("{}", result.report);

    let rot = result.point_results.iter().map(|p| (p.mean.frame.r - Mat3::IDENTITY).max_abs()).fold(0.0, f64::max);
    println!("\nmax |R - I| = {rot:.1e}");

    println!("\n{:>8} {:>14} {:>14} {:>14}", "r", "lambda", "h_rr", "Lambda^r (f)");
    let f = result.geometry_of(Sector::F).expect("f geometry requested");
    for i in (0..result.coords.len()).step_by(8) {
        let p = &result.point_results[i];
        println!(
            "{:>8.4} {:>14.10} {:>14.10} {:>14.10}",
            result.coords[i][0], p.mean.frame.lambda, p.mean.h_dd.0[0], f.lambda_computed[i][0]
        );
    }
    Ok(())
}
