//! End-to-end run on the simplest admissible input: two identical flat
//! sectors at rest. Every derived quantity should come out trivial.
//!
//! ```text
//! cargo run --example flat_bimetric
//! ```

use bimetric::config::{flat_config_text, parse_config, Sector};
use bimetric::pipeline::run_decomposition;
use bimetric::report::summarize;

fn main() -> bimetric::Result<()> {
    let cfg = parse_config(&flat_config_text([9, 9, 9]))?;
    let result = run_decomposition(&cfg)?;
    print!("{}", result.report);
    println!();
    print!("{}", summarize(&result, &Sector::ALL, [4, 4, 4])?);

    let worst_h = result
        .point_results
        .iter()
        .map(|p| (p.mean.h_dd - p.g.gamma).max_abs().max((p.mean.h_dd - p.f.gamma).max_abs()))
        .fold(0.0, f64::max);
    println!("\nmax |h - g|, |h - f| over the grid: {worst_h:.1e}");
    Ok(())
}
