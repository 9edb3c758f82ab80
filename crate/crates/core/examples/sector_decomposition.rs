//! One sector from its conformal variables: physical vielbein and metric,
//! extrinsic curvature from the trace-free split, and the ADM blocks of the
//! 4-metric.
//!
//! ```text
//! cargo run --example sector_decomposition
//! ```

use bimetric::sector::{adm_blocks, decompose_sector, forward_a_bar};
use bimetric::{Mat3, ToleranceProfile, Vec3};

fn main() -> bimetric::Result<()> {
    let tol = ToleranceProfile::default();
    let ebs = Mat3::diag([1.0, 1.2, 0.9]);
    let phi = 0.15;
    // trace-free and symmetric once lowered with the diagonal conformal metric
    let a_ud = Mat3::diag([0.02, -0.05, 0.03]);
    let s = decompose_sector(&ebs, phi, &a_ud, 0.1, Vec3::new(0.1, 0.0, 0.0), 0.9, &tol)?;

    println!("gamma_dd  = {:?}", s.gamma.0);
    println!("gammac_dd = {:?}", s.gamma_bar.0);
    println!("K_dd      = {:?}", s.k_dd.0);
    println!("K         = {}", s.k_trace);

    let back = forward_a_bar(&s.k_dd, &s.gamma, &s.gamma_inv, phi, s.a_trace);
    println!("|Ā(K(Ā)) - Ā| = {:.1e}", (back - s.a_bar_dd).max_abs());

    let blocks = adm_blocks(s.lapse, s.shift, &s.gamma);
    println!("g00 = {:.12}, g0i = {:?}", blocks.g00, blocks.g0i.0);
    let (lapse, shift, _) = blocks.read_back(&tol)?;
    println!("read back: lapse {lapse:.12}, shift {:?}", shift.0);

    let skew = Mat3([[0.0, 0.1, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
    let ebs = Mat3([[1.0, 0.4, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    if let Err(e) = decompose_sector(&ebs, 0.0, &skew, 0.0, Vec3::ZERO, 1.0, &tol) {
        println!("rejected: {e}");
    }
    Ok(())
}
