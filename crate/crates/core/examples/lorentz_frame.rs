//! The Lorentz frame linking two sectors: boost from the separation vector,
//! rotation fixed by the symmetrization condition, and the assembled
//! transformation `L`.
//!
//! ```text
//! cargo run --example lorentz_frame
//! ```

use bimetric::lorentz::{lorentz_residual, LorentzFrame, SqrtAlgorithm};
use bimetric::{Mat3, ToleranceProfile, Vec3};

fn main() -> bimetric::Result<()> {
    let tol = ToleranceProfile::default();
    let ge = Mat3([[1.2, 0.3, -0.4], [0.0, 0.8, 0.5], [0.0, 0.0, 1.7]]);
    let fe = Mat3([[0.9, -0.2, 0.1], [0.0, 1.4, 0.6], [0.0, 0.0, 0.6]]);
    let p = Vec3::new(0.7, -1.1, 0.4);

    let mut first: Option<Mat3> = None;
    for alg in SqrtAlgorithm::ALL {
        let frame = LorentzFrame::new(p, &ge, &fe, alg, &tol)?;
        let r = frame.r;
        println!("{alg:<12} λ = {:.12}  |RᵀR - I| = {:.1e}  det R - 1 = {:+.1e}  |LᵀηL - η| = {:.1e}",
            frame.lambda,
            (r.transpose() * r - Mat3::IDENTITY).max_abs(),
            r.det() - 1.0,
            lorentz_residual(&frame.l));
        if let Some(r0) = first {
            println!("{:<12} differs from the first algorithm by {:.1e}", "", (r - r0).max_abs());
        }
        first.get_or_insert(r);
    }

    // diagonal vielbeins with p along a frame axis need no rotation
    let ge = Mat3::diag([1.0, 2.0, 3.0]);
    let fe = Mat3::diag([1.5, 0.5, 2.5]);
    let frame = LorentzFrame::new(Vec3::new(0.8, 0.0, 0.0), &ge, &fe, SqrtAlgorithm::ClosedForm, &tol)?;
    println!("\naligned case: |R - I| = {:.1e}", (frame.r - Mat3::IDENTITY).max_abs());
    println!("L =");
    for row in frame.l {
        println!("  {:>10.6} {:>10.6} {:>10.6} {:>10.6}", row[0], row[1], row[2], row[3]);
    }
    Ok(())
}
