//! Square roots of symmetric positive definite matrices and the polar
//! decomposition.
//!
//! ```text
//! cargo run --example sqrt_algorithms
//! ```

use bimetric::mat3::{eig_sym3, polar3, sqrt_spd_closed, sqrt_spd_eig, Mat3, SymMat3};
use bimetric::ToleranceProfile;

fn residual(s: &SymMat3, a: &SymMat3) -> f64 {
    (s.to_mat3() * s.to_mat3() - a.to_mat3()).max_abs() / (1.0 + a.max_abs())
}

fn main() -> bimetric::Result<()> {
    let tol = ToleranceProfile::default();
    let cases = [
        ("diagonal", SymMat3::diag([4.0, 9.0, 16.0])),
        ("coupled", SymMat3([2.0, 1.0, 0.0, 2.0, 0.0, 3.0])),
        ("near isotropic", SymMat3([1.0, 1e-13, 0.0, 1.0 + 2e-13, 0.0, 1.0])),
        ("ill conditioned", SymMat3([1e3, 0.5, 0.0, 1.0, 0.01, 1e-3])),
    ];
    println!("{:<16} {:>12} {:>12} {:>12}", "input", "closed |S²-A|", "eigen |S²-A|", "difference");
    for (name, a) in cases {
        let closed = sqrt_spd_closed(&a, &tol)?;
        let eigen = sqrt_spd_eig(&a, &tol)?;
        println!(
            "{name:<16} {:>12.2e} {:>12.2e} {:>12.2e}",
            residual(&closed, &a),
            residual(&eigen, &a),
            (closed - eigen).max_abs()
        );
    }

    let eig = eig_sym3(&SymMat3([2.0, 1.0, 0.0, 2.0, 0.0, 3.0]))?;
    println!("\neigenvalues of [[2,1,0],[1,2,0],[0,0,3]]: {:?}", eig.values);

    match sqrt_spd_closed(&SymMat3::diag([1.0, -1.0, 2.0]), &tol) {
        Err(e) => println!("indefinite input rejected: {e}"),
        Ok(_) => unreachable!("an indefinite matrix has no real root"),
    }

    let m = Mat3([[0.0, -2.0, 0.1], [1.0, 0.3, 0.0], [0.2, 0.0, 1.5]]);
    let (p, q) = polar3(&m, &tol)?;
    println!("\npolar decomposition m = p·q");
    println!("  |p·q - m|   = {:.2e}", (p.to_mat3() * q - m).max_abs());
    println!("  |qᵀq - I|   = {:.2e}", (q.transpose() * q - Mat3::IDENTITY).max_abs());
    println!("  det q       = {:.15}", q.det());
    println!("  eig(p)      = {:?}", eig_sym3(&p)?.values);
    Ok(())
}
