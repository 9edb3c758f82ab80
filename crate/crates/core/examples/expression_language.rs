//! The ansatz expression language: parsing, evaluation, exact
//! differentiation and the errors it reports.
//!
//! ```text
//! cargo run --example expression_language
//! ```

use std::sync::Arc;

use bimetric::expr::{Bound, Scope};

fn main() -> bimetric::Result<()> {
    let scope = Arc::new(Scope::new(["r", "th", "ph"]).with_param("m", 0.5));
    let e = Bound::parse("0.5*log(1 + m/(2*r)) + r^2*sin(th)^2", scope.clone())?;
    let x = [1.5, 0.8, 0.0];
    println!("e          = {}", e.source);
    println!("e(x)       = {}", e.eval(x)?);
    for (k, name) in ["r", "th", "ph"].iter().enumerate() {
        let d = e.diff(k);
        println!("d/d{name:<3}     = {}  -> {}", d.source, d.eval(x)?);
    }

    // precedence: unary minus binds looser than ^, and ^ is right associative
    for src in ["-r^2", "2^3^2", "2^-1"] {
        println!("{src:<6} at r = 3: {}", Bound::parse(src, scope.clone())?.eval([3.0, 0.0, 0.0])?);
    }

    for bad in ["1 + ", "sin(r", "exp(q)", "foo(r)"] {
        println!("{bad:<8} -> {}", Bound::parse(bad, scope.clone()).unwrap_err());
    }
    let log = Bound::parse("log(r - 2)", scope)?;
    println!("log(r - 2) at r = 1 -> {}", log.eval([1.0, 0.0, 0.0]).unwrap_err());
    Ok(())
}
