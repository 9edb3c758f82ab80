//! Engine snapshots and plain CSV export. The snapshot restores the result
//! bit for bit, and two plain exports of the same result are byte-identical.
//!
//! ```text
//! cargo run --example export_roundtrip
//! ```

use std::fs;

use bimetric::config::{flat_config_text, parse_config};
use bimetric::export::{export_engine, export_plain, load_engine};
use bimetric::pipeline::run_decomposition;

fn main() -> bimetric::Result<()> {
    let dir = std::env::temp_dir().join(format!("bimetric-export-{}", std::process::id()));
    let result = run_decomposition(&parse_config(&flat_config_text([9, 9, 9]))?)?;

    let engine = dir.join("snapshot.engine.json");
    fs::create_dir_all(&dir).map_err(|e| bimetric::Error::io(&dir, e))?;
    export_engine(&result, &engine)?;
    let restored = load_engine(&engine)?;
    println!("snapshot restores the result exactly: {}", restored == result);

    let a = export_plain(&result, dir.join("a"), "run")?;
    let b = export_plain(&restored, dir.join("b"), "run")?;
    let mut identical = true;
    for field in &a.fields {
        let x = fs::read(dir.join("a").join(&field.file)).map_err(|e| bimetric::Error::io(&field.file, e))?;
        let y = fs::read(dir.join("b").join(&field.file)).map_err(|e| bimetric::Error::io(&field.file, e))?;
        identical &= x == y;
    }
    println!("{} fields exported, byte-identical: {identical}", a.fields.len());
    println!("first field: {} ({} components, flags {})", a.fields[0].name, a.fields[0].components, a.fields[0].index_flags);
    assert_eq!(a.fields.len(), b.fields.len());

    fs::remove_dir_all(&dir).ok();
    Ok(())
}
