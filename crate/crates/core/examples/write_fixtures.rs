//! Regenerates the bundled synthetic panels under `data/fixtures/`.
//!
//!     cargo run --example write_fixtures

use std::path::Path;

use macrovar::fixtures::{synthetic_csv, SYNTHETIC_COUNTRIES};

fn main() -> macrovar::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/fixtures");
    std::fs::create_dir_all(&dir).expect("create fixture dir");
    for spec in &SYNTHETIC_COUNTRIES {
        let path = dir.join(format!("{}.csv", spec.name));
        std::fs::write(&path, synthetic_csv(spec)?).expect("write fixture");
        println!("wrote {}", path.display());
    }
    Ok(())
}
