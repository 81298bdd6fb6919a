//! Regenerates the bundled catalog: `cargo run --release --example generate_catalog -- data/catalog.json`

use std::path::PathBuf;
use std::time::Instant;

fn main() {
    let path: PathBuf = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("crates/core/data/catalog.json"));
    let start = Instant::now();
    match gdl_core::catalog::generate_catalog(&path) {
        Ok(entries) => {
            for e in &entries {
                println!("{} {:?}", e.family, e.labels);
            }
            println!(
                "wrote {} entries to {} in {:.1}s",
                entries.len(),
                path.display(),
                start.elapsed().as_secs_f64()
            );
        }
        Err(e) => {
            eprintln!("catalog generation failed: {e}");
            std::process::exit(1);
        }
    }
}
