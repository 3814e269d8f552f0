//! Runs a preset experiment and writes its table and manifest.
//!
//! cargo run --release --example experiment -- [preset] [out-dir]

use std::path::PathBuf;

use hypermono::experiment::{compare, preset, rows_csv, write_outputs, OutputFormat, PRESETS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "birthday".into());
    let dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("hypermono").join(&name));
    let mut spec = preset(&name)?;
    spec.simulation.replicates = 20_000;
    println!("presets: {}", PRESETS.join(", "));
    println!("{}", spec.description);
    let out = compare(&spec)?;
    print!("{}", rows_csv(&out.rows));
    write_outputs(&dir, &out, OutputFormat::Csv)?;
    println!("wrote {}", dir.display());
    Ok(())
}
