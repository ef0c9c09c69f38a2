//! Graphviz and JSON output of seeds, and reading a seed back.
//!
//!     cargo run --example export -- /tmp/fl246
//!     dot -Tsvg /tmp/fl246.dot > fl246.svg

use std::path::PathBuf;

use clusterflag::flag_seeds::{flag_initial_seed, phi_star_seed, FlagType};
use clusterflag::quiver_seeds::Seed;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let stem = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fl246".into()));
    let flag: FlagType = "6,2,4".parse()?;
    let seed = flag_initial_seed(&flag)?;
    let image = phi_star_seed(&seed, &flag)?;

    std::fs::write(stem.with_extension("dot"), seed.to_dot(&flag.to_string()))?;
    let json = serde_json::to_string_pretty(&image.to_json(usize::MAX))?;
    std::fs::write(stem.with_extension("json"), &json)?;

    let back = Seed::from_json(&serde_json::from_str(&json)?)?;
    println!("wrote {} and {}", stem.with_extension("dot").display(), stem.with_extension("json").display());
    println!("round trip preserves the quiver: {}", back.quiver == image.quiver);
    for v in 0..back.len() {
        println!("  {:12} {} terms, digest {}", back.label(v), back.vars[v].laurent.len(), &back.vars[v].laurent.digest()[..12]);
    }
    Ok(())
}
