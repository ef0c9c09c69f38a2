//! The spinor-helicity program: Gr_{n-2;2n-4} to Fl_{2,n-2;n}, with the
//! grid labels of every mutation.
//!
//!     cargo run --example spinor_helicity -- 8

use clusterflag::mutation_programs::{sh_program, verify_program};
use clusterflag::quiver_seeds::OracleConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(8);
    let prog = sh_program(n)?;
    for (p, page) in prog.regions[0].pages().iter().enumerate() {
        let coords: Vec<String> = page.iter().map(|g| format!("({},{})", g.i, g.j)).collect();
        println!("page {}: {}", p + 1, coords.join(" "));
    }
    let v = verify_program(&prog, OracleConfig::default())?;
    let r = &v.report;
    println!("{} mutations: {}", r.mutations, r.sequence.join(","));
    println!("freeze {}; delete {} vertices", r.frozen.join(","), r.deletions);
    println!("endpoint equals the {} seed: {}", r.flag, r.passed());
    for (k, ms) in &r.timings_ms {
        println!("  {k}: {ms:.1} ms");
    }
    Ok(())
}
