//! A three-step flag: Fl_{4,6,9;12} reached from Gr_{9;17} through two
//! mutation regions. Any flag can be given as `n,d1,...,dk`.
//!
//!     cargo run --example worked_flag -- 12,4,6,9

use clusterflag::flag_seeds::FlagType;
use clusterflag::mutation_programs::{general_flag_program, verify_program};
use clusterflag::quiver_seeds::OracleConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let flag: FlagType = std::env::args().nth(1).as_deref().unwrap_or("12,4,6,9").parse()?;
    let prog = general_flag_program(&flag);
    for r in &prog.regions {
        println!(
            "region {}: {} x {} at row {}, c = {}, {} mutations",
            r.block,
            r.a,
            r.b,
            r.top,
            r.c,
            r.expected_length()
        );
    }
    println!("freeze positions {:?}", prog.freeze_positions);
    println!("freeze columns {:?}", prog.freeze_columns);

    let v = verify_program(&prog, OracleConfig::default())?;
    let r = &v.report;
    println!("{} mutations, {} freezes, {} deletions", r.mutations, r.freezes, r.deletions);
    for c in &r.checks {
        println!("  [{}] {}: {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    for f in &r.findings {
        println!("  note: {f}");
    }
    Ok(())
}
