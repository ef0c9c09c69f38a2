//! Three mutations, one freeze and three deletions take Gr_{4;n+2} to
//! Fl_{2,4;n}.
//!
//!     cargo run --example momentum_twistors -- 7

use clusterflag::mutation_programs::{mt_program, verify_program};
use clusterflag::quiver_seeds::OracleConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(6);
    let v = verify_program(&mt_program(n)?, OracleConfig::default())?;
    let r = &v.report;
    println!("{} in {}", r.flag, r.grassmannian);
    println!("mutate {}", r.sequence.join(", "));
    println!("freeze {}", r.frozen.join(", "));
    println!("delete {}", r.deleted.join(", "));
    for c in &r.checks {
        println!("  {:20} {}", c.name, if c.pass { "ok" } else { "FAILED" });
    }
    let end = &v.outcome.endpoint;
    for i in 0..end.len() {
        let kind = if end.quiver.is_frozen(i) { "frozen" } else { "mutable" };
        println!("{} ({kind})\n{}", end.label(i), end.vars[i].tableau);
    }
    Ok(())
}
