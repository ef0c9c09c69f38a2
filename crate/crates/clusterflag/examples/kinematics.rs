//! Spinor-helicity and momentum-twistor brackets as Plücker coordinates.
//!
//!     cargo run --example kinematics -- 6

use clusterflag::plucker_algebra::{mt_coordinates, sh_coordinates, translate, Bracket, Kinematics};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(5);

    let b: Bracket = "[12]".parse()?;
    println!("SH_{n}: {b} -> {}", translate(Kinematics::Sh, n, &b)?.to_signed_string());

    println!("SH_{n} dictionary:");
    for (b, p) in sh_coordinates(n) {
        println!("  {b:8} {}", p.to_signed_string());
    }
    println!("MT_{n} dictionary ({} entries), first few:", mt_coordinates(n).len());
    for (b, p) in mt_coordinates(n).into_iter().take(8) {
        println!("  {b:8} {}", p.to_signed_string());
    }
    Ok(())
}
