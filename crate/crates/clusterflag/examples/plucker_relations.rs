//! Plücker relations, the pullback to the ambient Grassmannian, and the
//! randomized identity oracle.
//!
//!     cargo run --example plucker_relations

use clusterflag::plucker_algebra::*;

fn main() -> std::result::Result<(), Box<dyn std::error::Error>> {
    let schouten = plucker_relation(1, &[1, 3], &[2, 4])?;
    println!("R^1_(13),(24) = {schouten}");

    // An incidence relation of Fl_{2,4;6} and its image under φ*.
    let rel = plucker_relation(1, &[1, 5], &[2, 3, 4, 6])?;
    let image = embed_phi_star(&rel, 6, &[2, 4])?;
    println!("relation: {rel}");
    println!("pullback: {image}");

    // Both vanish on random points: rows generate the flag, P_I is the
    // minor on the top |I| rows.
    for seed in 0..5 {
        let pt = random_point(4, 8, DEFAULT_PRIME, seed);
        println!("point {seed}: {} {}", evaluate(&rel, &pt)?, evaluate(&image, &pt)?);
    }

    // Lift of an initial minor by Laplace expansion, checked against the
    // minor of a random unipotent matrix.
    let f = laplace_initial_minor(1, 2, 4, 4, 6)?;
    println!("Δ_{{1,2,4}} = {f}");
    let u = random_unipotent_point(6, &[2, 4], DEFAULT_PRIME, 7);
    println!("expansion {} minor {}", evaluate(&f, &u)?, u.last_columns_minor(&[1, 2, 4])?);
    Ok(())
}
