//! The rectangle seed of a Grassmannian with its grid labels.
//!
//!     cargo run --example grassmannian_seed -- 6 12

use clusterflag::flag_seeds::{grassmannian_initial_seed, grid_index_set, grid_label};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u32>());
    let k = args.next().transpose()?.unwrap_or(4);
    let n = args.next().transpose()?.unwrap_or(8);
    let seed = grassmannian_initial_seed(k, n)?;
    println!("Gr_{{{k};{n}}}: {} vertices, {} mutable", seed.len(), seed.quiver.mutable_vertices().len());
    for r in 1..=n - k {
        let row: Vec<String> = (1..=k).map(|c| format!("({:>2}) {:?}", grid_label(k, n, r, c), grid_index_set(k, n, r, c))).collect();
        println!("{}", row.join("  "));
    }
    Ok(())
}
