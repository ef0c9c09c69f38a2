//! Initial seed of a partial flag variety from its pseudoline arrangement.
//!
//!     cargo run --example flag_seed -- 7,2,5

use clusterflag::flag_seeds::{build_arrangement, flag_initial_seed, initial_index_sets, FlagType};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let flag: FlagType = std::env::args().nth(1).as_deref().unwrap_or("7,2,5").parse()?;
    let arr = build_arrangement(&flag);
    println!("{flag}, σ = {:?}", arr.sigma);
    for f in &arr.faces {
        println!("  face {:?}{}", f.index_set, if f.frozen { " (frozen)" } else { "" });
    }

    let closed = initial_index_sets(&flag);
    println!("closed form: {} frozen, {} mutable", closed.frozen.len(), closed.mutable.len());

    let seed = flag_initial_seed(&flag)?;
    for v in 0..seed.len() {
        let d = &seed.vars[v];
        let balanced = seed.quiver.is_frozen(v) || seed.is_balanced(v);
        println!("  {:12} weight {:?} balanced {balanced}\n{}", seed.label(v), d.weight, d.tableau);
    }
    print!("{}", seed.to_dot(&flag.to_string()));
    Ok(())
}
