//! Mutating a seed: the quiver, the Laurent expansion in the initial
//! cluster, the tableau, and the evaluation oracle checking each exchange.
//!
//!     cargo run --example mutation_oracle

use clusterflag::flag_seeds::grassmannian_initial_seed;
use clusterflag::quiver_seeds::{Oracle, OracleConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut seed = grassmannian_initial_seed(3, 6)?;
    let oracle = Oracle::for_seed(&seed, OracleConfig::default())?;
    let mut values = oracle.seed_values(&seed);

    for label in ["(5)", "(4)", "(2)", "(5)", "(1)"] {
        let v = seed.quiver.find_label(label).ok_or(label)?;
        let next = seed.mutate(v)?;
        let ok = oracle.check_exchange(&seed, v, &next.vars[v].laurent, &values);
        println!("mutate {label}: {}", next.vars[v].laurent);
        println!("  tableau\n{}", next.vars[v].tableau);
        println!("  exchange identity at {} points: {}", oracle.trials(), ok.is_some());
        if let Some(new) = ok {
            for (t, x) in new.into_iter().enumerate() {
                values[t][v] = x;
            }
        }
        seed = next;
    }
    println!("max arrow multiplicity {}", seed.quiver.max_multiplicity());
    Ok(())
}
