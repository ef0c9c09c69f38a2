//! Cluster seeds of Grassmannians and partial flag varieties with exact
//! arithmetic, and the mutation programs that carry one into the other.

pub mod cli;
pub mod flag_seeds;
pub mod mutation_programs;
pub mod plucker_algebra;
pub mod quiver_seeds;
pub mod young_tableaux;
