//! Fixed benchmark instances shared by the criterion benches.

use ccrecon::{generate, Family, Graph};

/// Seed used for every benchmark instance.
pub const SEED: u64 = 7;

pub fn cycle(n: usize) -> Graph {
    generate(&Family::Cycle { n }, SEED).expect("cycle parameters are valid")
}

pub fn partial_two_tree(n: usize) -> Graph {
    generate(
        &Family::PartialKTree {
            n,
            k: 2,
            delete_prob: 0.3,
        },
        SEED,
    )
    .expect("partial 2-tree parameters are valid")
}

pub fn grid(side: usize) -> Graph {
    generate(&Family::Grid { rows: side, cols: side }, SEED).expect("grid parameters are valid")
}
