//! Reproducible random automata for fuzzing.
//!
//! Instance `i` of a run seeded with `s` draws from ChaCha8 seeded with `s`
//! on stream `i`, so any single instance can be regenerated on its own. Each
//! instance picks a state count uniformly from `1..=max_states`, an edge
//! density from {0.1, 0.2, 0.3}, includes every ordered pair (self-loops
//! too) with that density, fixes the initial state at 0, and marks each
//! state final with probability 0.3.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::nfa::UnaryNfa;

pub const DENSITIES: [f64; 3] = [0.1, 0.2, 0.3];
pub const FINAL_PROBABILITY: f64 = 0.3;

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_nfa<R: Rng>(rng: &mut R, max_states: usize) -> UnaryNfa {
    let n = rng.gen_range(1..=max_states.max(1));
    let density = *DENSITIES.choose(rng).expect("non-empty");
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    let finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(FINAL_PROBABILITY)).collect();
    UnaryNfa::new(n, 0, finals, edges).expect("indices below n")
}

/// The `index`-th automaton of the run seeded with `seed`.
pub fn fuzz_instance(seed: u64, index: u64, max_states: usize) -> UnaryNfa {
    random_nfa(&mut instance_rng(seed, index), max_states)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_reproducible() {
        for i in 0..20 {
            assert_eq!(fuzz_instance(42, i, 10), fuzz_instance(42, i, 10));
        }
        let distinct: std::collections::BTreeSet<String> = (0..20)
            .map(|i| fuzz_instance(42, i, 10).to_string())
            .collect();
        assert!(distinct.len() > 10);
    }

    #[test]
    fn respects_state_bound() {
        assert!((0..100).all(|i| fuzz_instance(7, i, 4).state_count() <= 4));
        assert_eq!(fuzz_instance(7, 0, 1).state_count(), 1);
    }
}
