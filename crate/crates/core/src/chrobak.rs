//! Conversion of a unary NFA into a union of arithmetic progressions and an
//! automaton in Chrobak normal form, plus the linear-time translations
//! between the two representations.
//!
//! With `n` the state count of the normalized automaton, the output has
//!
//! * singletons `(i, 0)` for every accepted `i <= 2n² + n`, and
//! * for each nontrivial component `D` with `d = gcd(D)`, progressions
//!   `(a, d)` with `2n² + n < a < 2n² + 3n` for every `a` such that some
//!   accepting path of length `a` has its last visit to a nontrivial
//!   component inside `D`.
//!
//! The second condition is checked as an exact-length path query on the
//! restricted automaton built by [`crate::scc::build_restricted`].

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::cycle_gcd;
use crate::nfa::{self, NormalizedNfa, UnaryNfa, MAX_STATES};
use crate::scc::{self, SccDecomposition};
use crate::semilinear::{ArithmeticProgression, ProgressionSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error("{states} states exceeds the supported maximum of {max}")]
    TooManyStates { states: usize, max: usize },
}

/// The length bounds for an automaton with `n_prime` normalized states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub n_prime: usize,
    /// `2n² + n`: every singleton offset is at most this.
    pub singleton_max: u64,
    /// `2n² + 3n`: periodic offsets lie strictly between `singleton_max`
    /// and this.
    pub offset_limit: u64,
}

impl Bounds {
    pub fn for_states(n_prime: usize) -> Result<Self, ConvertError> {
        if n_prime > MAX_STATES {
            return Err(ConvertError::TooManyStates {
                states: n_prime,
                max: MAX_STATES,
            });
        }
        let n = n_prime as u64;
        Ok(Bounds {
            n_prime,
            singleton_max: 2 * n * n + n,
            offset_limit: 2 * n * n + 3 * n,
        })
    }

    /// Candidate offsets for periodic progressions.
    pub fn periodic_offsets(&self) -> std::ops::Range<u64> {
        self.singleton_max + 1..self.offset_limit
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CnfCycle {
    pub period: u64,
    pub final_positions: BTreeSet<u64>,
}

/// A tail `q_0 .. q_m` followed by a nondeterministic branch from `q_m`
/// into disjoint cycles.
///
/// Length `x <= m` is accepted iff `x` is in `tail_finals`; length `x > m`
/// iff some cycle has `(x - m - 1) mod period` among its final positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChrobakNfa {
    pub tail_length: u64,
    pub tail_finals: BTreeSet<u64>,
    pub cycles: Vec<CnfCycle>,
}

impl ChrobakNfa {
    pub fn empty() -> Self {
        ChrobakNfa {
            tail_length: 0,
            tail_finals: BTreeSet::new(),
            cycles: Vec::new(),
        }
    }

    pub fn state_count(&self) -> u64 {
        self.tail_length + 1 + self.cycles.iter().map(|c| c.period).sum::<u64>()
    }

    pub fn contains(&self, x: u64) -> bool {
        let m = self.tail_length;
        if x <= m {
            return self.tail_finals.contains(&x);
        }
        self.cycles
            .iter()
            .any(|c| c.final_positions.contains(&((x - m - 1) % c.period)))
    }
}

/// Everything [`convert`] computes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conversion {
    pub progressions: ProgressionSet,
    pub cnf: ChrobakNfa,
    pub bounds: Bounds,
    pub zero_accepted: bool,
    /// `None` when no word of positive length is accepted.
    pub normalized: Option<NormalizedNfa>,
    /// One entry per nontrivial component of the normalized automaton.
    pub components: Vec<cycle_gcd::CycleProfile>,
}

/// Converts `nfa` into an equivalent progression set and Chrobak normal form.
pub fn convert(nfa: &UnaryNfa) -> Result<Conversion, ConvertError> {
    let normalization = nfa::normalize(nfa);
    let Some(norm) = normalization.positive else {
        // only the empty word can be accepted; n' is taken as 1 here
        let bounds = Bounds::for_states(1)?;
        let progressions: ProgressionSet = normalization
            .zero_accepted
            .then(|| ArithmeticProgression::singleton(0))
            .into_iter()
            .collect();
        return Ok(Conversion {
            cnf: progressions_to_cnf(&progressions),
            progressions,
            bounds,
            zero_accepted: normalization.zero_accepted,
            normalized: None,
            components: Vec::new(),
        });
    };

    let bounds = Bounds::for_states(norm.n_prime())?;
    let mut progressions: ProgressionSet = nfa
        .accepted_up_to(bounds.singleton_max)
        .into_iter()
        .map(ArithmeticProgression::singleton)
        .collect();

    let dec = scc::decompose(norm.automaton());
    let components = cycle_gcd::profiles(norm.automaton(), &dec);
    let gcds: BTreeMap<usize, u64> = components.iter().map(|p| (p.component, p.gcd)).collect();
    for p in collect_progressions(&norm, &dec, &gcds) {
        progressions.insert(p);
    }

    Ok(Conversion {
        cnf: progressions_to_cnf(&progressions),
        progressions,
        bounds,
        zero_accepted: normalization.zero_accepted,
        normalized: Some(norm),
        components,
    })
}

/// The periodic part of the conversion: for every nontrivial component `D`
/// and every offset `a` in the open interval `(2n² + n, 2n² + 3n)`, emits
/// `(a, gcd(D))` iff the restricted automaton `A_D` has a path of length
/// exactly `a`. Only the smallest passing offset of each residue class
/// modulo `gcd(D)` is kept.
pub fn collect_progressions(
    norm: &NormalizedNfa,
    dec: &SccDecomposition,
    gcds: &BTreeMap<usize, u64>,
) -> BTreeSet<ArithmeticProgression> {
    let bounds = Bounds::for_states(norm.n_prime()).expect("normalized automaton within range");
    let mut out = BTreeSet::new();
    for component in dec.nontrivial_components() {
        let d = gcds[&component];
        let restricted =
            scc::build_restricted(norm, dec, component).expect("component is nontrivial");
        let Some(restricted) = restricted else {
            continue;
        };
        let lengths = restricted.path_lengths_up_to(bounds.offset_limit);
        let mut seen_residues = BTreeSet::new();
        for a in bounds.periodic_offsets() {
            if lengths[a as usize] && seen_residues.insert(a % d) {
                out.insert(ArithmeticProgression::new(a, d));
            }
        }
    }
    out
}

/// Tail of length `max offset`, finals placed on the tail, and one cycle
/// per distinct period carrying the merged final positions.
pub fn progressions_to_cnf(ps: &ProgressionSet) -> ChrobakNfa {
    let m = ps.max_offset().unwrap_or(0);
    let mut tail_finals = BTreeSet::new();
    let mut cycles: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
    for p in ps {
        if p.period == 0 {
            tail_finals.insert(p.offset);
            continue;
        }
        tail_finals.extend((p.offset..=m).step_by(p.period as usize));
        let position = ((p.offset as i128 - m as i128 - 1).rem_euclid(p.period as i128)) as u64;
        cycles.entry(p.period).or_default().insert(position);
    }
    ChrobakNfa {
        tail_length: m,
        tail_finals,
        cycles: cycles
            .into_iter()
            .map(|(period, final_positions)| CnfCycle {
                period,
                final_positions,
            })
            .collect(),
    }
}

pub fn cnf_to_progressions(cnf: &ChrobakNfa) -> ProgressionSet {
    let tail = cnf
        .tail_finals
        .iter()
        .map(|&t| ArithmeticProgression::singleton(t));
    let cycles = cnf.cycles.iter().flat_map(|c| {
        c.final_positions
            .iter()
            .map(move |&h| ArithmeticProgression::new(cnf.tail_length + 1 + h, c.period))
    });
    tail.chain(cycles).collect()
}

/// Materializes the automaton: tail states `0..=m`, then each cycle's
/// states in order, entry `p_{i,0}` first.
pub fn cnf_to_nfa(cnf: &ChrobakNfa) -> UnaryNfa {
    let m = cnf.tail_length as usize;
    let mut edges: Vec<(usize, usize)> = (0..m).map(|i| (i, i + 1)).collect();
    let mut finals: Vec<usize> = cnf.tail_finals.iter().map(|&t| t as usize).collect();
    let mut next = m + 1;
    for c in &cnf.cycles {
        let j = c.period as usize;
        edges.push((m, next));
        edges.extend((0..j).map(|h| (next + h, next + (h + 1) % j)));
        finals.extend(c.final_positions.iter().map(|&h| next + h as usize));
        next += j;
    }
    UnaryNfa::new(next, 0, finals, edges).expect("indices below state count")
}

/// Reads back the Chrobak structure of `nfa`, or `None` if its graph is not
/// a deterministic tail from the initial state followed by one branching
/// state into pairwise disjoint deterministic cycles, with no other edges
/// or states.
pub fn read_cnf(nfa: &UnaryNfa) -> Option<ChrobakNfa> {
    let n = nfa.state_count();
    let succ: Vec<Vec<usize>> = nfa.adjacency();
    let mut seen = vec![false; n];

    // walk the deterministic chain from the initial state
    let mut chain = vec![nfa.initial()];
    seen[nfa.initial()] = true;
    let (tail, cycle_entries): (Vec<usize>, Vec<usize>) = loop {
        let u = *chain.last().unwrap();
        match succ[u][..] {
            [] => break (chain, Vec::new()),
            [v] if !seen[v] => {
                seen[v] = true;
                chain.push(v);
            }
            [v] => {
                // the chain closed a cycle at position j; q_m sits just before it
                let j = chain.iter().position(|&q| q == v).unwrap();
                if j == 0 {
                    return None;
                }
                for &q in &chain[j..] {
                    seen[q] = false;
                }
                chain.truncate(j);
                break (chain, vec![v]);
            }
            _ => break (chain, succ[u].clone()),
        }
    };

    let m = tail.len() - 1;
    let mut finals_by_cycle = Vec::new();
    for entry in cycle_entries {
        if seen[entry] {
            return None;
        }
        let mut members = vec![entry];
        seen[entry] = true;
        loop {
            let u = *members.last().unwrap();
            match succ[u][..] {
                [v] if v == entry => break,
                [v] if !seen[v] => {
                    seen[v] = true;
                    members.push(v);
                }
                _ => return None,
            }
        }
        finals_by_cycle.push(members);
    }
    if seen.iter().any(|&s| !s) {
        return None;
    }

    Some(ChrobakNfa {
        tail_length: m as u64,
        tail_finals: (0..=m)
            .filter(|&i| nfa.is_final(tail[i]))
            .map(|i| i as u64)
            .collect(),
        cycles: finals_by_cycle
            .into_iter()
            .map(|members| CnfCycle {
                period: members.len() as u64,
                final_positions: (0..members.len())
                    .filter(|&h| nfa.is_final(members[h]))
                    .map(|h| h as u64)
                    .collect(),
            })
            .collect(),
    })
}

pub fn is_cnf(nfa: &UnaryNfa) -> bool {
    read_cnf(nfa).is_some()
}
