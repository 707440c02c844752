//! Ground truth for the conversion: subset-construction determinization,
//! a last-component path enumerator, and the naive Diophantine
//! over-approximation that ignores dependencies between cycles.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::cycle_gcd::simple_cycle_lengths;
use crate::nfa::{self, NormalizedNfa, UnaryNfa};
use crate::scc::SccDecomposition;
use crate::semilinear::{self, ArithmeticProgression, EventuallyPeriodicSet, ProgressionSet};

pub const DEFAULT_DETERMINIZATION_LIMIT: usize = 20;
pub const PATH_ENUMERATION_MAX_STATES: usize = 12;
pub const PATH_ENUMERATION_MAX_LENGTH: u64 = 40;
pub const DEFAULT_OVERAPPROX_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{states} states exceeds the limit of {limit}")]
    TooManyStates { states: usize, limit: usize },
    #[error("length bound {bound} exceeds the limit of {limit}")]
    BoundTooLarge { bound: u64, limit: u64 },
}

/// The chain of reachable-state sets `S_0, S_1, ..` of a unary NFA. It is
/// eventually periodic: `S_{tail_length + cycle_length} = S_{tail_length}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoShape {
    pub subset_chain: Vec<Vec<bool>>,
    pub tail_length: usize,
    pub cycle_length: usize,
}

pub fn rho_shape(nfa: &UnaryNfa, limit: usize) -> Result<RhoShape, OracleError> {
    let n = nfa.state_count();
    if n > limit {
        return Err(OracleError::TooManyStates { states: n, limit });
    }
    let adj = nfa.adjacency();
    let mut current = vec![false; n];
    current[nfa.initial()] = true;
    let mut first_seen: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut chain = Vec::new();
    loop {
        if let Some(&start) = first_seen.get(&current) {
            return Ok(RhoShape {
                tail_length: start,
                cycle_length: chain.len() - start,
                subset_chain: chain,
            });
        }
        first_seen.insert(current.clone(), chain.len());
        let mut next = vec![false; n];
        for (u, _) in current.iter().enumerate().filter(|(_, &on)| on) {
            for &v in &adj[u] {
                next[v] = true;
            }
        }
        chain.push(std::mem::replace(&mut current, next));
    }
}

/// The exact language of `nfa` by subset construction.
pub fn determinize(nfa: &UnaryNfa) -> Result<EventuallyPeriodicSet, OracleError> {
    determinize_with_limit(nfa, DEFAULT_DETERMINIZATION_LIMIT)
}

pub fn determinize_with_limit(
    nfa: &UnaryNfa,
    limit: usize,
) -> Result<EventuallyPeriodicSet, OracleError> {
    let rho = rho_shape(nfa, limit)?;
    let window = rho
        .subset_chain
        .iter()
        .map(|s| nfa.finals().iter().any(|&f| s[f]))
        .collect();
    Ok(EventuallyPeriodicSet::from_window(
        rho.tail_length as u64,
        rho.cycle_length as u64,
        window,
    ))
}

/// Lengths `<= bound` of walks from the initial to the final state of
/// `norm` whose last state inside a nontrivial component lies in
/// `component`.
///
/// Walks are tracked as (state, last nontrivial component seen) pairs, one
/// layer per length.
pub fn enumerate_paths_lastscc(
    norm: &NormalizedNfa,
    dec: &SccDecomposition,
    component: usize,
    bound: u64,
) -> Result<BTreeSet<u64>, OracleError> {
    let aut = norm.automaton();
    if aut.state_count() > PATH_ENUMERATION_MAX_STATES {
        return Err(OracleError::TooManyStates {
            states: aut.state_count(),
            limit: PATH_ENUMERATION_MAX_STATES,
        });
    }
    if bound > PATH_ENUMERATION_MAX_LENGTH {
        return Err(OracleError::BoundTooLarge {
            bound,
            limit: PATH_ENUMERATION_MAX_LENGTH,
        });
    }
    let label = |q: usize, last: Option<usize>| {
        let c = dec.component_of(q);
        if dec.is_nontrivial(c) {
            Some(c)
        } else {
            last
        }
    };
    let adj = aut.adjacency();
    let mut layer: BTreeSet<(usize, Option<usize>)> =
        BTreeSet::from([(norm.initial(), label(norm.initial(), None))]);
    let mut lengths = BTreeSet::new();
    for x in 0..=bound {
        if layer.contains(&(norm.final_state(), Some(component))) {
            lengths.insert(x);
        }
        layer = layer
            .iter()
            .flat_map(|&(u, last)| adj[u].iter().map(move |&v| (v, last)))
            .map(|(v, last)| (v, label(v, last)))
            .collect();
    }
    Ok(lengths)
}

/// Lengths of all simple paths from the initial state to some final state.
fn simple_path_lengths(nfa: &UnaryNfa) -> BTreeSet<u64> {
    fn extend(
        nfa: &UnaryNfa,
        adj: &[Vec<usize>],
        u: usize,
        depth: u64,
        on_path: &mut [bool],
        out: &mut BTreeSet<u64>,
    ) {
        if nfa.is_final(u) {
            out.insert(depth);
        }
        for &v in &adj[u] {
            if !on_path[v] {
                on_path[v] = true;
                extend(nfa, adj, v, depth + 1, on_path, out);
                on_path[v] = false;
            }
        }
    }
    let adj = nfa.adjacency();
    let mut on_path = vec![false; nfa.state_count()];
    on_path[nfa.initial()] = true;
    let mut out = BTreeSet::new();
    extend(nfa, &adj, nfa.initial(), 0, &mut on_path, &mut out);
    out
}

/// `{x0 + a_1 x_1 + .. + a_p x_p}` where `x0` ranges over simple accepting
/// path lengths and the `a_i` over all simple cycle lengths, treating the
/// cycles as freely combinable. Always a superset of the language; equal
/// to it only when no cycle depends on another.
pub fn diophantine_overapprox(nfa: &UnaryNfa, limit: usize) -> Result<ProgressionSet, OracleError> {
    let Some(trimmed) = nfa::trim(nfa) else {
        return Ok(ProgressionSet::new());
    };
    let n = trimmed.state_count();
    if n > limit {
        return Err(OracleError::TooManyStates { states: n, limit });
    }
    let coins: Vec<u64> = simple_cycle_lengths(&trimmed.adjacency())
        .into_iter()
        .map(|l| l as u64)
        .collect();
    let mut out = ProgressionSet::new();
    let decomposition = (!coins.is_empty()).then(|| {
        semilinear::numerical_semigroup_decompose(&coins, n as u64)
            .expect("simple cycles are no longer than the state count")
    });
    for x0 in simple_path_lengths(&trimmed) {
        match &decomposition {
            None => {
                out.insert(ArithmeticProgression::singleton(x0));
            }
            Some(d) => {
                for s in &d.sporadic {
                    out.insert(ArithmeticProgression::singleton(x0 + s));
                }
                out.insert(ArithmeticProgression::new(x0 + d.tail_offset, d.gcd));
            }
        }
    }
    Ok(out)
}
