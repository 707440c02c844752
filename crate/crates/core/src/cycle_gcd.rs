//! `gcd(D)` for a nontrivial strongly connected component `D`: the gcd of
//! all simple cycle lengths, read off the diagonals of the boolean powers
//! `M, M^2, .., M^|D|` of the component's adjacency matrix.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::nfa::UnaryNfa;
use crate::scc::SccDecomposition;

/// Component size accepted by [`simple_cycle_gcd_bruteforce`] by default.
pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleGcdError {
    #[error("component has no cycle")]
    Trivial,
    #[error("component has {size} states, brute force limit is {limit}")]
    TooLarge { size: usize, limit: usize },
}

/// Square boolean matrix with bit-packed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolMatrix {
    size: usize,
    rows: Vec<Vec<u64>>,
}

impl BoolMatrix {
    pub fn new(size: usize) -> Self {
        BoolMatrix {
            size,
            rows: vec![vec![0; size.div_ceil(64)]; size],
        }
    }

    pub fn from_edges(size: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = BoolMatrix::new(size);
        for (i, j) in edges {
            m.set(i, j);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i][j / 64] |= 1 << (j % 64);
    }

    /// Boolean (OR of ANDs) product.
    pub fn mul(&self, other: &BoolMatrix) -> BoolMatrix {
        assert_eq!(self.size, other.size);
        let mut out = BoolMatrix::new(self.size);
        for i in 0..self.size {
            for k in 0..self.size {
                if self.get(i, k) {
                    for (o, r) in out.rows[i].iter_mut().zip(&other.rows[k]) {
                        *o |= r;
                    }
                }
            }
        }
        out
    }

    pub fn has_true_diagonal(&self) -> bool {
        (0..self.size).any(|i| self.get(i, i))
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|i| (0..self.size).filter(|&j| self.get(i, j)).collect())
            .collect()
    }
}

/// Lengths `j <= size` for which some closed walk of length `j` exists.
pub fn cycle_lengths_via_powers(adj: &BoolMatrix) -> Result<BTreeSet<usize>, CycleGcdError> {
    let mut lengths = BTreeSet::new();
    let mut power = adj.clone();
    for j in 1..=adj.size() {
        if j > 1 {
            power = power.mul(adj);
        }
        if power.has_true_diagonal() {
            lengths.insert(j);
        }
    }
    if lengths.is_empty() {
        Err(CycleGcdError::Trivial)
    } else {
        Ok(lengths)
    }
}

pub fn scc_gcd(adj: &BoolMatrix) -> Result<u64, CycleGcdError> {
    Ok(cycle_lengths_via_powers(adj)?
        .into_iter()
        .fold(0u64, |g, j| g.gcd(&(j as u64))))
}

/// Lengths of all simple cycles, each cycle rooted at its smallest vertex.
/// Exponential; meant for small graphs only.
pub(crate) fn simple_cycle_lengths(adj: &[Vec<usize>]) -> BTreeSet<usize> {
    fn extend(
        adj: &[Vec<usize>],
        root: usize,
        u: usize,
        depth: usize,
        on_path: &mut [bool],
        out: &mut BTreeSet<usize>,
    ) {
        for &v in &adj[u] {
            if v == root {
                out.insert(depth);
            } else if v > root && !on_path[v] {
                on_path[v] = true;
                extend(adj, root, v, depth + 1, on_path, out);
                on_path[v] = false;
            }
        }
    }

    let mut out = BTreeSet::new();
    let mut on_path = vec![false; adj.len()];
    for root in 0..adj.len() {
        on_path[root] = true;
        extend(adj, root, root, 1, &mut on_path, &mut out);
        on_path[root] = false;
    }
    out
}

/// The gcd of simple cycle lengths by explicit enumeration.
pub fn simple_cycle_gcd_bruteforce(adj: &BoolMatrix, limit: usize) -> Result<u64, CycleGcdError> {
    if adj.size() > limit {
        return Err(CycleGcdError::TooLarge {
            size: adj.size(),
            limit,
        });
    }
    let lengths = simple_cycle_lengths(&adj.adjacency());
    if lengths.is_empty() {
        return Err(CycleGcdError::Trivial);
    }
    Ok(lengths.into_iter().fold(0u64, |g, l| g.gcd(&(l as u64))))
}

/// Adjacency matrix of `nfa` restricted to `states`, renumbered densely in
/// the given order.
pub fn component_matrix(nfa: &UnaryNfa, states: &[usize]) -> BoolMatrix {
    let index = |q: usize| states.binary_search(&q).ok();
    debug_assert!(states.windows(2).all(|w| w[0] < w[1]));
    BoolMatrix::from_edges(
        states.len(),
        nfa.edges()
            .iter()
            .filter_map(|&(u, v)| Some((index(u)?, index(v)?))),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleProfile {
    pub component: usize,
    /// Global state ids, in matrix order.
    pub states: Vec<usize>,
    pub witness_lengths: BTreeSet<usize>,
    pub gcd: u64,
}

impl CycleProfile {
    pub fn component_size(&self) -> usize {
        self.states.len()
    }
}

pub fn profile(
    nfa: &UnaryNfa,
    dec: &SccDecomposition,
    component: usize,
) -> Result<CycleProfile, CycleGcdError> {
    let states = dec.component(component).to_vec();
    let witness_lengths = cycle_lengths_via_powers(&component_matrix(nfa, &states))?;
    let gcd = witness_lengths
        .iter()
        .fold(0u64, |g, &j| g.gcd(&(j as u64)));
    Ok(CycleProfile {
        component,
        states,
        witness_lengths,
        gcd,
    })
}

/// Profiles of every nontrivial component, in component order.
pub fn profiles(nfa: &UnaryNfa, dec: &SccDecomposition) -> Vec<CycleProfile> {
    dec.nontrivial_components()
        .map(|c| profile(nfa, dec, c).expect("nontrivial components have cycles"))
        .collect()
}
