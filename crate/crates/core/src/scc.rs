//! Strongly connected components, the condensation DAG, and the restricted
//! automaton `A_D` whose accepting paths are exactly those whose last visit
//! to a nontrivial component happens in `D`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::nfa::{self, NormalizedNfa, UnaryNfa};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SccError {
    #[error("component {0} does not exist")]
    UnknownComponent(usize),
    #[error("component {0} is trivial")]
    TrivialComponent(usize),
}

/// Components are numbered in topological order: every condensation edge
/// `(c, c')` has `c < c'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SccDecomposition {
    component_of: Vec<usize>,
    components: Vec<Vec<usize>>,
    condensation_edges: BTreeSet<(usize, usize)>,
    nontrivial: Vec<bool>,
}

impl SccDecomposition {
    pub fn component_of(&self, state: usize) -> usize {
        self.component_of[state]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component(&self, id: usize) -> &[usize] {
        &self.components[id]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn condensation_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.condensation_edges
    }

    /// At least two states, or a single state with a self-loop.
    pub fn is_nontrivial(&self, id: usize) -> bool {
        self.nontrivial[id]
    }

    pub fn nontrivial_components(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.components.len()).filter(|&c| self.nontrivial[c])
    }
}

/// Kosaraju's two-pass decomposition.
pub fn decompose(nfa: &UnaryNfa) -> SccDecomposition {
    let n = nfa.state_count();
    let adj = nfa.adjacency();
    let radj = nfa.reverse_adjacency();

    // first pass: finishing order on the forward graph
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let u = top.0;
            if let Some(&v) = adj[u].get(top.1) {
                top.1 += 1;
                if !visited[v] {
                    visited[v] = true;
                    stack.push((v, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }

    // second pass: reverse graph in decreasing finishing time
    const UNASSIGNED: usize = usize::MAX;
    let mut component_of = vec![UNASSIGNED; n];
    let mut components = Vec::new();
    for &root in order.iter().rev() {
        if component_of[root] != UNASSIGNED {
            continue;
        }
        let id = components.len();
        let mut members = vec![root];
        component_of[root] = id;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &v in &radj[u] {
                if component_of[v] == UNASSIGNED {
                    component_of[v] = id;
                    members.push(v);
                    stack.push(v);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }

    let condensation_edges = nfa
        .edges()
        .iter()
        .map(|&(u, v)| (component_of[u], component_of[v]))
        .filter(|(c, d)| c != d)
        .collect();
    let nontrivial = components
        .iter()
        .map(|members| members.len() > 1 || nfa.has_edge(members[0], members[0]))
        .collect();

    SccDecomposition {
        component_of,
        components,
        condensation_edges,
        nontrivial,
    }
}

/// `Reach(D)`: every state reachable from a state of `component`, including
/// the component itself.
pub fn reach_states(nfa: &UnaryNfa, dec: &SccDecomposition, component: usize) -> BTreeSet<usize> {
    let reached = nfa::reachable_from(&nfa.adjacency(), dec.component(component).iter().copied());
    (0..nfa.state_count()).filter(|&q| reached[q]).collect()
}

/// Builds `A_D` for the nontrivial component `component` of `norm`.
///
/// States of every other nontrivial component reachable from `D` are
/// deleted, then every edge entering `Reach(D) \ D` from outside `Reach(D)`
/// is deleted, and the result is trimmed. `Ok(None)` means no accepting
/// path survives.
pub fn build_restricted(
    norm: &NormalizedNfa,
    dec: &SccDecomposition,
    component: usize,
) -> Result<Option<NormalizedNfa>, SccError> {
    if component >= dec.len() {
        return Err(SccError::UnknownComponent(component));
    }
    if !dec.is_nontrivial(component) {
        return Err(SccError::TrivialComponent(component));
    }
    let aut = norm.automaton();
    let reach = reach_states(aut, dec, component);
    let in_d = |q: usize| dec.component_of(q) == component;
    let deleted = |q: usize| {
        let c = dec.component_of(q);
        c != component && dec.is_nontrivial(c) && reach.contains(&q)
    };
    let edges = aut.edges().iter().copied().filter(|&(u, v)| {
        if deleted(u) || deleted(v) {
            return false;
        }
        !(!reach.contains(&u) && reach.contains(&v) && !in_d(v))
    });
    let pruned = UnaryNfa::new(
        aut.state_count(),
        aut.initial(),
        [norm.final_state()],
        edges,
    )
    .expect("same state space");
    Ok(nfa::trim(&pruned).map(|trimmed| {
        NormalizedNfa::from_shaped(trimmed, norm.zero_accepted())
            .expect("restriction of a normalized automaton stays normalized")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nfa::normalize;

    fn nfa(text: &str) -> UnaryNfa {
        text.parse().unwrap()
    }

    #[test]
    fn chain_is_all_trivial() {
        let dec = decompose(&nfa("states 3\ninitial 0\nfinal 2\nedge 0 1\nedge 1 2\n"));
        assert_eq!(dec.components(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(dec.condensation_edges(), &BTreeSet::from([(0, 1), (1, 2)]));
        assert_eq!(dec.nontrivial_components().count(), 0);
    }

    #[test]
    fn two_cycle_with_exit() {
        let dec = decompose(&nfa(
            "states 3\ninitial 0\nfinal 2\nedge 0 1\nedge 1 0\nedge 1 2\n",
        ));
        assert_eq!(dec.components(), &[vec![0, 1], vec![2]]);
        assert!(dec.is_nontrivial(0));
        assert!(!dec.is_nontrivial(1));
    }

    #[test]
    fn self_loop_is_nontrivial() {
        let dec = decompose(&nfa("states 2\ninitial 0\nfinal 1\nedge 0 0\nedge 0 1\n"));
        assert!(dec.is_nontrivial(dec.component_of(0)));
        assert!(!dec.is_nontrivial(dec.component_of(1)));
    }

    #[test]
    fn example1_has_one_nontrivial_component_of_size_11() {
        let dec = decompose(&crate::fixtures::example1_graph());
        let nontrivial: Vec<usize> = dec.nontrivial_components().collect();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(dec.component(nontrivial[0]).len(), 11);
    }

    #[test]
    fn reach_of_sink_and_source() {
        let a = nfa("states 3\ninitial 0\nfinal 2\nedge 0 1\nedge 1 0\nedge 1 2\n");
        let dec = decompose(&a);
        assert_eq!(
            reach_states(&a, &dec, dec.component_of(2)),
            BTreeSet::from([2])
        );
        assert_eq!(
            reach_states(&a, &dec, dec.component_of(0)),
            BTreeSet::from([0, 1, 2])
        );
    }

    #[test]
    fn reach_through_sequential_cycles() {
        // 0 -> {1,2} -> {3,4} -> 5
        let a = nfa("states 6\ninitial 0\nfinal 5\nedge 0 1\nedge 1 2\nedge 2 1\nedge 2 3\nedge 3 4\nedge 4 3\nedge 4 5\n");
        let dec = decompose(&a);
        let d1 = dec.component_of(1);
        assert_eq!(reach_states(&a, &dec, d1), BTreeSet::from([1, 2, 3, 4, 5]));
    }

    #[test]
    fn restricted_of_single_component_is_unchanged() {
        let norm = normalize(&crate::fixtures::single_scc()).positive.unwrap();
        let dec = decompose(norm.automaton());
        let d = dec.nontrivial_components().next().unwrap();
        let restricted = build_restricted(&norm, &dec, d).unwrap().unwrap();
        assert_eq!(restricted, norm);
    }

    #[test]
    fn restricted_sequential_removes_later_cycle() {
        let norm = normalize(&crate::fixtures::sequential_sccs())
            .positive
            .unwrap();
        let dec = decompose(norm.automaton());
        let ds: Vec<usize> = dec.nontrivial_components().collect();
        assert_eq!(ds.len(), 2);
        let first = build_restricted(&norm, &dec, ds[0]).unwrap().unwrap();
        let second_size = dec.component(ds[1]).len();
        assert_eq!(first.n_prime(), norm.n_prime() - second_size);
    }

    #[test]
    fn restricted_rejects_trivial_component() {
        let norm = normalize(&crate::fixtures::single_scc()).positive.unwrap();
        let dec = decompose(norm.automaton());
        let trivial = dec.component_of(norm.initial());
        assert_eq!(
            build_restricted(&norm, &dec, trivial),
            Err(SccError::TrivialComponent(trivial))
        );
        assert_eq!(
            build_restricted(&norm, &dec, 99),
            Err(SccError::UnknownComponent(99))
        );
    }
}
