//! Named hand-built automata used by the tests and the CLI `--fixture` flag.

use crate::nfa::UnaryNfa;

pub const NAMES: &[&str] = &[
    "example1",
    "singleton",
    "self-loop",
    "two-cycle",
    "chain",
    "single-scc",
    "sequential-sccs",
    "parallel-sccs",
    "parallel-cycles",
    "empty",
];

pub fn by_name(name: &str) -> Option<UnaryNfa> {
    Some(match name {
        "example1" => example1_graph(),
        "singleton" => build(1, &[0], &[]),
        "self-loop" => build(1, &[0], &[(0, 0)]),
        "two-cycle" => build(2, &[0], &[(0, 1), (1, 0)]),
        "chain" => build(3, &[2], &[(0, 1), (1, 2)]),
        "single-scc" => single_scc(),
        "sequential-sccs" => sequential_sccs(),
        "parallel-sccs" => parallel_sccs(),
        "parallel-cycles" => parallel_cycles(),
        "empty" => build(3, &[2], &[(0, 1), (1, 0)]),
        _ => return None,
    })
}

pub fn all() -> Vec<(&'static str, UnaryNfa)> {
    NAMES
        .iter()
        .map(|&name| (name, by_name(name).expect("listed fixture")))
        .collect()
}

fn build(states: usize, finals: &[usize], edges: &[(usize, usize)]) -> UnaryNfa {
    UnaryNfa::new(states, 0, finals.iter().copied(), edges.iter().copied())
        .expect("fixture indices in range")
}

/// A 7-cycle through `v` with a 5-cycle hanging off it: the 5-cycle can only
/// be reached by going around part of the 7-cycle, and the exit is at `v`,
/// so any use of the 5-cycle forces a full turn of the 7-cycle.
///
/// States: `q0 = 0`, `u1..u3 = 1..3`, `v = 4`, `c1..c6 = 5..10`,
/// `d1..d4 = 11..14`, `w1..w5 = 15..19`, `qF = 20`. The language is
/// `{10 + 7x : x >= 0} ∪ {10 + 7x + 5y : x >= 1, y >= 0}`.
pub fn example1_graph() -> UnaryNfa {
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 4)];
    // 7-cycle v -> c1 -> .. -> c6 -> v
    edges.extend([(4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10), (10, 4)]);
    // 5-cycle c3 -> d1 -> .. -> d4 -> c3
    edges.extend([(7, 11), (11, 12), (12, 13), (13, 14), (14, 7)]);
    // exit v -> w1 -> .. -> w5 -> qF
    edges.extend([(4, 15), (15, 16), (16, 17), (17, 18), (18, 19), (19, 20)]);
    build(21, &[20], &edges)
}

/// One component `{1,2,3}` holding the 2-cycle `1 2` and the 3-cycle
/// `1 3 2`, entered at 1 and left from 2.
pub fn single_scc() -> UnaryNfa {
    build(5, &[4], &[(0, 1), (1, 2), (2, 1), (1, 3), (3, 2), (2, 4)])
}

/// `D1 = {1,2}` (2-cycle) feeds `D2 = {3,4,5}` (3-cycle). The edge `0 -> 4`
/// enters `D2` directly and `1 -> 6` leaves `D1` straight for the exit.
pub fn sequential_sccs() -> UnaryNfa {
    build(
        8,
        &[7],
        &[
            (0, 1),
            (1, 2),
            (2, 1),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 3),
            (5, 6),
            (6, 7),
            (0, 4),
            (1, 6),
        ],
    )
}

/// Branch at 1 into `D1 = {2,3}` and `D2 = {4,5,6}`; `D1` can also feed
/// `D2` through `3 -> 4`. Both rejoin at 7.
pub fn parallel_sccs() -> UnaryNfa {
    build(
        9,
        &[8],
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 2),
            (1, 4),
            (4, 5),
            (5, 6),
            (6, 4),
            (3, 7),
            (6, 7),
            (7, 8),
            (3, 4),
        ],
    )
}

/// A 2-cycle and a 3-cycle on separate branches from the initial state.
pub fn parallel_cycles() -> UnaryNfa {
    build(
        8,
        &[7],
        &[
            (0, 1),
            (1, 2),
            (2, 1),
            (0, 3),
            (3, 4),
            (4, 5),
            (5, 3),
            (2, 6),
            (5, 6),
            (6, 7),
        ],
    )
}
