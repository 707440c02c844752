//! Graphviz rendering of a Chrobak normal form automaton: tail states are
//! boxes, cycle states circles, final states filled.

use std::fmt::Write;

use chrobak::ChrobakNfa;

pub fn render(cnf: &ChrobakNfa) -> String {
    let mut out = String::from("digraph cnf {\n  rankdir=LR;\n  start [shape=point];\n");
    let style = |is_final: bool| if is_final { ", style=filled" } else { "" };
    for i in 0..=cnf.tail_length {
        let fill = style(cnf.tail_finals.contains(&i));
        writeln!(out, "  t{i} [shape=box, label=\"q{i}\"{fill}];").unwrap();
    }
    for (c, cycle) in cnf.cycles.iter().enumerate() {
        for h in 0..cycle.period {
            let fill = style(cycle.final_positions.contains(&h));
            writeln!(out, "  c{c}_{h} [shape=circle, label=\"p{c},{h}\"{fill}];").unwrap();
        }
    }
    out.push_str("  start -> t0;\n");
    for i in 0..cnf.tail_length {
        writeln!(out, "  t{i} -> t{};", i + 1).unwrap();
    }
    for (c, cycle) in cnf.cycles.iter().enumerate() {
        writeln!(out, "  t{} -> c{c}_0;", cnf.tail_length).unwrap();
        for h in 0..cycle.period {
            writeln!(out, "  c{c}_{h} -> c{c}_{};", (h + 1) % cycle.period).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrobak::chrobak::progressions_to_cnf;

    #[test]
    fn renders_tail_and_cycles() {
        let cnf = progressions_to_cnf(&"1\n3+2N\n".parse().unwrap());
        let dot = render(&cnf);
        assert!(dot.starts_with("digraph cnf {"));
        assert!(dot.contains("t1 [shape=box, label=\"q1\", style=filled];"));
        assert!(dot.contains("t3 -> c0_0;"));
        assert!(dot.contains("c0_1 -> c0_0;"));
        assert!(dot.ends_with("}\n"));
    }
}
