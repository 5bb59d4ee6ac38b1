use std::fmt::Write;

use super::nwa::Nwa;
use crate::model::Alphabet;

/// Graphviz rendering; epsilon moves are labeled `ε`.
pub fn to_dot(a: &Nwa, alphabet: &Alphabet, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{name}\" {{");
    let _ = writeln!(out, "  rankdir=LR;");
    for p in 0..a.num_states() {
        let shape = if a.is_final(p) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  s{p} [shape={shape}];");
    }
    for (i, &p) in a.initials().iter().enumerate() {
        let _ = writeln!(out, "  init{i} [shape=point];");
        let _ = writeln!(out, "  init{i} -> s{p};");
    }
    for p in 0..a.num_states() {
        for &(l, q) in a.transitions(p) {
            let _ = writeln!(out, "  s{p} -> s{q} [label=\"{}\"];", alphabet.letter_name(l));
        }
        for &q in a.epsilons(p) {
            let _ = writeln!(out, "  s{p} -> s{q} [label=\"ε\"];");
        }
    }
    out.push_str("}\n");
    out
}
