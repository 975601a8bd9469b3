//! Graphviz output.

use std::fmt::Write as _;

use crate::poset::{LabeledGraph, Poset};

/// The Hasse diagram as a DOT digraph with edges `i -> j`, `i < j`.
pub fn export_dot_poset(p: &Poset) -> String {
    export_dot_graph(&p.hasse())
}

pub fn export_dot_graph(g: &LabeledGraph) -> String {
    let mut s = String::from("digraph {\n");
    for v in 1..=g.n() {
        writeln!(s, "  {v};").unwrap();
    }
    for (i, j) in g.edges() {
        writeln!(s, "  {i} -> {j};").unwrap();
    }
    s.push_str("}\n");
    s
}

/// One cluster per tree; node `t<k>_<v>` carries label `v`.
pub fn export_dot_trees(trees: &[LabeledGraph]) -> String {
    let mut s = String::from("digraph {\n");
    for (k, t) in trees.iter().enumerate() {
        let k = k + 1;
        writeln!(s, "  subgraph cluster_{k} {{\n    label=\"T{k}\";").unwrap();
        for v in 1..=t.n() {
            writeln!(s, "    t{k}_{v} [label=\"{v}\"];").unwrap();
        }
        for (i, j) in t.edges() {
            writeln!(s, "    t{k}_{i} -> t{k}_{j};").unwrap();
        }
        s.push_str("  }\n");
    }
    s.push_str("}\n");
    s
}
