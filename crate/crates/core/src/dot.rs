//! Graphviz rendering of an automorphism as a pair of labelled forests.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::automorphism::Automorphism;
use crate::word_algebra::SimpleWord;

fn node_id(side: &str, w: &SimpleWord) -> String {
    let mut id = format!("{side}_x{}", w.gen() + 1);
    for a in w.path() {
        let _ = write!(id, "_{}", a + 1);
    }
    id
}

fn forest(out: &mut String, side: &str, title: &str, leaves: &[(SimpleWord, usize)]) {
    let mut inner = BTreeSet::new();
    for (leaf, _) in leaves {
        let mut w = leaf.clone();
        while let Some((p, _)) = w.parent() {
            inner.insert(p.clone());
            w = p;
        }
    }
    let _ = writeln!(out, "  subgraph cluster_{side} {{");
    let _ = writeln!(out, "    label=\"{title}\";");
    for w in &inner {
        let root = if w.depth() == 0 { format!("x{}", w.gen() + 1) } else { String::new() };
        let _ = writeln!(out, "    {} [label=\"{root}\", shape=circle, width=0.15];", node_id(side, w));
    }
    for (leaf, number) in leaves {
        let _ = writeln!(out, "    {} [label=\"{number}\", shape=plaintext];", node_id(side, leaf));
    }
    for w in inner.iter().chain(leaves.iter().map(|(l, _)| l)) {
        if let Some((p, _)) = w.parent() {
            let _ = writeln!(out, "    {} -> {};", node_id(side, &p), node_id(side, w));
        }
    }
    let _ = writeln!(out, "  }}");
}

/// DOT text for the domain forest `Y` and range forest `Z` of `psi`.
///
/// Domain leaves are numbered `1..=|Y|` in canonical order and each range
/// leaf carries the number of its preimage.
pub fn emit_dot(psi: &Automorphism) -> String {
    let domain: Vec<(SimpleWord, usize)> = psi
        .domain()
        .leaves()
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, y)| (y, i + 1))
        .collect();
    let mut range: Vec<(SimpleWord, usize)> = psi
        .range()
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, z)| (z, i + 1))
        .collect();
    range.sort();
    let mut out = String::from("digraph automorphism {\n  node [fontsize=10];\n  edge [arrowhead=none];\n");
    forest(&mut out, "domain", "domain", &domain);
    forest(&mut out, "range", "range", &range);
    out.push_str("}\n");
    out
}
