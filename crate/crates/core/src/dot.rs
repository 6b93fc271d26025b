//! Graphviz output: the Hasse diagram and the containment order of the spectrum.

use std::fmt::Write;

use crate::analysis::Analysis;
use crate::lattice::ResiduatedLattice;

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

/// One node per element, one edge per cover pair, drawn bottom-up.
pub fn hasse_dot(l: &ResiduatedLattice) -> String {
    let name = if l.name().is_empty() { "lattice" } else { l.name() };
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    out.push_str("  rankdir=BT;\n  node [shape=circle];\n");
    for x in 0..l.size() {
        let _ = writeln!(out, "  n{x} [label={}];", quote(l.label(x)));
    }
    for (a, b) in l.order().covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// One node per prime filter, one edge per covering containment. Minimal
/// primes get a double border, maximal filters are boxes.
pub fn spectrum_dot(an: &Analysis) -> String {
    let l = an.lattice();
    let spec = an.spectrum();
    let name = if l.name().is_empty() { "spec".to_string() } else { format!("Spec({})", l.name()) };
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(&name));
    out.push_str("  rankdir=BT;\n  node [shape=ellipse];\n");
    for p in 0..spec.len() {
        let mut attrs = vec![format!("label={}", quote(&l.format_set(spec.prime(p).elements())))];
        if spec.is_maximal(p) {
            attrs.push("shape=box".into());
        }
        if spec.is_minimal(p) {
            attrs.push("peripheries=2".into());
        }
        let _ = writeln!(out, "  p{p} [{}];", attrs.join(", "));
    }
    for p in 0..spec.len() {
        for q in spec.above(p).iter().filter(|&q| q != p) {
            let covered = !spec
                .above(p)
                .iter()
                .any(|r| r != p && r != q && spec.contained(r, q));
            if covered {
                let _ = writeln!(out, "  p{p} -> p{q};");
            }
        }
    }
    out.push_str("}\n");
    out
}
