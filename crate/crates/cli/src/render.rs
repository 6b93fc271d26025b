use serde_json::{json, Value};

use reslat_core::spectra::{FiniteTopology, Separation};
use reslat_core::{ElementSet, Filter, PointSet, ResiduatedLattice};

pub fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

pub fn line(out: &mut String, s: String) {
    out.push_str(&s);
    out.push('\n');
}

pub fn labels(l: &ResiduatedLattice, set: ElementSet) -> Value {
    json!(l.label_set(set))
}

pub fn sets(l: &ResiduatedLattice, filters: &[Filter]) -> String {
    if filters.is_empty() {
        return "none".into();
    }
    filters
        .iter()
        .map(|f| l.format_set(f.elements()))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn display_name(l: &ResiduatedLattice) -> &str {
    if l.name().is_empty() {
        "(unnamed)"
    } else {
        l.name()
    }
}

pub fn mark(value: bool) -> char {
    if value {
        'x'
    } else {
        ' '
    }
}

/// `" (a v b = 1)"`-style note for a witness pair, or nothing.
pub fn pair_note(l: &ResiduatedLattice, pair: Option<(usize, usize)>, op: &str) -> String {
    match pair {
        Some((x, y)) => format!(" ({} {op} {} = {})", l.label(x), l.label(y), l.label(l.top())),
        None => String::new(),
    }
}

pub fn point_set(names: &[String], s: PointSet) -> String {
    format!("{{{}}}", s.iter().map(|i| names[i].as_str()).collect::<Vec<_>>().join(", "))
}

pub fn point_pair(names: &[String], pair: Option<(usize, usize)>) -> String {
    match pair {
        Some((p, q)) => format!(" (witness {}, {})", names[p], names[q]),
        None => String::new(),
    }
}

pub fn topology_json(t: &FiniteTopology, name: impl Fn(usize) -> Value, sep: Option<&Separation>) -> Value {
    let names: Vec<Value> = (0..t.len()).map(&name).collect();
    let as_names = |s: PointSet| -> Value { Value::Array(s.iter().map(|i| names[i].clone()).collect()) };
    let mut v = json!({
        "space": t.space(),
        "variant": t.variant(),
        "points": names.clone(),
        "min_nbhds": t.min_nbhds().iter().map(|&s| as_names(s)).collect::<Vec<_>>(),
        "opens": t.opens().into_iter().map(as_names).collect::<Vec<_>>(),
    });
    if let Some(sep) = sep {
        v["t1"] = json!(sep.t1);
        v["hausdorff"] = json!(sep.hausdorff);
        v["normal"] = json!(sep.normal);
    }
    v
}
