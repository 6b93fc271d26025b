//! JSON lattice documents.
//!
//! A document lists the carrier labels, the cover pairs of the order and the
//! `*` Cayley table by label (row = left operand). The residuum table is
//! optional on input and always written on output.
//!
//! The canonical text form has keys in sorted order, the bottom first and the
//! top last among the labels, one table row per line and LF line endings, so
//! serializing a parsed canonical document reproduces it byte for byte.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

use crate::error::Error;
use crate::lattice::{derive_residuum, BoundedLattice, RawTables, ResiduatedLattice};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imp: Option<Vec<Vec<String>>>,
    pub labels: Vec<String>,
    #[serde(default)]
    pub name: String,
    pub odot: Vec<Vec<String>>,
    pub order: Vec<(String, String)>,
    pub size: usize,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("schema error at line {line}, column {column}: {source}")]
    Json {
        line: usize,
        column: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error(transparent)]
    Lattice(#[from] Error),
}

impl From<serde_json::Error> for IoError {
    fn from(source: serde_json::Error) -> Self {
        IoError::Json {
            line: source.line(),
            column: source.column(),
            source,
        }
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

pub fn parse_lattice(text: &str) -> Result<ResiduatedLattice, IoError> {
    let doc: LatticeDocument = serde_json::from_str(text)?;
    doc.to_lattice()
}

impl LatticeDocument {
    pub fn to_lattice(&self) -> Result<ResiduatedLattice, IoError> {
        let n = self.labels.len();
        if self.size != n {
            return Err(schema("size", format!("size is {} but {} labels are given", self.size, n)));
        }
        if n == 0 {
            return Err(schema("labels", "at least one label is required"));
        }
        let mut index = HashMap::new();
        for (i, label) in self.labels.iter().enumerate() {
            if label.is_empty() {
                return Err(schema(format!("labels[{i}]"), "empty label"));
            }
            if index.insert(label.as_str(), i).is_some() {
                return Err(schema(format!("labels[{i}]"), format!("duplicate label {label:?}")));
            }
        }
        let lookup = |path: String, label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| schema(path, format!("unknown label {label:?}")))
        };

        let mut covers = Vec::with_capacity(self.order.len());
        for (k, (lo, hi)) in self.order.iter().enumerate() {
            let a = lookup(format!("order[{k}][0]"), lo)?;
            let b = lookup(format!("order[{k}][1]"), hi)?;
            if a == b {
                return Err(schema(format!("order[{k}]"), format!("self-loop on {lo:?}")));
            }
            covers.push((a, b));
        }
        check_acyclic(n, &covers, &self.labels)?;
        let order = BoundedLattice::from_covers(n, &covers)?;

        let read_table = |name: &str, rows: &[Vec<String>]| -> Result<Vec<Vec<usize>>, IoError> {
            if rows.len() != n {
                return Err(schema(name, format!("expected {n} rows, found {}", rows.len())));
            }
            rows.iter()
                .enumerate()
                .map(|(i, row)| {
                    if row.len() != n {
                        return Err(schema(format!("{name}[{i}]"), format!("expected {n} cells, found {}", row.len())));
                    }
                    row.iter()
                        .enumerate()
                        .map(|(j, cell)| lookup(format!("{name}[{i}][{j}]"), cell))
                        .collect()
                })
                .collect()
        };
        let odot = read_table("odot", &self.odot)?;
        let lattice = match &self.imp {
            None => ResiduatedLattice::from_order(self.labels.clone(), order, odot)?,
            Some(imp_rows) => {
                let imp = read_table("imp", imp_rows)?;
                let l = ResiduatedLattice::new(RawTables {
                    labels: self.labels.clone(),
                    leq: order.leq_matrix(),
                    join: order.join_matrix(),
                    meet: order.meet_matrix(),
                    odot: odot.clone(),
                    imp: imp.clone(),
                    bottom: order.bottom(),
                    top: order.top(),
                })?;
                let derived = derive_residuum(&order, &odot)?;
                if let Some((x, y)) = (0..n)
                    .flat_map(|x| (0..n).map(move |y| (x, y)))
                    .find(|&(x, y)| derived[x][y] != imp[x][y])
                {
                    return Err(schema(
                        format!("imp[{x}][{y}]"),
                        format!("does not match the derived residuum {:?}", self.labels[derived[x][y]]),
                    ));
                }
                l
            }
        };
        Ok(lattice.with_name(self.name.clone()))
    }

    /// Canonical document: bottom first, top last, other elements in their
    /// existing relative order.
    pub fn from_lattice(l: &ResiduatedLattice) -> Self {
        let l = canonical_labeling(l);
        let n = l.size();
        let labels = l.labels().to_vec();
        let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<String>> {
            (0..n)
                .map(|x| (0..n).map(|y| labels[f(x, y)].clone()).collect())
                .collect()
        };
        Self {
            imp: Some(table(&|x, y| l.imp(x, y))),
            odot: table(&|x, y| l.odot(x, y)),
            order: l
                .order()
                .covers()
                .into_iter()
                .map(|(a, b)| (labels[a].clone(), labels[b].clone()))
                .collect(),
            size: n,
            name: l.name().to_string(),
            labels,
        }
    }
}

fn check_acyclic(n: usize, covers: &[(usize, usize)], labels: &[String]) -> Result<(), IoError> {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in covers {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    match (0..n).find(|&i| reach[i][i]) {
        Some(i) => Err(schema("order", format!("cover pairs form a cycle through {:?}", labels[i]))),
        None => Ok(()),
    }
}

/// Same lattice with the bottom at index 0 and the top at index n-1.
pub fn canonical_labeling(l: &ResiduatedLattice) -> ResiduatedLattice {
    let n = l.size();
    if n == 1 || (l.bottom() == 0 && l.top() == n - 1) {
        return l.clone();
    }
    let middle = (0..n).filter(|&x| x != l.bottom() && x != l.top());
    let new_order: Vec<usize> = std::iter::once(l.bottom()).chain(middle).chain(std::iter::once(l.top())).collect();
    let mut perm = vec![0; n];
    for (new, &old) in new_order.iter().enumerate() {
        perm[old] = new;
    }
    l.relabel(&perm).expect("permutation of a valid lattice")
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn json_row(row: &[String]) -> String {
    let cells: Vec<String> = row.iter().map(|c| json_str(c)).collect();
    format!("[{}]", cells.join(", "))
}

fn write_rows(out: &mut String, key: &str, rows: &[String], last: bool) {
    let _ = write!(out, "  {}: [", json_str(key));
    if rows.is_empty() {
        out.push(']');
    } else {
        out.push('\n');
        for (i, row) in rows.iter().enumerate() {
            let sep = if i + 1 == rows.len() { "" } else { "," };
            let _ = writeln!(out, "    {row}{sep}");
        }
        out.push_str("  ]");
    }
    out.push_str(if last { "\n" } else { ",\n" });
}

/// Canonical multi-line JSON text, ending with a newline.
pub fn serialize_lattice(l: &ResiduatedLattice) -> String {
    render_document(&LatticeDocument::from_lattice(l))
}

pub fn render_document(doc: &LatticeDocument) -> String {
    let mut out = String::from("{\n");
    if let Some(imp) = &doc.imp {
        let rows: Vec<String> = imp.iter().map(|r| json_row(r)).collect();
        write_rows(&mut out, "imp", &rows, false);
    }
    let _ = writeln!(out, "  \"labels\": {},", json_row(&doc.labels));
    let _ = writeln!(out, "  \"name\": {},", json_str(&doc.name));
    let rows: Vec<String> = doc.odot.iter().map(|r| json_row(r)).collect();
    write_rows(&mut out, "odot", &rows, false);
    let rows: Vec<String> = doc
        .order
        .iter()
        .map(|(a, b)| format!("[{}, {}]", json_str(a), json_str(b)))
        .collect();
    write_rows(&mut out, "order", &rows, false);
    let _ = writeln!(out, "  \"size\": {}", doc.size);
    out.push_str("}\n");
    out
}

/// Canonical document on a single line (no trailing newline).
pub fn serialize_lattice_compact(l: &ResiduatedLattice) -> String {
    serde_json::to_string(&LatticeDocument::from_lattice(l)).expect("document serialization")
}
