//! Finite residuated lattices as validated operation tables.
//!
//! Operation tables are indexed by element position. [`RawTables`] is the
//! unchecked form; [`validate_axioms`] scans it exhaustively and
//! [`ResiduatedLattice::new`] only accepts tables with an empty report.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result, StructureError};
use crate::set::{ElementSet, MAX_ELEMENTS};

/// The axiom (or derived identity) a [`Violation`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    LeqReflexive,
    LeqAntisymmetric,
    LeqTransitive,
    Bounds,
    JoinExists,
    MeetExists,
    JoinLub,
    MeetGlb,
    OdotCommutative,
    OdotAssociative,
    OdotIdentity,
    OdotMonotone,
    OdotZero,
    Adjointness,
    /// `x * (y v z) = (x * y) v (x * z)`
    R1,
    /// `x v (y * z) >= (x v y) * (x v z)`
    R2,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Element indices in the order the axiom quantifies them.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn has(&self, axiom: Axiom, witness: &[usize]) -> bool {
        self.violations
            .iter()
            .any(|v| v.axiom == axiom && v.witness == witness)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return f.write_str("valid");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in self.violations.iter().take(5) {
            write!(f, "; {} at {:?}", v.axiom, v.witness)?;
        }
        if self.violations.len() > 5 {
            f.write_str("; ...")?;
        }
        Ok(())
    }
}

/// Unchecked operation tables. Row index is the left operand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTables {
    pub labels: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub odot: Vec<Vec<usize>>,
    pub imp: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
}

impl RawTables {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    fn check_structure(&self) -> Result<(), StructureError> {
        let n = self.size();
        if n == 0 {
            return Err(StructureError::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(StructureError::TooLarge {
                size: n,
                max: MAX_ELEMENTS,
            });
        }
        check_square("leq", &self.leq, n)?;
        for (name, table) in [
            ("join", &self.join),
            ("meet", &self.meet),
            ("odot", &self.odot),
            ("imp", &self.imp),
        ] {
            check_square(name, table, n)?;
            for (row, cells) in table.iter().enumerate() {
                if let Some((col, &value)) = cells.iter().enumerate().find(|(_, &v)| v >= n) {
                    return Err(StructureError::OutOfRange {
                        table: name,
                        row,
                        col,
                        value,
                        size: n,
                    });
                }
            }
        }
        for (which, index) in [("bottom", self.bottom), ("top", self.top)] {
            if index >= n {
                return Err(StructureError::BadConstant {
                    which,
                    index,
                    size: n,
                });
            }
        }
        Ok(())
    }
}

fn check_square<T>(table: &'static str, rows: &[Vec<T>], n: usize) -> Result<(), StructureError> {
    if rows.len() != n {
        return Err(StructureError::Dimension {
            table,
            expected: n,
            found: rows.len(),
        });
    }
    if let Some(row) = rows.iter().find(|r| r.len() != n) {
        return Err(StructureError::Dimension {
            table,
            expected: n,
            found: row.len(),
        });
    }
    Ok(())
}

/// Checks every residuated-lattice axiom over all tuples, without early exit.
///
/// The identities r1 and r2 hold in every residuated lattice and are scanned
/// as well; a failure there always comes with a failure of some axiom.
pub fn validate_axioms(raw: &RawTables) -> Result<ValidationReport, StructureError> {
    raw.check_structure()?;
    let n = raw.size();
    let leq = |x: usize, y: usize| raw.leq[x][y];
    let (join, meet, odot, imp) = (&raw.join, &raw.meet, &raw.odot, &raw.imp);
    let mut out = Vec::new();
    let mut push = |axiom, witness: Vec<usize>| out.push(Violation { axiom, witness });

    for x in 0..n {
        if !leq(x, x) {
            push(Axiom::LeqReflexive, vec![x]);
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if leq(x, y) && leq(y, x) {
                push(Axiom::LeqAntisymmetric, vec![x, y]);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if leq(x, y) && leq(y, z) && !leq(x, z) {
                    push(Axiom::LeqTransitive, vec![x, y, z]);
                }
            }
        }
    }
    for x in 0..n {
        if !(leq(raw.bottom, x) && leq(x, raw.top)) {
            push(Axiom::Bounds, vec![x]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            let j = join[x][y];
            let lub = leq(x, j) && leq(y, j) && (0..n).all(|u| !(leq(x, u) && leq(y, u)) || leq(j, u));
            if !lub {
                push(Axiom::JoinLub, vec![x, y]);
            }
            let m = meet[x][y];
            let glb = leq(m, x) && leq(m, y) && (0..n).all(|l| !(leq(l, x) && leq(l, y)) || leq(l, m));
            if !glb {
                push(Axiom::MeetGlb, vec![x, y]);
            }
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if odot[x][y] != odot[y][x] {
                push(Axiom::OdotCommutative, vec![x, y]);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if odot[odot[x][y]][z] != odot[x][odot[y][z]] {
                    push(Axiom::OdotAssociative, vec![x, y, z]);
                }
            }
        }
    }
    for x in 0..n {
        if odot[x][raw.top] != x || odot[raw.top][x] != x {
            push(Axiom::OdotIdentity, vec![x]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if leq(y, z) && !(leq(odot[x][y], odot[x][z]) && leq(odot[y][x], odot[z][x])) {
                    push(Axiom::OdotMonotone, vec![x, y, z]);
                }
            }
        }
    }
    for x in 0..n {
        if odot[x][raw.bottom] != raw.bottom {
            push(Axiom::OdotZero, vec![x]);
        }
    }
    for x in 0..n {
        for a in 0..n {
            for y in 0..n {
                if leq(odot[x][a], y) != leq(a, imp[x][y]) {
                    push(Axiom::Adjointness, vec![x, a, y]);
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if odot[x][join[y][z]] != join[odot[x][y]][odot[x][z]] {
                    push(Axiom::R1, vec![x, y, z]);
                }
                if !leq(odot[join[x][y]][join[x][z]], join[x][odot[y][z]]) {
                    push(Axiom::R2, vec![x, y, z]);
                }
            }
        }
    }
    Ok(ValidationReport::from_violations(out))
}

/// A bounded lattice given by its order, with joins and meets tabulated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundedLattice {
    size: usize,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl BoundedLattice {
    /// Builds the lattice from an order relation, deriving joins and meets.
    /// Fails with the order/lattice violations when `leq` is not a bounded
    /// lattice order.
    pub fn from_leq(leq: &[Vec<bool>]) -> Result<Self> {
        let n = leq.len();
        if n == 0 {
            return Err(StructureError::Empty.into());
        }
        if n > MAX_ELEMENTS {
            return Err(StructureError::TooLarge {
                size: n,
                max: MAX_ELEMENTS,
            }
            .into());
        }
        check_square("leq", leq, n)?;
        let up: Vec<ElementSet> = (0..n)
            .map(|x| (0..n).filter(|&y| leq[x][y]).collect())
            .collect();
        let down: Vec<ElementSet> = (0..n)
            .map(|y| (0..n).filter(|&x| leq[x][y]).collect())
            .collect();

        let mut violations = Vec::new();
        for x in 0..n {
            if !up[x].contains(x) {
                violations.push(Violation {
                    axiom: Axiom::LeqReflexive,
                    witness: vec![x],
                });
            }
            for y in x + 1..n {
                if up[x].contains(y) && up[y].contains(x) {
                    violations.push(Violation {
                        axiom: Axiom::LeqAntisymmetric,
                        witness: vec![x, y],
                    });
                }
            }
            for y in up[x].iter() {
                if let Some(z) = up[y].difference(up[x]).first() {
                    violations.push(Violation {
                        axiom: Axiom::LeqTransitive,
                        witness: vec![x, y, z],
                    });
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::Axioms(Box::new(ValidationReport::from_violations(
                violations,
            ))));
        }

        let all = ElementSet::full(n);
        let bottom = (0..n).find(|&x| up[x] == all);
        let top = (0..n).find(|&x| down[x] == all);
        let (Some(bottom), Some(top)) = (bottom, top) else {
            let violations = (0..n)
                .filter(|&x| bottom.is_none_or(|b| !up[b].contains(x)) || top.is_none_or(|t| !down[t].contains(x)))
                .map(|x| Violation {
                    axiom: Axiom::Bounds,
                    witness: vec![x],
                })
                .collect();
            return Err(Error::Axioms(Box::new(ValidationReport::from_violations(
                violations,
            ))));
        };

        // least element of a set of upper bounds: the one whose up-set is the whole set
        let least = |set: ElementSet, rel: &[ElementSet]| set.iter().find(|&u| rel[u] == set);
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        let mut violations = Vec::new();
        for x in 0..n {
            for y in 0..n {
                match least(up[x].intersection(up[y]), &up) {
                    Some(j) => join[x * n + y] = j,
                    None => violations.push(Violation {
                        axiom: Axiom::JoinExists,
                        witness: vec![x, y],
                    }),
                }
                match least(down[x].intersection(down[y]), &down) {
                    Some(m) => meet[x * n + y] = m,
                    None => violations.push(Violation {
                        axiom: Axiom::MeetExists,
                        witness: vec![x, y],
                    }),
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::Axioms(Box::new(ValidationReport::from_violations(
                violations,
            ))));
        }
        Ok(Self {
            size: n,
            up,
            down,
            join,
            meet,
            bottom,
            top,
        })
    }

    /// Order generated by a list of `(lower, upper)` pairs.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(a, b) in covers {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_leq(&leq)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size + y]
    }

    /// `{y | x <= y}`
    pub fn up(&self, x: usize) -> ElementSet {
        self.up[x]
    }

    /// `{y | y <= x}`
    pub fn down(&self, x: usize) -> ElementSet {
        self.down[x]
    }

    pub fn elements(&self) -> ElementSet {
        ElementSet::full(self.size)
    }

    /// Join of a set; the empty join is the bottom.
    pub fn join_all(&self, set: ElementSet) -> usize {
        set.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> ElementSet {
        let below = self.down[x].without(x);
        below
            .iter()
            .filter(|&c| self.up[c].intersection(below) == ElementSet::singleton(c))
            .collect()
    }

    /// All covering pairs `(lower, upper)`, ordered by upper then lower index.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.size)
            .flat_map(|y| self.lower_covers(y).iter().map(move |x| (x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.size)
            .map(|x| (0..self.size).map(|y| self.leq(x, y)).collect())
            .collect()
    }

    pub fn join_matrix(&self) -> Vec<Vec<usize>> {
        self.join.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn meet_matrix(&self) -> Vec<Vec<usize>> {
        self.meet.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    /// Up-closure of a set.
    pub fn up_closure(&self, set: ElementSet) -> ElementSet {
        set.iter().fold(ElementSet::empty(), |acc, x| acc.union(self.up[x]))
    }

    /// Down-closure of a set.
    pub fn down_closure(&self, set: ElementSet) -> ElementSet {
        set.iter().fold(ElementSet::empty(), |acc, x| acc.union(self.down[x]))
    }
}

impl ElementSet {
    pub(crate) fn without(self, i: usize) -> Self {
        let mut s = self;
        s.remove(i);
        s
    }
}

/// `x -> y` as the join of `{a | x * a <= y}`, for every pair.
///
/// Fails when that join falls outside the set, since then no residuum exists.
pub fn derive_residuum(order: &BoundedLattice, odot: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let n = order.size();
    check_square("odot", odot, n)?;
    let mut imp = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let candidates: ElementSet = (0..n).filter(|&a| order.leq(odot[x][a], y)).collect();
            let j = order.join_all(candidates);
            if !candidates.contains(j) {
                return Err(Error::ResiduumNotRealized { x, y });
            }
            imp[x][y] = j;
        }
    }
    Ok(imp)
}

/// A finite residuated lattice whose tables passed [`validate_axioms`].
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResiduatedLattice {
    name: String,
    labels: Vec<String>,
    order: BoundedLattice,
    odot: Vec<usize>,
    imp: Vec<usize>,
}

impl ResiduatedLattice {
    /// Validates the tables; any violation is returned as [`Error::Axioms`].
    pub fn new(raw: RawTables) -> Result<Self> {
        let report = validate_axioms(&raw)?;
        if !report.valid {
            return Err(Error::Axioms(Box::new(report)));
        }
        let order = BoundedLattice::from_leq(&raw.leq)?;
        Ok(Self {
            name: String::new(),
            order,
            odot: raw.odot.concat(),
            imp: raw.imp.concat(),
            labels: raw.labels,
        })
    }

    /// Builds from an order and a monoid table, deriving the residuum.
    pub fn from_order(labels: Vec<String>, order: BoundedLattice, odot: Vec<Vec<usize>>) -> Result<Self> {
        if labels.len() != order.size() {
            return Err(StructureError::Dimension {
                table: "labels",
                expected: order.size(),
                found: labels.len(),
            }
            .into());
        }
        let imp = derive_residuum(&order, &odot)?;
        Self::new(RawTables {
            labels,
            leq: order.leq_matrix(),
            join: order.join_matrix(),
            meet: order.meet_matrix(),
            odot,
            imp,
            bottom: order.bottom(),
            top: order.top(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.order.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn order(&self) -> &BoundedLattice {
        &self.order
    }

    pub fn bottom(&self) -> usize {
        self.order.bottom
    }

    pub fn top(&self) -> usize {
        self.order.top
    }

    pub fn elements(&self) -> ElementSet {
        self.order.elements()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.order.leq(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.order.join(x, y)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.order.meet(x, y)
    }

    pub fn odot(&self, x: usize, y: usize) -> usize {
        self.odot[x * self.size() + y]
    }

    pub fn imp(&self, x: usize, y: usize) -> usize {
        self.imp[x * self.size() + y]
    }

    /// `x -> 0`
    pub fn neg(&self, x: usize) -> usize {
        negation(self, x)
    }

    pub fn up(&self, x: usize) -> ElementSet {
        self.order.up(x)
    }

    pub fn down(&self, x: usize) -> ElementSet {
        self.order.down(x)
    }

    pub fn odot_table(&self) -> Vec<Vec<usize>> {
        self.odot.chunks(self.size()).map(<[usize]>::to_vec).collect()
    }

    pub fn imp_table(&self) -> Vec<Vec<usize>> {
        self.imp.chunks(self.size()).map(<[usize]>::to_vec).collect()
    }

    pub fn raw_tables(&self) -> RawTables {
        RawTables {
            labels: self.labels.clone(),
            leq: self.order.leq_matrix(),
            join: self.order.join_matrix(),
            meet: self.order.meet_matrix(),
            odot: self.odot_table(),
            imp: self.imp_table(),
            bottom: self.bottom(),
            top: self.top(),
        }
    }

    /// Renders a set of elements as `{a,b,1}` in index order.
    pub fn format_set(&self, set: ElementSet) -> String {
        let parts: Vec<&str> = set.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn label_set(&self, set: ElementSet) -> Vec<String> {
        set.iter().map(|x| self.labels[x].clone()).collect()
    }

    /// Renaming of the elements: element `old` moves to position `perm[old]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.size();
        let mut inverse = vec![usize::MAX; n];
        for (old, &new) in perm.iter().enumerate() {
            inverse[new] = old;
        }
        if perm.len() != n || inverse.contains(&usize::MAX) {
            return Err(Error::Contract("relabeling is not a permutation".into()));
        }
        let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n)
                .map(|i| (0..n).map(|j| perm[f(inverse[i], inverse[j])]).collect())
                .collect()
        };
        let raw = RawTables {
            labels: (0..n).map(|i| self.labels[inverse[i]].clone()).collect(),
            leq: (0..n)
                .map(|i| (0..n).map(|j| self.leq(inverse[i], inverse[j])).collect())
                .collect(),
            join: table(&|x, y| self.join(x, y)),
            meet: table(&|x, y| self.meet(x, y)),
            odot: table(&|x, y| self.odot(x, y)),
            imp: table(&|x, y| self.imp(x, y)),
            bottom: perm[self.bottom()],
            top: perm[self.top()],
        };
        Ok(Self::new(raw)?.with_name(self.name.clone()))
    }
}

/// `not x = x -> 0`
pub fn negation(l: &ResiduatedLattice, x: usize) -> usize {
    l.imp(x, l.bottom())
}

/// `{e | e v not e = 1 and e * e = e}`
pub fn boolean_center(l: &ResiduatedLattice) -> ElementSet {
    (0..l.size())
        .filter(|&e| l.join(e, l.neg(e)) == l.top() && l.odot(e, e) == e)
        .collect()
}
