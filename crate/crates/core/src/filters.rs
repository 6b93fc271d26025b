//! Filters, the filter lattice, comaximality, quotients and domains.

use serde::Serialize;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{RawTables, ResiduatedLattice};
use crate::set::ElementSet;

/// A `*`-closed up-set containing the top.
///
/// Only constructed through checked paths, so every value is a filter of the
/// lattice it was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Filter(ElementSet);

impl Filter {
    pub fn new(l: &ResiduatedLattice, set: ElementSet) -> Option<Self> {
        is_filter(l, set).then_some(Self(set))
    }

    /// `{1}`
    pub fn unit(l: &ResiduatedLattice) -> Self {
        Self(ElementSet::singleton(l.top()))
    }

    /// The whole carrier.
    pub fn whole(l: &ResiduatedLattice) -> Self {
        Self(l.elements())
    }

    pub fn elements(self) -> ElementSet {
        self.0
    }

    pub fn contains(self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    /// Always false: a filter contains the top.
    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(self, other: Filter) -> bool {
        self.0.is_subset(other.0)
    }

    pub fn is_proper(self, l: &ResiduatedLattice) -> bool {
        !self.0.contains(l.bottom())
    }

    pub fn intersection(self, other: Filter) -> Filter {
        Filter(self.0.intersection(other.0))
    }

    /// Sort key for the canonical order: by size, then by membership bits.
    pub fn canonical_key(self) -> (usize, u64) {
        (self.0.len(), self.0.bits())
    }
}

pub fn is_filter(l: &ResiduatedLattice, set: ElementSet) -> bool {
    if !set.contains(l.top()) {
        return false;
    }
    set.iter().all(|x| {
        l.up(x).is_subset(set) && set.iter().all(|y| set.contains(l.odot(x, y)))
    })
}

/// Least filter containing `x`: the up-closure of the `*`-closure of `x`.
pub fn generate_filter(l: &ResiduatedLattice, x: ElementSet) -> Filter {
    let mut closed = x.with(l.top());
    loop {
        let mut next = closed;
        for a in closed.iter() {
            for b in closed.iter() {
                next.insert(l.odot(a, b));
            }
        }
        if next == closed {
            break;
        }
        closed = next;
    }
    Filter(l.order().up_closure(closed))
}

pub fn principal_filter(l: &ResiduatedLattice, x: usize) -> Filter {
    generate_filter(l, ElementSet::singleton(x))
}

pub fn filter_meet(_l: &ResiduatedLattice, f: Filter, g: Filter) -> Filter {
    f.intersection(g)
}

pub fn filter_join(l: &ResiduatedLattice, f: Filter, g: Filter) -> Filter {
    generate_filter(l, f.0.union(g.0))
}

/// Join of any number of filters; the empty join is `{1}`.
pub fn filter_join_all(l: &ResiduatedLattice, filters: impl IntoIterator<Item = Filter>) -> Filter {
    let union = filters
        .into_iter()
        .fold(ElementSet::empty(), |acc, f| acc.union(f.0));
    generate_filter(l, union)
}

/// All filters in canonical order with their meet and join tables.
#[derive(Debug, Clone)]
pub struct FilterLattice {
    filters: Vec<Filter>,
    index: HashMap<Filter, usize>,
    join: Vec<usize>,
    meet: Vec<usize>,
}

impl FilterLattice {
    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn filters(&self) -> &[Filter] {
        &self.filters
    }

    pub fn get(&self, i: usize) -> Filter {
        self.filters[i]
    }

    pub fn index_of(&self, f: Filter) -> Option<usize> {
        self.index.get(&f).copied()
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn contains(&self, f: Filter) -> bool {
        self.index.contains_key(&f)
    }

    pub fn proper(&self, l: &ResiduatedLattice) -> impl Iterator<Item = Filter> + '_ {
        let bottom = l.bottom();
        self.filters.iter().copied().filter(move |f| !f.contains(bottom))
    }
}

/// Every filter, obtained by closing the principal filters under joins.
pub fn all_filters(l: &ResiduatedLattice) -> FilterLattice {
    let mut found: Vec<Filter> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for x in 0..l.size() {
        let f = principal_filter(l, x);
        if seen.insert(f) {
            found.push(f);
        }
    }
    seen.insert(Filter::unit(l));
    if !found.contains(&Filter::unit(l)) {
        found.push(Filter::unit(l));
    }
    let mut frontier = 0;
    while frontier < found.len() {
        let f = found[frontier];
        let snapshot = found.len();
        for k in 0..snapshot {
            let j = filter_join(l, f, found[k]);
            if seen.insert(j) {
                found.push(j);
            }
        }
        frontier += 1;
    }
    found.sort_by_key(|f| f.canonical_key());
    let index: HashMap<Filter, usize> = found.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let k = found.len();
    let mut join = vec![0; k * k];
    let mut meet = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            join[i * k + j] = index[&filter_join(l, found[i], found[j])];
            meet[i * k + j] = *index
                .get(&found[i].intersection(found[j]))
                .expect("intersection of filters is a filter");
        }
    }
    FilterLattice {
        filters: found,
        index,
        join,
        meet,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Comaximality {
    pub comaximal: bool,
    /// `(f, g)` with `f` in F, `g` in G and `f * g = 0`.
    pub product_witness: Option<(usize, usize)>,
    /// `a` with `a` in F and `not a` in G.
    pub negation_witness: Option<usize>,
}

/// Whether `F v G` is the whole lattice, decided three independent ways.
pub fn comaximal(l: &ResiduatedLattice, f: Filter, g: Filter) -> Result<Comaximality> {
    if !f.is_proper(l) || !g.is_proper(l) {
        return Err(Error::Contract(format!(
            "comaximality is defined for proper filters, got {} and {}",
            l.format_set(f.0),
            l.format_set(g.0)
        )));
    }
    let by_join = filter_join(l, f, g) == Filter::whole(l);
    let product_witness = f
        .0
        .iter()
        .flat_map(|x| g.0.iter().map(move |y| (x, y)))
        .find(|&(x, y)| l.odot(x, y) == l.bottom());
    let negation_witness = f.0.iter().find(|&a| g.contains(l.neg(a)));
    if by_join != product_witness.is_some() || by_join != negation_witness.is_some() {
        return Err(Error::Consistency(format!(
            "comaximality of {} and {} differs between join ({by_join}), product ({}) and negation ({}) tests",
            l.format_set(f.0),
            l.format_set(g.0),
            product_witness.is_some(),
            negation_witness.is_some()
        )));
    }
    Ok(Comaximality {
        comaximal: by_join,
        product_witness,
        negation_witness,
    })
}

/// `L / F` with its congruence classes.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub lattice: ResiduatedLattice,
    /// Class members, indexed by element of the quotient.
    pub classes: Vec<ElementSet>,
    /// Quotient element of each original element.
    pub class_of: Vec<usize>,
}

/// Quotient by the congruence `a ~ b` iff `a -> b` and `b -> a` lie in `F`.
pub fn quotient(l: &ResiduatedLattice, f: Filter) -> Result<Quotient> {
    let n = l.size();
    let related = |a: usize, b: usize| f.contains(l.imp(a, b)) && f.contains(l.imp(b, a));
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = vec![0; n];
    for x in 0..n {
        match reps.iter().position(|&r| related(x, r)) {
            Some(c) => class_of[x] = c,
            None => {
                class_of[x] = reps.len();
                reps.push(x);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if related(x, y) != (class_of[x] == class_of[y]) {
                return Err(Error::Consistency(format!(
                    "relation induced by {} is not an equivalence at ({}, {})",
                    l.format_set(f.0),
                    l.label(x),
                    l.label(y)
                )));
            }
        }
    }
    let k = reps.len();
    let below = |c: usize, d: usize| f.contains(l.imp(reps[c], reps[d]));
    // linear extension, preferring the class with the least member
    let mut sorted: Vec<usize> = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    while sorted.len() < k {
        let next = (0..k)
            .filter(|&c| !placed[c] && (0..k).all(|d| d == c || placed[d] || !below(d, c)))
            .min_by_key(|&c| reps[c])
            .ok_or_else(|| Error::Consistency(format!("quotient order by {} has a cycle", l.format_set(f.0))))?;
        placed[next] = true;
        sorted.push(next);
    }
    let mut position = vec![0; k];
    for (p, &c) in sorted.iter().enumerate() {
        position[c] = p;
    }
    let class_of: Vec<usize> = class_of.iter().map(|&c| position[c]).collect();
    let reps: Vec<usize> = sorted.iter().map(|&c| reps[c]).collect();
    let mut classes = vec![ElementSet::empty(); k];
    for x in 0..n {
        classes[class_of[x]].insert(x);
    }

    type Op<'a> = (&'a str, &'a dyn Fn(usize, usize) -> usize);
    let ops: [Op; 4] = [
        ("join", &|x, y| l.join(x, y)),
        ("meet", &|x, y| l.meet(x, y)),
        ("odot", &|x, y| l.odot(x, y)),
        ("imp", &|x, y| l.imp(x, y)),
    ];
    let mut tables: Vec<Vec<Vec<usize>>> = Vec::with_capacity(4);
    for (name, op) in ops {
        let table: Vec<Vec<usize>> = (0..k)
            .map(|c| (0..k).map(|d| class_of[op(reps[c], reps[d])]).collect())
            .collect();
        for x in 0..n {
            for y in 0..n {
                if class_of[op(x, y)] != table[class_of[x]][class_of[y]] {
                    return Err(Error::Consistency(format!(
                        "{name} is not well defined on {} / {} at ({}, {})",
                        l.name(),
                        l.format_set(f.0),
                        l.label(x),
                        l.label(y)
                    )));
                }
            }
        }
        tables.push(table);
    }
    let imp = tables.pop().expect("four tables");
    let odot = tables.pop().expect("four tables");
    let meet = tables.pop().expect("four tables");
    let join = tables.pop().expect("four tables");
    let raw = RawTables {
        labels: classes.iter().map(|&c| l.format_set(c)).collect(),
        leq: (0..k)
            .map(|c| (0..k).map(|d| f.contains(l.imp(reps[c], reps[d]))).collect())
            .collect(),
        join,
        meet,
        odot,
        imp,
        bottom: class_of[l.bottom()],
        top: class_of[l.top()],
    };
    let lattice = ResiduatedLattice::new(raw)
        .map_err(|e| Error::Consistency(format!("quotient by {} is not residuated: {e}", l.format_set(f.0))))?
        .with_name(format!("{}/{}", l.name(), l.format_set(f.0)));
    Ok(Quotient {
        lattice,
        classes,
        class_of,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DomainCheck {
    pub domain: bool,
    /// Two non-top elements whose join is the top.
    pub witness: Option<(usize, usize)>,
}

/// A domain has no two non-top elements joining to the top.
pub fn is_domain(l: &ResiduatedLattice) -> DomainCheck {
    let top = l.top();
    let witness = (0..l.size())
        .filter(|&x| x != top)
        .flat_map(|x| (x + 1..l.size()).map(move |y| (x, y)))
        .find(|&(x, y)| y != top && l.join(x, y) == top);
    DomainCheck {
        domain: witness.is_none(),
        witness,
    }
}
