//! Prime spectra, hull and kernel, and the finite topologies living on them.
//!
//! Every finite topology is Alexandrov, so a space is stored as the map from a
//! point to its smallest open neighbourhood. Opens are exactly the unions of
//! those neighbourhoods and the closure of a set is `{q | N(q) meets it}`.

use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::filters::{filter_join, Filter, FilterLattice};
use crate::lattice::ResiduatedLattice;
use crate::set::{ElementSet, PointSet};

/// Prime filters in canonical filter order, with the order between them.
#[derive(Debug, Clone)]
pub struct Spectrum {
    primes: Vec<Filter>,
    is_maximal: Vec<bool>,
    is_minimal: Vec<bool>,
    /// `above[p] = {q | p ⊆ q}`
    above: Vec<PointSet>,
    /// `below[p] = {q | q ⊆ p}`
    below: Vec<PointSet>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[Filter] {
        &self.primes
    }

    pub fn prime(&self, p: usize) -> Filter {
        self.primes[p]
    }

    pub fn index_of(&self, f: Filter) -> Option<usize> {
        self.primes.iter().position(|&p| p == f)
    }

    pub fn is_maximal(&self, p: usize) -> bool {
        self.is_maximal[p]
    }

    pub fn is_minimal(&self, p: usize) -> bool {
        self.is_minimal[p]
    }

    pub fn all(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn maximal(&self) -> PointSet {
        (0..self.len()).filter(|&p| self.is_maximal[p]).collect()
    }

    pub fn minimal(&self) -> PointSet {
        (0..self.len()).filter(|&p| self.is_minimal[p]).collect()
    }

    /// `p ⊆ q`
    pub fn contained(&self, p: usize, q: usize) -> bool {
        self.above[p].contains(q)
    }

    pub fn above(&self, p: usize) -> PointSet {
        self.above[p]
    }

    pub fn below(&self, p: usize) -> PointSet {
        self.below[p]
    }

    /// Minimal primes contained in `p`.
    pub fn minimal_below(&self, p: usize) -> PointSet {
        self.below[p].intersection(self.minimal())
    }

    /// Members of `within` containing some member of `pi`.
    pub fn specialization(&self, within: PointSet, pi: PointSet) -> PointSet {
        pi.iter()
            .fold(PointSet::empty(), |acc, p| acc.union(self.above[p]))
            .intersection(within)
    }

    /// Members of `within` contained in some member of `pi`.
    pub fn generalization(&self, within: PointSet, pi: PointSet) -> PointSet {
        pi.iter()
            .fold(PointSet::empty(), |acc, p| acc.union(self.below[p]))
            .intersection(within)
    }

    /// `h(X)` over the whole spectrum.
    pub fn hull(&self, x: ElementSet) -> PointSet {
        hull(self, self.all(), x)
    }

    /// `d(X)` over the whole spectrum.
    pub fn dual(&self, x: ElementSet) -> PointSet {
        self.all().difference(self.hull(x))
    }

    pub fn format_points(&self, l: &ResiduatedLattice, pi: PointSet) -> String {
        let parts: Vec<String> = pi.iter().map(|p| l.format_set(self.primes[p].elements())).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Element-wise primality: proper, and `x v y` in `P` puts `x` or `y` in `P`.
pub fn is_prime_filter(l: &ResiduatedLattice, p: Filter) -> bool {
    p.is_proper(l)
        && (0..l.size()).all(|x| {
            p.contains(x) || (0..l.size()).all(|y| p.contains(y) || !p.contains(l.join(x, y)))
        })
}

fn is_meet_prime(fl: &FilterLattice, l: &ResiduatedLattice, p: Filter) -> bool {
    p.is_proper(l)
        && fl.filters().iter().all(|&f| {
            f.is_subset(p)
                || fl
                    .filters()
                    .iter()
                    .all(|&g| g.is_subset(p) || !f.intersection(g).is_subset(p))
        })
}

pub fn prime_filters(l: &ResiduatedLattice) -> Result<Spectrum> {
    spectrum_of(l, &crate::filters::all_filters(l))
}

/// Spectrum from an already computed filter lattice.
pub fn spectrum_of(l: &ResiduatedLattice, fl: &FilterLattice) -> Result<Spectrum> {
    let mut primes = Vec::new();
    for &f in fl.filters() {
        let element_wise = is_prime_filter(l, f);
        if element_wise != is_meet_prime(fl, l, f) {
            return Err(Error::Consistency(format!(
                "{} is {}prime element-wise but not in the filter lattice",
                l.format_set(f.elements()),
                if element_wise { "" } else { "not " }
            )));
        }
        if element_wise {
            primes.push(f);
        }
    }
    for f in fl.proper(l) {
        let maximal = fl.proper(l).all(|g| g == f || !f.is_subset(g));
        if maximal && !primes.contains(&f) {
            return Err(Error::Consistency(format!(
                "maximal filter {} is not prime",
                l.format_set(f.elements())
            )));
        }
    }
    let k = primes.len();
    let above: Vec<PointSet> = (0..k)
        .map(|p| (0..k).filter(|&q| primes[p].is_subset(primes[q])).collect())
        .collect();
    let below: Vec<PointSet> = (0..k)
        .map(|p| (0..k).filter(|&q| primes[q].is_subset(primes[p])).collect())
        .collect();
    let is_maximal = primes
        .iter()
        .map(|&p| fl.proper(l).all(|g| g == p || !p.is_subset(g)))
        .collect();
    let is_minimal = (0..k).map(|p| below[p] == PointSet::singleton(p)).collect();
    Ok(Spectrum {
        primes,
        is_maximal,
        is_minimal,
        above,
        below,
    })
}

/// `h_Π(X) = {P in Π | X ⊆ P}`.
pub fn hull(spec: &Spectrum, pi: PointSet, x: ElementSet) -> PointSet {
    pi.iter().filter(|&p| x.is_subset(spec.prime(p).elements())).collect()
}

/// `k(π)`, the intersection of `π`; `A` when `π` is empty.
pub fn kernel(l: &ResiduatedLattice, spec: &Spectrum, pi: PointSet) -> Filter {
    pi.iter()
        .fold(Filter::whole(l), |acc, p| acc.intersection(spec.prime(p)))
}

/// A filter above `f`, maximal among those missing `c`.
pub fn prime_avoiding(l: &ResiduatedLattice, fl: &FilterLattice, f: Filter, c: ElementSet) -> Result<Filter> {
    let join_closed = c.iter().all(|x| c.iter().all(|y| c.contains(l.join(x, y))));
    if c.is_empty() || !join_closed || !c.is_disjoint(f.elements()) {
        return Err(Error::Contract(format!(
            "{} must be a non-empty join-closed set missing {}",
            l.format_set(c),
            l.format_set(f.elements())
        )));
    }
    let candidates: Vec<Filter> = fl
        .filters()
        .iter()
        .copied()
        .filter(|g| f.is_subset(*g) && g.elements().is_disjoint(c))
        .collect();
    let best = candidates
        .iter()
        .copied()
        .filter(|&g| candidates.iter().all(|&h| h == g || !g.is_subset(h)))
        .max_by_key(|g| (g.len(), std::cmp::Reverse(g.elements().bits())))
        .expect("f itself is a candidate");
    if !is_prime_filter(l, best) {
        return Err(Error::Consistency(format!(
            "{} is maximal missing {} but not prime",
            l.format_set(best.elements()),
            l.format_set(c)
        )));
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Space {
    Spec,
    Min,
    Spp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Opens generated by `d(x)`.
    Hull,
    /// Opens generated by `h(x)`.
    Dual,
    /// Both of the above.
    Patch,
    /// Opens `d_p(F)` for pure `F`, on the pure spectrum.
    Pure,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Spec => "spec",
            Space::Min => "min",
            Space::Spp => "spp",
        })
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Hull => "hull",
            Variant::Dual => "dual",
            Variant::Patch => "patch",
            Variant::Pure => "pure",
        })
    }
}

/// A finite space given by minimal open neighbourhoods.
///
/// `points[i]` is the index of point `i` in its source list (the spectrum for
/// `Spec` and `Min`, the pure spectrum for `Spp`); point sets use local indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteTopology {
    space: Space,
    variant: Variant,
    points: Vec<usize>,
    min_nbhd: Vec<PointSet>,
}

impl FiniteTopology {
    /// The topology generated by `subbasis`.
    pub fn from_subbasis(space: Space, variant: Variant, points: Vec<usize>, subbasis: &[PointSet]) -> Self {
        let all = PointSet::full(points.len());
        let min_nbhd = (0..points.len())
            .map(|p| {
                subbasis
                    .iter()
                    .filter(|u| u.contains(p))
                    .fold(all, |acc, &u| acc.intersection(u))
            })
            .collect();
        Self {
            space,
            variant,
            points,
            min_nbhd,
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn point(&self, i: usize) -> usize {
        self.points[i]
    }

    /// Local index of a source index.
    pub fn local(&self, source: usize) -> Option<usize> {
        self.points.iter().position(|&p| p == source)
    }

    pub fn min_nbhd(&self, p: usize) -> PointSet {
        self.min_nbhd[p]
    }

    pub fn min_nbhds(&self) -> &[PointSet] {
        &self.min_nbhd
    }

    pub fn all(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        s.iter().all(|p| self.min_nbhd[p].is_subset(s))
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        self.is_open(self.all().difference(s))
    }

    pub fn closure(&self, s: PointSet) -> PointSet {
        (0..self.len()).filter(|&q| !self.min_nbhd[q].is_disjoint(s)).collect()
    }

    pub fn interior(&self, s: PointSet) -> PointSet {
        s.iter().filter(|&p| self.min_nbhd[p].is_subset(s)).collect()
    }

    /// Smallest open set containing `s`.
    pub fn open_hull(&self, s: PointSet) -> PointSet {
        s.iter().fold(PointSet::empty(), |acc, p| acc.union(self.min_nbhd[p]))
    }

    /// Every open set, ascending by bits.
    pub fn opens(&self) -> Vec<PointSet> {
        let mut found = BTreeSet::from([PointSet::empty()]);
        for &u in &self.min_nbhd {
            let current: Vec<PointSet> = found.iter().copied().collect();
            for v in current {
                found.insert(v.union(u));
            }
        }
        found.into_iter().collect()
    }

    /// Every closed set, ascending by bits.
    pub fn closed_sets(&self) -> Vec<PointSet> {
        let all = self.all();
        let mut closed: Vec<PointSet> = self.opens().into_iter().map(|u| all.difference(u)).collect();
        closed.sort();
        closed
    }

    /// Restriction to a set of local points, reindexed in ascending order.
    pub fn subspace(&self, keep: PointSet) -> Self {
        let kept: Vec<usize> = keep.iter().collect();
        let reindex = |s: PointSet| -> PointSet {
            kept.iter()
                .enumerate()
                .filter(|(_, &p)| s.contains(p))
                .map(|(i, _)| i)
                .collect()
        };
        Self {
            space: self.space,
            variant: self.variant,
            points: kept.iter().map(|&p| self.points[p]).collect(),
            min_nbhd: kept.iter().map(|&p| reindex(self.min_nbhd[p])).collect(),
        }
    }
}

/// A point `p` where `f` maps `N(p)` outside `N'(f(p))`, if any.
pub fn continuity_witness(from: &[PointSet], to: &[PointSet], f: &[usize]) -> Option<usize> {
    (0..from.len()).find(|&p| from[p].iter().any(|q| !to[f[p]].contains(f[q])))
}

/// Topology on the whole or minimal spectrum with the chosen basis.
pub fn coannihilator_basis_topology(an: &Analysis, space: Space, variant: Variant) -> Result<FiniteTopology> {
    let spec = an.spectrum();
    let n = an.lattice().size();
    let points: Vec<usize> = match space {
        Space::Spec => (0..spec.len()).collect(),
        Space::Min => spec.minimal().iter().collect(),
        Space::Spp => {
            return Err(Error::Contract(
                "the pure spectrum carries its own topology; see purity::pure_filters".into(),
            ))
        }
    };
    let local = |s: PointSet| -> PointSet {
        points
            .iter()
            .enumerate()
            .filter(|(_, &p)| s.contains(p))
            .map(|(i, _)| i)
            .collect()
    };
    let all = PointSet::full(points.len());
    let hulls: Vec<PointSet> = (0..n).map(|x| local(spec.hull(ElementSet::singleton(x)))).collect();
    let subbasis: Vec<PointSet> = match variant {
        Variant::Dual => hulls,
        Variant::Hull => hulls.iter().map(|&h| all.difference(h)).collect(),
        Variant::Patch => hulls.iter().flat_map(|&h| [h, all.difference(h)]).collect(),
        Variant::Pure => {
            return Err(Error::Contract(
                "the pure variant only applies to the pure spectrum".into(),
            ))
        }
    };
    Ok(FiniteTopology::from_subbasis(space, variant, points, &subbasis))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub t1: bool,
    pub hausdorff: bool,
    pub normal: bool,
    /// `(p, q)` with `q` in every open around `p`.
    pub t1_witness: Option<(usize, usize)>,
    /// Distinct `(p, q)` whose minimal neighbourhoods meet.
    pub hausdorff_witness: Option<(usize, usize)>,
    /// `(p, q)` with disjoint closures but meeting neighbourhoods.
    pub normal_witness: Option<(usize, usize)>,
}

pub fn separation_check(t: &FiniteTopology) -> Separation {
    let k = t.len();
    let pairs = || (0..k).flat_map(move |p| (0..k).map(move |q| (p, q)));
    let t1_witness = pairs().find(|&(p, q)| p != q && t.min_nbhd(p).contains(q));
    let hausdorff_witness =
        pairs().find(|&(p, q)| p < q && !t.min_nbhd(p).is_disjoint(t.min_nbhd(q)));
    let cl: Vec<PointSet> = (0..k).map(|p| t.closure(PointSet::singleton(p))).collect();
    let normal_witness = pairs().find(|&(p, q)| {
        p < q && cl[p].is_disjoint(cl[q]) && !t.min_nbhd(p).is_disjoint(t.min_nbhd(q))
    });
    Separation {
        t1: t1_witness.is_none(),
        hausdorff: hausdorff_witness.is_none(),
        normal: normal_witness.is_none(),
        t1_witness,
        hausdorff_witness,
        normal_witness,
    }
}

/// Two distinct points of `subset` that no pair of disjoint opens separates.
pub fn separation_witness_in(t: &FiniteTopology, subset: PointSet) -> Option<(usize, usize)> {
    subset
        .iter()
        .flat_map(|p| subset.iter().filter(move |&q| q > p).map(move |q| (p, q)))
        .find(|&(p, q)| !t.min_nbhd(p).is_disjoint(t.min_nbhd(q)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Retraction {
    pub exists: bool,
    /// Prime (spectrum index) to the minimal prime below it.
    pub map: Option<Vec<usize>>,
    /// A prime and two distinct minimal primes inside it.
    pub witness: Option<(usize, usize, usize)>,
}

/// The map sending each prime to its unique minimal prime, checked for continuity
/// from `Spec_d` to `Min_d`.
pub fn retraction_check(an: &Analysis) -> Result<Retraction> {
    let spec = an.spectrum();
    for p in 0..spec.len() {
        let mins = spec.minimal_below(p);
        if mins.len() > 1 {
            let mut it = mins.iter();
            let (m, n) = (it.next().expect("two"), it.next().expect("two"));
            return Ok(Retraction {
                exists: false,
                map: None,
                witness: Some((p, m, n)),
            });
        }
    }
    let spec_d = coannihilator_basis_topology(an, Space::Spec, Variant::Dual)?;
    let min_d = coannihilator_basis_topology(an, Space::Min, Variant::Dual)?;
    let map: Vec<usize> = (0..spec.len())
        .map(|p| spec.minimal_below(p).first().expect("every prime contains a minimal prime"))
        .collect();
    let local: Vec<usize> = map.iter().map(|&m| min_d.local(m).expect("minimal")).collect();
    let continuous = continuity_witness(spec_d.min_nbhds(), min_d.min_nbhds(), &local).is_none();
    let fixed = spec.minimal().iter().all(|m| map[m] == m);
    Ok(Retraction {
        exists: continuous && fixed,
        map: Some(map),
        witness: None,
    })
}

/// Any continuous map from `space` onto its subspace `sub` fixing `sub` pointwise,
/// found by backtracking. Returns source indices.
pub fn search_retraction(space: &FiniteTopology, sub: &FiniteTopology) -> Option<Vec<usize>> {
    let k = space.len();
    let mut assign: Vec<Option<usize>> = vec![None; k];
    for (i, &s) in sub.points().iter().enumerate() {
        assign[space.local(s)?] = Some(i);
    }
    let consistent = |assign: &[Option<usize>], p: usize| -> bool {
        let fp = assign[p].expect("assigned");
        let forward = space
            .min_nbhd(p)
            .iter()
            .all(|q| assign[q].is_none_or(|fq| sub.min_nbhd(fp).contains(fq)));
        let backward = (0..k).all(|r| {
            !space.min_nbhd(r).contains(p)
                || assign[r].is_none_or(|fr| sub.min_nbhd(fr).contains(fp))
        });
        forward && backward
    };
    if (0..k).any(|p| assign[p].is_some() && !consistent(&assign, p)) {
        return None;
    }
    let free: Vec<usize> = (0..k).filter(|&p| assign[p].is_none()).collect();
    fn go(
        depth: usize,
        free: &[usize],
        choices: usize,
        assign: &mut Vec<Option<usize>>,
        consistent: &dyn Fn(&[Option<usize>], usize) -> bool,
    ) -> bool {
        let Some(&p) = free.get(depth) else {
            return true;
        };
        for c in 0..choices {
            assign[p] = Some(c);
            if consistent(assign, p) && go(depth + 1, free, choices, assign, consistent) {
                return true;
            }
        }
        assign[p] = None;
        false
    }
    if !go(0, &free, sub.len(), &mut assign, &consistent) {
        return None;
    }
    Some(assign.iter().map(|a| sub.point(a.expect("complete"))).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// `p ~ q` when `p v q` is proper.
    I,
    /// `p ~ q` when the complements of `p` and `q` generate a proper lattice ideal.
    J,
}

/// A reflexive symmetric relation on the spectrum, its transitive closure, and the
/// quotient of `Spec_d` by it.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureRelation {
    pub kind: RelationKind,
    pub base: Vec<PointSet>,
    pub closure: Vec<PointSet>,
    pub classes: Vec<PointSet>,
    pub class_of: Vec<usize>,
    /// Minimal neighbourhoods of the quotient space, over class indices.
    pub quotient_nbhd: Vec<PointSet>,
    /// `m ↦ [m]` from `Min_d` onto the quotient is a bijection.
    pub eta_bijective: bool,
    pub eta_homeomorphism: bool,
}

pub fn closure_relation(an: &Analysis, kind: RelationKind) -> Result<ClosureRelation> {
    let l = an.lattice();
    let spec = an.spectrum();
    let k = spec.len();
    let related = |p: usize, q: usize| -> bool {
        let (fp, fq) = (spec.prime(p), spec.prime(q));
        match kind {
            RelationKind::I => filter_join(l, fp, fq).is_proper(l),
            RelationKind::J => {
                let (ip, iq) = (
                    fp.elements().complement(l.size()),
                    fq.elements().complement(l.size()),
                );
                !ip.iter().any(|i| iq.iter().any(|j| l.join(i, j) == l.top()))
            }
        }
    };
    let base: Vec<PointSet> = (0..k)
        .map(|p| (0..k).filter(|&q| related(p, q)).collect())
        .collect();
    let mut closure = base.clone();
    loop {
        let squared: Vec<PointSet> = closure
            .iter()
            .map(|row| row.iter().fold(*row, |acc, q| acc.union(closure[q])))
            .collect();
        if squared == closure {
            break;
        }
        closure = squared;
    }

    let mut classes: Vec<PointSet> = Vec::new();
    let mut class_of = vec![0; k];
    for p in 0..k {
        match classes.iter().position(|c| c.contains(p)) {
            Some(c) => class_of[p] = c,
            None => {
                class_of[p] = classes.len();
                classes.push(closure[p]);
            }
        }
    }
    for p in 0..k {
        if closure[p] != classes[class_of[p]] || !closure[p].contains(p) {
            return Err(Error::Consistency(format!(
                "closure of the {kind:?} relation is not an equivalence at {}",
                l.format_set(spec.prime(p).elements())
            )));
        }
    }

    let spec_d = coannihilator_basis_topology(an, Space::Spec, Variant::Dual)?;
    let saturate = |s: PointSet| -> PointSet {
        classes
            .iter()
            .filter(|c| !c.is_disjoint(s))
            .fold(PointSet::empty(), |acc, &c| acc.union(c))
    };
    let quotient_nbhd: Vec<PointSet> = classes
        .iter()
        .map(|&c| {
            let mut s = c;
            loop {
                let next = saturate(spec_d.open_hull(s));
                if next == s {
                    break;
                }
                s = next;
            }
            (0..classes.len()).filter(|&d| classes[d].is_subset(s)).collect()
        })
        .collect();

    let min_d = coannihilator_basis_topology(an, Space::Min, Variant::Dual)?;
    let eta: Vec<usize> = min_d.points().iter().map(|&m| class_of[m]).collect();
    let image: BTreeSet<usize> = eta.iter().copied().collect();
    let eta_bijective = image.len() == eta.len() && image.len() == classes.len();
    let eta_homeomorphism = eta_bijective && {
        let mut inverse = vec![0; classes.len()];
        for (i, &c) in eta.iter().enumerate() {
            inverse[c] = i;
        }
        continuity_witness(min_d.min_nbhds(), &quotient_nbhd, &eta).is_none()
            && continuity_witness(&quotient_nbhd, min_d.min_nbhds(), &inverse).is_none()
    };
    Ok(ClosureRelation {
        kind,
        base,
        closure,
        classes,
        class_of,
        quotient_nbhd,
        eta_bijective,
        eta_homeomorphism,
    })
}

/// Closed sets of `Spec_d`, each confirmed to be `{p | p ∩ X = ∅}` for some `X`
/// and to be patch-closed and stable under generalization.
pub fn dual_closed_sets(an: &Analysis) -> Result<Vec<PointSet>> {
    let l = an.lattice();
    let spec = an.spectrum();
    let spec_d = coannihilator_basis_topology(an, Space::Spec, Variant::Dual)?;
    let patch = coannihilator_basis_topology(an, Space::Spec, Variant::Patch)?;
    let closed = spec_d.closed_sets();
    for &c in &closed {
        let covered = c
            .iter()
            .fold(ElementSet::empty(), |acc, p| acc.union(spec.prime(p).elements()));
        let x = covered.complement(l.size());
        let avoiding: PointSet = (0..spec.len())
            .filter(|&p| spec.prime(p).elements().is_disjoint(x))
            .collect();
        let stable = spec.generalization(spec.all(), c) == c;
        if avoiding != c || !patch.is_closed(c) || !stable {
            return Err(Error::Consistency(format!(
                "dual-closed set {} fails its characterization",
                spec.format_points(l, c)
            )));
        }
    }
    Ok(closed)
}

/// Clopen sets of a finite space.
pub fn clopen_sets(t: &FiniteTopology) -> Vec<PointSet> {
    t.opens().into_iter().filter(|&u| t.is_closed(u)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::filters::all_filters;

    fn filt(l: &ResiduatedLattice, labels: &[&str]) -> Filter {
        let s: ElementSet = labels.iter().map(|s| l.index_of(s).unwrap()).collect();
        Filter::new(l, s).unwrap()
    }

    fn points(spec: &Spectrum, l: &ResiduatedLattice, sets: &[&[&str]]) -> PointSet {
        sets.iter().map(|s| spec.index_of(filt(l, s)).unwrap()).collect()
    }

    #[test]
    fn spectra_of_examples() {
        let l = bundled::a6();
        let spec = prime_filters(&l).unwrap();
        assert_eq!(spec.len(), 3);
        assert_eq!(spec.maximal(), points(&spec, &l, &[&["a", "b", "d", "1"], &["c", "d", "1"]]));
        assert_eq!(spec.minimal(), points(&spec, &l, &[&["1"]]));
        assert!(spec.index_of(filt(&l, &["d", "1"])).is_none());

        let l = bundled::a8();
        let spec = prime_filters(&l).unwrap();
        assert_eq!(spec.len(), 3);
        assert_eq!(spec.maximal(), points(&spec, &l, &[&["a", "c", "d", "e", "f", "1"]]));
        assert_eq!(spec.minimal(), points(&spec, &l, &[&["c", "e", "1"], &["f", "1"]]));

        let l = bundled::lukasiewicz_chain(4);
        let spec = prime_filters(&l).unwrap();
        assert_eq!(spec.len(), all_filters(&l).proper(&l).count());
        assert_eq!(spec.minimal(), points(&spec, &l, &[&["1"]]));
    }

    #[test]
    fn hull_and_kernel() {
        let l = bundled::a8();
        let spec = prime_filters(&l).unwrap();
        let f = ElementSet::singleton(l.index_of("f").unwrap());
        assert_eq!(
            spec.hull(f),
            points(&spec, &l, &[&["f", "1"], &["a", "c", "d", "e", "f", "1"]])
        );
        assert_eq!(spec.hull(ElementSet::singleton(l.top())), spec.all());
        assert_eq!(kernel(&l, &spec, PointSet::empty()), Filter::whole(&l));

        let l = bundled::a6();
        let spec = prime_filters(&l).unwrap();
        assert_eq!(kernel(&l, &spec, spec.all()), Filter::unit(&l));
    }

    #[test]
    fn prime_avoiding_examples() {
        let l = bundled::a6();
        let fl = all_filters(&l);
        let zero = ElementSet::singleton(l.bottom());
        assert_eq!(
            prime_avoiding(&l, &fl, Filter::unit(&l), zero).unwrap(),
            filt(&l, &["a", "b", "d", "1"])
        );
        let rest = ElementSet::singleton(l.top()).complement(l.size());
        assert_eq!(prime_avoiding(&l, &fl, Filter::unit(&l), rest).unwrap(), Filter::unit(&l));

        let l = bundled::a8();
        let fl = all_filters(&l);
        let c: ElementSet = ["c", "e"].iter().map(|s| l.index_of(s).unwrap()).collect();
        assert_eq!(
            prime_avoiding(&l, &fl, filt(&l, &["f", "1"]), c).unwrap(),
            filt(&l, &["f", "1"])
        );
        let not_closed: ElementSet = ["e", "f"].iter().map(|s| l.index_of(s).unwrap()).collect();
        assert!(matches!(
            prime_avoiding(&l, &fl, Filter::unit(&l), not_closed),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn dual_topology_of_a8() {
        let an = Analysis::new(bundled::a8()).unwrap();
        let spec = an.spectrum();
        let t = coannihilator_basis_topology(&an, Space::Spec, Variant::Dual).unwrap();
        for p in 0..spec.len() {
            assert_eq!(t.min_nbhd(p), spec.above(p));
        }
        let sep = separation_check(&t);
        assert!(!sep.normal && !sep.hausdorff);
        let min_d = coannihilator_basis_topology(&an, Space::Min, Variant::Dual).unwrap();
        let sub = t.subspace(spec.minimal());
        assert_eq!((min_d.points(), min_d.min_nbhds()), (sub.points(), sub.min_nbhds()));
        assert!(separation_witness_in(&t, spec.minimal()).is_some());

        let g = spec.generalization(spec.all(), spec.maximal());
        assert_eq!(g, spec.all());
    }

    #[test]
    fn hull_topology_specialization_is_inclusion() {
        for l in [bundled::a6(), bundled::a8(), bundled::lukasiewicz_chain(5), bundled::boolean4()] {
            let an = Analysis::new(l).unwrap();
            let spec = an.spectrum();
            let th = coannihilator_basis_topology(&an, Space::Spec, Variant::Hull).unwrap();
            let td = coannihilator_basis_topology(&an, Space::Spec, Variant::Dual).unwrap();
            for p in 0..spec.len() {
                let cl_h = th.closure(PointSet::singleton(p));
                assert_eq!(cl_h, spec.hull(spec.prime(p).elements()));
                assert_eq!(cl_h, spec.specialization(spec.all(), PointSet::singleton(p)));
                for q in 0..spec.len() {
                    let inclusion = spec.contained(p, q);
                    assert_eq!(inclusion, cl_h.contains(q));
                    assert_eq!(inclusion, td.closure(PointSet::singleton(q)).contains(p));
                }
            }
            let pi = PointSet::singleton(0);
            let s = spec.specialization(spec.all(), pi);
            assert_eq!(spec.specialization(spec.all(), s), s);
        }
    }

    #[test]
    fn retraction_examples() {
        let an = Analysis::new(bundled::a6()).unwrap();
        let r = retraction_check(&an).unwrap();
        let one = an.spectrum().index_of(Filter::unit(an.lattice())).unwrap();
        assert!(r.exists);
        assert!(r.map.unwrap().iter().all(|&m| m == one));

        let an = Analysis::new(bundled::a8()).unwrap();
        let r = retraction_check(&an).unwrap();
        assert!(!r.exists);
        let (p, m, n) = r.witness.unwrap();
        assert!(an.spectrum().is_maximal(p));
        assert!(an.spectrum().is_minimal(m) && an.spectrum().is_minimal(n));
        let spec_d = coannihilator_basis_topology(&an, Space::Spec, Variant::Dual).unwrap();
        let min_d = coannihilator_basis_topology(&an, Space::Min, Variant::Dual).unwrap();
        assert!(search_retraction(&spec_d, &min_d).is_none());

        let an = Analysis::new(bundled::godel_chain(4)).unwrap();
        assert!(retraction_check(&an).unwrap().exists);
    }

    #[test]
    fn closure_relations_on_examples() {
        let an = Analysis::new(bundled::a6()).unwrap();
        let spec = an.spectrum();
        let one = spec.index_of(Filter::unit(an.lattice())).unwrap();
        for kind in [RelationKind::I, RelationKind::J] {
            let r = closure_relation(&an, kind).unwrap();
            assert_eq!(r.closure[one], spec.all());
            assert!(r.eta_homeomorphism);
            for p in 0..spec.len() {
                assert!(r.base[p].contains(p));
                for q in r.base[p].iter() {
                    assert!(r.base[q].contains(p));
                }
            }
        }

        let an = Analysis::new(bundled::a8()).unwrap();
        let l = an.lattice();
        let spec = an.spectrum();
        let r = closure_relation(&an, RelationKind::I).unwrap();
        let f1 = spec.index_of(filt(l, &["f", "1"])).unwrap();
        let ce1 = spec.index_of(filt(l, &["c", "e", "1"])).unwrap();
        assert!(r.closure[f1].contains(ce1));
        assert!(!spec.hull(spec.prime(f1).elements()).contains(ce1));
        assert!(!r.eta_bijective && !r.eta_homeomorphism);
    }

    #[test]
    fn dual_closed_sets_are_characterized() {
        for l in [bundled::a6(), bundled::a8(), bundled::boolean4()] {
            let an = Analysis::new(l).unwrap();
            let closed = dual_closed_sets(&an).unwrap();
            assert!(closed.contains(&PointSet::empty()));
            assert!(closed.contains(&an.spectrum().all()));
        }
        let an = Analysis::new(bundled::a8()).unwrap();
        let spec = an.spectrum();
        let closed = dual_closed_sets(&an).unwrap();
        let both_min = spec.minimal();
        let containing: Vec<_> = closed.iter().filter(|c| both_min.is_subset(**c)).collect();
        assert_eq!(containing.len(), 2);
    }

    #[test]
    fn separation_of_small_spaces() {
        let an = Analysis::new(bundled::godel_chain(2)).unwrap();
        let t = coannihilator_basis_topology(&an, Space::Spec, Variant::Dual).unwrap();
        assert_eq!(t.len(), 1);
        let s = separation_check(&t);
        assert!(s.t1 && s.hausdorff && s.normal);

        let an = Analysis::new(bundled::a6()).unwrap();
        let t = coannihilator_basis_topology(&an, Space::Min, Variant::Dual).unwrap();
        assert_eq!(t.len(), 1);
        assert!(separation_check(&t).hausdorff);
        let t = coannihilator_basis_topology(&an, Space::Spec, Variant::Dual).unwrap();
        assert!(separation_check(&t).normal);
    }
}
