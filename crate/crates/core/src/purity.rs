//! Lattice ideals, omega-filters, `D(p)`, `σ`, pure filters and the pure spectrum.

use serde::Serialize;

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::filters::{filter_join, filter_join_all, Filter};
use crate::lattice::ResiduatedLattice;
use crate::set::{ElementSet, PointSet};
use crate::spectra::{
    continuity_witness, coannihilator_basis_topology, is_prime_filter, kernel, FiniteTopology, Space, Variant,
};

/// A non-empty down-closed join-closed subset of the lattice reduct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LatticeIdeal(ElementSet);

impl LatticeIdeal {
    pub fn new(l: &ResiduatedLattice, set: ElementSet) -> Option<Self> {
        is_lattice_ideal(l, set).then_some(Self(set))
    }

    pub fn elements(self) -> ElementSet {
        self.0
    }

    pub fn contains(self, x: usize) -> bool {
        self.0.contains(x)
    }
}

pub fn is_lattice_ideal(l: &ResiduatedLattice, set: ElementSet) -> bool {
    !set.is_empty()
        && set.iter().all(|x| {
            l.down(x).is_subset(set) && set.iter().all(|y| set.contains(l.join(x, y)))
        })
}

/// Every lattice ideal. In a finite lattice each is `↓x` for its largest element.
pub fn lattice_ideals(l: &ResiduatedLattice) -> Vec<LatticeIdeal> {
    let mut ideals: Vec<LatticeIdeal> = (0..l.size()).map(|x| LatticeIdeal(l.down(x))).collect();
    ideals.sort_by_key(|i| (i.0.len(), i.0.bits()));
    ideals
}

/// `I ⋎ J`: everything below some `i v j`.
pub fn ideal_join(l: &ResiduatedLattice, i: LatticeIdeal, j: LatticeIdeal) -> LatticeIdeal {
    let joins: ElementSet = i
        .0
        .iter()
        .flat_map(|x| j.0.iter().map(move |y| l.join(x, y)))
        .collect();
    LatticeIdeal(l.order().down_closure(joins))
}

/// `ω(I) = {a | a v x = 1 for some x in I}` for a join-closed `I`.
pub fn omega(l: &ResiduatedLattice, i: ElementSet) -> Result<Filter> {
    if i.is_empty() || !i.iter().all(|x| i.iter().all(|y| i.contains(l.join(x, y)))) {
        return Err(Error::Contract(format!(
            "omega needs a non-empty join-closed set, got {}",
            l.format_set(i)
        )));
    }
    let set: ElementSet = (0..l.size())
        .filter(|&a| i.iter().any(|x| l.join(a, x) == l.top()))
        .collect();
    Filter::new(l, set).ok_or_else(|| {
        Error::Consistency(format!("omega({}) = {} is not a filter", l.format_set(i), l.format_set(set)))
    })
}

/// `D(p) = ω(A ∖ p)` for a prime `p`, cross-checked against `k𝒢(p)` and
/// `k(𝒢(p) ∩ Min)`.
pub fn d_of_prime(an: &Analysis, p: Filter) -> Result<Filter> {
    let l = an.lattice();
    if !is_prime_filter(l, p) {
        return Err(Error::Contract(format!(
            "D is only taken of prime filters, {} is not prime",
            l.format_set(p.elements())
        )));
    }
    let d = omega(l, p.elements().complement(l.size()))?;
    let spec = an.spectrum();
    let idx = spec.index_of(p).expect("prime filters are in the spectrum");
    let below = spec.below(idx);
    let via_generalization = kernel(l, spec, below);
    let via_minimal = kernel(l, spec, below.intersection(spec.minimal()));
    if d != via_generalization || d != via_minimal {
        return Err(Error::Consistency(format!(
            "D({}) = {} but kG(p) = {} and k(G(p) ∩ Min) = {}",
            l.format_set(p.elements()),
            l.format_set(d.elements()),
            l.format_set(via_generalization.elements()),
            l.format_set(via_minimal.elements())
        )));
    }
    Ok(d)
}

/// The omega-filters with the join induced by representing ideals.
#[derive(Debug, Clone, Serialize)]
pub struct OmegaLattice {
    pub filters: Vec<Filter>,
    /// `F v^ω G` over indices of `filters`.
    pub join: Vec<Vec<usize>>,
    /// All ideals `I` with `ω(I) = F`, per filter.
    pub representatives: Vec<Vec<LatticeIdeal>>,
}

impl OmegaLattice {
    pub fn index_of(&self, f: Filter) -> Option<usize> {
        self.filters.iter().position(|&g| g == f)
    }
}

/// `Ω`, with `v^ω` checked to be independent of the representing ideals.
pub fn omega_lattice(an: &Analysis) -> Result<OmegaLattice> {
    let l = an.lattice();
    let ideals = lattice_ideals(l);
    let mut filters: Vec<Filter> = Vec::new();
    let mut representatives: Vec<Vec<LatticeIdeal>> = Vec::new();
    for &i in &ideals {
        let f = omega(l, i.elements())?;
        match filters.iter().position(|&g| g == f) {
            Some(k) => representatives[k].push(i),
            None => {
                filters.push(f);
                representatives.push(vec![i]);
            }
        }
    }
    let mut order: Vec<usize> = (0..filters.len()).collect();
    order.sort_by_key(|&k| filters[k].canonical_key());
    let filters: Vec<Filter> = order.iter().map(|&k| filters[k]).collect();
    let representatives: Vec<Vec<LatticeIdeal>> = order.iter().map(|&k| representatives[k].clone()).collect();

    let k = filters.len();
    let mut join = vec![vec![0; k]; k];
    for a in 0..k {
        for b in 0..k {
            let mut value: Option<(Filter, LatticeIdeal, LatticeIdeal)> = None;
            for &i in &representatives[a] {
                for &j in &representatives[b] {
                    let f = omega(l, ideal_join(l, i, j).elements())?;
                    match value {
                        None => value = Some((f, i, j)),
                        Some((g, i0, j0)) if g != f => {
                            return Err(Error::Consistency(format!(
                                "omega join depends on representatives: {} ⋎ {} gives {} but {} ⋎ {} gives {}",
                                l.format_set(i0.elements()),
                                l.format_set(j0.elements()),
                                l.format_set(g.elements()),
                                l.format_set(i.elements()),
                                l.format_set(j.elements()),
                                l.format_set(f.elements())
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
            let (f, _, _) = value.expect("every omega-filter has a representative");
            join[a][b] = filters.iter().position(|&g| g == f).ok_or_else(|| {
                Error::Consistency(format!("omega join {} is not an omega-filter", l.format_set(f.elements())))
            })?;
            let meet = filters[a].intersection(filters[b]);
            if !filters.contains(&meet) {
                return Err(Error::Consistency(format!(
                    "omega-filters are not closed under intersection at {}",
                    l.format_set(meet.elements())
                )));
            }
        }
    }
    Ok(OmegaLattice {
        filters,
        join,
        representatives,
    })
}

/// `σ(F)`, computed as `k𝒢h(F)` and as `{a | F v a⊥ = A}`.
pub fn sigma(an: &Analysis, f: Filter) -> Result<Filter> {
    let l = an.lattice();
    let spec = an.spectrum();
    let h = spec.hull(f.elements());
    let via_spectrum = kernel(l, spec, spec.generalization(spec.all(), h));
    let whole = Filter::whole(l);
    let via_coannulets: ElementSet = (0..l.size())
        .filter(|&a| filter_join(l, f, an.coannulet(a)) == whole)
        .collect();
    if via_spectrum.elements() != via_coannulets {
        return Err(Error::Consistency(format!(
            "sigma({}) is {} via kGh but {} via coannulets",
            l.format_set(f.elements()),
            l.format_set(via_spectrum.elements()),
            l.format_set(via_coannulets)
        )));
    }
    Ok(via_spectrum)
}

/// Pure filters, the purely-maximal and purely-prime ones, and the pure spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct PureSpectrum {
    /// `σ(A)`, canonical order.
    pub pure: Vec<Filter>,
    pub purely_maximal: Vec<Filter>,
    /// `Spp`, canonical order; points of `topology` index this list.
    pub purely_prime: Vec<Filter>,
    /// Opens `d_p(F)` for pure `F`.
    pub topology: FiniteTopology,
}

pub fn is_pure(an: &Analysis, f: Filter) -> Result<bool> {
    Ok(sigma(an, f)? == f)
}

pub fn pure_filters(an: &Analysis) -> Result<PureSpectrum> {
    let l = an.lattice();
    let mut pure = Vec::new();
    for &f in an.filters().filters() {
        if is_pure(an, f)? {
            pure.push(f);
        }
    }
    let proper: Vec<Filter> = pure.iter().copied().filter(|f| f.is_proper(l)).collect();
    let purely_maximal: Vec<Filter> = proper
        .iter()
        .copied()
        .filter(|&f| proper.iter().all(|&g| g == f || !f.is_subset(g)))
        .collect();
    let purely_prime: Vec<Filter> = proper
        .iter()
        .copied()
        .filter(|&p| {
            pure.iter().all(|&f1| {
                f1.is_subset(p)
                    || pure
                        .iter()
                        .all(|&f2| f2.is_subset(p) || !f1.intersection(f2).is_subset(p))
            })
        })
        .collect();
    let opens: Vec<PointSet> = pure
        .iter()
        .map(|&f| (0..purely_prime.len()).filter(|&q| !f.is_subset(purely_prime[q])).collect())
        .collect();
    let topology = FiniteTopology::from_subbasis(Space::Spp, Variant::Pure, (0..purely_prime.len()).collect(), &opens);
    Ok(PureSpectrum {
        pure,
        purely_maximal,
        purely_prime,
        topology,
    })
}

/// `ρ(F)`: the join of the pure filters inside `F`, confirmed pure.
pub fn pure_part(an: &Analysis, ps: &PureSpectrum, f: Filter) -> Result<Filter> {
    let l = an.lattice();
    let rho = filter_join_all(l, ps.pure.iter().copied().filter(|g| g.is_subset(f)));
    if !ps.pure.contains(&rho) {
        return Err(Error::Consistency(format!(
            "the join {} of the pure filters inside {} is not pure",
            l.format_set(rho.elements()),
            l.format_set(f.elements())
        )));
    }
    Ok(rho)
}

/// `F_a`: the intersection of `ρ(m)` over maximal `m` containing `a`.
pub fn f_sub_a(an: &Analysis, ps: &PureSpectrum, a: usize) -> Result<Filter> {
    let spec = an.spectrum();
    let mut acc = Filter::whole(an.lattice());
    for m in spec.maximal().intersection(spec.hull(ElementSet::singleton(a))).iter() {
        acc = acc.intersection(pure_part(an, ps, spec.prime(m))?);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IotaCheck {
    /// `Spp = Min` as sets of filters.
    pub bijective: bool,
    /// The identity is continuous both ways between `Spp` and `Min_d`.
    pub homeomorphism: bool,
}

pub fn iota_check(an: &Analysis, ps: &PureSpectrum) -> Result<IotaCheck> {
    let spec = an.spectrum();
    let min_d = coannihilator_basis_topology(an, Space::Min, Variant::Dual)?;
    let min: Vec<Filter> = min_d.points().iter().map(|&p| spec.prime(p)).collect();
    let bijective = min.len() == ps.purely_prime.len() && min.iter().all(|m| ps.purely_prime.contains(m));
    let homeomorphism = bijective && {
        let to_min: Vec<usize> = ps
            .purely_prime
            .iter()
            .map(|p| min.iter().position(|m| m == p).expect("bijective"))
            .collect();
        let to_spp: Vec<usize> = min
            .iter()
            .map(|m| ps.purely_prime.iter().position(|p| p == m).expect("bijective"))
            .collect();
        continuity_witness(ps.topology.min_nbhds(), min_d.min_nbhds(), &to_min).is_none()
            && continuity_witness(min_d.min_nbhds(), ps.topology.min_nbhds(), &to_spp).is_none()
    };
    Ok(IotaCheck {
        bijective,
        homeomorphism,
    })
}
