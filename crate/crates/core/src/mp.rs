//! The mp property, decided by every equivalent characterization at once.
//!
//! Each characterization is evaluated independently from the shared analysis.
//! They are theorems about the same property, so any disagreement means either a
//! bug or a false theorem, and [`mp_check`] refuses to return a verdict.

use serde::Serialize;
use std::fmt;

use crate::analysis::Analysis;
use crate::coann::skeleton;
use crate::error::{Error, Result};
use crate::filters::{comaximal, filter_join, is_domain, principal_filter, quotient, Filter};
use crate::io::serialize_lattice;
use crate::lattice::ResiduatedLattice;
use crate::purity::{d_of_prime, iota_check, omega_lattice, pure_filters};
use crate::set::PointSet;
use crate::spectra::{
    closure_relation, coannihilator_basis_topology, is_prime_filter, search_retraction, separation_check,
    separation_witness_in, RelationKind, Space, Variant,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Spectral,
    Algebraic,
    Quotient,
    Topology,
    Purity,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Spectral => "spectral",
            Family::Algebraic => "algebraic",
            Family::Quotient => "quotient",
            Family::Topology => "topology",
            Family::Purity => "purity",
        })
    }
}

/// Evidence against a characterization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub summary: String,
    /// Labels of the elements involved.
    pub elements: Vec<String>,
    /// Filters involved, formatted as label sets.
    pub filters: Vec<String>,
}

/// Whether a statement is equivalent to mp or only implied by it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Equivalent,
    Necessary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    #[serde(skip)]
    pub id: &'static str,
    pub family: Family,
    pub role: Role,
    pub statement: &'static str,
    pub value: bool,
    /// Present whenever `value` is false.
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MpReport {
    #[serde(serialize_with = "by_id")]
    pub verdicts: Vec<Verdict>,
    /// All equivalent characterizations agree, and no necessary condition
    /// fails on an mp lattice.
    pub agree: bool,
    /// The defining characterization's value.
    #[serde(rename = "final")]
    pub final_verdict: bool,
}

fn by_id<S: serde::Serializer>(verdicts: &[Verdict], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(verdicts.len()))?;
    for v in verdicts {
        map.serialize_entry(v.id, v)?;
    }
    map.end()
}

impl MpReport {
    fn assemble(verdicts: Vec<Verdict>) -> Self {
        let final_verdict = verdicts.first().is_none_or(|v| v.value);
        let agree = verdicts.iter().all(|v| match v.role {
            Role::Equivalent => v.value == final_verdict,
            Role::Necessary => v.value || !final_verdict,
        });
        Self {
            verdicts,
            agree,
            final_verdict,
        }
    }

    pub fn equivalences(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| v.role == Role::Equivalent)
    }

    /// Equivalent characterizations matching the defining one.
    pub fn agreeing(&self) -> usize {
        self.equivalences().filter(|v| v.value == self.final_verdict).count()
    }

    pub fn total(&self) -> usize {
        self.equivalences().count()
    }

    pub fn get(&self, id: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.id == id)
    }

    /// First witness against mp, in characterization order.
    pub fn first_witness(&self) -> Option<&Witness> {
        self.verdicts.iter().find_map(|v| v.witness.as_ref())
    }
}

type Check = std::result::Result<(), Witness>;

fn verdict(id: &'static str, family: Family, statement: &'static str, check: Check) -> Verdict {
    let (value, witness) = match check {
        Ok(()) => (true, None),
        Err(w) => (false, Some(w)),
    };
    Verdict {
        id,
        family,
        role: Role::Equivalent,
        statement,
        value,
        witness,
    }
}

struct Fmt<'a>(&'a ResiduatedLattice);

impl Fmt<'_> {
    fn f(&self, f: Filter) -> String {
        self.0.format_set(f.elements())
    }

    fn e(&self, x: usize) -> String {
        self.0.label(x).to_string()
    }

    fn witness(&self, summary: String, elements: &[usize], filters: &[Filter]) -> Witness {
        Witness {
            summary,
            elements: elements.iter().map(|&x| self.e(x)).collect(),
            filters: filters.iter().map(|&f| self.f(f)).collect(),
        }
    }
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, mut check: impl FnMut(T) -> Result<Check>) -> Result<Check> {
    for item in items {
        let c = check(item)?;
        if c.is_err() {
            return Ok(c);
        }
    }
    Ok(Ok(()))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

pub fn mp_via_spectral(an: &Analysis) -> Result<Vec<Verdict>> {
    let l = an.lattice();
    let spec = an.spectrum();
    let fm = Fmt(l);
    let kind = |p: usize| if spec.is_maximal(p) { "maximal" } else { "prime" };

    let unique = (0..spec.len())
        .find(|&p| spec.minimal_below(p).len() != 1)
        .map(|p| {
            let mut mins: Vec<Filter> = spec.minimal_below(p).iter().map(|m| spec.prime(m)).collect();
            mins.sort_by_key(|f| f.elements().iter().collect::<Vec<_>>());
            let names: Vec<String> = mins.iter().map(|&m| fm.f(m)).collect();
            let mut filters = vec![spec.prime(p)];
            filters.extend(&mins);
            fm.witness(
                format!("{} {} contains minimal primes {}", kind(p), fm.f(spec.prime(p)), names.join(",")),
                &[],
                &filters,
            )
        });

    let minimal: Vec<usize> = spec.minimal().iter().collect();
    let comax = first_failure(pairs(minimal.len()).filter(|(i, j)| i < j), |(i, j)| {
        let (m, n) = (spec.prime(minimal[i]), spec.prime(minimal[j]));
        Ok(if comaximal(l, m, n)?.comaximal {
            Ok(())
        } else {
            let join = filter_join(l, m, n);
            Err(fm.witness(
                format!("minimal primes {} and {} join to the proper filter {}", fm.f(m), fm.f(n), fm.f(join)),
                &[],
                &[m, n, join],
            ))
        })
    })?;

    let d_prime = |only_maximal: bool| {
        first_failure((0..spec.len()).filter(|&p| !only_maximal || spec.is_maximal(p)), |p| {
            let d = d_of_prime(an, spec.prime(p))?;
            Ok(if is_prime_filter(l, d) {
                Ok(())
            } else {
                Err(fm.witness(
                    format!("D({}) = {} is not prime", fm.f(spec.prime(p)), fm.f(d)),
                    &[],
                    &[spec.prime(p), d],
                ))
            })
        })
    };

    Ok(vec![
        verdict(
            "def-unique-minimal",
            Family::Spectral,
            "every prime filter contains a unique minimal prime filter",
            unique.map_or(Ok(()), Err),
        ),
        verdict(
            "minimal-primes-comaximal",
            Family::Spectral,
            "any two distinct minimal prime filters are comaximal",
            comax,
        ),
        verdict(
            "d-of-prime-is-prime",
            Family::Spectral,
            "D(p) is prime for every prime filter p",
            d_prime(false)?,
        ),
        verdict(
            "d-of-maximal-is-prime",
            Family::Spectral,
            "D(m) is prime for every maximal filter m",
            d_prime(true)?,
        ),
    ])
}

/// `x ∧ y = 0` implies disjoint complements joining to the top, in a lattice of
/// filters with bottom `{1}` and top `A`.
fn conormal(l: &ResiduatedLattice, filters: &[Filter]) -> Check {
    let fm = Fmt(l);
    let unit = Filter::unit(l);
    let whole = Filter::whole(l);
    for &f in filters {
        for &g in filters {
            if f.intersection(g) != unit {
                continue;
            }
            let found = filters.iter().any(|&u| {
                u.intersection(f) == unit
                    && filters
                        .iter()
                        .any(|&v| v.intersection(g) == unit && filter_join(l, u, v) == whole)
            });
            if !found {
                return Err(fm.witness(
                    format!(
                        "{} and {} meet in {{1}} but admit no comaximal pair of annihilating filters",
                        fm.f(f),
                        fm.f(g)
                    ),
                    &[],
                    &[f, g],
                ));
            }
        }
    }
    Ok(())
}

pub fn mp_via_algebraic(an: &Analysis) -> Result<Vec<Verdict>> {
    let l = an.lattice();
    let n = l.size();
    let fm = Fmt(l);
    let whole = Filter::whole(l);
    let perp = |x: usize| an.coannulet(x);
    let coprime = || pairs(n).filter(|&(x, y)| l.join(x, y) == l.top());

    let comaximal_pairs = coprime()
        .find(|&(x, y)| filter_join(l, perp(x), perp(y)) != whole)
        .map(|(x, y)| {
            let join = filter_join(l, perp(x), perp(y));
            fm.witness(
                format!(
                    "{} v {} = 1 but {}⊥ v {}⊥ = {} v {} = {} is proper",
                    fm.e(x),
                    fm.e(y),
                    fm.e(x),
                    fm.e(y),
                    fm.f(perp(x)),
                    fm.f(perp(y)),
                    fm.f(join)
                ),
                &[x, y],
                &[perp(x), perp(y), join],
            )
        });

    let negation = coprime()
        .find(|&(x, y)| !(0..n).any(|a| perp(x).contains(a) && perp(y).contains(l.neg(a))))
        .map(|(x, y)| {
            fm.witness(
                format!(
                    "{} v {} = 1 but no a has a in {} and not a in {}",
                    fm.e(x),
                    fm.e(y),
                    fm.f(perp(x)),
                    fm.f(perp(y))
                ),
                &[x, y],
                &[perp(x), perp(y)],
            )
        });

    let identity = pairs(n)
        .find(|&(x, y)| perp(l.join(x, y)) != filter_join(l, perp(x), perp(y)))
        .map(|(x, y)| {
            let lhs = perp(l.join(x, y));
            let rhs = filter_join(l, perp(x), perp(y));
            fm.witness(
                format!("({} v {})⊥ = {} but {}⊥ v {}⊥ = {}", fm.e(x), fm.e(y), fm.f(lhs), fm.e(x), fm.e(y), fm.f(rhs)),
                &[x, y],
                &[lhs, rhs],
            )
        });

    let unit_implication = pairs(n)
        .find(|&(x, y)| perp(l.join(x, y)) == whole && filter_join(l, perp(x), perp(y)) != whole)
        .map(|(x, y)| {
            let rhs = filter_join(l, perp(x), perp(y));
            fm.witness(
                format!("({} v {})⊥ = A but {}⊥ v {}⊥ = {}", fm.e(x), fm.e(y), fm.e(x), fm.e(y), fm.f(rhs)),
                &[x, y],
                &[rhs],
            )
        });

    let filters = an.filters().filters();
    let mut principal: Vec<Filter> = (0..n).map(|x| principal_filter(l, x)).collect();
    principal.sort_by_key(|f| f.canonical_key());
    principal.dedup();

    let om = omega_lattice(an)?;
    let omega_comaximal = pairs(om.filters.len())
        .find(|&(a, b)| om.join[a][b] == om.index_of(whole).expect("A is an omega-filter") && {
            filter_join(l, om.filters[a], om.filters[b]) != whole
        })
        .map(|(a, b)| {
            let (f, g) = (om.filters[a], om.filters[b]);
            fm.witness(
                format!(
                    "{} v^ω {} = A but their filter join {} is proper",
                    fm.f(f),
                    fm.f(g),
                    fm.f(filter_join(l, f, g))
                ),
                &[],
                &[f, g],
            )
        });

    let omega_closed = if om.filters.contains(&Filter::unit(l)) {
        pairs(om.filters.len())
            .find(|&(a, b)| !om.filters.contains(&filter_join(l, om.filters[a], om.filters[b])))
            .map(|(a, b)| {
                let (f, g) = (om.filters[a], om.filters[b]);
                let j = filter_join(l, f, g);
                fm.witness(
                    format!("{} v {} = {} is not an omega-filter", fm.f(f), fm.f(g), fm.f(j)),
                    &[],
                    &[f, g, j],
                )
            })
    } else {
        Some(fm.witness("the empty join {1} is not an omega-filter".into(), &[], &[Filter::unit(l)]))
    };

    let gamma = skeleton(an)?.coannulets;
    let gamma_closed = pairs(gamma.len())
        .find(|&(a, b)| !gamma.contains(&filter_join(l, gamma[a], gamma[b])))
        .map(|(a, b)| {
            let j = filter_join(l, gamma[a], gamma[b]);
            fm.witness(
                format!("{} v {} = {} is not a coannulet", fm.f(gamma[a]), fm.f(gamma[b]), fm.f(j)),
                &[],
                &[gamma[a], gamma[b], j],
            )
        });

    let to_check = |w: Option<Witness>| w.map_or(Ok(()), Err);
    Ok(vec![
        verdict(
            "coprime-pairs-coannulets-comaximal",
            Family::Algebraic,
            "x v y = 1 implies x⊥ v y⊥ = A",
            to_check(comaximal_pairs),
        ),
        verdict(
            "coprime-pairs-negation-witness",
            Family::Algebraic,
            "x v y = 1 implies some a has a in x⊥ and not a in y⊥",
            to_check(negation),
        ),
        verdict(
            "coannulet-join-identity",
            Family::Algebraic,
            "(x v y)⊥ = x⊥ v y⊥ for all x, y",
            to_check(identity),
        ),
        verdict(
            "coannulet-unit-implication",
            Family::Algebraic,
            "(x v y)⊥ = A implies x⊥ v y⊥ = A",
            to_check(unit_implication),
        ),
        verdict(
            "filter-lattice-conormal",
            Family::Algebraic,
            "the lattice of filters is conormal",
            conormal(l, filters),
        ),
        verdict(
            "principal-filter-lattice-conormal",
            Family::Algebraic,
            "the lattice of principal filters is conormal",
            conormal(l, &principal),
        ),
        verdict(
            "omega-join-comaximal",
            Family::Algebraic,
            "F v^ω G = A implies F v G = A for omega-filters",
            to_check(omega_comaximal),
        ),
        verdict(
            "omega-closed-under-joins",
            Family::Algebraic,
            "omega-filters are closed under filter joins",
            to_check(omega_closed),
        ),
        verdict(
            "coannulets-closed-under-joins",
            Family::Algebraic,
            "coannulets are closed under filter joins",
            to_check(gamma_closed),
        ),
    ])
}

pub fn mp_via_quotient(an: &Analysis) -> Result<Vec<Verdict>> {
    let l = an.lattice();
    let spec = an.spectrum();
    let fm = Fmt(l);
    let check = |only_maximal: bool| {
        first_failure((0..spec.len()).filter(|&p| !only_maximal || spec.is_maximal(p)), |p| {
            let d = d_of_prime(an, spec.prime(p))?;
            let q = quotient(l, d)?;
            let dom = is_domain(&q.lattice);
            Ok(match dom.witness {
                None => Ok(()),
                Some((x, y)) => Err(fm.witness(
                    format!(
                        "the quotient by D({}) = {} is not a domain: {} v {} = 1",
                        fm.f(spec.prime(p)),
                        fm.f(d),
                        q.lattice.label(x),
                        q.lattice.label(y)
                    ),
                    &[q.classes[x].first().expect("non-empty class"), q.classes[y].first().expect("non-empty class")],
                    &[spec.prime(p), d],
                )),
            })
        })
    };
    Ok(vec![
        verdict(
            "quotient-by-d-prime-domain",
            Family::Quotient,
            "A/D(p) is a domain for every prime filter p",
            check(false)?,
        ),
        verdict(
            "quotient-by-d-maximal-domain",
            Family::Quotient,
            "A/D(m) is a domain for every maximal filter m",
            check(true)?,
        ),
    ])
}

pub fn mp_via_topology(an: &Analysis) -> Result<Vec<Verdict>> {
    let l = an.lattice();
    let spec = an.spectrum();
    let fm = Fmt(l);
    let spec_d = coannihilator_basis_topology(an, Space::Spec, Variant::Dual)?;
    let min_d = coannihilator_basis_topology(an, Space::Min, Variant::Dual)?;
    let filters_of = |s: PointSet| -> Vec<Filter> { s.iter().map(|p| spec.prime(p)).collect() };

    let hausdorff = match separation_witness_in(&spec_d, spec.minimal()) {
        None => Ok(()),
        Some((m, n)) => {
            let shared = spec_d.min_nbhd(m).intersection(spec_d.min_nbhd(n));
            Err(fm.witness(
                format!(
                    "minimal primes {} and {} have no disjoint dual open neighbourhoods: both meet {}",
                    fm.f(spec.prime(m)),
                    fm.f(spec.prime(n)),
                    spec.format_points(l, shared)
                ),
                &[],
                &filters_of(PointSet::singleton(m).with(n).union(shared)),
            ))
        }
    };

    let hull_closed = spec
        .minimal()
        .iter()
        .find(|&m| !spec_d.is_closed(spec.above(m)))
        .map(|m| {
            let h = spec.above(m);
            let missing = spec_d.closure(h).difference(h);
            fm.witness(
                format!(
                    "h({}) = {} is not dual closed; its closure adds {}",
                    fm.f(spec.prime(m)),
                    spec.format_points(l, h),
                    spec.format_points(l, missing)
                ),
                &[],
                &filters_of(h.union(missing)),
            )
        })
        .map_or(Ok(()), Err);

    let retract = match search_retraction(&spec_d, &min_d) {
        Some(_) => Ok(()),
        None => Err(fm.witness(
            "no continuous map from Spec_d onto Min_d fixes every minimal prime".into(),
            &[],
            &filters_of(spec.minimal()),
        )),
    };

    let sep = separation_check(&spec_d);
    let normal = match sep.normal_witness {
        None => Ok(()),
        Some((p, q)) => Err(fm.witness(
            format!(
                "closures of {} and {} are disjoint but every pair of neighbourhoods meets",
                fm.f(spec.prime(p)),
                fm.f(spec.prime(q))
            ),
            &[],
            &[spec.prime(p), spec.prime(q)],
        )),
    };

    let mut relation_verdicts = Vec::new();
    for (kind, name) in [(RelationKind::I, "i"), (RelationKind::J, "j")] {
        let r = closure_relation(an, kind)?;
        let equals_hull = spec
            .minimal()
            .iter()
            .find(|&m| r.closure[m] != spec.above(m))
            .map(|m| {
                fm.witness(
                    format!(
                        "the {name} closure of {} is {} but h({}) = {}",
                        fm.f(spec.prime(m)),
                        spec.format_points(l, r.closure[m]),
                        fm.f(spec.prime(m)),
                        spec.format_points(l, spec.above(m))
                    ),
                    &[],
                    &filters_of(r.closure[m]),
                )
            })
            .map_or(Ok(()), Err);
        let homeo = if r.eta_homeomorphism {
            Ok(())
        } else {
            Err(fm.witness(
                format!(
                    "Min_d has {} point(s) but Spec_d modulo the {name} closure has {} class(es){}",
                    min_d.len(),
                    r.classes.len(),
                    if r.eta_bijective { " and the bijection is not bicontinuous" } else { "" }
                ),
                &[],
                &filters_of(spec.minimal()),
            ))
        };
        relation_verdicts.push((equals_hull, homeo));
    }
    let (j_hull, j_homeo) = relation_verdicts.pop().expect("two relations");
    let (i_hull, i_homeo) = relation_verdicts.pop().expect("two relations");

    Ok(vec![
        verdict(
            "min-dual-hausdorff",
            Family::Topology,
            "distinct minimal primes have disjoint neighbourhoods in the dual hull-kernel topology",
            hausdorff,
        ),
        verdict(
            "hull-of-minimal-dual-closed",
            Family::Topology,
            "h(m) is closed in Spec_d for every minimal prime m",
            hull_closed,
        ),
        verdict(
            "min-dual-retract",
            Family::Topology,
            "Min_d is a retract of Spec_d",
            retract,
        ),
        verdict(
            "spec-dual-normal",
            Family::Topology,
            "Spec_d is normal",
            normal,
        ),
        verdict(
            "i-closure-equals-hull",
            Family::Topology,
            "the transitive closure of i at each minimal prime m is h(m)",
            i_hull,
        ),
        verdict(
            "j-closure-equals-hull",
            Family::Topology,
            "the transitive closure of j at each minimal prime m is h(m)",
            j_hull,
        ),
        verdict(
            "i-quotient-homeomorphic",
            Family::Topology,
            "Min_d is homeomorphic to Spec_d modulo the closure of i via m ↦ [m]",
            i_homeo,
        ),
        verdict(
            "j-quotient-homeomorphic",
            Family::Topology,
            "Min_d is homeomorphic to Spec_d modulo the closure of j via m ↦ [m]",
            j_homeo,
        ),
    ])
}

pub fn mp_via_purity(an: &Analysis) -> Result<Vec<Verdict>> {
    let l = an.lattice();
    let spec = an.spectrum();
    let fm = Fmt(l);
    let ps = pure_filters(an)?;
    let impure = |what: &str, f: Filter| -> Witness {
        fm.witness(format!("{what} {} is not pure", fm.f(f)), &[], &[f])
    };
    let all_pure = |what: &str, fs: &[Filter]| -> Check {
        fs.iter().find(|f| !ps.pure.contains(f)).map_or(Ok(()), |&f| Err(impure(what, f)))
    };

    let om = omega_lattice(an)?;
    let gamma = skeleton(an)?.coannulets;
    let d_of = |only_maximal: bool| -> Result<Vec<Filter>> {
        (0..spec.len())
            .filter(|&p| !only_maximal || spec.is_maximal(p))
            .map(|p| d_of_prime(an, spec.prime(p)))
            .collect()
    };
    let minimal: Vec<Filter> = spec.minimal().iter().map(|m| spec.prime(m)).collect();
    let same = |what: &str, other: &[Filter]| -> Check {
        if minimal.len() == other.len() && minimal.iter().all(|m| other.contains(m)) {
            Ok(())
        } else {
            let mut filters = minimal.clone();
            filters.extend(other);
            let names = |fs: &[Filter]| fs.iter().map(|&f| fm.f(f)).collect::<Vec<_>>().join(", ");
            Err(fm.witness(
                format!("Min = {{{}}} but {what} = {{{}}}", names(&minimal), names(other)),
                &[],
                &filters,
            ))
        }
    };
    let iota = iota_check(an, &ps)?;
    let homeo = if iota.homeomorphism {
        Ok(())
    } else {
        Err(fm.witness(
            if iota.bijective {
                "the identity between Spp and Min_d is not bicontinuous".into()
            } else {
                "Spp and Min differ, so the identity is not even defined".into()
            },
            &[],
            &ps.purely_prime,
        ))
    };

    Ok(vec![
        verdict(
            "omega-filters-pure",
            Family::Purity,
            "every omega-filter is pure",
            all_pure("omega-filter", &om.filters),
        ),
        verdict(
            "coannulets-pure",
            Family::Purity,
            "every coannulet is pure",
            all_pure("coannulet", &gamma),
        ),
        verdict(
            "d-of-prime-pure",
            Family::Purity,
            "D(p) is pure for every prime filter p",
            all_pure("D of a prime", &d_of(false)?),
        ),
        // Implied by mp but strictly weaker: a local lattice has D(m) = {1}.
        Verdict {
            role: Role::Necessary,
            ..verdict(
                "d-of-maximal-pure",
                Family::Purity,
                "D(m) is pure for every maximal filter m",
                all_pure("D of a maximal filter", &d_of(true)?),
            )
        },
        verdict(
            "minimal-primes-pure",
            Family::Purity,
            "every minimal prime filter is pure",
            all_pure("minimal prime", &minimal),
        ),
        verdict(
            "min-equals-purely-maximal",
            Family::Purity,
            "minimal prime filters are exactly the purely-maximal filters",
            same("Max(σ)", &ps.purely_maximal),
        ),
        verdict(
            "min-equals-purely-prime",
            Family::Purity,
            "minimal prime filters are exactly the purely-prime filters",
            same("Spp", &ps.purely_prime),
        ),
        verdict(
            "identity-spp-min-homeomorphism",
            Family::Purity,
            "the identity from Spp to Min_d is a homeomorphism",
            homeo,
        ),
    ])
}

/// All characterizations, in fixed order, without judging agreement.
pub fn evaluate(an: &Analysis) -> Result<MpReport> {
    let (spectral, (algebraic, (quotient, (topology, purity)))) = rayon::join(
        || mp_via_spectral(an),
        || {
            rayon::join(
                || mp_via_algebraic(an),
                || {
                    rayon::join(
                        || mp_via_quotient(an),
                        || rayon::join(|| mp_via_topology(an), || mp_via_purity(an)),
                    )
                },
            )
        },
    );
    let mut verdicts = spectral?;
    verdicts.extend(algebraic?);
    verdicts.extend(quotient?);
    verdicts.extend(topology?);
    verdicts.extend(purity?);
    Ok(MpReport::assemble(verdicts))
}

/// Decides mp; disagreement between characterizations is an error carrying
/// the full report and the lattice.
pub fn mp_check(l: &ResiduatedLattice) -> Result<MpReport> {
    let an = Analysis::new(l.clone())?;
    mp_check_analysis(&an)
}

pub fn mp_check_analysis(an: &Analysis) -> Result<MpReport> {
    let report = evaluate(an)?;
    if report.agree {
        return Ok(report);
    }
    let (yes, no): (Vec<&Verdict>, Vec<&Verdict>) = report.verdicts.iter().partition(|v| v.value);
    let ids = |vs: &[&Verdict]| vs.iter().map(|v| v.id).collect::<Vec<_>>().join(", ");
    Err(Error::Disagreement {
        summary: format!("true: [{}]; false: [{}]", ids(&yes), ids(&no)),
        lattice: serialize_lattice(an.lattice()),
        report: Box::new(report),
    })
}

/// Number of statements evaluated by [`mp_check`].
pub const STATEMENTS: usize = 31;

/// Number of those equivalent to mp.
pub const CHARACTERIZATIONS: usize = 30;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;

    #[test]
    fn examples_decide_as_published() {
        let r = mp_check(&bundled::a6()).unwrap();
        assert_eq!(r.verdicts.len(), STATEMENTS);
        assert_eq!(r.total(), CHARACTERIZATIONS);
        assert!(r.agree);
        assert!(r.final_verdict);
        assert!(r.verdicts.iter().all(|v| v.witness.is_none()));

        let r = mp_check(&bundled::a8()).unwrap();
        assert!(r.agree);
        assert!(!r.final_verdict);
        assert_eq!(r.agreeing(), CHARACTERIZATIONS);
        assert!(r.equivalences().all(|v| v.witness.is_some()));
        assert_eq!(
            r.first_witness().unwrap().summary,
            "maximal {a,c,d,e,f,1} contains minimal primes {c,e,1},{f,1}"
        );
    }

    #[test]
    fn chains_and_boolean_algebras_are_mp() {
        for l in [
            bundled::godel_chain(1),
            bundled::godel_chain(2),
            bundled::godel_chain(5),
            bundled::lukasiewicz_chain(5),
            bundled::boolean4(),
        ] {
            let r = mp_check(&l).unwrap();
            assert!(r.final_verdict, "{}", l.name());
        }
    }

    #[test]
    fn ids_are_unique() {
        let r = mp_check(&bundled::a6()).unwrap();
        let mut ids: Vec<&str> = r.verdicts.iter().map(|v| v.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), STATEMENTS);
    }

    #[test]
    fn d_of_maximal_pure_does_not_force_mp() {
        // A8 has a single maximal filter m, and D(m) = {1} is trivially pure.
        let r = mp_check(&bundled::a8()).unwrap();
        let v = r.get("d-of-maximal-pure").unwrap();
        assert_eq!(v.role, Role::Necessary);
        assert!(v.value);
        assert!(!r.final_verdict);
    }

    #[test]
    fn report_serializes_verdicts_by_id() {
        let r = mp_check(&bundled::a8()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["final"], false);
        assert_eq!(v["verdicts"]["def-unique-minimal"]["value"], false);
        assert_eq!(v["verdicts"].as_object().unwrap().len(), STATEMENTS);
    }
}
