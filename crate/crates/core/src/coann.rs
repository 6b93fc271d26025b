//! Coannihilators, the skeleton and the Baer and Rickart conditions.

use serde::Serialize;

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::filters::{filter_join, Filter};
use crate::lattice::ResiduatedLattice;
use crate::set::ElementSet;
use crate::spectra::{kernel, Spectrum};

/// `X⊥`: the intersection of the primes not containing `X`.
pub fn coannihilator(l: &ResiduatedLattice, spec: &Spectrum, x: ElementSet) -> Filter {
    kernel(l, spec, spec.dual(x))
}

/// The Boolean lattice of coannihilators with its coannulets.
#[derive(Debug, Clone, Serialize)]
pub struct SkeletonLattice {
    /// Every coannihilator, in canonical filter order.
    pub coannihilators: Vec<Filter>,
    /// Skeleton join `(F⊥ ∩ G⊥)⊥` over indices of `coannihilators`.
    pub join: Vec<Vec<usize>>,
    /// `{x⊥}`, canonical order.
    pub coannulets: Vec<Filter>,
    /// `{x⊥⊥}`, canonical order.
    pub dual_coannulets: Vec<Filter>,
}

impl SkeletonLattice {
    pub fn index_of(&self, f: Filter) -> Option<usize> {
        self.coannihilators.iter().position(|&g| g == f)
    }
}

fn canonical(mut v: Vec<Filter>) -> Vec<Filter> {
    v.sort_by_key(|f| f.canonical_key());
    v.dedup();
    v
}

/// Builds the skeleton and checks that it is a Boolean lattice.
pub fn skeleton(an: &Analysis) -> Result<SkeletonLattice> {
    let l = an.lattice();
    let perp = |f: Filter| an.coannihilator(f.elements());
    let coannihilators = canonical(an.filters().filters().iter().map(|&f| perp(f)).collect());
    let index = |f: Filter| {
        coannihilators.iter().position(|&g| g == f).ok_or_else(|| {
            Error::Consistency(format!("{} is missing from the skeleton", l.format_set(f.elements())))
        })
    };
    let k = coannihilators.len();
    let mut join = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let (f, g) = (coannihilators[i], coannihilators[j]);
            join[i][j] = index(perp(perp(f).intersection(perp(g))))?;
            index(f.intersection(g))?;
        }
    }
    let unit = Filter::unit(l);
    let whole = Filter::whole(l);
    for i in 0..k {
        let f = coannihilators[i];
        let c = index(perp(f))?;
        if f.intersection(coannihilators[c]) != unit || coannihilators[join[i][c]] != whole {
            return Err(Error::Consistency(format!(
                "{} has no complement in the skeleton",
                l.format_set(f.elements())
            )));
        }
        for j in 0..k {
            let g = coannihilators[j];
            if perp(coannihilators[join[i][j]]) != perp(f).intersection(perp(g)) {
                return Err(Error::Consistency(format!(
                    "De Morgan fails in the skeleton at {} and {}",
                    l.format_set(f.elements()),
                    l.format_set(g.elements())
                )));
            }
        }
    }
    let coannulets = canonical((0..l.size()).map(|x| an.coannulet(x)).collect());
    let dual_coannulets = canonical((0..l.size()).map(|x| perp(an.coannulet(x))).collect());
    Ok(SkeletonLattice {
        coannihilators,
        join,
        coannulets,
        dual_coannulets,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BaerRickart {
    pub baer: bool,
    pub rickart: bool,
    /// Coannihilators whose skeleton join differs from their filter join.
    pub baer_witness: Option<(Filter, Filter)>,
    /// Coannulets whose join or meet leaves the coannulets, or one lacking a complement.
    pub rickart_witness: Option<(Filter, Filter)>,
}

pub fn classify_baer_rickart(an: &Analysis, sk: &SkeletonLattice) -> BaerRickart {
    let l = an.lattice();
    let gamma = &sk.coannihilators;
    let baer_witness = (0..gamma.len())
        .flat_map(|i| (0..gamma.len()).map(move |j| (i, j)))
        .find(|&(i, j)| gamma[sk.join[i][j]] != filter_join(l, gamma[i], gamma[j]))
        .map(|(i, j)| (gamma[i], gamma[j]));

    let cg = &sk.coannulets;
    let not_closed = cg
        .iter()
        .flat_map(|&f| cg.iter().map(move |&g| (f, g)))
        .find(|&(f, g)| !cg.contains(&filter_join(l, f, g)) || !cg.contains(&f.intersection(g)));
    let uncomplemented = cg
        .iter()
        .find(|&&f| {
            !cg.iter().any(|&g| {
                f.intersection(g) == Filter::unit(l) && filter_join(l, f, g) == Filter::whole(l)
            })
        })
        .map(|&f| (f, f));
    let rickart_witness = not_closed.or(uncomplemented);
    BaerRickart {
        baer: baer_witness.is_none(),
        rickart: rickart_witness.is_none(),
        baer_witness,
        rickart_witness,
    }
}
