//! Shared per-lattice data: the lattice, its filters, spectrum and coannulets.

use crate::coann::coannihilator;
use crate::error::Result;
use crate::filters::{all_filters, Filter, FilterLattice};
use crate::lattice::ResiduatedLattice;
use crate::set::ElementSet;
use crate::spectra::{spectrum_of, Spectrum};

/// Everything later stages need, computed once.
#[derive(Debug, Clone)]
pub struct Analysis {
    lattice: ResiduatedLattice,
    filters: FilterLattice,
    spectrum: Spectrum,
    coannulets: Vec<Filter>,
}

impl Analysis {
    pub fn new(lattice: ResiduatedLattice) -> Result<Self> {
        let filters = all_filters(&lattice);
        let spectrum = spectrum_of(&lattice, &filters)?;
        let coannulets = (0..lattice.size())
            .map(|x| coannihilator(&lattice, &spectrum, ElementSet::singleton(x)))
            .collect();
        Ok(Self {
            lattice,
            filters,
            spectrum,
            coannulets,
        })
    }

    pub fn lattice(&self) -> &ResiduatedLattice {
        &self.lattice
    }

    pub fn filters(&self) -> &FilterLattice {
        &self.filters
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// `x⊥`
    pub fn coannulet(&self, x: usize) -> Filter {
        self.coannulets[x]
    }

    /// `X⊥` for an arbitrary subset.
    pub fn coannihilator(&self, x: ElementSet) -> Filter {
        coannihilator(&self.lattice, &self.spectrum, x)
    }
}
