//! Finite residuated lattices: filters, prime spectra and their topologies,
//! coannihilators, pure filters, and the mp property decided by every known
//! characterization at once.

// operation tables read most clearly with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod bundled;
pub mod coann;
pub mod dot;
pub mod enumerate;
pub mod error;
pub mod filters;
pub mod io;
pub mod lattice;
pub mod mp;
pub mod purity;
pub mod set;
pub mod spectra;

pub use analysis::Analysis;
pub use enumerate::{census, enumerate_residuated, CensusRow, EnumConfig};
pub use error::{Error, Result, StructureError};
pub use filters::{Filter, FilterLattice};
pub use io::{parse_lattice, serialize_lattice, IoError, LatticeDocument};
pub use lattice::{validate_axioms, BoundedLattice, RawTables, ResiduatedLattice, ValidationReport};
pub use mp::{mp_check, MpReport, Verdict, Witness};
pub use set::{ElementSet, PointSet};
pub use spectra::{FiniteTopology, Space, Spectrum, Variant};
