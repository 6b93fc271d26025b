use thiserror::Error;

use crate::lattice::ValidationReport;

/// Malformed operation tables: these are rejected before any axiom is checked.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("{size} elements exceeds the supported maximum of {max}")]
    TooLarge { size: usize, max: usize },
    #[error("table `{table}` has {found} rows or columns where {expected} were expected")]
    Dimension {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("table `{table}` entry ({row}, {col}) holds {value}, outside 0..{size}")]
    OutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("{which} index {index} is outside 0..{size}")]
    BadConstant {
        which: &'static str,
        index: usize,
        size: usize,
    },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Structure(#[from] StructureError),

    #[error("residuated lattice axioms fail: {0}")]
    Axioms(Box<ValidationReport>),

    #[error("residuum {x} -> {y} is not realized: the join of {{a | {x} * a <= {y}}} is not in that set")]
    ResiduumNotRealized { x: usize, y: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("mp characterizations disagree: {summary}")]
    Disagreement {
        summary: String,
        report: Box<crate::mp::MpReport>,
        /// Canonical document of the offending lattice, for reproduction.
        lattice: String,
    },

    #[error("order {size} exceeds the enumeration cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
