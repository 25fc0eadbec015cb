//! Staged constructions, pairing tables and the quotient identification
//! complex.

mod presets;
mod quotient;
pub(crate) use quotient::number_classes;
pub(crate) use script::insert_boundary_isomorphism;
mod script;
mod table;

use thiserror::Error;

use crate::boundary::BoundaryError;
use crate::polytope::Color;

pub use presets::{preset, preset_names};
pub use quotient::{
    boundary_strata, build_quotient, cusp_classes, orientability, orientation_double_cover, orientation_signs,
    quotient_first_homology, quotient_flag_first_homology, quotient_homology, quotient_model, ridge_check, ridge_summary, volume_multiple, BoundaryComponent, CuspClass, Orientability, QuotientComplex,
    RidgeClassReport, RidgeKind, RidgeSummary, TriangleGluing,
};
pub use script::{compile_script, seed_vertex_table, BoundaryGlue, ConstructionScript, CuspAlias, CuspRef, Scope, Stage};
pub use table::{FacetRef, Pairing, PairingTable, ValidationReport, Violation};

/// Index of a copy of the 24-cell.
pub type CopyId = usize;

/// Checks the pairing-table invariants.
pub fn validate_table(table: &PairingTable) -> ValidationReport {
    table.validate()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssemblyError {
    #[error("facet {0} is paired twice")]
    DoublePairing(FacetRef),
    #[error("map does not send {0} onto its partner")]
    MapMismatch(FacetRef),
    #[error("invalid self-pairing of {0}")]
    InvalidSelfPairing(FacetRef),
    #[error("copy {0} does not exist")]
    InvalidCopy(usize),
    #[error("no {color} facets in scope {scope}")]
    ColorScopeEmpty { color: Color, scope: String },
    #[error("boundary component {0} does not exist")]
    InvalidComponent(usize),
    #[error("boundary component {0} is glued twice")]
    ComponentReused(usize),
    #[error("facet {0} is not in the named boundary component")]
    SeedNotInComponent(FacetRef),
    #[error("unknown cusp name {0:?}")]
    UnknownCusp(String),
    #[error("vertex table does not determine a bijection of the seed octahedra: {0}")]
    InvalidVertexTable(String),
    #[error("seed does not extend: {0}")]
    SeedDoesNotExtend(String),
    #[error("construction has unpaired facets")]
    HasBoundary,
    #[error("construction is already orientable")]
    AlreadyOrientable,
}

impl From<BoundaryError> for AssemblyError {
    fn from(e: BoundaryError) -> Self {
        AssemblyError::SeedDoesNotExtend(e.to_string())
    }
}
