//! Cusp sections as cube complexes built from vertex figures.

mod complex;
mod cube;
pub mod flat;

use thiserror::Error;

use crate::assembly::Orientability;
use crate::homology::AbelianGroup;

pub use complex::{
    boundary_surfaces, cube_complex_homology, cusp_complex, cusp_model, cusp_orientability, face_color, first_homology, flag_first_homology,
    verify_flat_structure, BoundarySurface, CubeComplex, CubeOrigin, FaceGlue, FlatStructureReport, SurfaceType,
};
pub use cube::{corner_coords, corner_from_coords, face_corners, face_slot, CubeSym};
pub use flat::{build_flat_type_table, flat_type_table, FlatClosedType, FlatCompactType, FlatTypeEntry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CuspError {
    #[error("cusp {0} does not exist")]
    InvalidCusp(usize),
    #[error("boundary surface has Euler characteristic {0}")]
    NonFlatBoundary(i64),
    #[error("no flat type with {orientability} and H1 = {h1}")]
    UnclassifiedFlatType { orientability: Orientability, h1: AbelianGroup },
    #[error("no compact flat type with {orientability}, {boundary_components} boundary components and H1 = {h1}")]
    UnclassifiedCompactType { orientability: Orientability, boundary_components: usize, h1: AbelianGroup },
    #[error("section is not closed")]
    NotClosed,
    #[error("section is closed")]
    Closed,
}

pub fn classify_closed(cc: &CubeComplex) -> Result<FlatClosedType, CuspError> {
    if !cc.is_closed() {
        return Err(CuspError::NotClosed);
    }
    let orientability = cusp_orientability(cc);
    let h1 = first_homology(cc);
    flat::lookup_closed(orientability.is_orientable(), &h1)
        .ok_or(CuspError::UnclassifiedFlatType { orientability, h1 })
}

pub fn classify_compact(cc: &CubeComplex) -> Result<FlatCompactType, CuspError> {
    if cc.is_closed() {
        return Err(CuspError::Closed);
    }
    let orientability = cusp_orientability(cc);
    let boundary_components = boundary_surfaces(cc)?.len();
    let h1 = first_homology(cc);
    match flat::lookup_compact(orientability.is_orientable(), boundary_components, &h1) {
        FlatCompactType::Other => {
            Err(CuspError::UnclassifiedCompactType { orientability, boundary_components, h1 })
        }
        t => Ok(t),
    }
}
