//! Exact facet-pairing engine for hyperbolic 4-manifolds built from copies of
//! the regular ideal 24-cell.

pub mod assembly;
pub mod boundary;
pub mod census;
pub mod construction;
pub mod cusp;
pub mod homology;
pub mod isometry;
pub mod linalg;
pub mod pipeline;
pub mod polytope;
pub mod scalar;
pub mod selftest;

/// Exact rational scalar used for isometry matrices.
pub type Rational = num_rational::Ratio<i64>;

/// Arbitrary-precision integer used for chain complexes.
pub type Integer = num_bigint::BigInt;

pub type RationalMatrix = linalg::Mat4<Rational>;
pub type RationalVector = linalg::Vec4<Rational>;

pub use scalar::{EuclideanInt, Field, Scalar};

pub use isometry::Isometry;
pub use polytope::{build_24cell, cell24, CellRef, Cell24, Color, CuspLabel, FacetLabel, Sign, Vector4};
