//! Exact integer homology of glued cell complexes.

pub mod chain;
pub mod dual;
pub mod group;
pub mod model;
pub mod snf;

pub use chain::{homology_groups, homology_up_to, ChainComplex, HomologyError};
pub use dual::presented_first_homology;
pub use group::AbelianGroup;
pub use model::{order_complex_model, FlagModel, GluedComplex, Gluing, PosetTemplate};
pub use snf::{smith_normal_form, sparse_smith_normal_form, IntMatrix, SnfResult, SparseMatrix};
