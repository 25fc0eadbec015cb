use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use thiserror::Error;

use super::group::AbelianGroup;
use super::snf::{sparse_smith_normal_form, SnfResult, SparseMatrix};
use crate::scalar::EuclideanInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundarySquareNonzero(usize),
}

/// Integer chain complex `C_top → … → C_1 → C_0`.
///
/// `boundaries[d - 1]` is `∂_d : C_d → C_{d-1}` with rows indexed by
/// `(d-1)`-cells and columns by `d`-cells.
#[derive(Clone, Debug)]
pub struct ChainComplex<R> {
    cell_counts: Vec<usize>,
    boundaries: Vec<SparseMatrix<R>>,
}

impl<R: EuclideanInt> ChainComplex<R> {
    pub fn new(cell_counts: Vec<usize>, boundaries: Vec<SparseMatrix<R>>) -> Self {
        assert_eq!(boundaries.len() + 1, cell_counts.len().max(1));
        for (d, b) in boundaries.iter().enumerate() {
            assert_eq!(b.rows(), cell_counts[d], "row count of boundary {}", d + 1);
            assert_eq!(b.cols(), cell_counts[d + 1], "column count of boundary {}", d + 1);
        }
        ChainComplex { cell_counts, boundaries }
    }

    pub fn top_dimension(&self) -> usize {
        self.cell_counts.len().saturating_sub(1)
    }

    pub fn cell_counts(&self) -> &[usize] {
        &self.cell_counts
    }

    pub fn boundary(&self, d: usize) -> Option<&SparseMatrix<R>> {
        d.checked_sub(1).and_then(|k| self.boundaries.get(k))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cell_counts
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn verify_boundary_square(&self) -> Result<(), HomologyError> {
        for d in 2..=self.top_dimension() {
            let prod = self.boundaries[d - 2].mul(&self.boundaries[d - 1]);
            if !prod.is_zero() {
                return Err(HomologyError::BoundarySquareNonzero(d));
            }
        }
        Ok(())
    }
}

/// `H_0 … H_top` from the Smith normal forms of the boundary maps.
pub fn homology_groups<R: EuclideanInt + Into<BigInt>>(
    complex: &ChainComplex<R>,
) -> Result<Vec<AbelianGroup>, HomologyError> {
    homology_up_to(complex, complex.top_dimension())
}

/// `H_0 … H_max_degree`; only the boundary maps up to `∂_{max+1}` are reduced.
pub fn homology_up_to<R: EuclideanInt + Into<BigInt>>(
    complex: &ChainComplex<R>,
    max_degree: usize,
) -> Result<Vec<AbelianGroup>, HomologyError> {
    complex.verify_boundary_square()?;
    let top = complex.top_dimension();
    let max_degree = max_degree.min(top);
    let snfs: Vec<Option<SnfResult<R>>> = (0..=top + 1)
        .map(|d| {
            if d == 0 || d > top || d > max_degree + 1 {
                None
            } else {
                Some(sparse_smith_normal_form(&complex.boundaries[d - 1]))
            }
        })
        .collect();
    let rank = |d: usize| snfs[d].as_ref().map_or(0, SnfResult::rank);
    Ok((0..=max_degree)
        .map(|d| {
            let free = complex.cell_counts[d] - rank(d) - rank(d + 1);
            let torsion = snfs[d + 1]
                .as_ref()
                .map(|s| {
                    s.torsion()
                        .map(|t| t.clone().into().abs().to_biguint().expect("positive factor"))
                        .collect::<Vec<BigUint>>()
                })
                .unwrap_or_default();
            AbelianGroup::from_factors(free, torsion)
        })
        .collect())
}
