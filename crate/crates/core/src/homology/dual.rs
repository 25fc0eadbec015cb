//! First homology of a 2-complex presented by a graph and closed edge paths.
//!
//! The dual cells of a cellulated manifold away from its boundary and ideal
//! vertices form a spine; its 2-skeleton is a graph (cells joined across
//! paired faces) with one 2-cell per interior codimension-2 cycle. That is
//! enough for `H_1`, with no orientation bookkeeping.

use num_bigint::BigInt;

use super::chain::{homology_up_to, ChainComplex};
use super::group::AbelianGroup;
use super::snf::SparseMatrix;

/// `H_1` of the complex with `vertices` 0-cells, oriented edges `(tail, head)`
/// and 2-cells whose boundaries are the given `(edge, ±1)` loops.
pub fn presented_first_homology(vertices: usize, edges: &[(usize, usize)], loops: &[Vec<(usize, i64)>]) -> AbelianGroup {
    let mut d1 = SparseMatrix::new(vertices, edges.len());
    for (j, &(tail, head)) in edges.iter().enumerate() {
        d1.add(head, j, BigInt::from(1));
        d1.add(tail, j, BigInt::from(-1));
    }
    let mut d2 = SparseMatrix::new(edges.len(), loops.len());
    for (j, l) in loops.iter().enumerate() {
        for &(e, s) in l {
            d2.add(e, j, BigInt::from(s));
        }
    }
    let complex = ChainComplex::new(vec![vertices, edges.len(), loops.len()], vec![d1, d2]);
    homology_up_to(&complex, 1).expect("loops are closed").swap_remove(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_and_projective_plane() {
        // One vertex, edges a, b; torus relation a + b - a - b.
        let t = presented_first_homology(1, &[(0, 0), (0, 0)], &[vec![(0, 1), (1, 1), (0, -1), (1, -1)]]);
        assert_eq!(t, AbelianGroup::free(2));
        let p = presented_first_homology(1, &[(0, 0)], &[vec![(0, 1), (0, 1)]]);
        assert_eq!(p, AbelianGroup::new(0, &[2]));
    }
}
