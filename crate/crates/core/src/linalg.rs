//! Fixed-size 4-dimensional vectors and matrices over a generic scalar.

use std::fmt;
use std::ops::{Index, Mul};

use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec4<S>(pub [S; 4]);

impl<S: Scalar> Vec4<S> {
    pub fn zero() -> Self {
        Vec4(std::array::from_fn(|_| S::zero()))
    }

    pub fn dot(&self, other: &Self) -> S {
        (0..4).fold(S::zero(), |acc, i| {
            acc + self.0[i].clone() * other.0[i].clone()
        })
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Vec4<T> {
        Vec4(std::array::from_fn(|i| f(&self.0[i])))
    }
}

impl<S> Index<usize> for Vec4<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S: fmt::Display> fmt::Display for Vec4<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// Row-major 4x4 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat4<S>(pub [[S; 4]; 4]);

impl<S: Scalar> Mat4<S> {
    pub fn identity() -> Self {
        Mat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { S::one() } else { S::zero() })
        }))
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> S) -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec4<S>; 4]) -> Self {
        Self::from_fn(|i, j| cols[j].0[i].clone())
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.0[i][j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn mul_vec(&self, v: &Vec4<S>) -> Vec4<S> {
        Vec4(std::array::from_fn(|i| {
            (0..4).fold(S::zero(), |acc, j| {
                acc + self.0[i][j].clone() * v.0[j].clone()
            })
        }))
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| {
            (0..4).fold(S::zero(), |acc, k| {
                acc + self.0[i][k].clone() * other.0[k][j].clone()
            })
        })
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Mat4<T> {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| f(&self.0[i][j]))))
    }

    /// Determinant by cofactor expansion; exact over any ring.
    pub fn det(&self) -> S {
        let m = &self.0;
        let det3 = |r: [usize; 3], c: [usize; 3]| -> S {
            let a = |i: usize, j: usize| m[r[i]][c[j]].clone();
            a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
        };
        let mut total = S::zero();
        for j in 0..4 {
            let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
            let minor = det3([1, 2, 3], [cols[0], cols[1], cols[2]]);
            let term = m[0][j].clone() * minor;
            total = if j % 2 == 0 { total + term } else { total - term };
        }
        total
    }

    pub fn is_orthogonal(&self) -> bool {
        self.mul_mat(&self.transpose()) == Self::identity()
    }
}

impl<S: Field> Mat4<S> {
    /// Gauss-Jordan inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.0.clone();
        let mut inv = Self::identity().0;
        for col in 0..4 {
            let pivot = (col..4).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..4 {
                a[col][j] = a[col][j].clone() / p.clone();
                inv[col][j] = inv[col][j].clone() / p.clone();
            }
            for r in 0..4 {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..4 {
                    a[r][j] = a[r][j].clone() - factor.clone() * a[col][j].clone();
                    inv[r][j] = inv[r][j].clone() - factor.clone() * inv[col][j].clone();
                }
            }
        }
        Some(Mat4(inv))
    }

    /// The unique linear map sending each `sources[k]` to `images[k]`, if the
    /// sources contain a basis and the assignment is consistent on all of them.
    pub fn solve_linear_map(sources: &[Vec4<S>], images: &[Vec4<S>]) -> Option<Self> {
        assert_eq!(sources.len(), images.len());
        let basis = independent_quadruple(sources)?;
        let src = Mat4::from_columns(&basis.map(|k| sources[k].clone()));
        let dst = Mat4::from_columns(&basis.map(|k| images[k].clone()));
        let map = dst.mul_mat(&src.inverse()?);
        sources
            .iter()
            .zip(images)
            .all(|(s, t)| map.mul_vec(s) == *t)
            .then_some(map)
    }
}

fn independent_quadruple<S: Field>(vectors: &[Vec4<S>]) -> Option<[usize; 4]> {
    let n = vectors.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let cols = [a, b, c, d].map(|k| vectors[k].clone());
                    if !Mat4::from_columns(&cols).det().is_zero() {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

impl<S: Scalar> Mul for Mat4<S> {
    type Output = Mat4<S>;

    fn mul(self, rhs: Self) -> Self {
        self.mul_mat(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn determinant_matches_known_values() {
        let m = Mat4([[2, 0, 0, 0], [0, 3, 0, 0], [0, 0, 5, 0], [0, 0, 0, 7]]);
        assert_eq!(m.det(), 210);
        let swap = Mat4([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(swap.det(), -1);
        let singular = Mat4([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 0, 1], [1, 0, 1, 0]]);
        assert_eq!(singular.det(), 0);
    }

    #[test]
    fn inverse_round_trips_over_rationals_and_floats() {
        let m = Mat4([[2, 1, 0, 0], [0, 1, 3, 0], [1, 0, 1, 1], [0, 0, 2, 1]]).map(|&x| q(x));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul_mat(&inv), Mat4::identity());

        let f = m.map(|x| *x.numer() as f64);
        let fi = f.inverse().unwrap();
        let prod = f.mul_mat(&fi);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((prod.0[i][j] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn solve_recovers_half_integer_map() {
        let signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
        let h = Mat4::from_fn(|i, j| Q::new(signs[i][j], 2));
        assert!(h.is_orthogonal());
        let sources: Vec<Vec4<Q>> = [[1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 0, 0, 1]]
            .iter()
            .map(|v| Vec4(v.map(q)))
            .collect();
        let images: Vec<Vec4<Q>> = sources.iter().map(|v| h.mul_vec(v)).collect();
        assert_eq!(Mat4::solve_linear_map(&sources, &images), Some(h));
    }

    #[test]
    fn solve_rejects_dependent_sources() {
        let sources = vec![Vec4([1, 0, 0, 0].map(q)), Vec4([2, 0, 0, 0].map(q))];
        assert_eq!(Mat4::solve_linear_map(&sources, &sources), None);
    }
}
