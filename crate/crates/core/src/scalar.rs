//! Scalar traits shared by the linear-algebra and homology layers.
//!
//! The combinatorial engine itself only ever instantiates these with exact
//! types ([`Rational`](crate::Rational) and [`BigInt`](num_bigint::BigInt)),
//! but the 4x4 algebra works equally with `f32`/`f64`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// A signed ring element usable in 4x4 matrix arithmetic.
pub trait Scalar: Clone + PartialEq + Debug + Num + Signed {}

impl<T> Scalar for T where T: Clone + PartialEq + Debug + Num + Signed {}

/// A [`Scalar`] with exact (or at least total) division, needed for inversion
/// and linear solving.
pub trait Field: Scalar {}

impl Field for f32 {}
impl Field for f64 {}
impl<T> Field for Ratio<T> where T: Clone + Integer + Signed + Debug {}

/// A Euclidean domain of integers, the coefficient ring for Smith normal form.
pub trait EuclideanInt: Clone + Ord + Debug + Integer + Signed + From<i64> {}

impl EuclideanInt for i64 {}
impl EuclideanInt for i128 {}
impl EuclideanInt for BigInt {}
