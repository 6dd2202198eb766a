//! Exact, totally ordered value types.
//!
//! Every solver and checker in this crate is generic over [`Scalar`]. The
//! trait only asks for ring operations plus a total order, so integer types
//! work as well as rationals. Floating point types are deliberately absent:
//! they are not `Ord` and the fairness comparisons must be exact.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num};

pub trait Scalar:
    Num + Ord + Clone + Debug + Display + FromStr + FromPrimitive + Send + Sync + 'static
{
    /// `count` as a scalar; used for scaling by agent and part counts.
    fn from_count(count: usize) -> Self {
        Self::from_usize(count).expect("count representable in scalar")
    }

    /// `count * self`
    fn times(&self, count: usize) -> Self {
        Self::from_count(count) * self.clone()
    }
}

impl Scalar for i64 {}
impl Scalar for i128 {}
impl Scalar for Ratio<i64> {}
impl Scalar for Ratio<i128> {}
impl Scalar for Ratio<BigInt> {}

/// Sum of an iterator of scalars.
pub fn sum<'a, S: Scalar>(values: impl IntoIterator<Item = &'a S>) -> S {
    values
        .into_iter()
        .fold(S::zero(), |acc, v| acc + v.clone())
}
