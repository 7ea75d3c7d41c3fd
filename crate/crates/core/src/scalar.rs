//! Scalar abstraction for the score computations.
//!
//! Similarity, criticality and substitutability only need field arithmetic
//! and conversion from counts, so they run over `f32`, `f64` and exact
//! rationals alike. Price derivation takes a logarithm and therefore
//! requires [`num_traits::Float`].

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num};

pub trait Scalar: Num + Copy + PartialOrd + FromPrimitive + Debug + Send + Sync + 'static {
    /// `num / den` built from counts. Callers guarantee `den > 0`.
    fn ratio(num: usize, den: usize) -> Self {
        Self::from_count(num) / Self::from_count(den)
    }

    fn from_count(count: usize) -> Self {
        Self::from_usize(count).expect("count representable in scalar type")
    }
}

impl<T> Scalar for T where T: Num + Copy + PartialOrd + FromPrimitive + Debug + Send + Sync + 'static {}
