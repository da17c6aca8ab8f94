//! The scalar abstraction shared by the exact and floating-point code paths.
//!
//! Everything that only needs field arithmetic (falling factorials,
//! binomials, polynomial evaluation) is written once against [`Scalar`] and
//! instantiated at [`crate::Rational`] for the exact routes and at `f64` for
//! the numeric ones.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// A field element usable by the generic kernels: `f32`, `f64` or an exact
/// rational.
pub trait Scalar:
    Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("every field here embeds the naturals")
    }

    fn from_signed(n: i64) -> Self {
        Self::from_i64(n).expect("every field here embeds the integers")
    }
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Debug + Num + Neg<Output = T> + FromPrimitive + Send + Sync + 'static
{
}
