//! Integer scalar types usable as point coordinates.
//!
//! Every predicate in this crate is an exact sign computation. A coordinate
//! type names a wider type in which determinants are evaluated, together with
//! the magnitude limit that keeps those determinants from overflowing.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, ToBigInt};
use num_traits::{FromPrimitive, Signed};

/// Largest coordinate magnitude accepted for `i32` point sets.
pub const MAX_COORD: i32 = 1 << 20;

/// Largest coordinate magnitude accepted for `i64` point sets.
pub const MAX_COORD_I64: i64 = 1 << 40;

pub trait Coordinate:
    Clone + Ord + Hash + Debug + Display + Send + Sync + Signed + FromPrimitive + ToBigInt + 'static
{
    /// Type in which 3x3 determinants of coordinate differences are exact.
    type Wide: Clone + Ord + Signed + Debug + Send + Sync;

    fn widen(&self) -> Self::Wide;

    /// Whether `self` lies inside the range for which predicates are exact.
    fn within_limit(&self) -> bool;

    fn parse(s: &str) -> Option<Self>;

    fn big(&self) -> BigInt {
        self.to_bigint().expect("integer coordinates always convert")
    }
}

impl Coordinate for i32 {
    type Wide = i128;

    #[inline]
    fn widen(&self) -> i128 {
        *self as i128
    }

    #[inline]
    fn within_limit(&self) -> bool {
        self.unsigned_abs() <= MAX_COORD as u32
    }

    fn parse(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

impl Coordinate for i64 {
    type Wide = i128;

    #[inline]
    fn widen(&self) -> i128 {
        *self as i128
    }

    #[inline]
    fn within_limit(&self) -> bool {
        self.unsigned_abs() <= MAX_COORD_I64 as u64
    }

    fn parse(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

impl Coordinate for BigInt {
    type Wide = BigInt;

    #[inline]
    fn widen(&self) -> BigInt {
        self.clone()
    }

    #[inline]
    fn within_limit(&self) -> bool {
        true
    }

    fn parse(s: &str) -> Option<Self> {
        s.parse().ok()
    }

    fn big(&self) -> BigInt {
        self.clone()
    }
}
