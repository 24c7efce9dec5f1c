//! Scalar traits the rest of the crate is generic over.
//!
//! Lattice code is written against [`LatticeScalar`], an exact signed integer.
//! `BigInt` is the default everywhere (see the aliases at the crate root);
//! the fixed-width impls exist for callers who know their inputs are small.
//! Rendering code is written against [`RenderScalar`] (f32 or f64).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_traits::{Float, FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer used for lattice coordinates and matrix entries.
pub trait LatticeScalar:
    Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn to_big(&self) -> BigInt;

    /// Narrowing conversion; `None` when the value does not fit.
    fn from_big(value: &BigInt) -> Option<Self>;

    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("every lattice scalar holds an i64")
    }
}

macro_rules! fixed_width_scalar {
    ($($t:ty),*) => {$(
        impl LatticeScalar for $t {
            fn to_big(&self) -> BigInt {
                self.to_bigint().expect("primitive integers convert")
            }

            fn from_big(value: &BigInt) -> Option<Self> {
                <$t>::try_from(value).ok()
            }
        }
    )*};
}

fixed_width_scalar!(i64, i128);

impl LatticeScalar for BigInt {
    fn to_big(&self) -> BigInt {
        self.clone()
    }

    fn from_big(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }
}

/// Floating point type used only for drawing: f32 or f64.
pub trait RenderScalar: Float + FromPrimitive + Display + Debug + Send + Sync + 'static {
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal converts")
    }
}

impl RenderScalar for f32 {}
impl RenderScalar for f64 {}
