//! Scalar abstraction for the numeric kernels.
//!
//! Everything in this crate is generic over a floating-point scalar so the
//! same lattice transforms and statistics run at `f32` or `f64` precision.
//! Concrete aliases for the common case live at the crate root.

use std::fmt::Debug;
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssignOps, ToPrimitive};

/// Floating-point scalar usable by every kernel in this crate.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + NumAssignOps + Sum<Self> + Debug + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + NumAssignOps
        + Sum<Self>
        + Debug
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` constant into the working scalar type.
pub(crate) fn real<T: Real>(value: f64) -> T {
    T::from_f64(value).expect("f64 constant must be representable in the scalar type")
}

/// A numeric tolerance in the working scalar type, floored at a multiple of
/// the scalar's machine epsilon. At `f64` every documented tolerance is well
/// above the floor and passes through unchanged; at lower precisions the
/// floor keeps checks satisfiable at all.
pub(crate) fn tolerance<T: Real>(base: f64) -> T {
    real::<T>(base).max(T::epsilon() * real::<T>(512.0))
}
