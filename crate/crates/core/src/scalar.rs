use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point type the belief-function machinery is generic over.
///
/// The two tolerances are tied to the precision of the type: input masses
/// are checked against `MASS_TOLERANCE`, while identities that only suffer
/// rounding drift (total conflict, degenerate clustering) use
/// `IDENTITY_TOLERANCE`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Allowed deviation of a bba's total mass from 1 on input.
    const MASS_TOLERANCE: f64;
    /// Allowed numerical drift on internal identities.
    const IDENTITY_TOLERANCE: f64;

    /// Converts an `f64` literal. Infallible for the implemented types.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar representable as f64")
    }
}

impl Scalar for f64 {
    const MASS_TOLERANCE: f64 = 1e-9;
    const IDENTITY_TOLERANCE: f64 = 1e-12;
}

impl Scalar for f32 {
    const MASS_TOLERANCE: f64 = 1e-5;
    const IDENTITY_TOLERANCE: f64 = 1e-6;
}
