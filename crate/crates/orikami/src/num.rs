//! Scalar abstraction so the geometric core works over f32 or f64.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, NumCast};

/// Floating scalar for all geometric computation. Implemented by `f32` and
/// `f64`; the crate-root aliases fix `f64` for the public API.
pub trait Scalar:
    Float + FloatConst + NumCast + AddAssign + SubAssign + MulAssign + Debug + Display + 'static
{
    /// Shorthand lossy cast from f64 literals.
    fn s(v: f64) -> Self {
        <Self as NumCast>::from(v).expect("finite literal")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + NumCast + AddAssign + SubAssign + MulAssign + Debug + Display + 'static
{
}

/// Shared tolerance bundle. `iso` guards isometry defects, `geom` guards
/// coincidence and incidence predicates, `angle` guards angle-sum residuals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<S: Scalar> {
    pub iso: S,
    pub geom: S,
    pub angle: S,
}

impl<S: Scalar> Tolerance<S> {
    pub fn new(iso: S, geom: S, angle: S) -> Result<Self, crate::error::Error> {
        let ok = |v: S| v > S::zero() && v < S::s(1e-3);
        if !(ok(iso) && ok(geom) && ok(angle)) {
            return Err(crate::error::Error::Domain(format!(
                "tolerances must lie in (0, 1e-3): iso={iso}, geom={geom}, angle={angle}"
            )));
        }
        Ok(Tolerance { iso, geom, angle })
    }

    /// Scale the isometry/coincidence tolerances jointly (CLI --tolerance).
    pub fn with_geom(geom: S) -> Result<Self, crate::error::Error> {
        Tolerance::new(geom, geom, S::s(1e-9))
    }
}

impl<S: Scalar> Default for Tolerance<S> {
    fn default() -> Self {
        Tolerance {
            iso: S::s(1e-9),
            geom: S::s(1e-9),
            angle: S::s(1e-9),
        }
    }
}
