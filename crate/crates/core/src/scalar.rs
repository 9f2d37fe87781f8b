//! Scalar abstraction shared by every numerical module.
//!
//! All state, operator and field types are generic over [`Real`] so the same
//! code runs in `f64` (the default everywhere) or `f32`. Construction-time
//! validation tolerances scale with the precision of the scalar.

use nalgebra as na;
use num_complex::Complex;
use num_traits as nt;
use std::fmt::{Debug, Display, LowerExp};

/// Floating point scalar usable by the laboratory: `f32` or `f64`.
pub trait Real:
    Copy
    + na::RealField
    + na::Scalar
    + nt::FloatConst
    + nt::FromPrimitive
    + nt::ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Absolute tolerance used when validating invariants (hermiticity,
    /// normalization, idempotence) at construction time.
    const VALIDATION_TOL: f64;
    /// Eigenvalues below this magnitude are treated as exact zeros.
    const EIGEN_FLOOR: f64;
}

impl Real for f64 {
    const VALIDATION_TOL: f64 = 1e-10;
    const EIGEN_FLOOR: f64 = 1e-12;
}

impl Real for f32 {
    const VALIDATION_TOL: f64 = 1e-4;
    const EIGEN_FLOOR: f64 = 1e-6;
}

/// Complex scalar over a [`Real`].
pub type C<T> = Complex<T>;

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    na::convert(x)
}

/// Converts a working scalar back to `f64` (lossless for both supported types).
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    nt::ToPrimitive::to_f64(&x).unwrap_or(f64::NAN)
}

#[inline]
pub(crate) fn validation_tol<T: Real>() -> T {
    lit(T::VALIDATION_TOL)
}

#[inline]
pub(crate) fn eigen_floor<T: Real>() -> T {
    lit(T::EIGEN_FLOOR)
}

#[inline]
pub fn cplx<T: Real>(re: f64, im: f64) -> C<T> {
    Complex::new(lit(re), lit(im))
}

#[inline]
pub fn real<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

/// Modulus `|z|`.
#[inline]
pub fn cabs<T: Real>(z: C<T>) -> T {
    na::ComplexField::modulus(z)
}

/// `exp(z)`.
#[inline]
pub fn cexp<T: Real>(z: C<T>) -> C<T> {
    na::ComplexField::exp(z)
}

/// `exp(iθ)`.
#[inline]
pub fn phase<T: Real>(theta: T) -> C<T> {
    C::new(theta.cos(), theta.sin())
}
