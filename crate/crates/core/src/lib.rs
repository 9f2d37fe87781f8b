//! Numerical laboratory for foundational quantum experiments.
//!
//! Dense finite-dimensional states and operators ([`qstate`]), measurement
//! and decoherence ([`measurement`]), Bell tests ([`bell`]), thought
//! experiment state chains ([`gedanken`]), Gaussian entanglement entropy
//! ([`gaussian`]), black-hole and holography calculators ([`blackhole`]),
//! relational clocks ([`clock`]) and one-dimensional pilot-wave dynamics
//! ([`pilot`]).
//!
//! Everything numerical is generic over [`Real`] (`f64` or `f32`); the
//! `*F64`/`*F32` aliases below pin the scalar.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bell;
pub mod blackhole;
pub mod clock;
pub mod error;
pub mod gaussian;
pub mod gedanken;
pub mod linalg;
pub mod measurement;
pub mod pilot;
pub mod qstate;
pub mod random;
pub mod scalar;
pub mod units;

pub use error::{Error, Result};
pub use qstate::{DensityMatrix, HilbertPartition, Operator, OperatorKind, StateVector, Tensor};
pub use scalar::Real;

pub type StateVectorF64 = StateVector<f64>;
pub type StateVectorF32 = StateVector<f32>;
pub type DensityMatrixF64 = DensityMatrix<f64>;
pub type DensityMatrixF32 = DensityMatrix<f32>;
pub type OperatorF64 = Operator<f64>;
pub type OperatorF32 = Operator<f32>;
pub type GaussianModelF64 = gaussian::GaussianModel<f64>;
pub type GaussianModelF32 = gaussian::GaussianModel<f32>;
pub type WaveFieldF64 = pilot::WaveField<f64>;
pub type WaveFieldF32 = pilot::WaveField<f32>;
pub type ClockUniverseF64 = clock::ClockUniverse<f64>;
pub type ClockUniverseF32 = clock::ClockUniverse<f32>;
