//! Finite-dimensional quantum states over factorized Hilbert spaces:
//! construction, composition, reduction and entropy.

mod density;
mod entropy;
mod haar;
mod operator;
mod partition;
mod serde_impl;
mod state;

pub use density::DensityMatrix;
pub use entropy::{entropy_of_spectrum, mutual_information, subsystem_entropy, von_neumann_entropy};
pub use haar::{haar_random_state, haar_random_state_indexed, haar_random_unitary};
pub use operator::{Operator, OperatorKind};
pub use partition::{HilbertPartition, DEFAULT_DIMENSION_CAP};
pub use state::StateVector;

use crate::error::Result;

/// Kronecker composition of two objects of the same kind; partitions
/// concatenate, so labels must stay unique.
pub trait Tensor: Sized {
    fn tensor(&self, other: &Self) -> Result<Self>;
}
