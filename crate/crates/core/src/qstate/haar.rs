use rand::Rng;

use crate::linalg::{CMatrix, CVector};
use crate::qstate::{HilbertPartition, StateVector};
use crate::random::{sample_rng, standard_normal};
use crate::scalar::{cabs, lit, Real, C};

fn gaussian<T: Real>(rng: &mut impl Rng) -> C<T> {
    C::new(lit(standard_normal(rng)), lit(standard_normal(rng)))
}

/// Haar-random pure state: a normalized complex Gaussian vector drawn from
/// stream 0 of `seed`.
pub fn haar_random_state<T: Real>(partition: &HilbertPartition, seed: u64) -> StateVector<T> {
    haar_random_state_indexed(partition, seed, 0)
}

/// Sample `index` of the Haar ensemble keyed on `seed`.
pub fn haar_random_state_indexed<T: Real>(partition: &HilbertPartition, seed: u64, index: u64) -> StateVector<T> {
    let mut rng = sample_rng(seed, index);
    let n = partition.total_dim();
    loop {
        let v = CVector::from_fn(n, |_, _| gaussian::<T>(&mut rng));
        if let Ok(s) = StateVector::normalized(v, partition.clone()) {
            return s;
        }
    }
}

/// Haar-random `n × n` unitary: QR of a complex Ginibre matrix with the
/// phases of `R`'s diagonal folded back into `Q`.
pub fn haar_random_unitary<T: Real>(n: usize, seed: u64, index: u64) -> CMatrix<T> {
    let mut rng = sample_rng(seed, index);
    let g = CMatrix::from_fn(n, n, |_, _| gaussian::<T>(&mut rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..n {
        let d = r[(c, c)];
        let norm = cabs(d);
        if norm > T::zero() {
            let phase = d / C::new(norm, T::zero());
            for row in 0..n {
                q[(row, c)] *= phase;
            }
        }
    }
    q
}
