use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};
use crate::qstate::{DensityMatrix, HilbertPartition, Operator, Tensor};
use crate::scalar::{cabs, lit, real, to_f64, validation_tol, Real, C};

/// Normalized pure state over a factorized Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real = f64> {
    amplitudes: CVector<T>,
    partition: HilbertPartition,
}

impl<T: Real> StateVector<T> {
    /// Wraps amplitudes that must already have unit norm.
    pub fn new(amplitudes: CVector<T>, partition: HilbertPartition) -> Result<Self> {
        check_len(amplitudes.len(), &partition)?;
        let norm_sq = amplitudes.norm_squared();
        if (norm_sq - T::one()).abs() > validation_tol() {
            return Err(Error::NotNormalized { norm_sq: to_f64(norm_sq) });
        }
        Ok(Self { amplitudes, partition })
    }

    /// Normalizes the amplitudes first; fails on a (numerically) zero vector.
    pub fn normalized(amplitudes: CVector<T>, partition: HilbertPartition) -> Result<Self> {
        check_len(amplitudes.len(), &partition)?;
        let norm = amplitudes.norm();
        if norm <= lit(1e-300_f64.max(T::EIGEN_FLOOR * T::EIGEN_FLOOR)) {
            return Err(Error::NotNormalized { norm_sq: to_f64(norm * norm) });
        }
        Ok(Self { amplitudes: amplitudes.unscale(norm), partition })
    }

    pub fn from_slice(amplitudes: &[C<T>], partition: HilbertPartition) -> Result<Self> {
        Self::new(CVector::from_column_slice(amplitudes), partition)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(partition: HilbertPartition, index: usize) -> Result<Self> {
        let n = partition.total_dim();
        if index >= n {
            return Err(Error::InvalidParameter(format!("basis index {index} >= dimension {n}")));
        }
        let mut v = CVector::zeros(n);
        v[index] = real(T::one());
        Ok(Self { amplitudes: v, partition })
    }

    /// Product of computational-basis qubits, e.g. `"011"`, labelled `q0, q1, ...`.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let partition = HilbertPartition::qubits(bits.len())?;
        let index = bits.chars().try_fold(0usize, |acc, ch| match ch {
            '0' => Ok(acc << 1),
            '1' => Ok((acc << 1) | 1),
            other => Err(Error::InvalidParameter(format!("bit `{other}`"))),
        })?;
        Self::basis(partition, index)
    }

    pub fn amplitudes(&self) -> &CVector<T> {
        &self.amplitudes
    }

    pub fn partition(&self) -> &HilbertPartition {
        &self.partition
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_squared(&self) -> T {
        self.amplitudes.norm_squared()
    }

    /// Same amplitudes with new subsystem labels.
    pub fn relabel<S: Into<String>>(&self, labels: Vec<S>) -> Result<Self> {
        let partition = HilbertPartition::new(self.partition.dims().to_vec(), labels)?;
        Ok(Self { amplitudes: self.amplitudes.clone(), partition })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        check_len(other.dim(), &self.partition)?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Squared overlap `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Distance to `other` after optimizing the global phase.
    pub fn distance_up_to_phase(&self, other: &Self) -> Result<T> {
        let ov = self.inner(other)?;
        let phase = if cabs(ov) > T::zero() { ov / real(cabs(ov)) } else { real(T::one()) };
        Ok((&self.amplitudes * phase - &other.amplitudes).norm())
    }

    pub fn density(&self) -> DensityMatrix<T> {
        DensityMatrix::from_pure(self)
    }

    pub fn expectation(&self, op: &Operator<T>) -> Result<C<T>> {
        check_len(op.dim(), &self.partition)?;
        Ok(self.amplitudes.dotc(&(op.matrix() * &self.amplitudes)))
    }

    /// `O|ψ⟩` without renormalization.
    pub fn apply_raw(&self, op: &Operator<T>) -> Result<CVector<T>> {
        check_len(op.dim(), &self.partition)?;
        Ok(op.matrix() * &self.amplitudes)
    }

    /// `U|ψ⟩` for a norm-preserving operator.
    pub fn apply(&self, op: &Operator<T>) -> Result<Self> {
        Self::new(self.apply_raw(op)?, self.partition.clone())
    }

    /// Reduced density matrix on `keep`, computed from the amplitudes directly
    /// (`ρ = M M†` with `M` the reshaped coefficient matrix).
    pub fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix<T>> {
        let positions = self.partition.sorted_positions(keep)?;
        if positions.is_empty() {
            return Err(Error::Partition("empty subsystem set".into()));
        }
        let m = self.coefficient_matrix(&positions);
        let rho = &m * m.adjoint();
        Ok(DensityMatrix::from_matrix_unchecked(rho, self.partition.restrict(&positions)))
    }

    /// Coefficient matrix with rows indexed by the `positions` factors.
    pub(crate) fn coefficient_matrix(&self, positions: &[usize]) -> CMatrix<T> {
        let (keep, rest) = self.partition.split_offsets(positions);
        CMatrix::from_fn(keep.len(), rest.len(), |a, r| self.amplitudes[keep[a] + rest[r]])
    }

    /// Entanglement entropy (nats) of the subsystems in `labels`; uses the
    /// smaller side of the cut.
    pub fn entanglement_entropy<S: AsRef<str>>(&self, labels: &[S]) -> Result<T> {
        let positions = self.partition.sorted_positions(labels)?;
        let (keep, rest) = self.partition.split_offsets(&positions);
        if rest.len() <= 1 || keep.len() <= 1 {
            return Ok(T::zero());
        }
        let m = self.coefficient_matrix(&positions);
        let gram = if keep.len() <= rest.len() { &m * m.adjoint() } else { m.adjoint() * &m };
        let values = crate::linalg::hermitian_eigenvalues(&gram);
        Ok(crate::qstate::entropy_of_spectrum(&values))
    }
}

impl<T: Real> Tensor for StateVector<T> {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let partition = self.partition.concat(&other.partition)?;
        let amplitudes = self.amplitudes.kronecker(&other.amplitudes);
        Ok(Self { amplitudes, partition })
    }
}

fn check_len(len: usize, partition: &HilbertPartition) -> Result<()> {
    let expected = partition.total_dim();
    if len != expected {
        return Err(Error::DimensionMismatch { expected, found: len });
    }
    Ok(())
}
