use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::qstate::{HilbertPartition, Operator, StateVector, Tensor};
use crate::scalar::{lit, real, to_f64, validation_tol, Real, C};

/// Hermitian, positive, unit-trace state operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real = f64> {
    matrix: CMatrix<T>,
    partition: HilbertPartition,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates hermiticity, unit trace and positivity (eigenvalues ≥ −tol).
    pub fn new(matrix: CMatrix<T>, partition: HilbertPartition) -> Result<Self> {
        let n = partition.total_dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: matrix.nrows() });
        }
        let tol = validation_tol::<T>();
        let dev = linalg::hermiticity_deviation(&matrix);
        if dev > tol {
            return Err(Error::NotHermitian { deviation: to_f64(dev) });
        }
        let tr = linalg::trace(&matrix);
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::TraceNotOne { trace: to_f64(tr.re) });
        }
        let min = linalg::hermitian_eigenvalues(&matrix).first().copied().unwrap_or(T::zero());
        if min < -tol {
            return Err(Error::NegativeEigenvalue { eigenvalue: to_f64(min) });
        }
        Ok(Self { matrix, partition })
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMatrix<T>, partition: HilbertPartition) -> Self {
        Self { matrix, partition }
    }

    pub fn from_pure(state: &StateVector<T>) -> Self {
        let v = state.amplitudes();
        Self { matrix: v * v.adjoint(), partition: state.partition().clone() }
    }

    /// `Σ pᵢ |ψᵢ⟩⟨ψᵢ|`; weights must sum to one.
    pub fn from_ensemble(ensemble: &[(T, StateVector<T>)]) -> Result<Self> {
        let first = ensemble.first().ok_or_else(|| Error::InvalidParameter("empty ensemble".into()))?;
        let partition = first.1.partition().clone();
        let n = partition.total_dim();
        let mut m = CMatrix::zeros(n, n);
        for (p, s) in ensemble {
            if s.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: s.dim() });
            }
            let v = s.amplitudes();
            m += v * v.adjoint() * real(*p);
        }
        Self::new(m, partition)
    }

    /// `1/N`.
    pub fn maximally_mixed(partition: HilbertPartition) -> Self {
        let n = partition.total_dim();
        let inv: T = T::one() / lit(n as f64);
        Self { matrix: CMatrix::identity(n, n) * real(inv), partition }
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn partition(&self) -> &HilbertPartition {
        &self.partition
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> T {
        // tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ
        self.matrix.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn is_pure(&self) -> bool {
        (self.purity() - T::one()).abs() <= lit::<T>(T::VALIDATION_TOL * 100.0)
    }

    /// Eigenvalues, ascending, with round-off negatives clamped to zero.
    pub fn eigenvalues(&self) -> Vec<T> {
        linalg::hermitian_eigenvalues(&self.matrix)
            .into_iter()
            .map(|v| if v < T::zero() { T::zero() } else { v })
            .collect()
    }

    pub fn expectation(&self, op: &Operator<T>) -> Result<C<T>> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: op.dim() });
        }
        Ok(linalg::trace(&(op.matrix() * &self.matrix)))
    }

    /// Trace over every subsystem not in `keep`; kept factors retain their
    /// original order.
    pub fn partial_trace<S: AsRef<str>>(&self, keep: &[S]) -> Result<Self> {
        let positions = self.partition.sorted_positions(keep)?;
        if positions.is_empty() {
            return Err(Error::Partition("partial trace must keep at least one subsystem".into()));
        }
        let (k, r) = self.partition.split_offsets(&positions);
        let m = CMatrix::from_fn(k.len(), k.len(), |a, b| {
            r.iter().fold(C::new(T::zero(), T::zero()), |acc, &off| acc + self.matrix[(k[a] + off, k[b] + off)])
        });
        Ok(Self { matrix: m, partition: self.partition.restrict(&positions) })
    }

    /// Partial transpose on the subsystems in `labels`. The result is in
    /// general not a state, so it is returned as a raw matrix.
    pub fn partial_transpose<S: AsRef<str>>(&self, labels: &[S]) -> Result<CMatrix<T>> {
        let positions = self.partition.sorted_positions(labels)?;
        let (t, r) = self.partition.split_offsets(&positions);
        let n = self.dim();
        let mut out = CMatrix::zeros(n, n);
        for &ta in &t {
            for &tb in &t {
                for &ra in &r {
                    for &rb in &r {
                        out[(ta + ra, tb + rb)] = self.matrix[(tb + ra, ta + rb)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Minimum eigenvalue of the partial transpose on `labels`.
    pub fn min_partial_transpose_eigenvalue<S: AsRef<str>>(&self, labels: &[S]) -> Result<T> {
        let pt = self.partial_transpose(labels)?;
        Ok(linalg::hermitian_eigenvalues(&pt).first().copied().unwrap_or(T::zero()))
    }

    /// Positive partial transpose test (necessary and sufficient for
    /// separability on 2⊗2 and 2⊗3).
    pub fn is_ppt<S: AsRef<str>>(&self, labels: &[S]) -> Result<bool> {
        Ok(self.min_partial_transpose_eigenvalue(labels)? >= -validation_tol::<T>())
    }

    /// Max-norm distance between matrices.
    pub fn distance(&self, other: &Self) -> T {
        linalg::max_abs(&(&self.matrix - &other.matrix))
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &Operator<T>) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.dim() });
        }
        let m = u.matrix() * &self.matrix * u.matrix().adjoint();
        Ok(Self { matrix: m, partition: self.partition.clone() })
    }
}

impl<T: Real> Tensor for DensityMatrix<T> {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let partition = self.partition.concat(&other.partition)?;
        Ok(Self { matrix: linalg::kron(&self.matrix, &other.matrix), partition })
    }
}
