use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::qstate::{HilbertPartition, StateVector, Tensor};
use crate::scalar::{lit, real, to_f64, validation_tol, Real, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Hermitian,
    Unitary,
    Projector,
    General,
}

/// Linear operator on a factorized space, tagged with a validated kind.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<T: Real = f64> {
    matrix: CMatrix<T>,
    partition: HilbertPartition,
    kind: OperatorKind,
}

impl<T: Real> Operator<T> {
    pub fn new(matrix: CMatrix<T>, partition: HilbertPartition, kind: OperatorKind) -> Result<Self> {
        let n = partition.total_dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: matrix.nrows() });
        }
        let tol = validation_tol::<T>();
        match kind {
            OperatorKind::Hermitian => {
                let dev = linalg::hermiticity_deviation(&matrix);
                if dev > tol {
                    return Err(Error::NotHermitian { deviation: to_f64(dev) });
                }
            }
            OperatorKind::Unitary => {
                let dev = linalg::max_abs(&(matrix.adjoint() * &matrix - linalg::identity::<T>(n)));
                if dev > tol {
                    return Err(Error::NotUnitary { deviation: to_f64(dev) });
                }
            }
            OperatorKind::Projector => {
                let idem = linalg::max_abs(&(&matrix * &matrix - &matrix));
                let dev = idem.max(linalg::hermiticity_deviation(&matrix));
                if dev > tol {
                    return Err(Error::NotProjector { deviation: to_f64(dev) });
                }
            }
            OperatorKind::General => {}
        }
        Ok(Self { matrix, partition, kind })
    }

    pub fn hermitian(matrix: CMatrix<T>, partition: HilbertPartition) -> Result<Self> {
        Self::new(matrix, partition, OperatorKind::Hermitian)
    }

    pub fn unitary(matrix: CMatrix<T>, partition: HilbertPartition) -> Result<Self> {
        Self::new(matrix, partition, OperatorKind::Unitary)
    }

    pub fn projector(matrix: CMatrix<T>, partition: HilbertPartition) -> Result<Self> {
        Self::new(matrix, partition, OperatorKind::Projector)
    }

    pub fn general(matrix: CMatrix<T>, partition: HilbertPartition) -> Self {
        Self { matrix, partition, kind: OperatorKind::General }
    }

    pub fn identity(partition: HilbertPartition) -> Self {
        let n = partition.total_dim();
        Self { matrix: linalg::identity(n), partition, kind: OperatorKind::Projector }
    }

    pub fn zero(partition: HilbertPartition) -> Self {
        let n = partition.total_dim();
        Self { matrix: CMatrix::zeros(n, n), partition, kind: OperatorKind::Hermitian }
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector_onto(state: &StateVector<T>) -> Self {
        let v = state.amplitudes();
        Self { matrix: v * v.adjoint(), partition: state.partition().clone(), kind: OperatorKind::Projector }
    }

    /// Projector onto the span of mutually orthonormal states.
    pub fn projector_onto_span(states: &[StateVector<T>]) -> Result<Self> {
        let first = states.first().ok_or_else(|| Error::InvalidParameter("empty span".into()))?;
        let n = first.dim();
        let mut m = CMatrix::zeros(n, n);
        for s in states {
            let v = s.amplitudes();
            m += v * v.adjoint();
        }
        Self::projector(m, first.partition().clone())
    }

    /// Projector onto computational-basis index `index` of a single factor.
    pub fn basis_projector(partition: HilbertPartition, index: usize) -> Result<Self> {
        Ok(Self::projector_onto(&StateVector::basis(partition, index)?))
    }

    pub fn pauli_x(label: &str) -> Self {
        Self::pauli(label, [[0., 0., 1., 0.], [1., 0., 0., 0.]])
    }

    pub fn pauli_y(label: &str) -> Self {
        Self::pauli(label, [[0., 0., 0., -1.], [0., 1., 0., 0.]])
    }

    pub fn pauli_z(label: &str) -> Self {
        Self::pauli(label, [[1., 0., 0., 0.], [0., 0., -1., 0.]])
    }

    // rows as [re00, im00, re01, im01], [re10, im10, re11, im11]
    fn pauli(label: &str, rows: [[f64; 4]; 2]) -> Self {
        let m = CMatrix::from_fn(2, 2, |r, c| C::new(lit(rows[r][2 * c]), lit(rows[r][2 * c + 1])));
        let partition = HilbertPartition::single(2, label).expect("single qubit partition");
        Self { matrix: m, partition, kind: OperatorKind::Hermitian }
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn partition(&self) -> &HilbertPartition {
        &self.partition
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_hermitian(&self) -> bool {
        linalg::hermiticity_deviation(&self.matrix) <= validation_tol::<T>()
    }

    pub fn is_projector(&self) -> bool {
        self.is_hermitian() && linalg::max_abs(&(&self.matrix * &self.matrix - &self.matrix)) <= validation_tol::<T>()
    }

    pub fn scale(&self, factor: T) -> Self {
        Self {
            matrix: &self.matrix * real(factor),
            partition: self.partition.clone(),
            kind: match self.kind {
                OperatorKind::Hermitian | OperatorKind::Projector => OperatorKind::Hermitian,
                _ => OperatorKind::General,
            },
        }
    }

    /// Sum of two operators over the same partition (kind is recomputed).
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::classify(&self.matrix + &other.matrix, self.partition.clone()))
    }

    /// Product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::classify(&self.matrix * &other.matrix, self.partition.clone()))
    }

    pub fn adjoint(&self) -> Self {
        Self { matrix: self.matrix.adjoint(), partition: self.partition.clone(), kind: self.kind }
    }

    /// `1 - P`.
    pub fn complement(&self) -> Result<Self> {
        let n = self.dim();
        Self::projector(linalg::identity::<T>(n) - &self.matrix, self.partition.clone())
    }

    /// Extends the operator to `full`, acting as identity on every factor of
    /// `full` that is not one of this operator's labels.
    pub fn embed(&self, full: &HilbertPartition) -> Result<Self> {
        let positions = full.positions(self.partition.labels())?;
        for (p, &d) in positions.iter().zip(self.partition.dims()) {
            if full.dims()[*p] != d {
                return Err(Error::DimensionMismatch { expected: full.dims()[*p], found: d });
            }
        }
        let (k, r) = full.split_offsets(&positions);
        let n = full.total_dim();
        let mut m = CMatrix::zeros(n, n);
        for (a, &ka) in k.iter().enumerate() {
            for (b, &kb) in k.iter().enumerate() {
                let v = self.matrix[(a, b)];
                if v == C::new(T::zero(), T::zero()) {
                    continue;
                }
                for &off in &r {
                    m[(ka + off, kb + off)] = v;
                }
            }
        }
        Ok(Self { matrix: m, partition: full.clone(), kind: self.kind })
    }

    /// `exp(-i H t)` for Hermitian `H`.
    pub fn propagator(&self, t: T) -> Result<Self> {
        if !self.is_hermitian() {
            return Err(Error::NotHermitian { deviation: to_f64(linalg::hermiticity_deviation(&self.matrix)) });
        }
        Ok(Self {
            matrix: linalg::unitary_propagator(&self.matrix, t),
            partition: self.partition.clone(),
            kind: OperatorKind::Unitary,
        })
    }

    fn classify(matrix: CMatrix<T>, partition: HilbertPartition) -> Self {
        let n = matrix.nrows();
        let tol = validation_tol::<T>();
        let herm = linalg::hermiticity_deviation(&matrix) <= tol;
        let kind = if herm && linalg::max_abs(&(&matrix * &matrix - &matrix)) <= tol {
            OperatorKind::Projector
        } else if herm {
            OperatorKind::Hermitian
        } else if linalg::max_abs(&(matrix.adjoint() * &matrix - linalg::identity::<T>(n))) <= tol {
            OperatorKind::Unitary
        } else {
            OperatorKind::General
        };
        Self { matrix, partition, kind }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.partition != other.partition {
            return Err(Error::Partition("operators act on different partitions".into()));
        }
        Ok(())
    }
}

impl<T: Real> Tensor for Operator<T> {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let partition = self.partition.concat(&other.partition)?;
        Ok(Self::classify(linalg::kron(&self.matrix, &other.matrix), partition))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    #[test]
    fn identity_tensor_identity() {
        let a = Operator::<f64>::identity(HilbertPartition::single(2, "a").unwrap());
        let b = Operator::<f64>::identity(HilbertPartition::single(2, "b").unwrap());
        let ab = a.tensor(&b).unwrap();
        assert!(linalg::max_abs(&(ab.matrix() - linalg::identity::<f64>(4))) == 0.0);
        assert_eq!(ab.kind(), OperatorKind::Projector);
    }

    #[test]
    fn kind_validation() {
        let p = HilbertPartition::single(2, "a").unwrap();
        let half = CMatrix::from_element(2, 2, cplx::<f64>(0.5, 0.));
        assert!(Operator::projector(half.clone(), p.clone()).is_ok());
        assert!(Operator::unitary(half.clone(), p.clone()).is_err());
        let x = Operator::<f64>::pauli_x("a");
        assert!(Operator::projector(x.matrix().clone(), p.clone()).is_err());
        assert!(Operator::unitary(x.matrix().clone(), p).is_ok());
    }

    #[test]
    fn embed_matches_kronecker() {
        let full = HilbertPartition::new(vec![2, 3, 2], vec!["a", "b", "c"]).unwrap();
        let x = Operator::<f64>::pauli_x("c");
        let embedded = x.embed(&full).unwrap();
        let id6 = Operator::<f64>::identity(HilbertPartition::new(vec![2, 3], vec!["a", "b"]).unwrap());
        let direct = id6.tensor(&x).unwrap();
        assert!(linalg::max_abs(&(embedded.matrix() - direct.matrix())) == 0.0);
    }

    #[test]
    fn embed_respects_operator_label_order() {
        // |ab⟩ -> swap-ordered operator acting on (b, a) must match acting on (a, b)
        let full = HilbertPartition::qubits(2).unwrap();
        let zx = Operator::<f64>::pauli_z("q1").tensor(&Operator::pauli_x("q0")).unwrap();
        let xz = Operator::<f64>::pauli_x("q0").tensor(&Operator::pauli_z("q1")).unwrap();
        let e = zx.embed(&full).unwrap();
        assert!(linalg::max_abs(&(e.matrix() - xz.matrix())) < 1e-15);
    }
}
