use crate::error::{Error, Result};
use crate::qstate::DensityMatrix;
use crate::scalar::{eigen_floor, validation_tol, Real};

/// `−Σ p ln p` over a spectrum. Round-off negatives down to −tol are clamped,
/// and values below the eigenvalue floor contribute nothing.
pub fn entropy_of_spectrum<T: Real>(values: &[T]) -> T {
    let floor = eigen_floor::<T>();
    values.iter().filter(|&&p| p > floor).fold(T::zero(), |acc, &p| acc - p * p.ln())
}

/// Von Neumann entropy in nats.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> T {
    entropy_of_spectrum(&rho.eigenvalues())
}

/// Entropy of the reduced state on `labels`.
pub fn subsystem_entropy<T: Real, S: AsRef<str>>(rho: &DensityMatrix<T>, labels: &[S]) -> Result<T> {
    if labels.is_empty() {
        return Ok(T::zero());
    }
    let reduced = rho.partial_trace(labels)?;
    let values = reduced.eigenvalues_checked()?;
    Ok(entropy_of_spectrum(&values))
}

/// `I(A:B) = S_A + S_B − S_AB`.
pub fn mutual_information<T: Real, S: AsRef<str>>(rho: &DensityMatrix<T>, a: &[S], b: &[S]) -> Result<T> {
    for x in a {
        if b.iter().any(|y| y.as_ref() == x.as_ref()) {
            return Err(Error::OverlappingSubsystems(x.as_ref().to_string()));
        }
    }
    let joint: Vec<&str> = a.iter().chain(b.iter()).map(|s| s.as_ref()).collect();
    Ok(subsystem_entropy(rho, a)? + subsystem_entropy(rho, b)? - subsystem_entropy(rho, &joint)?)
}

impl<T: Real> DensityMatrix<T> {
    /// Eigenvalues with values in `[−tol, 0)` clamped to zero; anything more
    /// negative is reported as an error.
    pub fn eigenvalues_checked(&self) -> Result<Vec<T>> {
        let tol = validation_tol::<T>();
        crate::linalg::hermitian_eigenvalues(self.matrix())
            .into_iter()
            .map(|v| {
                if v < -tol {
                    Err(Error::NegativeEigenvalue { eigenvalue: crate::scalar::to_f64(v) })
                } else {
                    Ok(v.max(T::zero()))
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;
    use crate::qstate::{HilbertPartition, StateVector};
    use crate::scalar::{cplx, real};

    #[test]
    fn pure_state_has_zero_entropy() {
        let s = StateVector::<f64>::from_bits("0110").unwrap();
        assert!(von_neumann_entropy(&s.density()).abs() < 1e-14);
    }

    #[test]
    fn maximally_mixed_is_log_dim() {
        let p = HilbertPartition::new(vec![3, 2], vec!["a", "b"]).unwrap();
        let m = DensityMatrix::<f64>::maximally_mixed(p);
        assert!((von_neumann_entropy(&m) - 6f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn normalized_rank_n_projector_is_log_n() {
        let n = 3;
        let mut m = CMatrix::<f64>::zeros(8, 8);
        for i in 0..n {
            m[(i, i)] = real(1.0 / n as f64);
        }
        let rho = DensityMatrix::new(m, HilbertPartition::qubits(3).unwrap()).unwrap();
        assert!((von_neumann_entropy(&rho) - (n as f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn singlet_mutual_information() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = StateVector::from_slice(
            &[cplx(0., 0.), cplx(h, 0.), cplx(-h, 0.), cplx(0., 0.)],
            HilbertPartition::qubits(2).unwrap(),
        )
        .unwrap();
        let i: f64 = mutual_information(&s.density(), &["q0"], &["q1"]).unwrap();
        assert!((i - 2.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn classical_correlation_is_log_two() {
        let c = DensityMatrix::from_ensemble(&[
            (0.5, StateVector::<f64>::from_bits("00").unwrap()),
            (0.5, StateVector::from_bits("11").unwrap()),
        ])
        .unwrap();
        let i = mutual_information(&c, &["q0"], &["q1"]).unwrap();
        assert!((i - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn overlapping_sets_rejected() {
        let s = StateVector::<f64>::from_bits("00").unwrap().density();
        assert!(matches!(mutual_information(&s, &["q0"], &["q0", "q1"]), Err(Error::OverlappingSubsystems(_))));
    }
}
