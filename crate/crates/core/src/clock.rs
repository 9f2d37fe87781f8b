//! Relational time from a globally static state (Page-Wootters).
//!
//! A universe `clock ⊗ rest` obeys the constraint `(H_C ⊗ 1 + 1 ⊗ H_R)|Ψ⟩ = 0`.
//! Conditioning on clock readings along the orbit `e^{−iH_C t}|Φ_C(0)⟩`
//! yields a rest state evolving under `H_R`. Natural units, `ħ = 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::measurement::evolve;
use crate::qstate::{HilbertPartition, Operator, StateVector};
use crate::scalar::{lit, real, to_f64, Real};

/// Constraint residual allowed when building a [`ClockUniverse`].
pub const CONSTRAINT_TOL: f64 = 1e-10;
/// Conditional states with smaller norm are rejected.
pub const MIN_OVERLAP: f64 = 1e-12;

/// Clock (label `C`) and rest (label `R`) with a state annihilated by the
/// total Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct ClockUniverse<T: Real = f64> {
    h_c: Operator<T>,
    h_r: Operator<T>,
    h_total: Operator<T>,
    psi: StateVector<T>,
    omega: T,
}

impl<T: Real> ClockUniverse<T> {
    /// `h_c` must act on a single factor labelled `C`, `h_r` on one labelled `R`,
    /// and `psi` live on `C ⊗ R`.
    pub fn new(h_c: Operator<T>, h_r: Operator<T>, psi: StateVector<T>, omega: T) -> Result<Self> {
        let full = h_c.partition().concat(h_r.partition())?;
        if psi.partition() != &full {
            return Err(Error::Partition("state must live on clock ⊗ rest".into()));
        }
        let h_total = h_c.embed(&full)?.add(&h_r.embed(&full)?)?;
        let u = Self { h_c, h_r, h_total, psi, omega };
        let residual = u.constraint_norm()?;
        if to_f64(residual) > CONSTRAINT_TOL {
            return Err(Error::InvalidParameter(format!("constraint violated: ‖H|Ψ⟩‖ = {:e}", to_f64(residual))));
        }
        Ok(u)
    }

    pub fn h_c(&self) -> &Operator<T> {
        &self.h_c
    }

    pub fn h_r(&self) -> &Operator<T> {
        &self.h_r
    }

    pub fn h_total(&self) -> &Operator<T> {
        &self.h_total
    }

    pub fn psi(&self) -> &StateVector<T> {
        &self.psi
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    /// `‖(H_C ⊗ 1 + 1 ⊗ H_R)|Ψ⟩‖`.
    pub fn constraint_norm(&self) -> Result<T> {
        Ok(self.psi.apply_raw(&self.h_total)?.norm())
    }

    /// Clock state `e^{−iH_C t}|Φ_C(0)⟩`.
    pub fn clock_state(&self, reference: &StateVector<T>, t: T) -> Result<StateVector<T>> {
        evolve(reference, &self.h_c, t)
    }
}

/// Two photons with polarizations `|H⟩ = |0⟩`, `|V⟩ = |1⟩`:
/// `|Ψ⟩ = (|H⟩|V⟩ − |V⟩|H⟩)/√2` and `H_C = H_R = iω(|H⟩⟨V| − |V⟩⟨H|) = −ω σ_y`.
pub fn photon_clock_model<T: Real>(omega: T) -> Result<ClockUniverse<T>> {
    if !(omega > T::zero()) {
        return Err(Error::InvalidParameter("omega must be positive".into()));
    }
    let h_c = Operator::pauli_y("C").scale(-omega);
    let h_r = Operator::pauli_y("R").scale(-omega);
    let s: T = lit(std::f64::consts::FRAC_1_SQRT_2);
    let z = T::zero();
    let psi = StateVector::from_slice(
        &[real(z), real(s), real(-s), real(z)],
        HilbertPartition::new(vec![2, 2], vec!["C", "R"])?,
    )?;
    ClockUniverse::new(h_c, h_r, psi, omega)
}

/// Polarization basis state on `label`: `vertical = false` gives `|H⟩`.
pub fn polarization<T: Real>(label: &str, vertical: bool) -> StateVector<T> {
    StateVector::basis(HilbertPartition::single(2, label).expect("qubit partition"), vertical as usize)
        .expect("basis index")
}

/// Rest state conditioned on a clock reading.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalState<T: Real = f64> {
    /// `⟨Φ_C(t)|Ψ⟩`, not normalized.
    pub amplitudes: CVector<T>,
    pub norm: T,
    pub normalized: StateVector<T>,
}

/// `|ψ(t)⟩_R = ⟨Φ_C(t)|Ψ⟩`; `reference` defaults to `|H⟩`.
pub fn conditional_state<T: Real>(
    u: &ClockUniverse<T>,
    t: T,
    reference: Option<&StateVector<T>>,
) -> Result<ConditionalState<T>> {
    let default = polarization("C", false);
    let reference = reference.unwrap_or(&default);
    let phi = u.clock_state(reference, t)?;
    let amplitudes = partial_overlap(&phi, &u.psi)?;
    let norm = amplitudes.norm();
    if to_f64(norm) < MIN_OVERLAP {
        return Err(Error::ImpossibleOutcome { probability: to_f64(norm * norm) });
    }
    let normalized = StateVector::normalized(amplitudes.clone(), u.h_r.partition().clone())?;
    Ok(ConditionalState { amplitudes, norm, normalized })
}

/// Contracts the clock factor of `psi` (first factor) against `phi`.
fn partial_overlap<T: Real>(phi: &StateVector<T>, psi: &StateVector<T>) -> Result<CVector<T>> {
    let dc = phi.dim();
    if psi.dim() % dc != 0 {
        return Err(Error::DimensionMismatch { expected: dc, found: psi.dim() });
    }
    let dr = psi.dim() / dc;
    let a = psi.amplitudes();
    let f = phi.amplitudes();
    Ok(CVector::from_fn(dr, |r, _| (0..dc).fold(real(T::zero()), |acc, c| acc + f[c].conj() * a[c * dr + r])))
}

/// `Σ_T Tr((P_clock ⊗ P_rest) ρ(T)) / Σ_T Tr((P_clock ⊗ 1) ρ(T))` with
/// `ρ(T) = e^{−iHT}|Ψ⟩⟨Ψ|e^{iHT}` and the sum over `plate_times`.
pub fn conditional_probability<T: Real>(
    u: &ClockUniverse<T>,
    clock_outcome: &Operator<T>,
    rest_outcome: &Operator<T>,
    plate_times: &[T],
) -> Result<T> {
    if plate_times.is_empty() {
        return Err(Error::InvalidParameter("plate_times must be nonempty".into()));
    }
    if !clock_outcome.is_projector() || !rest_outcome.is_projector() {
        return Err(Error::NotProjector { deviation: f64::NAN });
    }
    let full = u.psi.partition().clone();
    let joint = clock_outcome.embed(&full)?.compose(&rest_outcome.embed(&full)?)?;
    let clock_only = clock_outcome.embed(&full)?;
    let (mut num, mut den) = (T::zero(), T::zero());
    for &t in plate_times {
        let psi_t = evolve(&u.psi, &u.h_total, t)?;
        num += psi_t.expectation(&joint)?.re;
        den += psi_t.expectation(&clock_only)?.re;
    }
    if to_f64(den) < MIN_OVERLAP * plate_times.len() as f64 {
        return Err(Error::ImpossibleOutcome { probability: to_f64(den) / plate_times.len() as f64 });
    }
    Ok((num / den).max(T::zero()).min(T::one()))
}

/// Projector onto the clock reading `e^{−iH_C τ}|reading⟩`.
pub fn clock_reading_projector<T: Real>(u: &ClockUniverse<T>, reading: &StateVector<T>, tau: T) -> Result<Operator<T>> {
    Ok(Operator::projector_onto(&u.clock_state(reading, tau)?))
}

/// `P(V on rest | clock reads x at τ)` for the photon model:
/// `cos²(ωτ + φ)` with `φ = 0` for `x = H` and `π/2` for `x = V`.
pub fn photon_closed_form<T: Real>(omega: T, tau: T, clock_vertical: bool) -> T {
    let phi = if clock_vertical { T::frac_pi_2() } else { T::zero() };
    let c = (omega * tau + phi).cos();
    c * c
}

/// Largest `‖e^{−iHT}|Ψ⟩ − |Ψ⟩‖` (global phase removed) over `t_values`.
pub fn super_observer_invariance<T: Real>(u: &ClockUniverse<T>, t_values: &[T]) -> Result<T> {
    static_deviation(&u.psi, &u.h_total, t_values)
}

/// Same measure for an arbitrary state, which need not satisfy the constraint.
pub fn static_deviation<T: Real>(psi: &StateVector<T>, h: &Operator<T>, t_values: &[T]) -> Result<T> {
    let mut worst = T::zero();
    for &t in t_values {
        let moved = evolve(psi, h, t)?;
        worst = worst.max(moved.distance_up_to_phase(psi)?);
    }
    Ok(worst)
}

/// One row of the photon-clock table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClockRow {
    pub tau: f64,
    /// `P(V on rest | clock H)`.
    pub p_given_h: f64,
    /// `P(V on rest | clock V)`.
    pub p_given_v: f64,
    pub closed_form_h: f64,
    pub closed_form_v: f64,
}

/// Conditional probabilities over `taus`, each averaged over `plate_times`.
pub fn photon_clock_table<T: Real>(u: &ClockUniverse<T>, taus: &[T], plate_times: &[T]) -> Result<Vec<ClockRow>> {
    let rest_v = Operator::projector_onto(&polarization::<T>("R", true));
    let h = polarization::<T>("C", false);
    let v = polarization::<T>("C", true);
    taus.iter()
        .map(|&tau| {
            let ph = conditional_probability(u, &clock_reading_projector(u, &h, tau)?, &rest_v, plate_times)?;
            let pv = conditional_probability(u, &clock_reading_projector(u, &v, tau)?, &rest_v, plate_times)?;
            Ok(ClockRow {
                tau: to_f64(tau),
                p_given_h: to_f64(ph),
                p_given_v: to_f64(pv),
                closed_form_h: to_f64(photon_closed_form(u.omega, tau, false)),
                closed_form_v: to_f64(photon_closed_form(u.omega, tau, true)),
            })
        })
        .collect()
}

/// Uniform grid of `n` points on `[0, period)`.
pub fn tau_grid<T: Real>(omega: T, n: usize) -> Vec<T> {
    let period = T::two_pi() / omega;
    (0..n).map(|k| period * lit::<T>(k as f64 / n as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigenvalues;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn photon_model_constraint_and_spectrum() {
        let u = photon_clock_model::<f64>(1.3).unwrap();
        assert!(u.constraint_norm().unwrap() < 1e-12);
        let ev = hermitian_eigenvalues(u.h_c().matrix());
        assert!((ev[0] + 1.3).abs() < 1e-12 && (ev[1] - 1.3).abs() < 1e-12);
        // swapping the photons flips the sign
        let a = u.psi().amplitudes();
        assert!((a[1] + a[2]).norm() < 1e-15);
    }

    #[test]
    fn rejects_unconstrained_state() {
        let u = photon_clock_model::<f64>(1.0).unwrap();
        let bad = StateVector::from_bits("00").unwrap().relabel(vec!["C", "R"]).unwrap();
        assert!(ClockUniverse::new(u.h_c().clone(), u.h_r().clone(), bad, 1.0).is_err());
    }

    #[test]
    fn conditional_state_evolves_under_rest_hamiltonian() {
        let omega = 0.7;
        let u = photon_clock_model::<f64>(omega).unwrap();
        let zero = conditional_state(&u, 0.0, None).unwrap();
        let period = 2.0 * PI / omega;
        for t in [0.0, 0.3, 1.1, 2.9, period] {
            let c = conditional_state(&u, t, None).unwrap();
            assert!((c.norm - zero.norm).abs() < 1e-10);
            let want = evolve(&zero.normalized, u.h_r(), t).unwrap();
            let got = c.amplitudes.clone() / crate::scalar::real(c.norm);
            assert!((got - want.amplitudes()).norm() < 1e-10);
        }
        let back = conditional_state(&u, period, None).unwrap();
        assert!((back.amplitudes - zero.amplitudes).norm() < 1e-10);
    }

    #[test]
    fn probabilities_follow_cos_squared() {
        let omega = 1.0;
        let u = photon_clock_model::<f64>(omega).unwrap();
        let plates = [0.0, 0.4, 1.7];
        let rows = photon_clock_table(&u, &tau_grid(omega, 50), &plates).unwrap();
        for r in &rows {
            assert!((r.p_given_h - r.closed_form_h).abs() < 1e-9, "{r:?}");
            assert!((r.p_given_v - r.closed_form_v).abs() < 1e-9, "{r:?}");
        }
        let rest_v = Operator::projector_onto(&polarization("R", true));
        let h = polarization("C", false);
        let p0 = conditional_probability(&u, &clock_reading_projector(&u, &h, 0.0).unwrap(), &rest_v, &plates).unwrap();
        assert!((p0 - 1.0).abs() < 1e-12);
        let pq = conditional_probability(&u, &clock_reading_projector(&u, &h, FRAC_PI_2).unwrap(), &rest_v, &plates)
            .unwrap();
        assert!(pq < 1e-12);
    }

    #[test]
    fn probability_shift_invariance_and_normalization() {
        let u = photon_clock_model::<f64>(1.0).unwrap();
        let clock = clock_reading_projector(&u, &polarization("C", false), 0.37).unwrap();
        let rest = Operator::projector_onto(&polarization("R", true));
        let a = conditional_probability(&u, &clock, &rest, &[0.0, 1.0, 2.0]).unwrap();
        let b = conditional_probability(&u, &clock, &rest, &[5.0, 6.0, 7.0]).unwrap();
        assert!((a - b).abs() < 1e-9);
        let one = Operator::identity(HilbertPartition::single(2, "R").unwrap());
        assert!((conditional_probability(&u, &clock, &one, &[0.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!(conditional_probability(&u, &clock, &rest, &[]).is_err());
    }

    #[test]
    fn global_state_is_static() {
        let u = photon_clock_model::<f64>(2.0).unwrap();
        assert_eq!(super_observer_invariance(&u, &[0.0]).unwrap(), 0.0);
        assert!(super_observer_invariance(&u, &[0.05, 0.5, 5.0]).unwrap() < 1e-10);
    }

    #[test]
    fn perturbed_state_drifts_linearly() {
        let u = photon_clock_model::<f64>(1.0).unwrap();
        let mut amps = u.psi().amplitudes().clone();
        amps[0] += crate::scalar::real(0.1);
        let bad = StateVector::normalized(amps, u.psi().partition().clone()).unwrap();
        let d1 = static_deviation(&bad, u.h_total(), &[1e-3]).unwrap();
        let d2 = static_deviation(&bad, u.h_total(), &[2e-3]).unwrap();
        assert!(d1 > 1e-6);
        assert!((d2 / d1 - 2.0).abs() < 1e-2, "{}", d2 / d1);
    }

    #[test]
    fn zero_overlap_reference_rejected() {
        // a product universe where the clock never reads V
        let h_c = Operator::<f64>::zero(HilbertPartition::single(2, "C").unwrap());
        let h_r = Operator::<f64>::zero(HilbertPartition::single(2, "R").unwrap());
        let psi = StateVector::from_bits("00").unwrap().relabel(vec!["C", "R"]).unwrap();
        let u = ClockUniverse::new(h_c, h_r, psi, 1.0).unwrap();
        assert!(conditional_state(&u, 0.0, Some(&polarization("C", true))).is_err());
    }
}
