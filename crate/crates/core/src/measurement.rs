//! Unitary evolution and projective measurement: Born probabilities,
//! collapse, time-ordered histories, repeated-measurement (Zeno) survival and
//! the system + detector + environment decoherence chain.

use crate::error::{Error, Result};
use crate::linalg::{self, CVector};
use crate::qstate::{DensityMatrix, HilbertPartition, Operator, StateVector, Tensor};
use crate::scalar::{cabs, lit, real, to_f64, Real, C};
use crate::units::{SiConstants, UnitSystem};

/// `exp(−iHt)|ψ⟩`.
pub fn evolve<T: Real>(state: &StateVector<T>, h: &Operator<T>, t: T) -> Result<StateVector<T>> {
    if h.dim() != state.dim() {
        return Err(Error::DimensionMismatch { expected: state.dim(), found: h.dim() });
    }
    if t == T::zero() {
        if !h.is_hermitian() {
            return Err(Error::NotHermitian { deviation: to_f64(linalg::hermiticity_deviation(h.matrix())) });
        }
        return Ok(state.clone());
    }
    let u = h.propagator(t)?;
    state.apply(&u)
}

fn require_projector<T: Real>(p: &Operator<T>) -> Result<()> {
    if !p.is_projector() {
        let m = p.matrix();
        let dev = linalg::max_abs(&(m * m - m)).max(linalg::hermiticity_deviation(m));
        return Err(Error::NotProjector { deviation: to_f64(dev) });
    }
    Ok(())
}

/// `tr(Pρ)`, clamped to `[0, 1]`.
pub fn born_probability<T: Real>(rho: &DensityMatrix<T>, p: &Operator<T>) -> Result<T> {
    require_projector(p)?;
    let v = rho.expectation(p)?.re;
    Ok(v.max(T::zero()).min(T::one()))
}

/// Probabilities below this are treated as impossible outcomes.
pub const IMPOSSIBLE_OUTCOME: f64 = 1e-12;

/// `PρP / tr(Pρ)`.
pub fn collapse<T: Real>(rho: &DensityMatrix<T>, p: &Operator<T>) -> Result<DensityMatrix<T>> {
    let prob = born_probability(rho, p)?;
    if prob <= lit(IMPOSSIBLE_OUTCOME) {
        return Err(Error::ImpossibleOutcome { probability: to_f64(prob) });
    }
    let m = p.matrix() * rho.matrix() * p.matrix() * real(T::one() / prob);
    DensityMatrix::new(m, rho.partition().clone())
}

/// A projector applied at time `time`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveEvent<T: Real = f64> {
    projector: Operator<T>,
    time: T,
}

impl<T: Real> ProjectiveEvent<T> {
    pub fn new(projector: Operator<T>, time: T) -> Result<Self> {
        require_projector(&projector)?;
        Ok(Self { projector, time })
    }

    pub fn projector(&self) -> &Operator<T> {
        &self.projector
    }

    pub fn time(&self) -> T {
        self.time
    }
}

/// Joint probability `tr(P_n(t_n)…P_1(t_1) ρ₀ P_1(t_1)…P_n(t_n))` with
/// Heisenberg-picture projectors `P(t) = U(t)† P U(t)`.
///
/// Computed in the Schrödinger picture: evolve between events and project,
/// without renormalizing, which gives the same trace.
pub fn history_probability<T: Real>(
    rho0: &DensityMatrix<T>,
    h: &Operator<T>,
    events: &[ProjectiveEvent<T>],
) -> Result<T> {
    if events.windows(2).any(|w| w[1].time < w[0].time) {
        return Err(Error::UnorderedEvents);
    }
    if !h.is_hermitian() {
        return Err(Error::NotHermitian { deviation: to_f64(linalg::hermiticity_deviation(h.matrix())) });
    }
    let n = rho0.dim();
    if h.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: h.dim() });
    }
    let eig = linalg::HermitianEigen::new(h.matrix());
    let mut m = rho0.matrix().clone();
    let mut now = T::zero();
    for ev in events {
        let p = ev.projector.matrix();
        if p.nrows() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.nrows() });
        }
        let dt = ev.time - now;
        if dt != T::zero() {
            let u = eig.apply_fn(|e| crate::scalar::cexp(C::new(T::zero(), -(e * dt))));
            m = &u * m * u.adjoint();
        }
        m = p * m * p;
        now = ev.time;
    }
    let v = linalg::trace(&m).re;
    Ok(v.max(T::zero()).min(T::one()))
}

/// Survival probability after `n` equally spaced projections onto `|ψ₀⟩`
/// over total time `t`: `|⟨ψ₀|e^{−iHt/N}|ψ₀⟩|^{2N}`.
pub fn zeno_survival<T: Real>(psi0: &StateVector<T>, h: &Operator<T>, t: T, n: u32) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidParameter("number of measurements must be at least 1".into()));
    }
    let step = evolve(psi0, h, t / lit(n as f64))?;
    let p = psi0.fidelity(&step)?;
    Ok(if n <= i32::MAX as u32 { p.powi(n as i32) } else { (p.ln() * lit(n as f64)).exp() })
}

/// The continuum estimate `exp(−t²/(Nτ_Z²))`, used only for
/// comparison curves.
pub fn zeno_survival_estimate<T: Real>(t: T, n: u32, tau: T) -> T {
    (-(t * t) / (lit::<T>(n as f64) * tau * tau)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZenoTimescale<T: Real = f64> {
    Finite(T),
    /// `ψ₀` is an eigenstate: the survival probability never leaves 1.
    Infinite,
}

impl<T: Real> ZenoTimescale<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Self::Finite(t) => Some(t),
            Self::Infinite => None,
        }
    }
}

/// Energy variance `⟨H²⟩ − ⟨H⟩²` in `|ψ₀⟩`.
pub fn energy_variance<T: Real>(psi0: &StateVector<T>, h: &Operator<T>) -> Result<T> {
    let hv = psi0.apply_raw(h)?;
    let mean = psi0.amplitudes().dotc(&hv).re;
    let sq = hv.norm_squared();
    Ok(sq - mean * mean)
}

/// `τ_Z = 1/√var(H)`; short-time survival is `1 − δt²/τ_Z²`.
pub fn zeno_timescale<T: Real>(psi0: &StateVector<T>, h: &Operator<T>) -> Result<ZenoTimescale<T>> {
    if !h.is_hermitian() {
        return Err(Error::NotHermitian { deviation: to_f64(linalg::hermiticity_deviation(h.matrix())) });
    }
    let var = energy_variance(psi0, h)?;
    let scale = linalg::max_abs(h.matrix()).max(T::one());
    if var <= lit::<T>(T::EIGEN_FLOOR) * scale * scale {
        return Ok(ZenoTimescale::Infinite);
    }
    Ok(ZenoTimescale::Finite(T::one() / var.sqrt()))
}

/// Two orthonormal detector pointer states, two environment states with
/// overlap `κ = ⟨E−|E+⟩`, and the system amplitudes on `|+⟩, |−⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoherenceChain<T: Real = f64> {
    alpha: C<T>,
    beta: C<T>,
    detector: [StateVector<T>; 2],
    environment: [StateVector<T>; 2],
}

impl<T: Real> DecoherenceChain<T> {
    pub fn new(
        alpha: C<T>,
        beta: C<T>,
        detector: [StateVector<T>; 2],
        environment: [StateVector<T>; 2],
    ) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - T::one()).abs() > lit(T::VALIDATION_TOL) {
            return Err(Error::NotNormalized { norm_sq: to_f64(norm) });
        }
        let overlap = cabs(detector[0].inner(&detector[1])?);
        if overlap > lit(T::VALIDATION_TOL) {
            return Err(Error::InvalidParameter(format!(
                "detector states are not orthogonal (overlap {:e})",
                to_f64(overlap)
            )));
        }
        if environment[0].dim() != environment[1].dim() {
            return Err(Error::DimensionMismatch { expected: environment[0].dim(), found: environment[1].dim() });
        }
        Ok(Self { alpha, beta, detector, environment })
    }

    /// Qubit detector `{|0⟩, |1⟩}` and qubit environment with `|E+⟩ = |0⟩`,
    /// `|E−⟩ = κ*|0⟩ + √(1−|κ|²)|1⟩`, so that `⟨E−|E+⟩ = κ`.
    pub fn with_overlap(alpha: C<T>, beta: C<T>, kappa: C<T>) -> Result<Self> {
        let k2 = kappa.norm_sqr();
        if k2 > T::one() + lit(T::VALIDATION_TOL) {
            return Err(Error::InvalidParameter(format!("|κ| = {} exceeds 1", to_f64(k2.sqrt()))));
        }
        let d = HilbertPartition::single(2, "D")?;
        let e = HilbertPartition::single(2, "E")?;
        let rest = (T::one() - k2).max(T::zero()).sqrt();
        let e_minus = StateVector::normalized(CVector::from_vec(vec![kappa.conj(), real(rest)]), e.clone())?;
        Self::new(
            alpha,
            beta,
            [StateVector::basis(d.clone(), 0)?, StateVector::basis(d, 1)?],
            [StateVector::basis(e, 0)?, e_minus],
        )
    }

    pub fn alpha(&self) -> C<T> {
        self.alpha
    }

    pub fn beta(&self) -> C<T> {
        self.beta
    }

    /// `⟨E−|E+⟩`.
    pub fn kappa(&self) -> C<T> {
        self.environment[1].inner(&self.environment[0]).expect("environment dimensions checked")
    }

    fn system(&self, index: usize) -> StateVector<T> {
        let s = HilbertPartition::single(2, "S").expect("qubit");
        StateVector::basis(s, index).expect("index < 2")
    }

    /// `α|+⟩|D+⟩|E+⟩ + β|−⟩|D−⟩|E−⟩` over `S ⊗ D ⊗ E`.
    pub fn global_state(&self) -> Result<StateVector<T>> {
        let d = self.detector_labelled()?;
        let e = self.environment_labelled()?;
        let plus = self.system(0).tensor(&d[0])?.tensor(&e[0])?;
        let minus = self.system(1).tensor(&d[1])?.tensor(&e[1])?;
        let v = plus.amplitudes() * self.alpha + minus.amplitudes() * self.beta;
        StateVector::new(v, plus.partition().clone())
    }

    fn detector_labelled(&self) -> Result<[StateVector<T>; 2]> {
        let dim = self.detector[0].dim();
        let p = HilbertPartition::single(dim, "D")?;
        Ok([
            StateVector::new(self.detector[0].amplitudes().clone(), p.clone())?,
            StateVector::new(self.detector[1].amplitudes().clone(), p)?,
        ])
    }

    fn environment_labelled(&self) -> Result<[StateVector<T>; 2]> {
        let dim = self.environment[0].dim();
        let p = HilbertPartition::single(dim, "E")?;
        Ok([
            StateVector::new(self.environment[0].amplitudes().clone(), p.clone())?,
            StateVector::new(self.environment[1].amplitudes().clone(), p)?,
        ])
    }

    /// `|+,D+⟩` and `|−,D−⟩` over `S ⊗ D`.
    pub fn pointer_states(&self) -> Result<[StateVector<T>; 2]> {
        let d = self.detector_labelled()?;
        Ok([self.system(0).tensor(&d[0])?, self.system(1).tensor(&d[1])?])
    }

    /// The completed-measurement mixture `|α|²|+,D+⟩⟨+,D+| + |β|²|−,D−⟩⟨−,D−|`.
    pub fn completed_measurement(&self) -> Result<DensityMatrix<T>> {
        let [p, m] = self.pointer_states()?;
        DensityMatrix::from_ensemble(&[(self.alpha.norm_sqr(), p), (self.beta.norm_sqr(), m)])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecoherenceRecord<T: Real = f64> {
    pub state: StateVector<T>,
    /// `|Ψ⟩⟨Ψ|` over `S ⊗ D ⊗ E`; pure.
    pub joint_pure: DensityMatrix<T>,
    /// `Tr_E |Ψ⟩⟨Ψ|` over `S ⊗ D`.
    pub reduced: DensityMatrix<T>,
    /// `|⟨+,D+|ρ_SD|−,D−⟩|`.
    pub coherence: T,
}

pub fn decohere<T: Real>(chain: &DecoherenceChain<T>) -> Result<DecoherenceRecord<T>> {
    let state = chain.global_state()?;
    let joint_pure = state.density();
    let reduced = state.reduced(&["S", "D"])?;
    let [p, m] = chain.pointer_states()?;
    let coherence = cabs(p.amplitudes().dotc(&(reduced.matrix() * m.amplitudes())));
    Ok(DecoherenceRecord { state, joint_pure, reduced, coherence })
}

/// Objective-reduction lifetime `τ = ħ/E_G` (natural units: `1/E_G`).
pub fn orch_or_lifetime(e_g: f64, units: UnitSystem, constants: &SiConstants) -> Result<f64> {
    if !(e_g > 0.0) || !e_g.is_finite() {
        return Err(Error::InvalidParameter(format!("gravitational self-energy must be positive, got {e_g}")));
    }
    Ok(match units {
        UnitSystem::Natural => 1.0 / e_g,
        UnitSystem::Si => constants.hbar / e_g,
    })
}

/// Two-site hopping Hamiltonian `g(|1⟩⟨2| + |2⟩⟨1|)`.
pub fn hopping_hamiltonian<T: Real>(g: T) -> Operator<T> {
    Operator::<T>::pauli_x("site").scale(g)
}
