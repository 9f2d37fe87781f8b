//! Exact state chains for thought experiments: the Mach-Zehnder
//! interferometer, the cat + observer + environment chain, Wigner's friend,
//! the extended Wigner's-friend protocol of Frauchiger and Renner, and the
//! quantum-immortality branch count.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};
use crate::measurement::{decohere, DecoherenceChain};
use crate::qstate::{DensityMatrix, HilbertPartition, Operator, StateVector};
use crate::scalar::{cabs, lit, real, to_f64, Real, C};

/// Beam-splitter amplitudes `(t, r)`; the splitter matrix is
/// `[[t, r], [r, t]] / √(|t|² + |r|²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferometerConfig<T: Real = f64> {
    pub bs2_present: bool,
    pub reflection: C<T>,
    pub transmission: C<T>,
}

impl<T: Real> Default for InterferometerConfig<T> {
    fn default() -> Self {
        Self { bs2_present: true, reflection: C::new(T::zero(), T::one()), transmission: real(T::one()) }
    }
}

impl<T: Real> InterferometerConfig<T> {
    fn splitter(&self) -> Result<CMatrix<T>> {
        let (t, r) = (self.transmission, self.reflection);
        let scale = (t.norm_sqr() + r.norm_sqr()).sqrt();
        if !(scale > T::zero()) {
            return Err(Error::InvalidParameter("beam splitter amplitudes are both zero".into()));
        }
        let m = CMatrix::from_row_slice(2, 2, &[t, r, r, t]) / real(scale);
        let dev = crate::linalg::max_abs(&(m.adjoint() * &m - CMatrix::identity(2, 2)));
        if dev > lit(T::VALIDATION_TOL) {
            return Err(Error::NotUnitary { deviation: to_f64(dev) });
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorProbabilities<T: Real = f64> {
    pub p_d1: T,
    pub p_d2: T,
}

/// Detector probabilities for a photon entering port 0.
pub fn mach_zehnder<T: Real>(config: &InterferometerConfig<T>) -> Result<DetectorProbabilities<T>> {
    let z = C::new(T::zero(), T::zero());
    mach_zehnder_input(config, [real(T::one()), z])
}

/// Detector probabilities for an arbitrary normalized input on the two ports.
pub fn mach_zehnder_input<T: Real>(
    config: &InterferometerConfig<T>,
    input: [C<T>; 2],
) -> Result<DetectorProbabilities<T>> {
    let bs = config.splitter()?;
    let v = CVector::from_column_slice(&input);
    let norm = v.norm_squared();
    if (norm - T::one()).abs() > lit(T::VALIDATION_TOL) {
        return Err(Error::NotNormalized { norm_sq: to_f64(norm) });
    }
    // Each arm hits one mirror; the common factor i drops out of every probability.
    let arms = &bs * v;
    // Crossing the arms routes path P1 to the second splitter's other port.
    let crossed = CVector::from_column_slice(&[arms[1], arms[0]]);
    let out = if config.bs2_present { &bs * crossed } else { crossed };
    Ok(DetectorProbabilities { p_d1: out[0].norm_sqr(), p_d2: out[1].norm_sqr() })
}

/// Cat-labelled view of a decoherence chain: system `alive/dead`, observer
/// `happy/sad` pointer, environment.
#[derive(Debug, Clone, PartialEq)]
pub struct CatRecord<T: Real = f64> {
    /// `α|alive⟩|happy⟩|E+⟩ + β|dead⟩|sad⟩|E−⟩`.
    pub phi_e: StateVector<T>,
    pub rho_e: DensityMatrix<T>,
    /// Cat + observer after tracing out the environment.
    pub rho_r: DensityMatrix<T>,
    pub labels: [&'static str; 2],
}

pub fn cat_chain<T: Real>(alpha: C<T>, beta: C<T>, kappa: C<T>) -> Result<CatRecord<T>> {
    let r = decohere(&DecoherenceChain::with_overlap(alpha, beta, kappa)?)?;
    Ok(CatRecord { phi_e: r.state, rho_e: r.joint_pure, rho_r: r.reduced, labels: ["alive", "dead"] })
}

/// `[[|α|², αβ* cos δ], [α*β cos δ, |β|²]]`.
pub fn wigner_friend_dm<T: Real>(alpha: C<T>, beta: C<T>, delta: T) -> Result<DensityMatrix<T>> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - T::one()).abs() > lit(T::VALIDATION_TOL) {
        return Err(Error::NotNormalized { norm_sq: to_f64(norm) });
    }
    let off = alpha * beta.conj() * delta.cos();
    let m = CMatrix::from_row_slice(2, 2, &[real(alpha.norm_sqr()), off, off.conj(), real(beta.norm_sqr())]);
    DensityMatrix::new(m, HilbertPartition::single(2, "S")?)
}

// Register layout of the extended Wigner's-friend protocol. Each register is
// a qubit; index 0 is the first-named basis state.
const C_COIN: &str = "C"; // head, tail
const F1: &str = "F1"; // H, T
const S: &str = "S"; // +, −
const F2: &str = "F2"; // U, D
const A: &str = "A"; // ok, fail
const W: &str = "W"; // ok, fail
const REGISTERS: [&str; 6] = [C_COIN, F1, S, F2, A, W];

const OK: usize = 0;
const FAIL: usize = 1;

/// A conditional statement verified on the state chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Implication {
    pub premise: String,
    pub conclusion: String,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrTranscript<T: Real = f64> {
    pub psi0: StateVector<T>,
    pub r: StateVector<T>,
    pub f1sc: StateVector<T>,
    pub f2f1sc: StateVector<T>,
    pub a: StateVector<T>,
    pub w: StateVector<T>,
    /// `outcomes[x][y] = P(x₁, y₂)` in the `{ok, fail}` bases of `F1+C` and
    /// `F2+S`, index 0 = ok.
    pub outcomes: [[T; 2]; 2],
    /// `P(a, w)` read off the assistant's and Wigner's memory registers.
    pub memory_outcomes: [[T; 2]; 2],
    pub implications: Vec<Implication>,
    /// Largest distance between a reconstructed state and the corresponding
    /// displayed expansion.
    pub fixture_deviation: T,
    /// Change of the `(F2, S)` marginal caused by the assistant's measurement.
    pub assistant_disturbance: T,
    /// Change of the `(F1, C)` marginal caused by Wigner's measurement.
    pub wigner_disturbance: T,
    /// Remarks on the displayed formulas.
    pub notes: Vec<String>,
}

fn partition(n: usize) -> HilbertPartition {
    HilbertPartition::new(vec![2; n], REGISTERS[..n].to_vec()).expect("qubit registers")
}

/// Builds a state on the first `n` registers from `(coefficient, bits)` terms,
/// with `bits[k]` the basis index of register `k`.
fn ket<T: Real>(n: usize, terms: &[(f64, &[usize])]) -> StateVector<T> {
    let mut v = CVector::zeros(1 << n);
    for (c, bits) in terms {
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b);
        v[idx] += real(lit::<T>(*c));
    }
    StateVector::new(v, partition(n)).expect("displayed expansion is normalized")
}

/// Controlled operation on qubit registers: for every basis state with
/// `control` register in `control_value`, apply the 2×2 `gate` to `target`.
fn controlled<T: Real>(
    n: usize,
    control: usize,
    control_value: usize,
    target: usize,
    gate: &CMatrix<T>,
) -> Operator<T> {
    let dim = 1 << n;
    let bit = |i: usize, k: usize| (i >> (n - 1 - k)) & 1;
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        if bit(col, control) != control_value {
            m[(col, col)] = real(T::one());
            continue;
        }
        let tb = bit(col, target);
        for out in 0..2 {
            let row = (col & !(1 << (n - 1 - target))) | (out << (n - 1 - target));
            m[(row, col)] += gate[(out, tb)];
        }
    }
    Operator::unitary(m, partition(n)).expect("controlled unitary")
}

fn pauli_x<T: Real>() -> CMatrix<T> {
    let (o, l) = (real(T::zero()), real(T::one()));
    CMatrix::from_row_slice(2, 2, &[o, l, l, o])
}

fn hadamard<T: Real>() -> CMatrix<T> {
    let h = real(T::FRAC_1_SQRT_2());
    CMatrix::from_row_slice(2, 2, &[h, h, h, -h])
}

/// Extends a state on the first `n` registers by a fresh register in `|0⟩`.
fn append_register<T: Real>(s: &StateVector<T>) -> StateVector<T> {
    let n = s.partition().len();
    let mut v = CVector::zeros(s.dim() * 2);
    for (i, a) in s.amplitudes().iter().enumerate() {
        v[2 * i] = *a;
    }
    StateVector::new(v, partition(n + 1)).expect("isometric extension")
}

/// `(|head,H⟩ ± |tail,T⟩)/√2` on `(C, F1)`; `fail` is the `+` combination.
fn f1_basis<T: Real>(which: usize) -> StateVector<T> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let sign = if which == FAIL { 1.0 } else { -1.0 };
    ket(2, &[(h, &[0, 0]), (sign * h, &[1, 1])])
}

/// `(|−,D⟩ ± |+,U⟩)/√2` on `(S, F2)`; `fail` is the `+` combination.
fn f2_basis<T: Real>(which: usize) -> StateVector<T> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let sign = if which == FAIL { 1.0 } else { -1.0 };
    let v = ket::<T>(2, &[(h, &[1, 1]), (sign * h, &[0, 0])]);
    v.relabel(vec![S, F2]).expect("two labels")
}

/// Super-observer measurement in a rotated basis: flip the memory register
/// `memory` when the observed pair is in `fail_state`.
fn basis_measurement<T: Real>(n: usize, fail_state: &StateVector<T>, memory: &str) -> Result<Operator<T>> {
    let full = partition(n);
    let p_fail = Operator::projector_onto(fail_state).embed(&full)?;
    let flip = Operator::<T>::pauli_x(memory).embed(&full)?;
    // P ⊗ X + (1 − P) ⊗ 1, with P and X acting on disjoint registers.
    let id = crate::linalg::identity::<T>(full.total_dim());
    let m = p_fail.matrix() * flip.matrix() + (&id - p_fail.matrix());
    Operator::unitary(m, full)
}

/// Probability that `register` reads `value`.
fn register_probability<T: Real>(s: &StateVector<T>, register: &str, value: usize) -> Result<T> {
    let rho = s.reduced(&[register])?;
    Ok(rho.matrix()[(value, value)].re)
}

/// Project `register` onto `value` and renormalize.
fn condition<T: Real>(s: &StateVector<T>, register: &str, value: usize) -> Result<StateVector<T>> {
    let single = HilbertPartition::single(2, register)?;
    let p = Operator::basis_projector(single, value)?.embed(s.partition())?;
    StateVector::normalized(s.apply_raw(&p)?, s.partition().clone())
}

struct Stages<T: Real> {
    f2f1sc: StateVector<T>,
    a: StateVector<T>,
    w: StateVector<T>,
}

/// Runs the protocol from `|r⟩` (coin and first friend) onward.
fn from_r<T: Real>(r: &StateVector<T>) -> Result<(StateVector<T>, Stages<T>)> {
    // F1 prepares the spin: |−⟩ on head (X on |+⟩), |+⟩_x on tail (Hadamard).
    let s3 = append_register(r);
    let prep_head = controlled(3, 0, 0, 2, &pauli_x());
    let prep_tail = controlled(3, 0, 1, 2, &hadamard());
    let f1sc = s3.apply(&prep_head)?.apply(&prep_tail)?;
    // F2 records the spin: CNOT S → F2.
    let f2f1sc = append_register(&f1sc).apply(&controlled(4, 2, 1, 3, &pauli_x()))?;
    // Assistant measures F1 + C, Wigner measures F2 + S.
    let fail1 = f1_basis::<T>(FAIL);
    let a = append_register(&f2f1sc).apply(&basis_measurement(5, &fail1, A)?)?;
    let fail2 = f2_basis::<T>(FAIL);
    let w = append_register(&a).apply(&basis_measurement(6, &fail2, W)?)?;
    Ok((f1sc, Stages { f2f1sc, a, w }))
}

pub fn fr_protocol<T: Real>() -> Result<FrTranscript<T>> {
    let third = (1.0f64 / 3.0).sqrt();
    let two_thirds = (2.0f64 / 3.0).sqrt();
    let psi0: StateVector<T> = ket(1, &[(third, &[0]), (two_thirds, &[1])]);
    // Coin measurement by F1: CNOT C → F1.
    let r = append_register(&psi0).apply(&controlled(2, 0, 1, 1, &pauli_x()))?;
    let (f1sc, Stages { f2f1sc, a, w }) = from_r(&r)?;

    // Displayed expansions, written out over the computational registers.
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let k = 1.0 / (2.0 * 3f64.sqrt());
    let fixtures: Vec<(&StateVector<T>, StateVector<T>)> = vec![
        (&r, ket(2, &[(third, &[0, 0]), (two_thirds, &[1, 1])])),
        (&f1sc, ket(3, &[(third, &[0, 0, 1]), (two_thirds * h, &[1, 1, 0]), (two_thirds * h, &[1, 1, 1])])),
        (
            &f1sc,
            // (1/√3)|tail,T,+⟩ + √(2/3)|fail⟩₁|−⟩
            ket(3, &[(third, &[1, 1, 0]), (two_thirds * h, &[0, 0, 1]), (two_thirds * h, &[1, 1, 1])]),
        ),
        (&f2f1sc, ket(4, &[(third, &[1, 1, 0, 0]), (two_thirds * h, &[0, 0, 1, 1]), (two_thirds * h, &[1, 1, 1, 1])])),
    ];
    let mut fixture_deviation = T::zero();
    for (got, want) in &fixtures {
        fixture_deviation = fixture_deviation.max((got.amplitudes() - want.amplitudes()).norm());
    }
    // The {ok, fail} ⊗ {ok, fail} expansion with coefficients k(1, −1, 1, 3).
    let coeffs = [[k, -k], [k, 3.0 * k]];
    let mut displayed = CVector::<T>::zeros(16);
    for (x, row) in coeffs.iter().enumerate() {
        for (y, &c) in row.iter().enumerate() {
            let v1 = f1_basis::<T>(x);
            let v2 = f2_basis::<T>(y);
            for i in 0..4 {
                for j in 0..4 {
                    // (C, F1) index i = (c, f1); (S, F2) index j = (s, f2)
                    displayed[i * 4 + j] += v1.amplitudes()[i] * v2.amplitudes()[j] * real(lit::<T>(c));
                }
            }
        }
    }
    fixture_deviation = fixture_deviation.max((f2f1sc.amplitudes() - &displayed).norm());

    // |a⟩ and |w⟩ written in the rotated bases, with the memory registers.
    let rotated = |mem: &[(usize, usize, usize, usize, f64)]| -> CVector<T> {
        let mut out = CVector::<T>::zeros(64);
        for &(x, y, ra, rw, c) in mem {
            let v1 = f1_basis::<T>(x);
            let v2 = f2_basis::<T>(y);
            for i in 0..4 {
                for j in 0..4 {
                    let idx = ((i * 4 + j) * 2 + ra) * 2 + rw;
                    out[idx] += v1.amplitudes()[i] * v2.amplitudes()[j] * real(lit::<T>(c));
                }
            }
        }
        out
    };
    let a_display =
        rotated(&[(OK, OK, OK, 0, k), (OK, FAIL, OK, 0, -k), (FAIL, OK, FAIL, 0, k), (FAIL, FAIL, FAIL, 0, 3.0 * k)]);
    let a_extended = {
        let mut v = CVector::<T>::zeros(64);
        for (i, z) in a.amplitudes().iter().enumerate() {
            v[2 * i] = *z;
        }
        v
    };
    fixture_deviation = fixture_deviation.max((a_extended - a_display).norm());
    // |fail⟩_x in the displayed |w⟩ read as the assistant's |fail⟩_a.
    let w_display = rotated(&[
        (OK, OK, OK, OK, k),
        (FAIL, OK, FAIL, OK, k),
        (OK, FAIL, OK, FAIL, -k),
        (FAIL, FAIL, FAIL, FAIL, 3.0 * k),
    ]);
    fixture_deviation = fixture_deviation.max((w.amplitudes() - w_display).norm());

    let mut outcomes = [[T::zero(); 2]; 2];
    for (x, row) in outcomes.iter_mut().enumerate() {
        for (y, p) in row.iter_mut().enumerate() {
            let mut amp = C::new(T::zero(), T::zero());
            let (v1, v2) = (f1_basis::<T>(x), f2_basis::<T>(y));
            for i in 0..4 {
                for j in 0..4 {
                    amp += (v1.amplitudes()[i] * v2.amplitudes()[j]).conj() * f2f1sc.amplitudes()[i * 4 + j];
                }
            }
            *p = amp.norm_sqr();
        }
    }
    let mem = w.reduced(&[A, W])?;
    let mut memory_outcomes = [[T::zero(); 2]; 2];
    for (x, row) in memory_outcomes.iter_mut().enumerate() {
        for (y, p) in row.iter_mut().enumerate() {
            *p = mem.matrix()[(2 * x + y, 2 * x + y)].re;
        }
    }

    // Conditional chain: each premise is imposed by projection, then the
    // remaining steps run unchanged.
    let (_, tail_run) = from_r(&condition(&r, C_COIN, 1)?)?;
    let (_, head_run) = from_r(&condition(&r, C_COIN, 0)?)?;
    let after_d = condition(&f2f1sc, F2, 1)?;
    let a_after_d = append_register(&after_d).apply(&basis_measurement(5, &f1_basis::<T>(FAIL), A)?)?;
    let implications = vec![
        Implication {
            premise: "r1 = tail".into(),
            conclusion: "w = fail".into(),
            probability: to_f64(register_probability(&tail_run.w, W, FAIL)?),
        },
        Implication {
            premise: "r1 = head".into(),
            conclusion: "s2 = -1/2".into(),
            probability: to_f64(register_probability(&head_run.f2f1sc, F2, 1)?),
        },
        Implication {
            premise: "s2 = -1/2".into(),
            conclusion: "a = fail".into(),
            probability: to_f64(register_probability(&a_after_d, A, FAIL)?),
        },
    ];

    let assistant_disturbance = f2f1sc.reduced(&[S, F2])?.distance(&a.reduced(&[S, F2])?);
    let wigner_disturbance = a.reduced(&[C_COIN, F1])?.distance(&w.reduced(&[C_COIN, F1])?);

    let notes = vec![
        "the displayed |w⟩ writes |fail⟩_x for the assistant's memory state |fail⟩_a; read as |fail⟩_a".to_string()
    ];

    Ok(FrTranscript {
        psi0,
        r,
        f1sc,
        f2f1sc,
        a,
        w,
        outcomes,
        memory_outcomes,
        implications,
        fixture_deviation,
        assistant_disturbance,
        wigner_disturbance,
        notes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Immortality {
    pub copenhagen_survival: f64,
    pub branch_count: u128,
    pub surviving_branch_weight: f64,
    /// Survival conditioned on continuity of the observer.
    pub conditional_survival: f64,
}

/// `n` rounds of a 50/50 lethal measurement.
pub fn quantum_immortality(n: u32) -> Result<Immortality> {
    if n == 0 || n > 127 {
        return Err(Error::InvalidParameter(format!("rounds must be in 1..=127, got {n}")));
    }
    let p = 0.5f64.powi(n as i32);
    Ok(Immortality {
        copenhagen_survival: p,
        branch_count: 1u128 << n,
        surviving_branch_weight: p,
        conditional_survival: 1.0,
    })
}

/// Magnitude of the coherence `|ρ₀₁|` of a qubit state.
pub fn coherence<T: Real>(rho: &DensityMatrix<T>) -> T {
    cabs(rho.matrix()[(0, 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cplx, phase};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3};

    #[test]
    fn mach_zehnder_fixtures() {
        let r = mach_zehnder(&InterferometerConfig::<f64>::default()).unwrap();
        assert!((r.p_d1 - 1.0).abs() < 1e-15 && r.p_d2 < 1e-15);
        let open = InterferometerConfig { bs2_present: false, ..Default::default() };
        let r = mach_zehnder::<f64>(&open).unwrap();
        assert!((r.p_d1 - 0.5).abs() < 1e-15 && (r.p_d2 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mach_zehnder_rejects_non_unitary_splitter() {
        let bad =
            InterferometerConfig { bs2_present: true, reflection: cplx(1., 0.), transmission: cplx::<f64>(1., 0.) };
        assert!(matches!(mach_zehnder(&bad), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn mach_zehnder_global_phase_invariance() {
        let cfg = InterferometerConfig { reflection: cplx(0., 0.6), transmission: cplx(0.8, 0.), bs2_present: true };
        let base = mach_zehnder::<f64>(&cfg).unwrap();
        let z = cplx(0., 0.);
        let shifted = mach_zehnder_input(&cfg, [phase(1.234), z]).unwrap();
        assert!((base.p_d1 - shifted.p_d1).abs() < 1e-15);
        assert!((base.p_d1 + base.p_d2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cat_fixtures() {
        let h = cplx::<f64>(FRAC_1_SQRT_2, 0.);
        let c = cat_chain(h, h, cplx(0., 0.)).unwrap();
        let m = c.rho_r.matrix();
        assert!((m[(0, 0)].re - 0.5).abs() < 1e-15 && (m[(3, 3)].re - 0.5).abs() < 1e-15);
        assert!(m[(0, 3)].norm() < 1e-15);
        assert!(cat_chain(cplx::<f64>(1., 0.), cplx(0., 0.), cplx(0., 0.)).unwrap().rho_r.is_pure());
        assert!(cat_chain(h, h, cplx(1., 0.)).unwrap().rho_r.is_pure());
    }

    #[test]
    fn wigner_friend_fixtures() {
        let h = cplx::<f64>(FRAC_1_SQRT_2, 0.);
        assert!((wigner_friend_dm(h, h, 0.0).unwrap().purity() - 1.0).abs() < 1e-15);
        let mixed = wigner_friend_dm(h, h, FRAC_PI_2).unwrap();
        assert!(coherence(&mixed) < 1e-16);
        assert!((coherence(&wigner_friend_dm(h, h, FRAC_PI_3).unwrap()) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn frauchiger_renner_transcript() {
        let t = fr_protocol::<f64>().unwrap();
        assert!((t.outcomes[OK][OK] - 1.0 / 12.0).abs() < 1e-12);
        assert!((t.outcomes[FAIL][FAIL] - 0.75).abs() < 1e-12);
        let total: f64 = t.outcomes.iter().flatten().sum();
        assert!((total - 1.0).abs() < 1e-12);
        for x in 0..2 {
            for y in 0..2 {
                assert!((t.outcomes[x][y] - t.memory_outcomes[x][y]).abs() < 1e-12);
            }
        }
        assert!(t.fixture_deviation < 1e-12, "{}", t.fixture_deviation);
        for imp in &t.implications {
            assert!((imp.probability - 1.0).abs() < 1e-12, "{imp:?}");
        }
        assert!(t.assistant_disturbance < 1e-12);
        assert!(t.wigner_disturbance < 1e-12);
        for s in [&t.psi0, &t.r, &t.f1sc, &t.f2f1sc, &t.a, &t.w] {
            assert!((s.norm_squared() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn immortality() {
        let one = quantum_immortality(1).unwrap();
        assert_eq!((one.copenhagen_survival, one.branch_count), (0.5, 2));
        let ten = quantum_immortality(10).unwrap();
        assert_eq!(ten.copenhagen_survival, 1.0 / 1024.0);
        assert_eq!(ten.conditional_survival, 1.0);
        assert!(quantum_immortality(0).is_err());
    }
}
