//! Singlet correlations, Bell's three-direction inequality, deterministic
//! local-hidden-variable baselines, Venn-region counting and GHZ reductions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::qstate::{entropy_of_spectrum, DensityMatrix, HilbertPartition, Operator, StateVector};
use crate::random::{sample_rng, standard_normal, unit_sphere};
use crate::scalar::{lit, to_f64, Real, C};

/// Unit vector in R³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction<T: Real = f64> {
    v: [T; 3],
}

impl<T: Real> Direction<T> {
    /// Normalizes `(x, y, z)`; the zero vector is rejected.
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !(n > lit(1e-300)) {
            return Err(Error::InvalidParameter("direction must be non-zero".into()));
        }
        Ok(Self { v: [x / n, y / n, z / n] })
    }

    /// Polar angle `theta` from +z, azimuth `phi` from +x.
    pub fn from_angles(theta: T, phi: T) -> Self {
        Self { v: [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()] }
    }

    /// In the xy-plane at angle `phi` from +x.
    pub fn in_plane(phi: T) -> Self {
        Self { v: [phi.cos(), phi.sin(), T::zero()] }
    }

    pub fn components(&self) -> [T; 3] {
        self.v
    }

    pub fn dot(&self, other: &Self) -> T {
        self.v[0] * other.v[0] + self.v[1] * other.v[1] + self.v[2] * other.v[2]
    }

    pub fn angle_to(&self, other: &Self) -> T {
        self.dot(other).max(-T::one()).min(T::one()).acos()
    }

    /// `σ·n` on a qubit labelled `label`.
    pub fn spin_operator(&self, label: &str) -> Operator<T> {
        let [x, y, z] = self.v;
        let o = T::zero();
        let m = CMatrix::from_row_slice(2, 2, &[C::new(z, o), C::new(x, -y), C::new(x, y), C::new(-z, o)]);
        Operator::hermitian(m, HilbertPartition::single(2, label).expect("qubit")).expect("σ·n is Hermitian")
    }

    /// Projector onto the `±1` eigenspace of `σ·n`: `(1 ± σ·n)/2`.
    pub fn spin_projector(&self, label: &str, plus: bool) -> Operator<T> {
        let s = self.spin_operator(label);
        let sign: T = if plus { T::one() } else { -T::one() };
        let m = (CMatrix::identity(2, 2) + s.matrix() * C::new(sign, T::zero())) * C::new(lit(0.5), T::zero());
        Operator::projector(m, s.partition().clone()).expect("spin projector")
    }
}

/// `(|01⟩ − |10⟩)/√2` on qubits `A`, `B`.
pub fn singlet<T: Real>() -> StateVector<T> {
    let h = T::FRAC_1_SQRT_2();
    let z = C::new(T::zero(), T::zero());
    StateVector::from_slice(
        &[z, C::new(h, T::zero()), C::new(-h, T::zero()), z],
        HilbertPartition::new(vec![2, 2], vec!["A", "B"]).expect("two qubits"),
    )
    .expect("normalized")
}

/// `(|000⟩ + |111⟩)/√2` on qubits `A`, `B`, `C`.
pub fn ghz<T: Real>() -> StateVector<T> {
    let h = C::new(T::FRAC_1_SQRT_2(), T::zero());
    let mut amps = vec![C::new(T::zero(), T::zero()); 8];
    amps[0] = h;
    amps[7] = h;
    StateVector::from_slice(&amps, HilbertPartition::new(vec![2, 2, 2], vec!["A", "B", "C"]).expect("three qubits"))
        .expect("normalized")
}

/// Singlet correlator from both routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingletCorrelation<T: Real = f64> {
    /// `⟨(σ·a) ⊗ (σ·b)⟩` in the singlet.
    pub operator: T,
    /// `−a·b`.
    pub analytic: T,
}

impl<T: Real> SingletCorrelation<T> {
    pub fn value(&self) -> T {
        self.operator
    }

    pub fn discrepancy(&self) -> T {
        (self.operator - self.analytic).abs()
    }
}

pub fn singlet_correlation<T: Real>(a: &Direction<T>, b: &Direction<T>) -> SingletCorrelation<T> {
    use crate::qstate::Tensor;
    let ab = a.spin_operator("A").tensor(&b.spin_operator("B")).expect("distinct labels");
    let operator = singlet::<T>().expectation(&ab).expect("matching dimensions").re;
    SingletCorrelation { operator, analytic: -a.dot(b) }
}

/// Joint outcome probabilities `P(s_A, s_B)` for spin measurements along
/// `a` and `b` on the singlet; index 0 is `+1`.
pub fn singlet_joint_probabilities<T: Real>(a: &Direction<T>, b: &Direction<T>) -> [[T; 2]; 2] {
    use crate::qstate::Tensor;
    let psi = singlet::<T>();
    let mut out = [[T::zero(); 2]; 2];
    for (i, pa) in [true, false].into_iter().enumerate() {
        for (j, pb) in [true, false].into_iter().enumerate() {
            let p = a.spin_projector("A", pa).tensor(&b.spin_projector("B", pb)).expect("distinct labels");
            out[i][j] = psi.expectation(&p).expect("dims").re;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellCheck<T: Real = f64> {
    pub lhs: T,
    pub rhs: T,
    pub violated: bool,
}

/// Tolerance on `lhs > rhs` before a violation is reported.
pub const BELL_TOLERANCE: f64 = 1e-12;

/// `|P(a,b) − P(a,c)| ≤ 1 + P(b,c)` for an arbitrary correlator.
pub fn bell_check<T: Real>(
    a: &Direction<T>,
    b: &Direction<T>,
    c: &Direction<T>,
    correlator: impl Fn(&Direction<T>, &Direction<T>) -> T,
) -> Result<BellCheck<T>> {
    let pab = in_range(correlator(a, b))?;
    let pac = in_range(correlator(a, c))?;
    let pbc = in_range(correlator(b, c))?;
    let lhs = (pab - pac).abs();
    let rhs = T::one() + pbc;
    Ok(BellCheck { lhs, rhs, violated: lhs > rhs + lit(BELL_TOLERANCE) })
}

fn in_range<T: Real>(p: T) -> Result<T> {
    let tol: T = lit(BELL_TOLERANCE);
    if !(p >= -T::one() - tol && p <= T::one() + tol) {
        return Err(Error::InvalidParameter(format!("correlator value {} outside [-1, 1]", to_f64(p))));
    }
    Ok(p)
}

/// Deterministic response rule `f(a, λ) ∈ {±1}`; the partner answers `−f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ResponseRule {
    /// `sign(a·λ)`.
    Sign,
    /// `sign(a·(Mλ) + offset)`.
    Linear { matrix: [[f64; 3]; 3], offset: f64 },
}

impl ResponseRule {
    pub fn respond(&self, a: [f64; 3], lambda: [f64; 3]) -> i8 {
        let s = match self {
            Self::Sign => dot(a, lambda),
            Self::Linear { matrix, offset } => {
                let ml = [dot(matrix[0], lambda), dot(matrix[1], lambda), dot(matrix[2], lambda)];
                dot(a, ml) + offset
            }
        };
        if s >= 0.0 {
            1
        } else {
            -1
        }
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Local hidden-variable model: a response rule plus `λ` uniform on the unit
/// sphere, drawn per sample from the counter-based stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LhvModel {
    pub rule: ResponseRule,
}

impl LhvModel {
    pub fn sign() -> Self {
        Self { rule: ResponseRule::Sign }
    }

    /// A randomized linear rule, reproducible from `(seed, index)`.
    pub fn randomized(seed: u64, index: u64) -> Self {
        let mut rng = sample_rng(seed ^ 0x5eed_1a2b, index);
        let mut matrix = [[0.0; 3]; 3];
        for row in &mut matrix {
            for x in row.iter_mut() {
                *x = standard_normal(&mut rng);
            }
        }
        let offset = 0.3 * standard_normal(&mut rng);
        Self { rule: ResponseRule::Linear { matrix, offset } }
    }

    pub fn hidden(&self, seed: u64, index: u64) -> [f64; 3] {
        unit_sphere(&mut sample_rng(seed, index))
    }

    /// `f(a,λ)` and `g(b,λ) = −f(b,λ)`.
    pub fn outcomes(&self, a: [f64; 3], b: [f64; 3], lambda: [f64; 3]) -> (i8, i8) {
        (self.rule.respond(a, lambda), -self.rule.respond(b, lambda))
    }
}

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
}

impl Estimate {
    /// From the integer sum of `n` samples valued in `{±1}`.
    fn from_pm1_sum(sum: i64, n: u64) -> Self {
        let mean = sum as f64 / n as f64;
        let var = if n > 1 { (1.0 - mean * mean).max(0.0) * n as f64 / (n - 1) as f64 } else { 0.0 };
        Self { mean, stderr: (var / n as f64).sqrt() }
    }
}

/// `P(a,b) = ⟨f(a,λ) g(b,λ)⟩` over `samples` draws of `λ`.
///
/// Products are ±1, so the integer sum is exact and the result does not
/// depend on how rayon splits the work.
pub fn lhv_correlation<T: Real>(
    model: &LhvModel,
    a: &Direction<T>,
    b: &Direction<T>,
    samples: u64,
    seed: u64,
) -> Result<Estimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let (av, bv) = (to3(a), to3(b));
    let sum: i64 = (0..samples)
        .into_par_iter()
        .map(|i| {
            let (f, g) = model.outcomes(av, bv, model.hidden(seed, i));
            (f * g) as i64
        })
        .sum();
    Ok(Estimate::from_pm1_sum(sum, samples))
}

fn to3<T: Real>(d: &Direction<T>) -> [f64; 3] {
    let [x, y, z] = d.components();
    [to_f64(x), to_f64(y), to_f64(z)]
}

/// Sign-model correlator at angle `theta`: `−1 + 2θ/π`.
pub fn sign_model_correlation(theta: f64) -> f64 {
    -1.0 + 2.0 * theta / std::f64::consts::PI
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LhvBellCheck {
    pub ab: Estimate,
    pub ac: Estimate,
    pub bc: Estimate,
    pub lhs: f64,
    pub rhs: f64,
    /// Combined standard error of `lhs − rhs`.
    pub sigma: f64,
    /// `lhs > rhs + 3σ`.
    pub violated: bool,
}

/// Bell check on Monte Carlo LHV estimates. All three correlations use the
/// same `λ` draws.
pub fn lhv_bell_check<T: Real>(
    model: &LhvModel,
    a: &Direction<T>,
    b: &Direction<T>,
    c: &Direction<T>,
    samples: u64,
    seed: u64,
) -> Result<LhvBellCheck> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let (av, bv, cv) = (to3(a), to3(b), to3(c));
    let (sab, sac, sbc) = (0..samples)
        .into_par_iter()
        .map(|i| {
            let l = model.hidden(seed, i);
            let (fa, fb, fc) = (model.rule.respond(av, l), model.rule.respond(bv, l), model.rule.respond(cv, l));
            ((-fa * fb) as i64, (-fa * fc) as i64, (-fb * fc) as i64)
        })
        .reduce(|| (0, 0, 0), |x, y| (x.0 + y.0, x.1 + y.1, x.2 + y.2));
    let (ab, ac, bc) = (
        Estimate::from_pm1_sum(sab, samples),
        Estimate::from_pm1_sum(sac, samples),
        Estimate::from_pm1_sum(sbc, samples),
    );
    let lhs = (ab.mean - ac.mean).abs();
    let rhs = 1.0 + bc.mean;
    let sigma = (ab.stderr.powi(2) + ac.stderr.powi(2) + bc.stderr.powi(2)).sqrt();
    Ok(LhvBellCheck { ab, ac, bc, lhs, rhs, sigma, violated: lhs > rhs + 3.0 * sigma })
}

/// Region counts of a three-set Venn diagram. Index `k` holds `N_{k+1}`:
///
/// | region | A | B | C |
/// |--------|---|---|---|
/// | N1     | ✓ |   |   |
/// | N2     | ✓ |   | ✓ |
/// | N3     | ✓ | ✓ | ✓ |
/// | N4     | ✓ | ✓ |   |
/// | N5     |   | ✓ | ✓ |
/// | N6     |   |   | ✓ |
/// | N7     |   | ✓ |   |
/// | N8     |   |   |   |
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VennCounts {
    pub n: [u64; 8],
}

impl VennCounts {
    /// Region index (0-based) for a membership triple.
    pub fn region(a: bool, b: bool, c: bool) -> usize {
        match (a, b, c) {
            (true, false, false) => 0,
            (true, false, true) => 1,
            (true, true, true) => 2,
            (true, true, false) => 3,
            (false, true, true) => 4,
            (false, false, true) => 5,
            (false, true, false) => 6,
            (false, false, false) => 7,
        }
    }

    pub fn from_memberships(items: impl IntoIterator<Item = (bool, bool, bool)>) -> Self {
        let mut n = [0u64; 8];
        for (a, b, c) in items {
            n[Self::region(a, b, c)] += 1;
        }
        Self { n }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VennInequality {
    /// `N(A ∧ ¬B) = N1 + N2`.
    pub n1: u64,
    /// `N(B ∧ ¬C) = N7 + N4`.
    pub n2: u64,
    /// `N(A ∧ ¬C) = N1 + N4`.
    pub n3: u64,
    pub holds: bool,
    /// `n1 + n2 − n3 = N2 + N7`.
    pub slack: u64,
}

pub fn venn_inequality(counts: &VennCounts) -> VennInequality {
    let n = &counts.n;
    let n1 = n[0] + n[1];
    let n2 = n[6] + n[3];
    let n3 = n[0] + n[3];
    VennInequality { n1, n2, n3, holds: n1 + n2 >= n3, slack: n1 + n2 - n3 }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GhzReduction<T: Real = f64> {
    pub rho: DensityMatrix<T>,
    pub entropy: T,
    /// Smallest eigenvalue of the partial transpose (two kept qubits only).
    pub min_partial_transpose_eigenvalue: Option<T>,
    /// PPT certificate; exact separability criterion on 2⊗2.
    pub separable: Option<bool>,
}

/// Reduce the GHZ state to its first `n_keep` qubits (1 or 2).
pub fn ghz_reductions<T: Real>(n_keep: usize) -> Result<GhzReduction<T>> {
    let keep: &[&str] = match n_keep {
        1 => &["A"],
        2 => &["A", "B"],
        _ => return Err(Error::InvalidParameter(format!("can keep 1 or 2 GHZ qubits, not {n_keep}"))),
    };
    let rho = ghz::<T>().reduced(keep)?;
    let entropy = entropy_of_spectrum(&rho.eigenvalues_checked()?);
    let (min_pt, separable) = if n_keep == 2 {
        let m = rho.min_partial_transpose_eigenvalue(&["B"])?;
        (Some(m), Some(rho.is_ppt(&["B"])?))
    } else {
        (None, None)
    };
    Ok(GhzReduction { rho, entropy, min_partial_transpose_eigenvalue: min_pt, separable })
}
