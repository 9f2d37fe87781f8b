//! Black-hole and holography calculators: Schwarzschild thermodynamics, the
//! Regge-Wheeler style scattering barrier, the Unruh two-mode state, Monte
//! Carlo Page curves, the thermofield double, geodesic entropy in AdS₃ and the
//! AdS/CFT scaling dimension.
//!
//! Thermodynamic quantities are plain `f64` because SI magnitudes
//! (`G M²` for a solar mass is ~1e50) do not fit the `f32` range.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{entropy_of_spectrum, haar_random_state_indexed, DensityMatrix, HilbertPartition, StateVector};
use crate::scalar::{lit, real, to_f64, Real};
use crate::units::{SiConstants, UnitSystem};

/// Mass and Newton constant; SI means kilograms and m³ kg⁻¹ s⁻².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchwarzschildParams {
    pub mass: f64,
    pub g: f64,
    pub units: UnitSystem,
}

impl SchwarzschildParams {
    pub fn new(mass: f64, g: f64, units: UnitSystem) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) || !(g > 0.0 && g.is_finite()) {
            return Err(Error::InvalidParameter(format!("need M > 0 and G > 0, got M={mass}, G={g}")));
        }
        Ok(Self { mass, g, units })
    }

    pub fn natural(mass: f64) -> Result<Self> {
        Self::new(mass, 1.0, UnitSystem::Natural)
    }

    /// One solar mass in SI units.
    pub fn solar(k: &SiConstants) -> Self {
        Self { mass: k.m_sun, g: k.g, units: UnitSystem::Si }
    }

    fn with_mass(self, mass: f64) -> Self {
        Self { mass, ..self }
    }

    /// `2GM` (natural) or `2GM/c²` (metres).
    pub fn schwarzschild_radius(&self, k: &SiConstants) -> f64 {
        match self.units {
            UnitSystem::Natural => 2.0 * self.g * self.mass,
            UnitSystem::Si => 2.0 * self.g * self.mass / (k.c * k.c),
        }
    }
}

/// Horizon quantities. In SI, temperatures are in kelvin and entropies in
/// units of `k_B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchwarzschildThermo {
    pub r_s: f64,
    pub area: f64,
    pub t_hawking: f64,
    /// `A / 4G` (with `c³/ħ` in SI).
    pub entropy: f64,
    /// `4πGM²` (with `1/ħc` in SI).
    pub entropy_from_mass: f64,
    /// `1/(4GM)`; `c⁴/(4GM)` in m/s² for SI.
    pub surface_gravity: f64,
    /// Unruh temperature of an observer with acceleration equal to the
    /// surface gravity; equals `t_hawking`.
    pub t_unruh_local: f64,
    /// Rindler temperature in units of the proper acceleration, `1/2π`.
    pub t_rindler: f64,
}

impl SchwarzschildThermo {
    /// `|S_area − S_mass| / S_mass`.
    pub fn entropy_mismatch(&self) -> f64 {
        (self.entropy - self.entropy_from_mass).abs() / self.entropy_from_mass
    }
}

pub fn schwarzschild_thermo(p: &SchwarzschildParams, k: &SiConstants) -> SchwarzschildThermo {
    let (m, g) = (p.mass, p.g);
    let r_s = p.schwarzschild_radius(k);
    let area = 4.0 * PI * r_s * r_s;
    let t_rindler = 1.0 / (2.0 * PI);
    match p.units {
        UnitSystem::Natural => {
            let kappa = 1.0 / (4.0 * g * m);
            SchwarzschildThermo {
                r_s,
                area,
                t_hawking: 1.0 / (8.0 * PI * g * m),
                entropy: area / (4.0 * g),
                entropy_from_mass: 4.0 * PI * g * m * m,
                surface_gravity: kappa,
                t_unruh_local: kappa * t_rindler,
                t_rindler,
            }
        }
        UnitSystem::Si => {
            let kappa = k.c.powi(4) / (4.0 * g * m);
            SchwarzschildThermo {
                r_s,
                area,
                t_hawking: k.hbar * k.c.powi(3) / (8.0 * PI * g * m * k.k_b),
                entropy: area * k.c.powi(3) / (4.0 * g * k.hbar),
                entropy_from_mass: 4.0 * PI * g * m * m / (k.hbar * k.c),
                surface_gravity: kappa,
                t_unruh_local: k.hbar * kappa / (2.0 * PI * k.c * k.k_b),
                t_rindler,
            }
        }
    }
}

/// Forward-difference check of `dS = dM / T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FirstLawCheck {
    pub delta_s: f64,
    pub delta_m_over_t: f64,
    pub relative_error: f64,
}

pub fn first_law_check(p: &SchwarzschildParams, k: &SiConstants, delta_fraction: f64) -> Result<FirstLawCheck> {
    if !(delta_fraction > 0.0 && delta_fraction <= 1e-3) {
        return Err(Error::InvalidParameter("mass step must be in (0, 1e-3] of M".into()));
    }
    let dm = p.mass * delta_fraction;
    let here = schwarzschild_thermo(p, k);
    let there = schwarzschild_thermo(&p.with_mass(p.mass + dm), k);
    let delta_s = there.entropy - here.entropy;
    // energy is M c² in SI and the entropy is in units of k_B
    let delta_m_over_t = match p.units {
        UnitSystem::Natural => dm / here.t_hawking,
        UnitSystem::Si => dm * k.c * k.c / (k.k_b * here.t_hawking),
    };
    Ok(FirstLawCheck { delta_s, delta_m_over_t, relative_error: (delta_s - delta_m_over_t).abs() / delta_m_over_t })
}

/// `V(r) = (1 − r_s/r)(r_s/r³ + l(l+1)/r²)` in units where the radius is
/// measured in the same length as `r_s`.
pub fn effective_potential(r: f64, l: u32, r_s: f64) -> Result<f64> {
    if !(r > r_s) {
        return Err(Error::InvalidParameter(format!("radius {r} must exceed r_s = {r_s}")));
    }
    Ok(potential(r, angular(l), r_s))
}

fn angular(l: u32) -> f64 {
    let l = l as f64;
    l * (l + 1.0)
}

fn potential(r: f64, ll: f64, s: f64) -> f64 {
    (1.0 - s / r) * (s / r.powi(3) + ll / (r * r))
}

fn potential_slope(r: f64, ll: f64, s: f64) -> f64 {
    (s / (r * r)) * (s / r.powi(3) + ll / (r * r)) + (1.0 - s / r) * (-3.0 * s / r.powi(4) - 2.0 * ll / r.powi(3))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierMax {
    pub l: u32,
    pub r_peak: f64,
    pub v_max: f64,
}

/// Peak of the barrier on `(r_s, 20 r_s)`, located by bisection on `dV/dr`.
pub fn barrier_max(l: u32, r_s: f64) -> Result<BarrierMax> {
    if !(r_s > 0.0) {
        return Err(Error::InvalidParameter("r_s must be positive".into()));
    }
    let ll = angular(l);
    let (mut lo, mut hi) = (r_s * (1.0 + 1e-9), 20.0 * r_s);
    if potential_slope(lo, ll, r_s) <= 0.0 || potential_slope(hi, ll, r_s) >= 0.0 {
        return Err(Error::NotConverged("barrier peak not bracketed".into()));
    }
    while hi - lo > 1e-14 * hi {
        let mid = 0.5 * (lo + hi);
        if potential_slope(mid, ll, r_s) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r_peak = 0.5 * (lo + hi);
    Ok(BarrierMax { l, r_peak, v_max: potential(r_peak, ll, r_s) })
}

/// Linear fit of `V_max(l)` against `l² + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarrierScaling {
    pub peaks: Vec<BarrierMax>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// `slope / T_H²` in the same (natural) units.
    pub coefficient: f64,
}

pub fn barrier_scaling(l_max: u32, p: &SchwarzschildParams, k: &SiConstants) -> Result<BarrierScaling> {
    let r_s = p.schwarzschild_radius(k);
    let peaks = (0..=l_max).map(|l| barrier_max(l, r_s)).collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = peaks.iter().map(|b| (b.l as f64).powi(2) + 1.0).collect();
    let ys: Vec<f64> = peaks.iter().map(|b| b.v_max).collect();
    let (slope, intercept, r_squared) = linear_fit(&xs, &ys)?;
    let t = schwarzschild_thermo(p, k).t_hawking;
    Ok(BarrierScaling { peaks, slope, intercept, r_squared, coefficient: slope / (t * t) })
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.len() < 2 {
        return Err(Error::InvalidParameter("need at least two points to fit".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx, sxy * sxy / (sxx * syy)))
}

/// Tail weight above which [`unruh_state`] attaches a warning.
pub const UNRUH_TAIL_WARN: f64 = 1e-12;
/// Tail weight above which [`unruh_state`] refuses.
pub const UNRUH_TAIL_MAX: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnruhMode<T: Real = f64> {
    pub omega: T,
    pub accel: T,
    pub n_max: usize,
}

impl<T: Real> UnruhMode<T> {
    pub fn new(omega: T, accel: T, n_max: usize) -> Result<Self> {
        if !(omega > T::zero()) || !(accel > T::zero()) || n_max < 10 {
            return Err(Error::InvalidParameter("need ω > 0, a > 0 and n_max ≥ 10".into()));
        }
        Ok(Self { omega, accel, n_max })
    }

    /// `exp(−2πω/a)`, the Boltzmann ratio between successive levels.
    pub fn ratio(&self) -> T {
        (-T::two_pi() * self.omega / self.accel).exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnruhState<T: Real = f64> {
    /// `Σ e^{−nπω/a}|n⟩_R|n⟩_L`, normalized, on labels `R`, `L`.
    pub state: StateVector<T>,
    pub rho_r: DensityMatrix<T>,
    /// Diagonal of `ρ_R`.
    pub occupation: Vec<T>,
    pub mean_occupation: T,
    pub entropy: T,
    /// `exp(−2 n_max πω/a)`.
    pub truncation_tail: T,
    pub warning: Option<String>,
}

pub fn unruh_state<T: Real>(m: &UnruhMode<T>) -> Result<UnruhState<T>> {
    let q = m.ratio();
    let tail = q.powi(m.n_max as i32);
    if to_f64(tail) >= UNRUH_TAIL_MAX {
        return Err(Error::Truncation { tail: to_f64(tail) });
    }
    let warning = (to_f64(tail) >= UNRUH_TAIL_WARN)
        .then(|| format!("truncation tail {:.3e} exceeds {UNRUH_TAIL_WARN:e}", to_f64(tail)));
    let d = m.n_max + 1;
    let partition = HilbertPartition::new(vec![d, d], vec!["R", "L"])?;
    let half = (-T::pi() * m.omega / m.accel).exp();
    let mut amps = crate::linalg::CVector::<T>::zeros(d * d);
    let mut w = T::one();
    for n in 0..d {
        amps[n * d + n] = real(w);
        w *= half;
    }
    let state = StateVector::normalized(amps, partition)?;
    let rho_r = state.reduced(&["R"])?;
    let occupation: Vec<T> = (0..d).map(|n| rho_r.matrix()[(n, n)].re).collect();
    let mean_occupation = occupation.iter().enumerate().fold(T::zero(), |acc, (n, &p)| acc + lit::<T>(n as f64) * p);
    // every level counts here; the tail is compared against the untruncated law
    let entropy = occupation.iter().filter(|&&p| p > T::zero()).fold(T::zero(), |acc, &p| acc - p * p.ln());
    Ok(UnruhState { state, rho_r, occupation, mean_occupation, entropy, truncation_tail: tail, warning })
}

/// `1/(e^{2πω/a} − 1)`.
pub fn bose_einstein_occupation<T: Real>(omega: T, accel: T) -> T {
    T::one() / ((T::two_pi() * omega / accel).exp() - T::one())
}

/// Entropy of the untruncated geometric distribution with ratio `q`.
pub fn geometric_entropy<T: Real>(q: T) -> T {
    let one = T::one();
    -(one - q).ln() - q * q.ln() / (one - q)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PagePoint {
    /// Number of radiated qubits (the first `m` of the register).
    pub m: usize,
    pub mean_entropy: f64,
    pub stderr: f64,
    /// Thermal entropy `min(m, n − m) ln 2` of the radiation.
    pub thermal_entropy: f64,
    /// `thermal_entropy − mean_entropy`.
    pub information: f64,
    /// Exact Haar average for the same cut.
    pub page_average: f64,
}

/// Haar-averaged entanglement entropy of the first `m` qubits for every
/// `m = 0..=n`. Sample `k` uses the random stream `(seed, k)`.
pub fn page_curve_mc(n_qubits: usize, samples: usize, seed: u64) -> Result<Vec<PagePoint>> {
    if !(2..=14).contains(&n_qubits) {
        return Err(Error::InvalidParameter(format!("n_qubits must be in 2..=14, got {n_qubits}")));
    }
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least two samples".into()));
    }
    let partition = HilbertPartition::qubits(n_qubits)?;
    let labels: Vec<String> = partition.labels().to_vec();
    let per_sample: Vec<Vec<f64>> = (0..samples as u64)
        .into_par_iter()
        .map(|k| {
            let psi = haar_random_state_indexed::<f64>(&partition, seed, k);
            (0..=n_qubits)
                .map(|m| if m == 0 || m == n_qubits { Ok(0.0) } else { psi.entanglement_entropy(&labels[..m]) })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let count = samples as f64;
    Ok((0..=n_qubits)
        .map(|m| {
            let mean = per_sample.iter().map(|s| s[m]).sum::<f64>() / count;
            let var = per_sample.iter().map(|s| (s[m] - mean).powi(2)).sum::<f64>() / (count - 1.0);
            let thermal = m.min(n_qubits - m) as f64 * std::f64::consts::LN_2;
            PagePoint {
                m,
                mean_entropy: mean,
                stderr: (var / count).sqrt(),
                thermal_entropy: thermal,
                information: thermal - mean,
                page_average: page_average(1usize << m, 1usize << (n_qubits - m)),
            }
        })
        .collect())
}

/// Mean entanglement entropy of a `d_a × d_b` Haar state:
/// `Σ_{k=d_b+1}^{d_a d_b} 1/k − (d_a − 1)/(2 d_b)` with `d_a ≤ d_b`.
pub fn page_average(d_a: usize, d_b: usize) -> f64 {
    let (a, b) = if d_a <= d_b { (d_a, d_b) } else { (d_b, d_a) };
    let harmonic: f64 = (b + 1..=a * b).map(|k| 1.0 / k as f64).sum();
    harmonic - (a as f64 - 1.0) / (2.0 * b as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThermofieldDouble<T: Real = f64> {
    /// State on labels `A`, `B`.
    pub state: StateVector<T>,
    pub rho_a: DensityMatrix<T>,
    /// `e^{−βEᵢ}/Z`.
    pub gibbs: Vec<T>,
    pub entropy: T,
}

pub fn thermofield_double<T: Real>(spectrum: &[T], beta: T) -> Result<ThermofieldDouble<T>> {
    if spectrum.is_empty() {
        return Err(Error::InvalidParameter("empty spectrum".into()));
    }
    if !(beta > T::zero()) {
        return Err(Error::InvalidParameter("beta must be positive".into()));
    }
    let e0 = spectrum.iter().fold(spectrum[0], |a, &b| a.min(b));
    let weights: Vec<T> = spectrum.iter().map(|&e| (-beta * (e - e0)).exp()).collect();
    let z = weights.iter().fold(T::zero(), |a, &w| a + w);
    let gibbs: Vec<T> = weights.iter().map(|&w| w / z).collect();
    let d = spectrum.len();
    let mut amps = crate::linalg::CVector::<T>::zeros(d * d);
    for (i, &p) in gibbs.iter().enumerate() {
        amps[i * d + i] = real(p.sqrt());
    }
    let state = StateVector::normalized(amps, HilbertPartition::new(vec![d, d], vec!["A", "B"])?)?;
    let rho_a = state.reduced(&["A"])?;
    let entropy = entropy_of_spectrum(&gibbs);
    Ok(ThermofieldDouble { state, rho_a, gibbs, entropy })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdsParams<T: Real = f64> {
    pub radius: T,
    pub g3: T,
    pub cutoff: T,
    pub interval: T,
}

impl<T: Real> AdsParams<T> {
    pub fn new(radius: T, g3: T, cutoff: T, interval: T) -> Result<Self> {
        let z = T::zero();
        if !(radius > z && g3 > z && cutoff > z && interval > z) {
            return Err(Error::InvalidParameter("AdS parameters must be positive".into()));
        }
        if cutoff * lit(10.0) > interval {
            return Err(Error::InvalidParameter(format!(
                "cutoff {} exceeds l/10 = {}",
                to_f64(cutoff),
                to_f64(interval) / 10.0
            )));
        }
        Ok(Self { radius, g3, cutoff, interval })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RtEntropy<T: Real = f64> {
    /// Arc length of the geodesic by quadrature.
    pub length_numeric: T,
    /// `2R ln(l/a)`.
    pub length_analytic: T,
    pub relative_error: T,
    /// `L / 4G`, using the analytic length.
    pub entropy: T,
    /// `3R / 2G`.
    pub central_charge: T,
    /// `(c/3) ln(l/a)`.
    pub cft_entropy: T,
}

/// Geodesic `z = (l/2) sin s, x = (l/2) cos s` in Poincaré AdS₃ with the
/// parameter cut at `s = ε = 2a/l`; the induced line element is `R ds / sin s`.
pub fn rt_entropy<T: Real>(p: &AdsParams<T>) -> Result<RtEntropy<T>> {
    let two: T = lit(2.0);
    let eps = two * p.cutoff / p.interval;
    let r = p.radius;
    let f = move |s: T| r / s.sin();
    let half = adaptive_simpson(&f, eps, T::frac_pi_2(), lit(1e-13))?;
    let length_numeric = two * half;
    let length_analytic = two * r * (p.interval / p.cutoff).ln();
    let central_charge = lit::<T>(3.0) * r / (two * p.g3);
    Ok(RtEntropy {
        length_numeric,
        length_analytic,
        relative_error: ((length_numeric - length_analytic) / length_analytic).abs(),
        entropy: length_analytic / (lit::<T>(4.0) * p.g3),
        central_charge,
        cft_entropy: central_charge / lit(3.0) * (p.interval / p.cutoff).ln(),
    })
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson<T: Real>(f: &impl Fn(T) -> T, a: T, b: T, tol: T) -> Result<T> {
    #[allow(clippy::too_many_arguments)]
    fn step<T: Real>(f: &impl Fn(T) -> T, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> Result<T> {
        let two: T = lit(2.0);
        let m = (a + b) / two;
        let (lm, rm) = ((a + m) / two, (m + b) / two);
        let (flm, frm) = (f(lm), f(rm));
        let six: T = lit(6.0);
        let left = (m - a) / six * (fa + lit::<T>(4.0) * flm + fm);
        let right = (b - m) / six * (fm + lit::<T>(4.0) * frm + fb);
        let diff = left + right - whole;
        if diff.abs() <= lit::<T>(15.0) * tol {
            return Ok(left + right + diff / lit(15.0));
        }
        if depth == 0 {
            return Err(Error::NotConverged("adaptive quadrature depth exhausted".into()));
        }
        Ok(step(f, a, m, fa, flm, fm, left, tol / two, depth - 1)?
            + step(f, m, b, fm, frm, fb, right, tol / two, depth - 1)?)
    }
    let two: T = lit(2.0);
    let m = (a + b) / two;
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / lit(6.0) * (fa + lit::<T>(4.0) * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `Δ = d/2 + √(d²/4 + m²L²)`.
pub fn scaling_dimension<T: Real>(d: u32, m2l2: T) -> Result<T> {
    let half_d: T = lit(d as f64 / 2.0);
    let bound = -half_d * half_d;
    if m2l2 < bound {
        return Err(Error::BelowBfBound { m2l2: to_f64(m2l2), bound: to_f64(bound) });
    }
    Ok(half_d + (half_d * half_d + m2l2).max(T::zero()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::CODATA_2018;

    #[test]
    fn natural_unit_entropy() {
        let t = schwarzschild_thermo(&SchwarzschildParams::natural(1.0).unwrap(), &CODATA_2018);
        assert!((t.entropy - 4.0 * PI).abs() < 1e-12);
        assert!(t.entropy_mismatch() < 1e-12);
        assert!((t.t_hawking - t.surface_gravity * t.t_rindler).abs() < 1e-16);
        assert!((t.t_hawking - 1.0 / (8.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn solar_mass_si() {
        let k = CODATA_2018;
        let t = schwarzschild_thermo(&SchwarzschildParams::solar(&k), &k);
        assert!((t.t_hawking - 6.2e-8).abs() / 6.2e-8 < 0.01, "{}", t.t_hawking);
        // 2 GM_sun / c² from the nominal solar mass parameter
        let oracle = 2.0 * 1.327_124_400_18e20 / (k.c * k.c);
        assert!((t.r_s - oracle).abs() / oracle < 1e-12);
        assert!((t.t_unruh_local - t.t_hawking).abs() / t.t_hawking < 1e-12);
        assert!(t.entropy_mismatch() < 1e-12);
    }

    #[test]
    fn first_law() {
        for p in [SchwarzschildParams::natural(3.0).unwrap(), SchwarzschildParams::solar(&CODATA_2018)] {
            let c = first_law_check(&p, &CODATA_2018, 1e-7).unwrap();
            assert!(c.relative_error < 1e-6, "{c:?}");
        }
    }

    #[test]
    fn potential_limits() {
        assert!(effective_potential(1.0, 0, 1.0).is_err());
        assert!(effective_potential(1.0 + 1e-12, 2, 1.0).unwrap().abs() < 1e-10);
        assert!(effective_potential(1e6, 2, 1.0).unwrap() < 1e-11);
    }

    #[test]
    fn barrier_peak_matches_closed_form() {
        // with u = 1/r the peak solves 4s²u² − 3s(1 − L)u − 2L = 0
        let s = 1.0;
        for l in 0..=10u32 {
            let ll = angular(l);
            let (a, b, c) = (4.0 * s * s, -3.0 * s * (1.0 - ll), -2.0 * ll);
            let u = (-b + (b * b - 4.0 * a * c).sqrt()) / (2.0 * a);
            let got = barrier_max(l, s).unwrap();
            assert!((got.r_peak - 1.0 / u).abs() * u < 1e-10, "l={l}");
        }
        assert!((barrier_max(0, 2.0).unwrap().r_peak - 8.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn barrier_scales_with_l_squared() {
        let p = SchwarzschildParams::natural(1.0).unwrap();
        let fit = barrier_scaling(10, &p, &CODATA_2018).unwrap();
        assert!(fit.r_squared >= 0.999, "{}", fit.r_squared);
        assert!(fit.peaks.windows(2).all(|w| w[1].v_max > w[0].v_max));
    }

    #[test]
    fn unruh_ratio_and_occupation() {
        let m = UnruhMode::new(1.0, 2.0 * PI, 60).unwrap();
        let u = unruh_state(&m).unwrap();
        assert!(u.warning.is_none());
        assert!((u.occupation[1] / u.occupation[0] - (-1.0f64).exp()).abs() < 1e-12);
        assert!((u.mean_occupation - bose_einstein_occupation(1.0, 2.0 * PI)).abs() < 1e-12);
        assert!((u.entropy - geometric_entropy(m.ratio())).abs() < 1e-12);
        let s_l = u.state.entanglement_entropy(&["L"]).unwrap();
        assert!((s_l - u.entropy).abs() < 1e-10);
    }

    #[test]
    fn unruh_truncation_guard() {
        let warn = unruh_state(&UnruhMode::new(1.0, 5.0, 10).unwrap()).unwrap();
        assert!(warn.warning.is_some());
        assert!(matches!(unruh_state(&UnruhMode::new(1.0, 200.0, 10).unwrap()), Err(Error::Truncation { .. })));
        assert!(UnruhMode::new(1.0, 1.0, 9).is_err());
    }

    #[test]
    fn page_curve_small() {
        let c = page_curve_mc(6, 200, 3).unwrap();
        assert_eq!(c[0].mean_entropy, 0.0);
        assert_eq!(c[6].mean_entropy, 0.0);
        let peak = c.iter().max_by(|a, b| a.mean_entropy.partial_cmp(&b.mean_entropy).unwrap()).unwrap();
        assert_eq!(peak.m, 3);
        for p in &c[1..6] {
            assert!((p.mean_entropy - p.page_average).abs() < 4.0 * p.stderr + 1e-3, "{p:?}");
        }
        assert_eq!(c, page_curve_mc(6, 200, 3).unwrap());
    }

    #[test]
    fn page_average_values() {
        assert_eq!(page_average(1, 8), 0.0);
        // two qubits: 1/3 + 1/4 − 1/4
        assert!((page_average(2, 2) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn thermofield_cases() {
        let tfd = thermofield_double(&[0.0, 1.0], 3f64.ln()).unwrap();
        let want = 0.75 * (4.0f64 / 3.0).ln() + 0.25 * 4f64.ln();
        assert!((tfd.entropy - want).abs() < 1e-14);
        assert!((tfd.rho_a.matrix()[(0, 0)].re - 0.75).abs() < 1e-14);
        assert!(tfd.rho_a.matrix()[(0, 1)].norm() < 1e-15);
        let cold = thermofield_double(&[0.0, 1.0, 2.5], 50.0).unwrap();
        assert!(cold.entropy < 1e-12);
        let hot = thermofield_double(&[0.0, 1.0, 2.0, 3.0], 1e-7).unwrap();
        assert!((hot.entropy - 4f64.ln()).abs() < 1e-6);
        assert!(thermofield_double::<f64>(&[], 1.0).is_err());
    }

    #[test]
    fn rt_quadrature_matches_cot_form() {
        for ratio in [10.0, 100.0, 1000.0] {
            let p = AdsParams::new(1.0, 1.0, 1.0, ratio).unwrap();
            let rt = rt_entropy(&p).unwrap();
            let eps: f64 = 2.0 / ratio;
            let exact = 2.0 * (1.0 / (eps / 2.0).tan()).ln();
            assert!((rt.length_numeric - exact).abs() < 1e-10 * exact);
            assert!((rt.entropy - rt.cft_entropy).abs() < 1e-12);
        }
        let p = AdsParams::new(1.0, 1.0, 1.0, 3f64.exp()).unwrap();
        let rt = rt_entropy(&p).unwrap();
        assert!((rt.cft_entropy - rt.central_charge).abs() < 1e-12);
        assert!(AdsParams::new(1.0, 1.0, 1.0, 5.0).is_err());
    }

    #[test]
    fn scaling_dimensions() {
        assert_eq!(scaling_dimension(4, 0.0).unwrap(), 4.0);
        assert_eq!(scaling_dimension(4, -4.0).unwrap(), 2.0);
        assert!(matches!(scaling_dimension(3, -2.25 - 0.1), Err(Error::BelowBfBound { .. })));
    }
}
