//! One-dimensional pilot-wave dynamics on a uniform grid (`ħ = 1`).
//!
//! The wave function evolves by Crank-Nicolson with hard walls (`ψ = 0` just
//! outside the grid). Trajectories follow `dQ/dt = Im(ψ*∂ψ)/(m|ψ|²)`,
//! integrated by RK4 over pairs of Schrödinger steps.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Tridiagonal;
use crate::random::sample_rng;
use crate::scalar::{cabs, lit, real, to_f64, Real, C};

/// Cells with `|ψ|²` below this fraction of the peak are treated as nodes.
pub const NODE_THRESHOLD: f64 = 1e-12;
/// Number of cells at each end watched for boundary contact.
pub const EDGE_CELLS: usize = 8;
/// Probability allowed in the edge cells before evolution is rejected.
pub const EDGE_LIMIT: f64 = 1e-6;
/// Allowed deviation of `Σ|ψ|²dx` from one.
pub const NORM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D<T: Real = f64> {
    x_min: T,
    x_max: T,
    points: usize,
}

impl<T: Real> Grid1D<T> {
    pub fn new(x_min: T, x_max: T, points: usize) -> Result<Self> {
        if points < 64 {
            return Err(Error::InvalidParameter(format!("grid needs at least 64 points, got {points}")));
        }
        if !(x_max > x_min) {
            return Err(Error::InvalidParameter("x_max must exceed x_min".into()));
        }
        Ok(Self { x_min, x_max, points })
    }

    pub fn x_min(&self) -> T {
        self.x_min
    }

    pub fn x_max(&self) -> T {
        self.x_max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn dx(&self) -> T {
        (self.x_max - self.x_min) / lit((self.points - 1) as f64)
    }

    pub fn x(&self, i: usize) -> T {
        self.x_min + self.dx() * lit(i as f64)
    }

    pub fn xs(&self) -> Vec<T> {
        (0..self.points).map(|i| self.x(i)).collect()
    }

    pub fn contains(&self, x: T) -> bool {
        x >= self.x_min && x <= self.x_max
    }
}

/// `½ m ω² x²` on the grid.
pub fn harmonic_potential<T: Real>(grid: &Grid1D<T>, mass: T, omega: T) -> Vec<T> {
    let half: T = lit(0.5);
    grid.xs().into_iter().map(|x| half * mass * omega * omega * x * x).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveField<T: Real = f64> {
    grid: Grid1D<T>,
    psi: Vec<C<T>>,
    time: T,
    mass: T,
    potential: Vec<T>,
}

impl<T: Real> WaveField<T> {
    /// Requires `Σ|ψ|²dx = 1` within [`NORM_TOL`].
    pub fn new(grid: Grid1D<T>, psi: Vec<C<T>>, mass: T, potential: Vec<T>, time: T) -> Result<Self> {
        if psi.len() != grid.points || potential.len() != grid.points {
            return Err(Error::DimensionMismatch { expected: grid.points, found: psi.len().min(potential.len()) });
        }
        if !(mass > T::zero()) {
            return Err(Error::InvalidParameter("mass must be positive".into()));
        }
        let f = Self { grid, psi, time, mass, potential };
        let n = to_f64(f.norm());
        if (n - 1.0).abs() > NORM_TOL.max(to_f64(lit::<T>(T::VALIDATION_TOL))) {
            return Err(Error::NotNormalized { norm_sq: n });
        }
        Ok(f)
    }

    /// Rescales `psi` to unit discrete norm.
    pub fn normalized(grid: Grid1D<T>, psi: Vec<C<T>>, mass: T, potential: Vec<T>) -> Result<Self> {
        let dx = grid.dx();
        let n = psi.iter().fold(T::zero(), |a, z| a + z.norm_sqr()) * dx;
        if !(n > T::zero()) {
            return Err(Error::NotNormalized { norm_sq: 0.0 });
        }
        let s = real(T::one() / n.sqrt());
        Self::new(grid, psi.into_iter().map(|z| z * s).collect(), mass, potential, T::zero())
    }

    /// `exp(−(x−x₀)²/4σ² + ik₀x)`, normalized on the grid.
    pub fn gaussian(grid: Grid1D<T>, x0: T, sigma: T, k0: T, mass: T, potential: Vec<T>) -> Result<Self> {
        if !(sigma > T::zero()) {
            return Err(Error::InvalidParameter("sigma must be positive".into()));
        }
        let four: T = lit(4.0);
        let psi = grid
            .xs()
            .into_iter()
            .map(|x| {
                let amp = (-(x - x0) * (x - x0) / (four * sigma * sigma)).exp();
                let (s, c) = (k0 * x).sin_cos();
                C::new(amp * c, amp * s)
            })
            .collect();
        Self::normalized(grid, psi, mass, potential)
    }

    pub fn grid(&self) -> &Grid1D<T> {
        &self.grid
    }

    pub fn psi(&self) -> &[C<T>] {
        &self.psi
    }

    pub fn time(&self) -> T {
        self.time
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn potential(&self) -> &[T] {
        &self.potential
    }

    /// Same field with the clock set to `time`.
    pub fn at_time(mut self, time: T) -> Self {
        self.time = time;
        self
    }

    pub fn density(&self) -> Vec<T> {
        self.psi.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn norm(&self) -> T {
        self.psi.iter().fold(T::zero(), |a, z| a + z.norm_sqr()) * self.grid.dx()
    }

    pub fn mean_position(&self) -> T {
        let dx = self.grid.dx();
        self.psi.iter().enumerate().fold(T::zero(), |a, (i, z)| a + self.grid.x(i) * z.norm_sqr()) * dx
    }

    /// `√(⟨x²⟩ − ⟨x⟩²)`.
    pub fn width(&self) -> T {
        let dx = self.grid.dx();
        let mean = self.mean_position();
        let var =
            self.psi.iter().enumerate().fold(T::zero(), |a, (i, z)| a + (self.grid.x(i) - mean).powi(2) * z.norm_sqr())
                * dx;
        var.sqrt()
    }

    /// Discrete `⟨H⟩` with the same three-point Laplacian as the propagator.
    pub fn energy(&self) -> T {
        let dx = self.grid.dx();
        let kin = T::one() / (self.mass * dx * dx);
        let half: T = lit(0.5);
        let mut e = C::new(T::zero(), T::zero());
        for i in 0..self.psi.len() {
            let hpsi = self.psi[i] * real(kin + self.potential[i])
                - (self.at(i as isize - 1) + self.at(i as isize + 1)) * real(half * kin);
            e += self.psi[i].conj() * hpsi;
        }
        e.re * dx
    }

    /// Probability in the outermost [`EDGE_CELLS`] at both ends.
    pub fn edge_probability(&self) -> T {
        let n = self.psi.len();
        let k = EDGE_CELLS.min(n / 2);
        let edge = self.psi[..k].iter().chain(&self.psi[n - k..]).fold(T::zero(), |a, z| a + z.norm_sqr());
        edge * self.grid.dx()
    }

    fn at(&self, i: isize) -> C<T> {
        if i < 0 || i as usize >= self.psi.len() {
            C::new(T::zero(), T::zero())
        } else {
            self.psi[i as usize]
        }
    }

    fn peak_index(&self) -> usize {
        let mut best = 0;
        for (i, z) in self.psi.iter().enumerate() {
            if z.norm_sqr() > self.psi[best].norm_sqr() {
                best = i;
            }
        }
        best
    }
}

/// Lowest eigenvector of the discrete Hamiltonian in `potential`, by inverse
/// iteration. It is stationary under the Crank-Nicolson propagator.
pub fn discrete_ground_state<T: Real>(grid: Grid1D<T>, mass: T, potential: Vec<T>, shift: T) -> Result<WaveField<T>> {
    let dx = grid.dx();
    let kin = T::one() / (mass * dx * dx);
    let half: T = lit(0.5);
    let diag: Vec<C<T>> = potential.iter().map(|&v| real(kin + v - shift)).collect();
    let off = real(-half * kin);
    let solver = Tridiagonal::factor(&diag, off, off);
    let n = grid.points;
    let mut x: Vec<C<T>> = grid.xs().into_iter().map(|x| real((-x * x * half).exp() + lit(1e-3))).collect();
    let mut y = vec![C::new(T::zero(), T::zero()); n];
    for _ in 0..500 {
        solver.solve_into(&x, &mut y);
        let nrm = y.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt();
        let sign = if y[n / 2].re < T::zero() { -T::one() } else { T::one() };
        let mut change = T::zero();
        for i in 0..n {
            let v = y[i] * real(sign / nrm);
            change = change.max(cabs(v - x[i]));
            x[i] = v;
        }
        if to_f64(change) < 1e-14 {
            return WaveField::normalized(grid, x, mass, potential);
        }
    }
    Err(Error::NotConverged("inverse iteration for the discrete ground state".into()))
}

/// Factorized Crank-Nicolson step `(1 + iHdt/2)ψ' = (1 − iHdt/2)ψ`.
#[derive(Debug, Clone)]
pub struct CrankNicolson<T: Real = f64> {
    solver: Tridiagonal<T>,
    rhs_diag: Vec<C<T>>,
    rhs_off: C<T>,
    dt: T,
    warning: Option<String>,
}

impl<T: Real> CrankNicolson<T> {
    pub fn new(field: &WaveField<T>, dt: T) -> Self {
        let dx = field.grid.dx();
        let kin = T::one() / (field.mass * dx * dx);
        let half: T = lit(0.5);
        let quarter: T = lit(0.25);
        let lhs_diag: Vec<C<T>> = field.potential.iter().map(|&v| C::new(T::one(), half * dt * (kin + v))).collect();
        let rhs_diag = field.potential.iter().map(|&v| C::new(T::one(), -half * dt * (kin + v))).collect();
        let lhs_off = C::new(T::zero(), -quarter * dt * kin);
        let budget = dx * dx * field.mass * half;
        let warning = (dt > budget)
            .then(|| format!("dt = {:e} exceeds the explicit budget dx²m/2 = {:e}", to_f64(dt), to_f64(budget)));
        Self { solver: Tridiagonal::factor(&lhs_diag, lhs_off, lhs_off), rhs_diag, rhs_off: -lhs_off, dt, warning }
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    /// Set when `dt` exceeds the explicit-scheme stability budget (the
    /// implicit scheme remains stable; accuracy may suffer).
    pub fn warning(&self) -> Option<&str> {
        self.warning.as_deref()
    }

    fn apply(&self, psi: &[C<T>], rhs: &mut [C<T>], out: &mut [C<T>]) {
        let n = psi.len();
        let zero = C::new(T::zero(), T::zero());
        for i in 0..n {
            let left = if i > 0 { psi[i - 1] } else { zero };
            let right = if i + 1 < n { psi[i + 1] } else { zero };
            rhs[i] = self.rhs_diag[i] * psi[i] + self.rhs_off * (left + right);
        }
        self.solver.solve_into(rhs, out);
    }

    /// Advances `field` in place by `steps` steps and checks the walls.
    pub fn advance(&self, field: &mut WaveField<T>, steps: usize) -> Result<()> {
        let n = field.psi.len();
        let mut rhs = vec![C::new(T::zero(), T::zero()); n];
        let mut out = rhs.clone();
        for _ in 0..steps {
            self.apply(&field.psi, &mut rhs, &mut out);
            std::mem::swap(&mut field.psi, &mut out);
            field.time += self.dt;
        }
        let edge = to_f64(field.edge_probability());
        if edge > EDGE_LIMIT {
            return Err(Error::BoundaryLeak { edge_probability: edge });
        }
        Ok(())
    }
}

/// `steps` Crank-Nicolson steps of size `dt`; `dt = 0` returns the input.
pub fn schrodinger_step<T: Real>(field: &WaveField<T>, dt: T, steps: usize) -> Result<WaveField<T>> {
    let mut out = field.clone();
    if dt == T::zero() || steps == 0 {
        return Ok(out);
    }
    CrankNicolson::new(field, dt).advance(&mut out, steps)?;
    Ok(out)
}

/// Values on the grid with node cells flagged. Flagged cells carry the value
/// of the nearest unflagged cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaskedField<T: Real = f64> {
    pub values: Vec<T>,
    pub node: Vec<bool>,
}

fn node_mask<T: Real>(field: &WaveField<T>) -> Vec<bool> {
    let rho = field.density();
    let peak = rho.iter().fold(T::zero(), |a, &b| a.max(b));
    let cut = peak * lit(NODE_THRESHOLD);
    rho.into_iter().map(|r| r < cut || r == T::zero()).collect()
}

fn fill_nodes<T: Real>(values: &mut [T], node: &[bool]) {
    let n = values.len();
    let mut left: Vec<Option<usize>> = vec![None; n];
    let mut last = None;
    for i in 0..n {
        if !node[i] {
            last = Some(i);
        }
        left[i] = last;
    }
    let mut next = None;
    for i in (0..n).rev() {
        if !node[i] {
            next = Some(i);
            continue;
        }
        let pick = match (left[i], next) {
            (Some(l), Some(r)) => Some(if i - l <= r - i { l } else { r }),
            (a, b) => a.or(b),
        };
        values[i] = pick.map_or(T::zero(), |j| values[j]);
    }
}

/// Fourth-order central difference with zeros beyond the walls.
fn derivative<T: Real>(f: &impl Fn(isize) -> C<T>, i: usize, dx: T) -> C<T> {
    let i = i as isize;
    let eight = real(lit::<T>(8.0));
    (f(i - 2) - f(i + 2) + (f(i + 1) - f(i - 1)) * eight) / real(lit::<T>(12.0) * dx)
}

/// Guidance velocity `Im(ψ*∂ψ)/(m|ψ|²)`.
pub fn bohm_velocity<T: Real>(field: &WaveField<T>) -> MaskedField<T> {
    let node = node_mask(field);
    let dx = field.grid.dx();
    let at = |i: isize| field.at(i);
    let mut values: Vec<T> = (0..field.psi.len())
        .map(|i| {
            if node[i] {
                return T::zero();
            }
            let d = derivative(&at, i, dx);
            (field.psi[i].conj() * d).im / (field.mass * field.psi[i].norm_sqr())
        })
        .collect();
    fill_nodes(&mut values, &node);
    MaskedField { values, node }
}

/// Phase `S = arg ψ` unwrapped outward from cell `start`.
pub fn unwrapped_phase_from<T: Real>(field: &WaveField<T>, start: usize) -> Vec<T> {
    let n = field.psi.len();
    let raw: Vec<T> = field.psi.iter().map(|z| z.im.atan2(z.re)).collect();
    let two_pi = T::two_pi();
    let wrap = |d: T| d - two_pi * (d / two_pi).round();
    let mut s = vec![T::zero(); n];
    s[start] = raw[start];
    for i in start + 1..n {
        s[i] = s[i - 1] + wrap(raw[i] - raw[i - 1]);
    }
    for i in (0..start).rev() {
        s[i] = s[i + 1] + wrap(raw[i] - raw[i + 1]);
    }
    s
}

/// Phase unwrapped outward from the density peak.
pub fn unwrapped_phase<T: Real>(field: &WaveField<T>) -> Vec<T> {
    unwrapped_phase_from(field, field.peak_index())
}

/// `∂S/∂x` from the unwrapped phase.
pub fn phase_gradient<T: Real>(field: &WaveField<T>) -> MaskedField<T> {
    phase_gradient_of(field, &unwrapped_phase(field))
}

fn phase_gradient_of<T: Real>(field: &WaveField<T>, s: &[T]) -> MaskedField<T> {
    let node = node_mask(field);
    let n = s.len();
    let dx = field.grid.dx();
    let two: T = lit(2.0);
    let mut values: Vec<T> = (0..n)
        .map(|i| {
            if i >= 2 && i + 2 < n {
                (s[i - 2] - s[i + 2] + lit::<T>(8.0) * (s[i + 1] - s[i - 1])) / (lit::<T>(12.0) * dx)
            } else if i >= 1 && i + 1 < n {
                (s[i + 1] - s[i - 1]) / (two * dx)
            } else if i == 0 {
                (s[1] - s[0]) / dx
            } else {
                (s[n - 1] - s[n - 2]) / dx
            }
        })
        .collect();
    fill_nodes(&mut values, &node);
    MaskedField { values, node }
}

/// `U = −(1/2m) R''/R` with `R = |ψ|` and a three-point Laplacian.
pub fn quantum_potential<T: Real>(field: &WaveField<T>) -> MaskedField<T> {
    let node = node_mask(field);
    let r: Vec<T> = field.psi.iter().map(|&z| cabs(z)).collect();
    let n = r.len();
    let dx = field.grid.dx();
    let two: T = lit(2.0);
    let mut values: Vec<T> = (0..n)
        .map(|i| {
            if node[i] {
                return T::zero();
            }
            let left = if i > 0 { r[i - 1] } else { T::zero() };
            let right = if i + 1 < n { r[i + 1] } else { T::zero() };
            -(right - two * r[i] + left) / (two * field.mass * dx * dx * r[i])
        })
        .collect();
    fill_nodes(&mut values, &node);
    MaskedField { values, node }
}

/// Closed form of `U` for `R ∝ exp(−(x−x₀)²/4σ²)`.
pub fn gaussian_quantum_potential<T: Real>(x: T, x0: T, sigma: T, mass: T) -> T {
    let s2 = sigma * sigma;
    let d = x - x0;
    (T::one() / (lit::<T>(2.0) * s2) - d * d / (lit::<T>(4.0) * s2 * s2)) / (lit::<T>(2.0) * mass)
}

/// Cells where `|ψ|²` is at least `fraction` of the peak in both snapshots.
fn bulk<T: Real>(a: &WaveField<T>, b: &WaveField<T>, fraction: f64) -> Vec<bool> {
    let (ra, rb) = (a.density(), b.density());
    let pa = ra.iter().fold(T::zero(), |m, &x| m.max(x)) * lit(fraction);
    let pb = rb.iter().fold(T::zero(), |m, &x| m.max(x)) * lit(fraction);
    ra.iter().zip(&rb).map(|(&x, &y)| x >= pa && y >= pb).collect()
}

fn check_pair<T: Real>(a: &WaveField<T>, b: &WaveField<T>) -> Result<T> {
    if a.grid != b.grid || a.mass != b.mass {
        return Err(Error::InvalidParameter("snapshots must share grid and mass".into()));
    }
    let dt = b.time - a.time;
    if !(dt > T::zero()) {
        return Err(Error::UnorderedEvents);
    }
    Ok(dt)
}

/// Max over the bulk (`|ψ|² ≥ 1%` of peak) of
/// `|∂S/∂t + (∂S/∂x)²/2m + V + U|`, with the spatial terms averaged over the
/// two snapshots.
pub fn hamilton_jacobi_residual<T: Real>(before: &WaveField<T>, after: &WaveField<T>) -> Result<T> {
    let dt = check_pair(before, after)?;
    let start = before.peak_index();
    let s0 = unwrapped_phase_from(before, start);
    let mut s1 = unwrapped_phase_from(after, start);
    let two_pi = T::two_pi();
    let shift = two_pi * ((s0[start] - s1[start]) / two_pi).round();
    s1.iter_mut().for_each(|s| *s += shift);
    let spatial = |f: &WaveField<T>, s: &[T]| -> Vec<T> {
        let g = phase_gradient_of(f, s).values;
        let u = quantum_potential(f).values;
        (0..g.len()).map(|i| g[i] * g[i] / (lit::<T>(2.0) * f.mass) + f.potential[i] + u[i]).collect()
    };
    let (a, b) = (spatial(before, &s0), spatial(after, &s1));
    let mask = bulk(before, after, 0.01);
    let half: T = lit(0.5);
    Ok((0..s0.len())
        .filter(|&i| mask[i])
        .fold(T::zero(), |m, i| m.max(((s1[i] - s0[i]) / dt + half * (a[i] + b[i])).abs())))
}

/// Max over the bulk of `|∂ρ/∂t + ∂J/∂x|` in the form conserved by the
/// propagator: `J_{i+½} = Im(ψ̄ᵢ* ψ̄ᵢ₊₁)/(m dx)` with `ψ̄ = (ψ₀ + ψ₁)/2`.
pub fn continuity_residual<T: Real>(before: &WaveField<T>, after: &WaveField<T>) -> Result<T> {
    let dt = check_pair(before, after)?;
    let half = real(lit::<T>(0.5));
    let mid: Vec<C<T>> = before.psi.iter().zip(&after.psi).map(|(&a, &b)| (a + b) * half).collect();
    let n = mid.len();
    let dx = before.grid.dx();
    // flux through the face right of cell i; zero through the walls
    let face = |i: isize| -> T {
        if i < 0 || i as usize + 1 >= n {
            T::zero()
        } else {
            (mid[i as usize].conj() * mid[i as usize + 1]).im / (before.mass * dx)
        }
    };
    let (r0, r1) = (before.density(), after.density());
    let mask = bulk(before, after, 0.01);
    Ok((0..n).filter(|&i| mask[i]).fold(T::zero(), |m, i| {
        let div = (face(i as isize) - face(i as isize - 1)) / dx;
        m.max(((r1[i] - r0[i]) / dt + div).abs())
    }))
}

/// Linear interpolation of grid values at `x`.
fn interpolate<T: Real>(grid: &Grid1D<T>, values: &[T], x: T) -> T {
    let dx = grid.dx();
    let s = (x - grid.x_min) / dx;
    let last = grid.points - 1;
    let i = to_f64(s).floor().max(0.0).min((last - 1) as f64) as usize;
    let frac = s - lit(i as f64);
    values[i] + (values[i + 1] - values[i]) * frac
}

/// Cumulative distribution of `|ψ|²` on the grid (trapezoid rule, normalized).
pub fn grid_cdf<T: Real>(field: &WaveField<T>) -> Vec<T> {
    let rho = field.density();
    let half: T = lit(0.5);
    let mut c = vec![T::zero(); rho.len()];
    for i in 1..rho.len() {
        c[i] = c[i - 1] + half * (rho[i - 1] + rho[i]);
    }
    let total = c[c.len() - 1];
    c.iter_mut().for_each(|v| *v /= total);
    c
}

fn cdf_at<T: Real>(grid: &Grid1D<T>, cdf: &[T], x: T) -> T {
    if x <= grid.x_min {
        T::zero()
    } else if x >= grid.x_max {
        T::one()
    } else {
        interpolate(grid, cdf, x)
    }
}

/// Inverse-CDF draws from `|ψ|²`; draw `k` uses the random stream `(seed, k)`.
pub fn sample_born<T: Real>(field: &WaveField<T>, n: usize, seed: u64) -> Vec<T> {
    let cdf = grid_cdf(field);
    let grid = field.grid;
    let dx = grid.dx();
    (0..n as u64)
        .into_par_iter()
        .map(|k| {
            let u: T = lit(sample_rng(seed, k).random::<f64>());
            let j = cdf.partition_point(|&c| c < u).clamp(1, cdf.len() - 1);
            let (lo, hi) = (cdf[j - 1], cdf[j]);
            let frac = if hi > lo { (u - lo) / (hi - lo) } else { T::zero() };
            grid.x(j - 1) + frac * dx
        })
        .collect()
}

/// Kolmogorov-Smirnov distance between `samples` and the grid law `|ψ|²`.
pub fn ks_distance<T: Real>(samples: &[T], field: &WaveField<T>) -> T {
    let cdf = grid_cdf(field);
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let n: T = lit(sorted.len() as f64);
    sorted.iter().enumerate().fold(T::zero(), |d, (i, &x)| {
        let f = cdf_at(&field.grid, &cdf, x);
        let above = lit::<T>((i + 1) as f64) / n - f;
        let below = f - lit::<T>(i as f64) / n;
        d.max(above).max(below)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrajectoryOptions {
    /// Number of trajectories (from index 0) whose paths are kept.
    pub record: usize,
    /// Keep a snapshot every this many RK4 steps.
    pub record_every: usize,
}

impl Default for TrajectoryOptions {
    fn default() -> Self {
        Self { record: 0, record_every: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryEnsemble<T: Real = f64> {
    pub seed: u64,
    /// How initial positions were drawn.
    pub law: String,
    pub initial: Vec<T>,
    pub positions: Vec<T>,
    /// Times of the recorded snapshots.
    pub times: Vec<T>,
    /// `paths[s][k]`: position of trajectory `k` at `times[s]`.
    pub paths: Vec<Vec<T>>,
}

impl<T: Real> TrajectoryEnsemble<T> {
    pub fn mean_position(&self) -> T {
        self.positions.iter().fold(T::zero(), |a, &x| a + x) / lit(self.positions.len() as f64)
    }

    /// True when the final order of every pair matches the initial order.
    pub fn order_preserved(&self) -> bool {
        let mut idx: Vec<usize> = (0..self.initial.len()).collect();
        idx.sort_by(|&a, &b| self.initial[a].partial_cmp(&self.initial[b]).unwrap_or(std::cmp::Ordering::Equal));
        idx.windows(2).all(|w| self.positions[w[0]] <= self.positions[w[1]])
    }
}

/// Evolves `field` for `steps` Crank-Nicolson steps (must be even) while
/// moving `n_traj` Born-distributed trajectories with RK4 of step `2 dt`.
/// Returns the ensemble and the final field.
pub fn run_trajectories<T: Real>(
    field: &WaveField<T>,
    dt: T,
    steps: usize,
    n_traj: usize,
    seed: u64,
    options: &TrajectoryOptions,
) -> Result<(TrajectoryEnsemble<T>, WaveField<T>)> {
    let initial = sample_born(field, n_traj, seed);
    let (ens, last) = run_from(field, dt, steps, initial, options)?;
    Ok((TrajectoryEnsemble { seed, law: "born-inverse-cdf".into(), ..ens }, last))
}

/// Same as [`run_trajectories`] from given initial positions.
pub fn run_from<T: Real>(
    field: &WaveField<T>,
    dt: T,
    steps: usize,
    initial: Vec<T>,
    options: &TrajectoryOptions,
) -> Result<(TrajectoryEnsemble<T>, WaveField<T>)> {
    if steps % 2 != 0 {
        return Err(Error::InvalidParameter("trajectory runs need an even number of steps".into()));
    }
    if !(dt > T::zero()) {
        return Err(Error::InvalidParameter("dt must be positive".into()));
    }
    let grid = field.grid;
    if let Some((index, &x)) = initial.iter().enumerate().find(|(_, &x)| !grid.contains(x)) {
        return Err(Error::TrajectoryEscaped { index, position: to_f64(x) });
    }
    let cn = CrankNicolson::new(field, dt);
    let h = dt + dt;
    let cap = grid.dx() / h;
    let half: T = lit(0.5);
    let sixth: T = lit(1.0 / 6.0);
    let keep = options.record.min(initial.len());
    let every = options.record_every.max(1);

    let mut psi = field.clone();
    let mut q = initial.clone();
    let mut times = vec![psi.time];
    let mut paths = vec![q[..keep].to_vec()];
    let mut v0 = bohm_velocity(&psi).values;
    for macro_step in 0..steps / 2 {
        cn.advance(&mut psi, 1)?;
        let v1 = bohm_velocity(&psi).values;
        cn.advance(&mut psi, 1)?;
        let v2 = bohm_velocity(&psi).values;
        let escaped = q
            .par_iter_mut()
            .enumerate()
            .map(|(k, x)| {
                let vel = |v: &[T], at: T| -> Option<T> {
                    grid.contains(at).then(|| interpolate(&grid, v, at).max(-cap).min(cap))
                };
                let step = || -> Option<T> {
                    let k1 = vel(&v0, *x)?;
                    let k2 = vel(&v1, *x + half * h * k1)?;
                    let k3 = vel(&v1, *x + half * h * k2)?;
                    let k4 = vel(&v2, *x + h * k3)?;
                    Some(*x + h * sixth * (k1 + (k2 + k3) * lit(2.0) + k4))
                };
                match step() {
                    Some(next) if grid.contains(next) => {
                        *x = next;
                        None
                    }
                    _ => Some((k, to_f64(*x))),
                }
            })
            .find_first(|e| e.is_some())
            .flatten();
        if let Some((index, position)) = escaped {
            return Err(Error::TrajectoryEscaped { index, position });
        }
        v0 = v2;
        if keep > 0 && (macro_step + 1) % every == 0 {
            times.push(psi.time);
            paths.push(q[..keep].to_vec());
        }
    }
    let ens = TrajectoryEnsemble { seed: 0, law: "given".into(), initial, positions: q, times, paths };
    Ok((ens, psi))
}

/// Plane wave `e^{i(kx − k²t/2m)}` normalized on the grid, free potential.
pub fn plane_wave<T: Real>(grid: Grid1D<T>, k: T, mass: T, t: T) -> Result<WaveField<T>> {
    let omega = k * k / (lit::<T>(2.0) * mass);
    let psi = grid.xs().into_iter().map(|x| crate::scalar::phase(k * x - omega * t)).collect();
    let zeros = vec![T::zero(); grid.points];
    Ok(WaveField::normalized(grid, psi, mass, zeros)?.at_time(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_grid() -> Grid1D<f64> {
        Grid1D::<f64>::new(-40.0, 40.0, 2048).unwrap()
    }

    fn free_packet(k0: f64) -> WaveField<f64> {
        WaveField::gaussian(free_grid(), 0.0, 1.0, k0, 1.0, vec![0.0; 2048]).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(Grid1D::<f64>::new(0.0, 1.0, 63).is_err());
        assert!(Grid1D::<f64>::new(1.0, 1.0, 64).is_err());
    }

    #[test]
    fn zero_dt_is_identity() {
        let f = free_packet(0.5);
        assert_eq!(schrodinger_step(&f, 0.0, 10).unwrap(), f);
    }

    #[test]
    fn free_packet_spreads_by_closed_form() {
        let f = free_packet(0.0);
        let t = 2.0 * 8f64.sqrt();
        let steps = 1132;
        let g = schrodinger_step(&f, t / steps as f64, steps).unwrap();
        let want = (1.0 + (t / 2.0).powi(2)).sqrt();
        assert!((g.width() - want).abs() / want < 5e-3, "{} vs {want}", g.width());
        assert!((g.norm() - 1.0).abs() < 1e-8);
        assert!((g.energy() - f.energy()).abs() / f.energy() < 1e-6);
    }

    #[test]
    fn norm_drift_per_thousand_steps() {
        let f = free_packet(1.0);
        let g = schrodinger_step(&f, 0.005, 1000).unwrap();
        assert!((g.norm() - f.norm()).abs() < 1e-8);
    }

    #[test]
    fn walls_are_detected() {
        let grid = Grid1D::<f64>::new(-5.0, 5.0, 128).unwrap();
        let f = WaveField::gaussian(grid, 0.0, 1.0, 0.0, 1.0, vec![0.0; 128]).unwrap();
        assert!(matches!(schrodinger_step(&f, 0.01, 1000), Err(Error::BoundaryLeak { .. })));
    }

    #[test]
    fn harmonic_ground_state_is_stationary() {
        let grid = Grid1D::<f64>::new(-10.0, 10.0, 512).unwrap();
        let v = harmonic_potential(&grid, 1.0, 1.0);
        let g = discrete_ground_state(grid, 1.0, v, 0.45).unwrap();
        let later = schrodinger_step(&g, 0.01, 500).unwrap();
        let dev = g.psi().iter().zip(later.psi()).fold(0.0f64, |m, (a, b)| m.max((a.norm() - b.norm()).abs()));
        assert!(dev < 1e-6, "{dev}");
        assert!(bohm_velocity(&later).values.iter().all(|v| v.abs() < 1e-6));
        let mid = schrodinger_step(&g, 0.005, 1).unwrap();
        let r = hamilton_jacobi_residual(&g, &mid).unwrap();
        assert!(r < 1e-6, "{r}");
    }

    #[test]
    fn velocity_of_simple_states() {
        let rest = free_packet(0.0);
        assert!(bohm_velocity(&rest).values.iter().all(|v| v.abs() < 1e-12));
        let plane = plane_wave(Grid1D::<f64>::new(0.0, 10.0, 256).unwrap(), 1.3, 2.0, 0.0).unwrap();
        let v = bohm_velocity(&plane);
        for i in 2..254 {
            assert!((v.values[i] - 0.65).abs() < 1e-6);
        }
        let boosted = free_packet(0.8);
        let v = bohm_velocity(&boosted);
        assert!((v.values[1023] - 0.8).abs() < 1e-6 && (v.values[1024] - 0.8).abs() < 1e-6);
    }

    #[test]
    fn velocity_matches_phase_gradient() {
        let g = schrodinger_step(&free_packet(0.7), 0.005, 400).unwrap();
        let v = bohm_velocity(&g);
        let s = phase_gradient(&g);
        let rho = g.density();
        let peak = rho.iter().cloned().fold(0.0, f64::max);
        for (i, &r) in rho.iter().enumerate() {
            if r > 1e-3 * peak {
                let want = s.values[i] / g.mass();
                assert!((v.values[i] - want).abs() <= 1e-4 * want.abs().max(1.0), "{i}");
            }
        }
    }

    #[test]
    fn quantum_potential_second_order() {
        let dev = |points: usize| {
            let grid = Grid1D::<f64>::new(-20.0, 20.0, points).unwrap();
            let f = WaveField::gaussian(grid, 0.0, 1.0, 0.0, 1.0, vec![0.0; points]).unwrap();
            let u = quantum_potential(&f);
            grid.xs()
                .iter()
                .enumerate()
                .filter(|(_, &x)| x.abs() <= 4.0)
                .map(|(i, &x)| (u.values[i] - gaussian_quantum_potential(x, 0.0, 1.0, 1.0)).abs())
                .fold(0.0, f64::max)
        };
        let (coarse, fine) = (dev(401), dev(801));
        assert!(coarse / fine >= 3.5, "{coarse} {fine}");
        let plane = plane_wave(Grid1D::<f64>::new(0.0, 10.0, 256).unwrap(), 1.0, 1.0, 0.0).unwrap();
        let u = quantum_potential(&plane);
        assert!(u.values[1..255].iter().all(|x| x.abs() < 1e-9));
    }

    #[test]
    fn hamilton_jacobi_residuals() {
        let grid = Grid1D::<f64>::new(0.0, 10.0, 256).unwrap();
        let a = plane_wave(grid, 1.1, 1.0, 0.0).unwrap();
        let b = plane_wave(grid, 1.1, 1.0, 0.01).unwrap();
        // the walls make the boundary cells of a plane wave special
        let r = hamilton_jacobi_residual(&a, &b).unwrap();
        assert!(r < 1e-8 || interior_hj(&a, &b) < 1e-8, "{r}");
        let f0 = schrodinger_step(&free_packet(0.0), 0.005, 200).unwrap();
        let f1 = schrodinger_step(&f0, 0.005, 1).unwrap();
        assert!(hamilton_jacobi_residual(&f0, &f1).unwrap() < 1e-3);
    }

    fn interior_hj(a: &WaveField<f64>, b: &WaveField<f64>) -> f64 {
        let dt = b.time() - a.time();
        let (s0, s1) = (unwrapped_phase(a), unwrapped_phase_from(b, a.peak_index()));
        let g = phase_gradient_of(a, &s0).values;
        let shift = std::f64::consts::TAU * ((s0[a.peak_index()] - s1[a.peak_index()]) / std::f64::consts::TAU).round();
        (3..s0.len() - 3).map(|i| ((s1[i] + shift - s0[i]) / dt + g[i] * g[i] / 2.0).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn continuity_in_bulk() {
        let f0 = schrodinger_step(&free_packet(0.6), 0.005, 100).unwrap();
        let f1 = schrodinger_step(&f0, 0.005, 1).unwrap();
        let r = continuity_residual(&f0, &f1).unwrap();
        assert!(r < 1e-5, "{r}");
    }

    #[test]
    fn stationary_trajectories_stay_put() {
        let grid = Grid1D::<f64>::new(-10.0, 10.0, 512).unwrap();
        let v = harmonic_potential(&grid, 1.0, 1.0);
        let g = discrete_ground_state(grid, 1.0, v, 0.45).unwrap();
        let (ens, _) = run_trajectories(&g, 0.01, 100, 200, 5, &TrajectoryOptions::default()).unwrap();
        let moved = ens.initial.iter().zip(&ens.positions).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(moved < 1e-6, "{moved}");
    }

    #[test]
    fn trajectories_do_not_cross_and_stay_born_distributed() {
        let f = free_packet(0.3);
        let (ens, last) =
            run_trajectories(&f, 0.01, 200, 2000, 11, &TrajectoryOptions { record: 3, record_every: 10 }).unwrap();
        assert!(ens.order_preserved());
        assert!(ks_distance(&ens.positions, &last) < 0.05);
        assert!((ens.mean_position() - last.mean_position()).abs() < 0.1);
        assert_eq!(ens.paths.len(), 11);
        let again =
            run_trajectories(&f, 0.01, 200, 2000, 11, &TrajectoryOptions { record: 3, record_every: 10 }).unwrap();
        assert_eq!(again.0, ens);
    }

    #[test]
    fn odd_steps_rejected() {
        assert!(run_trajectories(&free_packet(0.0), 0.01, 3, 10, 0, &TrajectoryOptions::default()).is_err());
    }
}
