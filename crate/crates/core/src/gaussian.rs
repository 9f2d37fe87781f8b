//! Entanglement entropy of Gaussian ground states of coupled oscillators,
//! `H = ½ Σ π_A² + ½ Σ φ_A V_AB φ_B`.
//!
//! Two closed-form routes are provided: the Λ-matrix formula built from
//! blocks of `W = V^{1/2}` and `W⁻¹`, and the symplectic spectrum of the
//! reduced covariance matrix. A truncated number-basis diagonalization serves
//! as an independent oracle for up to three oscillators.

use std::collections::HashMap;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{real_symmetric_eigen, spd_sqrt};
use crate::scalar::{eigen_floor, lit, to_f64, Real};

/// Coupling matrix `V` with its positive square root `W` and inverse `W⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianModel<T: Real = f64> {
    v: DMatrix<T>,
    w: DMatrix<T>,
    w_inv: DMatrix<T>,
}

impl<T: Real> GaussianModel<T> {
    pub fn v(&self) -> &DMatrix<T> {
        &self.v
    }

    pub fn w(&self) -> &DMatrix<T> {
        &self.w
    }

    pub fn w_inv(&self) -> &DMatrix<T> {
        &self.w_inv
    }

    pub fn size(&self) -> usize {
        self.v.nrows()
    }

    /// Same model with oscillators relabelled: new index `k` is old `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.size();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter("not a permutation".into()));
        }
        ground_state_w(&DMatrix::from_fn(n, n, |r, c| self.v[(perm[r], perm[c])]))
    }
}

/// Builds `W = V^{1/2}` (positive branch) from a symmetric positive-definite `V`.
pub fn ground_state_w<T: Real>(v: &DMatrix<T>) -> Result<GaussianModel<T>> {
    let n = v.nrows();
    if n == 0 || v.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n.max(1), found: v.ncols() });
    }
    let scale = v.iter().fold(T::one(), |acc, x| acc.max(x.abs()));
    let asym = (v - v.transpose()).iter().fold(T::zero(), |acc, x| acc.max(x.abs()));
    if asym > lit::<T>(1e-12) * scale {
        return Err(Error::InvalidParameter(format!("V is not symmetric (deviation {:e})", to_f64(asym))));
    }
    let (values, vectors) = real_symmetric_eigen(v);
    if values[0] <= T::zero() {
        return Err(Error::NotPositiveDefinite { eigenvalue: to_f64(values[0]) });
    }
    let w = spd_sqrt(&values, &vectors);
    let inv: Vec<T> = values.iter().map(|&x| T::one() / x).collect();
    let w_inv = spd_sqrt(&inv, &vectors);
    Ok(GaussianModel { v: v.clone(), w, w_inv })
}

/// Nearest-neighbour chain `V = (m² + 2)δ_ij − δ_{i,j±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Sites `0` and `N−1` are coupled (a ring).
    Periodic,
    /// Free ends.
    Open,
}

pub fn chain_couplings<T: Real>(mass: T, sites: usize, boundary: Boundary) -> DMatrix<T> {
    let mut v = DMatrix::from_diagonal_element(sites, sites, mass * mass + lit(2.0));
    for i in 0..sites.saturating_sub(1) {
        v[(i, i + 1)] = -T::one();
        v[(i + 1, i)] = -T::one();
    }
    if boundary == Boundary::Periodic && sites > 2 {
        v[(0, sites - 1)] = -T::one();
        v[(sites - 1, 0)] = -T::one();
    }
    v
}

/// Indices of the inaccessible (traced) oscillators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TracedRegion {
    traced: Vec<usize>,
    size: usize,
}

impl TracedRegion {
    /// `traced` must be a non-empty proper subset of `0..size`.
    pub fn new(traced: Vec<usize>, size: usize) -> Result<Self> {
        let mut sorted = traced.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != traced.len() {
            return Err(Error::InvalidParameter("repeated oscillator index".into()));
        }
        if sorted.is_empty() || sorted.len() >= size {
            return Err(Error::InvalidParameter("traced region must be a non-empty proper subset".into()));
        }
        if let Some(&bad) = sorted.iter().find(|&&i| i >= size) {
            return Err(Error::InvalidParameter(format!("oscillator index {bad} out of range")));
        }
        Ok(Self { traced: sorted, size })
    }

    pub fn traced(&self) -> &[usize] {
        &self.traced
    }

    pub fn kept(&self) -> Vec<usize> {
        (0..self.size).filter(|i| self.traced.binary_search(i).is_err()).collect()
    }

    pub fn complement(&self) -> Self {
        Self { traced: self.kept(), size: self.size }
    }
}

fn block<T: Real>(m: &DMatrix<T>, rows: &[usize], cols: &[usize]) -> DMatrix<T> {
    DMatrix::from_fn(rows.len(), cols.len(), |r, c| m[(rows[r], cols[c])])
}

/// `log(½√λ) + √(1+λ) log(1/√λ + √(1 + 1/λ))`; zero for `λ` below the floor.
pub fn lambda_entropy_term<T: Real>(lambda: T) -> T {
    if lambda < eigen_floor::<T>() {
        return T::zero();
    }
    let s = lambda.sqrt();
    let half: T = lit(0.5);
    (half * s).ln() + (T::one() + lambda).sqrt() * (T::one() / s + (T::one() + T::one() / lambda).sqrt()).ln()
}

/// `(ν+½) ln(ν+½) − (ν−½) ln(ν−½)` for a symplectic eigenvalue `ν ≥ ½`.
pub fn symplectic_entropy_term<T: Real>(nu: T) -> T {
    let half: T = lit(0.5);
    let hi = nu + half;
    let lo = nu - half;
    let lo_term = if lo > eigen_floor::<T>() { lo * lo.ln() } else { T::zero() };
    hi * hi.ln() - lo_term
}

/// Both closed-form evaluations with the intermediate spectra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BombelliReport {
    /// Eigenvalues of `Λ_ij = −Σ_α (W⁻¹)_{iα} W_{αj}` over kept `i, j`.
    pub lambdas: Vec<f64>,
    /// Largest imaginary part met while diagonalizing the non-symmetric `Λ`.
    pub lambda_imaginary: f64,
    /// Entropy from the `λ` formula.
    pub literal: f64,
    /// Symplectic eigenvalues of the reduced covariance matrix.
    pub symplectic_values: Vec<f64>,
    /// Entropy from the symplectic spectrum.
    pub symplectic: f64,
}

impl BombelliReport {
    pub fn discrepancy(&self) -> f64 {
        (self.literal - self.symplectic).abs()
    }
}

/// Spectrum of `Λ` as literally defined (a non-symmetric product of blocks).
fn literal_lambdas<T: Real>(model: &GaussianModel<T>, region: &TracedRegion) -> Result<(Vec<T>, T)> {
    let kept = region.kept();
    let traced = region.traced();
    let lambda = -(block(&model.w_inv, &kept, traced) * block(&model.w, traced, &kept));
    let eig = lambda.complex_eigenvalues();
    let mut imag = T::zero();
    let mut values: Vec<T> = eig
        .iter()
        .map(|z| {
            imag = imag.max(z.im.abs());
            z.re
        })
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let scale = values.iter().fold(T::one(), |acc, x| acc.max(x.abs()));
    let tol = lit::<T>(T::VALIDATION_TOL) * scale;
    if values.first().is_some_and(|&v| v < -tol) {
        return Err(Error::BadSpectrum { spectrum: values.iter().map(|&v| to_f64(v)).collect() });
    }
    Ok((values.into_iter().map(|v| v.max(T::zero())).collect(), imag))
}

/// Symplectic eigenvalues `ν` of the kept block: `ν² = eig(X P)` with
/// `X = ½(W⁻¹)_KK`, `P = ½W_KK`.
fn symplectic_values<T: Real>(model: &GaussianModel<T>, kept: &[usize]) -> Vec<T> {
    let half: T = lit(0.5);
    let x = block(&model.w_inv, kept, kept) * half;
    let p = block(&model.w, kept, kept) * half;
    let (pv, pvec) = real_symmetric_eigen(&p);
    let sp = spd_sqrt(&pv, &pvec);
    let (nu2, _) = real_symmetric_eigen(&(&sp * x * &sp));
    let quarter: T = lit(0.25);
    nu2.into_iter().map(|v| v.max(quarter).sqrt()).collect()
}

/// Entanglement entropy (nats) between the traced region and its complement,
/// from the `λ` formula.
pub fn bombelli_entropy<T: Real>(model: &GaussianModel<T>, region: &TracedRegion) -> Result<T> {
    check_region(model, region)?;
    let (lambdas, _) = literal_lambdas(model, region)?;
    Ok(lambdas.into_iter().fold(T::zero(), |acc, l| acc + lambda_entropy_term(l)))
}

/// Same entropy from the symplectic spectrum; uses the smaller side of the cut.
pub fn symplectic_entropy<T: Real>(model: &GaussianModel<T>, region: &TracedRegion) -> Result<T> {
    check_region(model, region)?;
    let kept = region.kept();
    let side = if kept.len() <= region.traced().len() { kept } else { region.traced().to_vec() };
    Ok(symplectic_values(model, &side).into_iter().fold(T::zero(), |acc, nu| acc + symplectic_entropy_term(nu)))
}

pub fn bombelli_report<T: Real>(model: &GaussianModel<T>, region: &TracedRegion) -> Result<BombelliReport> {
    check_region(model, region)?;
    let (lambdas, imag) = literal_lambdas(model, region)?;
    let literal = lambdas.iter().fold(T::zero(), |acc, &l| acc + lambda_entropy_term(l));
    let nus = symplectic_values(model, &region.kept());
    let symplectic = nus.iter().fold(T::zero(), |acc, &nu| acc + symplectic_entropy_term(nu));
    Ok(BombelliReport {
        lambdas: lambdas.into_iter().map(to_f64).collect(),
        lambda_imaginary: to_f64(imag),
        literal: to_f64(literal),
        symplectic_values: nus.into_iter().map(to_f64).collect(),
        symplectic: to_f64(symplectic),
    })
}

fn check_region<T: Real>(model: &GaussianModel<T>, region: &TracedRegion) -> Result<()> {
    if region.size != model.size() {
        return Err(Error::DimensionMismatch { expected: model.size(), found: region.size });
    }
    Ok(())
}

/// Truncation and stopping rule for [`fock_oracle_entropy`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockOptions {
    /// Initial cap on the total occupation number.
    pub n_max: usize,
    /// Give up beyond this occupation cap.
    pub cap: usize,
    /// Increment of `n_max` between convergence checks.
    pub step: usize,
    /// Stop once one increment changes the entropy by less than this.
    pub tolerance: f64,
}

impl Default for FockOptions {
    fn default() -> Self {
        Self { n_max: 20, cap: 120, step: 10, tolerance: 1e-8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockEntropy {
    pub entropy: f64,
    /// Occupation cap of the returned value.
    pub n_max: usize,
    /// Change from the previous cap.
    pub last_change: f64,
    pub basis_size: usize,
}

/// Entropy of the same bipartition from brute-force diagonalization of `H` in
/// a number basis truncated at total occupation `n_max`.
///
/// Each mode uses the frequency `1/(W⁻¹)_AA` that matches its exact marginal
/// width. The ground state is found by Lanczos iteration. The computation is
/// done in `f64` whatever the model's scalar type.
pub fn fock_oracle_entropy<T: Real>(
    model: &GaussianModel<T>,
    region: &TracedRegion,
    options: &FockOptions,
) -> Result<FockEntropy> {
    check_region(model, region)?;
    let n = model.size();
    if n > 3 {
        return Err(Error::InvalidParameter(format!("number-basis oracle supports at most 3 oscillators, got {n}")));
    }
    if options.n_max < 20 {
        return Err(Error::InvalidParameter("n_max must be at least 20".into()));
    }
    let v = model.v.map(to_f64);
    let omega: Vec<f64> = (0..n).map(|a| 1.0 / to_f64(model.w_inv[(a, a)])).collect();
    let kept = region.kept();
    let mut previous = truncated_entropy(&v, &omega, &kept, options.n_max)?;
    let mut level = options.n_max;
    while level + options.step <= options.cap {
        level += options.step;
        let next = truncated_entropy(&v, &omega, &kept, level)?;
        let change = (next.0 - previous.0).abs();
        previous = next;
        if change < options.tolerance {
            return Ok(FockEntropy { entropy: previous.0, n_max: level, last_change: change, basis_size: previous.1 });
        }
    }
    Err(Error::NotConverged(format!("number-basis entropy still changing at occupation cap {}", options.cap)))
}

/// Occupation tuples with total at most `n_max`.
fn fock_basis(modes: usize, n_max: usize) -> Vec<[u16; 3]> {
    let mut out = Vec::new();
    let mut cur = [0u16; 3];
    fn rec(k: usize, modes: usize, left: usize, cur: &mut [u16; 3], out: &mut Vec<[u16; 3]>) {
        if k == modes {
            out.push(*cur);
            return;
        }
        for q in 0..=left {
            cur[k] = q as u16;
            rec(k + 1, modes, left - q, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, modes, n_max, &mut cur, &mut out);
    out
}

/// Sparse symmetric matrix in compressed rows.
struct Csr {
    starts: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl Csr {
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.par_iter_mut().enumerate().for_each(|(r, out)| {
            let mut acc = 0.0;
            for k in self.starts[r]..self.starts[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *out = acc;
        });
    }
}

fn fock_hamiltonian(v: &DMatrix<f64>, omega: &[f64], basis: &[[u16; 3]]) -> Csr {
    let n = omega.len();
    let index: HashMap<[u16; 3], usize> = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    let mut starts = Vec::with_capacity(basis.len() + 1);
    let mut cols = Vec::new();
    let mut vals = Vec::new();
    starts.push(0);
    let mut row: Vec<(usize, f64)> = Vec::new();
    for state in basis {
        row.clear();
        let mut diag = 0.0;
        for a in 0..n {
            let (w, q) = (omega[a], state[a] as f64);
            diag += (2.0 * q + 1.0) * (w / 4.0 + v[(a, a)] / (4.0 * w));
            // a² and a†² carry (V_AA/ω − ω)/4
            let c = (v[(a, a)] / w - w) / 4.0;
            if state[a] >= 2 {
                let mut t = *state;
                t[a] -= 2;
                row.push((index[&t], c * (q * (q - 1.0)).sqrt()));
            }
            let mut t = *state;
            t[a] += 2;
            if let Some(&j) = index.get(&t) {
                row.push((j, c * ((q + 1.0) * (q + 2.0)).sqrt()));
            }
        }
        row.push((index[state], diag));
        for a in 0..n {
            for b in a + 1..n {
                let c = v[(a, b)] / (2.0 * (omega[a] * omega[b]).sqrt());
                if c == 0.0 {
                    continue;
                }
                // (a_A + a_A†)(a_B + a_B†)
                for da in [-1i32, 1] {
                    for db in [-1i32, 1] {
                        let (qa, qb) = (state[a] as i32 + da, state[b] as i32 + db);
                        if qa < 0 || qb < 0 {
                            continue;
                        }
                        let mut t = *state;
                        t[a] = qa as u16;
                        t[b] = qb as u16;
                        if let Some(&j) = index.get(&t) {
                            let fa = if da < 0 { state[a] as f64 } else { state[a] as f64 + 1.0 };
                            let fb = if db < 0 { state[b] as f64 } else { state[b] as f64 + 1.0 };
                            row.push((j, c * (fa * fb).sqrt()));
                        }
                    }
                }
            }
        }
        row.sort_by_key(|e| e.0);
        for &(j, x) in row.iter() {
            if cols.len() > *starts.last().unwrap() && *cols.last().unwrap() == j {
                *vals.last_mut().unwrap() += x;
            } else {
                cols.push(j);
                vals.push(x);
            }
        }
        starts.push(cols.len());
    }
    Csr { starts, cols, vals }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lowest eigenpair of a symmetric sparse operator by restarted Lanczos with
/// full reorthogonalization.
fn lanczos_ground(h: &Csr, start: Vec<f64>, tol: f64) -> Result<(f64, Vec<f64>)> {
    let n = start.len();
    let krylov = n.min(240);
    let mut start = start;
    let mut w = vec![0.0; n];
    for _restart in 0..40 {
        let norm = dot(&start, &start).sqrt();
        let mut basis: Vec<Vec<f64>> = vec![start.iter().map(|x| x / norm).collect()];
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        for j in 0..krylov {
            h.apply(&basis[j], &mut w);
            let a = dot(&w, &basis[j]);
            alpha.push(a);
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(&w, q);
                    w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
                }
            }
            let b = dot(&w, &w).sqrt();
            if b < 1e-14 || j + 1 == krylov {
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|x| x / b).collect());
        }
        let k = alpha.len();
        let t = DMatrix::from_fn(k, k, |r, c| {
            if r == c {
                alpha[r]
            } else if r == c + 1 {
                beta[c]
            } else if c == r + 1 {
                beta[r]
            } else {
                0.0
            }
        });
        let (theta, y) = real_symmetric_eigen(&t);
        let mut ritz = vec![0.0; n];
        for (i, q) in basis.iter().enumerate().take(k) {
            let c = y[(i, 0)];
            ritz.iter_mut().zip(q).for_each(|(x, v)| *x += c * v);
        }
        let rn = dot(&ritz, &ritz).sqrt();
        ritz.iter_mut().for_each(|x| *x /= rn);
        h.apply(&ritz, &mut w);
        let e = theta[0];
        let residual = w.iter().zip(&ritz).map(|(a, b)| (a - e * b).powi(2)).sum::<f64>().sqrt();
        if residual < tol * e.abs().max(1.0) {
            return Ok((e, ritz));
        }
        start = ritz;
    }
    Err(Error::NotConverged("Lanczos ground state".into()))
}

/// Entropy and basis size at one truncation level.
fn truncated_entropy(v: &DMatrix<f64>, omega: &[f64], kept: &[usize], n_max: usize) -> Result<(f64, usize)> {
    let modes = omega.len();
    let basis = fock_basis(modes, n_max);
    let h = fock_hamiltonian(v, omega, &basis);
    let mut start = vec![0.0; basis.len()];
    start[0] = 1.0;
    // A small spread keeps the start vector from being orthogonal to the ground state.
    for (i, b) in basis.iter().enumerate() {
        if b.iter().take(modes).all(|&q| q % 2 == 0) {
            start[i] += 1e-3 / (1.0 + i as f64);
        }
    }
    let (_, psi) = lanczos_ground(&h, start, 1e-11)?;
    let traced: Vec<usize> = (0..modes).filter(|a| !kept.contains(a)).collect();
    let radix = n_max + 1;
    let flat = |b: &[u16; 3], which: &[usize]| which.iter().fold(0usize, |acc, &a| acc * radix + b[a] as usize);
    let rows = radix.pow(kept.len() as u32);
    let cols = radix.pow(traced.len() as u32);
    let mut m = DMatrix::<f64>::zeros(rows, cols);
    for (b, &c) in basis.iter().zip(&psi) {
        m[(flat(b, kept), flat(b, &traced))] = c;
    }
    let gram = if rows <= cols { &m * m.transpose() } else { m.transpose() * &m };
    let (p, _) = real_symmetric_eigen(&gram);
    let s = p.iter().filter(|&&x| x > 1e-12).map(|&x| -x * x.ln()).sum();
    Ok((s, basis.len()))
}

/// One point of a chain entropy curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainPoint {
    pub length: usize,
    pub entropy: f64,
}

/// Entropy of contiguous blocks `0..ℓ` of a nearest-neighbour chain.
///
/// Region sizes are evaluated in parallel; the output order follows
/// `region_sizes`.
pub fn chain_scan<T: Real>(
    mass: T,
    sites: usize,
    region_sizes: &[usize],
    boundary: Boundary,
) -> Result<Vec<ChainPoint>> {
    if mass < T::zero() {
        return Err(Error::InvalidParameter("mass must be non-negative".into()));
    }
    if let Some(&bad) = region_sizes.iter().find(|&&l| l >= sites) {
        return Err(Error::InvalidParameter(format!("region size {bad} must be below {sites} sites")));
    }
    let model = ground_state_w(&chain_couplings(mass, sites, boundary))?;
    region_sizes
        .par_iter()
        .map(|&l| {
            let entropy = if l == 0 { 0.0 } else { to_f64(block_entropy(&model, &(0..l).collect::<Vec<_>>())?) };
            Ok(ChainPoint { length: l, entropy })
        })
        .collect()
}

/// Entropy of an arbitrary set of sites against the rest, via the `λ`
/// formula restricted to those sites.
pub fn block_entropy<T: Real>(model: &GaussianModel<T>, sites: &[usize]) -> Result<T> {
    let rest: Vec<usize> = (0..model.size()).filter(|i| !sites.contains(i)).collect();
    if sites.is_empty() || rest.is_empty() {
        return Ok(T::zero());
    }
    bombelli_entropy(model, &TracedRegion::new(rest, model.size())?)
}

/// Least-squares slope of `S` against `ln ℓ` over `lo ≤ ℓ ≤ hi`.
pub fn log_slope(curve: &[ChainPoint], lo: usize, hi: usize) -> Result<f64> {
    let pts: Vec<(f64, f64)> = curve
        .iter()
        .filter(|p| p.length >= lo && p.length <= hi && p.length > 0)
        .map(|p| ((p.length as f64).ln(), p.entropy))
        .collect();
    if pts.len() < 2 {
        return Err(Error::InvalidParameter("need at least two points to fit".into()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// `V = [[k, ε], [ε, k]]`.
pub fn two_oscillators<T: Real>(k: T, eps: T) -> DMatrix<T> {
    DMatrix::from_row_slice(2, 2, &[k, eps, eps, k])
}

/// Three oscillators coupled pairwise with strength `ε`; positive definite for `ε < k`.
pub fn three_oscillator_ring<T: Real>(k: T, eps: T) -> DMatrix<T> {
    DMatrix::from_fn(3, 3, |r, c| if r == c { k } else { eps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;
    use proptest::prelude::*;

    #[test]
    fn w_of_identity_and_diagonal() {
        let m = ground_state_w(&DMatrix::<f64>::identity(3, 3)).unwrap();
        assert!((m.w() - DMatrix::identity(3, 3)).abs().max() < 1e-15);
        let m = ground_state_w(&DMatrix::from_diagonal(&DVector::from_vec(vec![4.0f64, 9.0]))).unwrap();
        assert!((m.w()[(0, 0)] - 2.0).abs() < 1e-14 && (m.w()[(1, 1)] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn w_rejects_indefinite() {
        let v = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(matches!(ground_state_w(&v), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn block_diagonal_has_no_entropy() {
        let v = DMatrix::from_row_slice(3, 3, &[2.0f64, 0.3, 0.0, 0.3, 1.5, 0.0, 0.0, 0.0, 1.0]);
        let m = ground_state_w(&v).unwrap();
        let r = TracedRegion::new(vec![2], 3).unwrap();
        assert!(bombelli_entropy(&m, &r).unwrap().abs() < 1e-12);
    }

    #[test]
    fn region_validation() {
        assert!(TracedRegion::new(vec![], 3).is_err());
        assert!(TracedRegion::new(vec![0, 1, 2], 3).is_err());
        assert!(TracedRegion::new(vec![0, 0], 3).is_err());
        assert!(TracedRegion::new(vec![3], 3).is_err());
    }

    #[test]
    fn literal_and_symplectic_routes_agree() {
        let m = ground_state_w(&two_oscillators(1.0, 0.5)).unwrap();
        let r = bombelli_report(&m, &TracedRegion::new(vec![1], 2).unwrap()).unwrap();
        assert!(r.discrepancy() < 1e-12, "{r:?}");
        assert!(r.lambda_imaginary < 1e-12);
    }

    #[test]
    fn two_oscillator_against_number_basis() {
        let m = ground_state_w(&two_oscillators(1.0, 0.5)).unwrap();
        let r = TracedRegion::new(vec![1], 2).unwrap();
        let exact = bombelli_entropy(&m, &r).unwrap();
        let fock = fock_oracle_entropy(&m, &r, &FockOptions::default()).unwrap();
        assert!((exact - fock.entropy).abs() < 1e-6, "{exact} vs {fock:?}");
    }

    #[test]
    fn decoupled_oracle_is_zero() {
        let m = ground_state_w(&two_oscillators(1.0, 0.0)).unwrap();
        let r = TracedRegion::new(vec![0], 2).unwrap();
        let fock = fock_oracle_entropy(&m, &r, &FockOptions::default()).unwrap();
        assert!(fock.entropy.abs() < 1e-10);
    }

    #[test]
    fn oracle_entropy_grows_with_coupling() {
        let r = TracedRegion::new(vec![1], 2).unwrap();
        let mut last = -1.0;
        for eps in [0.0, 0.2, 0.4, 0.6] {
            let m = ground_state_w(&two_oscillators(1.0, eps)).unwrap();
            let s = fock_oracle_entropy(&m, &r, &FockOptions::default()).unwrap().entropy;
            assert!(s > last);
            last = s;
        }
    }

    #[test]
    fn massive_chain_saturates() {
        let c = chain_scan(2.0, 200, &[0, 20, 40], Boundary::Periodic).unwrap();
        assert_eq!(c[0].entropy, 0.0);
        assert!((c[1].entropy - c[2].entropy).abs() / c[2].entropy < 0.01);
    }

    #[test]
    fn region_size_bound() {
        assert!(chain_scan(1.0, 10, &[10], Boundary::Open).is_err());
    }

    fn model_and_region() -> impl Strategy<Value = (GaussianModel<f64>, TracedRegion)> {
        (3usize..7, proptest::collection::vec(-0.3f64..0.3, 49), any::<u64>()).prop_map(|(n, xs, pick)| {
            let mut v = DMatrix::from_fn(n, n, |r, c| xs[r * 7 + c] + xs[c * 7 + r]);
            for i in 0..n {
                v[(i, i)] += 3.0;
            }
            let traced: Vec<usize> = (0..n).filter(|i| (pick >> i) & 1 == 1).collect();
            let traced = if traced.is_empty() || traced.len() == n { vec![0] } else { traced };
            (ground_state_w(&v).unwrap(), TracedRegion::new(traced, n).unwrap())
        })
    }

    proptest! {
        #[test]
        fn w_squares_to_v((m, _) in model_and_region()) {
            prop_assert!((m.w() * m.w() - m.v()).abs().max() < 1e-9);
        }

        #[test]
        fn complement_symmetry((m, r) in model_and_region()) {
            let a = bombelli_entropy(&m, &r).unwrap();
            let b = bombelli_entropy(&m, &r.complement()).unwrap();
            prop_assert!((a - b).abs() < 1e-9);
            prop_assert!(a >= 0.0);
        }

        #[test]
        fn permutation_invariance((m, r) in model_and_region(), rot in 0usize..7) {
            let n = m.size();
            let perm: Vec<usize> = (0..n).map(|k| (k + rot) % n).collect();
            let p = m.permuted(&perm).unwrap();
            // old index perm[k] is now k
            let traced: Vec<usize> = (0..n).filter(|k| r.traced().contains(&perm[*k])).collect();
            let rp = TracedRegion::new(traced, n).unwrap();
            prop_assert!((bombelli_entropy(&m, &r).unwrap() - bombelli_entropy(&p, &rp).unwrap()).abs() < 1e-12);
        }

        #[test]
        fn routes_agree((m, r) in model_and_region()) {
            prop_assert!(bombelli_report(&m, &r).unwrap().discrepancy() < 1e-9);
        }
    }
}
