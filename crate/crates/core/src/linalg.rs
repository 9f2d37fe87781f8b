//! Dense linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::scalar::{cabs, cexp, real, Real, C};

pub type CMatrix<T> = DMatrix<C<T>>;
pub type CVector<T> = DVector<C<T>>;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    /// Columns are the normalized eigenvectors, in the order of `values`.
    pub vectors: CMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn new(m: &CMatrix<T>) -> Self {
        let eig = SymmetricEigen::new(hermitize(m));
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order
            .sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap_or(std::cmp::Ordering::Equal));
        let n = m.nrows();
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
        Self { values, vectors }
    }

    /// `V f(Λ) V†` for a complex-valued spectral function.
    pub fn apply_fn(&self, f: impl Fn(T) -> C<T>) -> CMatrix<T> {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (c, &lambda) in self.values.iter().enumerate() {
            let factor = f(lambda);
            for r in 0..n {
                scaled[(r, c)] *= factor;
            }
        }
        scaled * self.vectors.adjoint()
    }
}

/// Symmetric eigen-decomposition of a real matrix, eigenvalues ascending.
pub fn real_symmetric_eigen<T: Real>(m: &DMatrix<T>) -> (Vec<T>, DMatrix<T>) {
    let sym = (m + m.transpose()) * crate::scalar::lit::<T>(0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap_or(std::cmp::Ordering::Equal));
    let n = m.nrows();
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues<T: Real>(m: &CMatrix<T>) -> Vec<T> {
    let mut values: Vec<T> = hermitize(m).symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    values
}

/// `(M + M†)/2`.
pub fn hermitize<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    (m + m.adjoint()) * real(crate::scalar::lit::<T>(0.5))
}

/// `exp(-i H t)` for Hermitian `H`.
pub fn unitary_propagator<T: Real>(h: &CMatrix<T>, t: T) -> CMatrix<T> {
    HermitianEigen::new(h).apply_fn(|e| cexp(C::new(T::zero(), -(e * t))))
}

/// Kronecker product (first factor is the most significant index).
pub fn kron<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a.kronecker(b)
}

pub fn max_abs<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.max(cabs(*z)))
}

pub fn hermiticity_deviation<T: Real>(m: &CMatrix<T>) -> T {
    max_abs(&(m - m.adjoint()))
}

pub fn identity<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::identity(n, n)
}

pub fn trace<T: Real>(m: &CMatrix<T>) -> C<T> {
    m.diagonal().iter().fold(C::new(T::zero(), T::zero()), |acc, &z| acc + z)
}

/// Lifts a real matrix into the complex field.
pub fn complexify<T: Real>(m: &DMatrix<T>) -> CMatrix<T> {
    m.map(real)
}

/// Principal square root of a symmetric positive semidefinite real matrix.
pub fn spd_sqrt<T: Real>(values: &[T], vectors: &DMatrix<T>) -> DMatrix<T> {
    let n = values.len();
    let mut scaled = vectors.clone();
    for (c, &v) in values.iter().enumerate() {
        let s = v.max(T::zero()).sqrt();
        for r in 0..n {
            scaled[(r, c)] *= s;
        }
    }
    scaled * vectors.transpose()
}

/// Solves a tridiagonal system `A x = d` with constant off-diagonals via the
/// Thomas algorithm. `diag` and `d` have length n.
#[derive(Debug, Clone)]
pub struct Tridiagonal<T: Real> {
    lower: C<T>,
    // Modified superdiagonal and pivots from the forward sweep.
    c_prime: Vec<C<T>>,
    pivots: Vec<C<T>>,
}

impl<T: Real> Tridiagonal<T> {
    pub fn factor(diag: &[C<T>], lower: C<T>, upper: C<T>) -> Self {
        let n = diag.len();
        let mut c_prime = vec![C::new(T::zero(), T::zero()); n];
        let mut pivots = vec![C::new(T::zero(), T::zero()); n];
        pivots[0] = diag[0];
        c_prime[0] = upper / pivots[0];
        for i in 1..n {
            pivots[i] = diag[i] - lower * c_prime[i - 1];
            c_prime[i] = upper / pivots[i];
        }
        Self { lower, c_prime, pivots }
    }

    pub fn solve_into(&self, d: &[C<T>], out: &mut [C<T>]) {
        let n = d.len();
        out[0] = d[0] / self.pivots[0];
        for i in 1..n {
            out[i] = (d[i] - self.lower * out[i - 1]) / self.pivots[i];
        }
        for i in (0..n - 1).rev() {
            let next = out[i + 1];
            out[i] -= self.c_prime[i] * next;
        }
    }
}
