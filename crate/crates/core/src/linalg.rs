//! Small dense complex matrices and a Jacobi eigensolver for Hermitian input.
//!
//! Every matrix in this crate is at most 32 x 32 (four qubits plus an
//! ancilla), so a cyclic Jacobi sweep is both fast enough and accurate to a
//! few ulps in the eigenvalues.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cplx, creal, Real, C};

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C<T>>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(n, m, rows.concat())
    }

    pub fn from_real_diag(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = creal(d);
        }
        m
    }

    /// Outer product `|u><v|`.
    pub fn outer(u: &[C<T>], v: &[C<T>]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                m[(i, j)] = *a * b.conj();
            }
        }
        m
    }

    /// Projector `|u><u|`.
    pub fn projector(u: &[C<T>]) -> Self {
        Self::outer(u, u)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: C<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut m = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[C<T>]) -> Vec<C<T>> {
        debug_assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| *a * *b)
                    .sum()
            })
            .collect()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).norm()))
    }

    /// `max |m - m^dagger|`.
    pub fn hermiticity_defect(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let mut d = T::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                d = d.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        d
    }

    /// Replaces the matrix with `(m + m^dagger) / 2`.
    pub fn hermitize(&mut self) {
        let half = T::lit(0.5);
        for i in 0..self.rows {
            for j in i..self.cols {
                let z = (self[(i, j)] + self[(j, i)].conj()) * half;
                self[(i, j)] = z;
                self[(j, i)] = z.conj();
            }
        }
    }

    /// Squared Hilbert-Schmidt norm `Tr(m^dagger m)`.
    pub fn hs_norm_sqr(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl<T: Real> Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut m = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    m[(i, j)] = m[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        m
    }
}

impl<T: Real> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl<T: Real> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

/// Pauli matrices `[sigma_x, sigma_y, sigma_z]`.
pub fn paulis<T: Real>() -> [CMatrix<T>; 3] {
    let (o, l, i) = (C::zero(), C::one(), cplx(T::zero(), T::one()));
    [
        CMatrix::from_vec(2, 2, vec![o, l, l, o]).unwrap(),
        CMatrix::from_vec(2, 2, vec![o, -i, i, o]).unwrap(),
        CMatrix::from_vec(2, 2, vec![l, o, o, -l]).unwrap(),
    ]
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition<T: Real> {
    pub eigenvalues: Vec<T>,
    /// Orthonormal eigenvectors, `eigenvectors[k]` pairs with `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<C<T>>>,
    /// Number of eigenvalues above [`Real::rank_cutoff`].
    pub rank: usize,
}

impl<T: Real> SpectralDecomposition<T> {
    /// Rebuilds `sum_k lambda_k v_k v_k^dagger`.
    pub fn reconstruct(&self) -> CMatrix<T> {
        let n = self.eigenvalues.len();
        let mut m = CMatrix::zeros(n, n);
        for (l, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = m[(i, j)] + v[i] * v[j].conj() * *l;
                }
            }
        }
        m
    }

    pub fn max_eigenvalue(&self) -> T {
        self.eigenvalues[0]
    }

    pub fn min_eigenvalue(&self) -> T {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }
}

/// Diagonalizes a Hermitian matrix with cyclic complex Jacobi rotations.
///
/// Fails when `max |m - m^dagger|` exceeds [`Real::state_tol`] scaled by the
/// largest entry.
pub fn eig_hermitian<T: Real>(m: &CMatrix<T>) -> Result<SpectralDecomposition<T>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermiticity_defect();
    if defect > T::state_tol() * T::one().max(m.max_abs()) {
        return Err(Error::NotHermitian {
            deviation: defect.as_f64(),
        });
    }
    let mut a = m.clone();
    a.hermitize();
    Ok(jacobi(a))
}

fn jacobi<T: Real>(mut a: CMatrix<T>) -> SpectralDecomposition<T> {
    let n = a.rows();
    let mut v = CMatrix::<T>::identity(n);
    let scale = a.hs_norm_sqr().sqrt();
    let eps = T::kernel_eps();

    for _sweep in 0..100 {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + a[(p, q)].norm_sqr();
            }
        }
        if off.is_zero() || off.sqrt() <= eps * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[(p, q)];
                let g_abs = g.norm();
                if g_abs <= T::min_positive_value() {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phase = g / g_abs;
                let two = T::lit(2.0);
                let theta = (aqq - app) / (two * g_abs);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                let se = phase * s;
                let sec = se.conj();

                // A <- A J, columns p and q.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * sec;
                    a[(k, q)] = akp * se + akq * c;
                }
                // A <- J^dagger A, rows p and q.
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * se;
                    a[(q, k)] = apk * sec + aqk * c;
                }
                a[(p, q)] = C::zero();
                a[(q, p)] = C::zero();
                a[(p, p)] = creal(a[(p, p)].re);
                a[(q, q)] = creal(a[(q, q)].re);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * sec;
                    v[(k, q)] = vkp * se + vkq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(j, j)]
            .re
            .partial_cmp(&a[(i, i)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let eigenvalues: Vec<T> = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = order.iter().map(|&i| v.column(i)).collect();
    let rank = eigenvalues.iter().filter(|&&l| l > T::rank_cutoff()).count();
    SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        rank,
    }
}

/// Singular values (descending) of an arbitrary complex matrix.
///
/// Computed from the Hermitian dilation `[[0, M], [M^dagger, 0]]`, whose
/// eigenvalues are `±sigma_i`; this keeps absolute accuracy at the level of
/// machine epsilon even for tiny singular values.
pub fn singular_values<T: Real>(m: &CMatrix<T>) -> Vec<T> {
    let (r, c) = (m.rows(), m.cols());
    let mut h = CMatrix::zeros(r + c, r + c);
    for i in 0..r {
        for j in 0..c {
            h[(i, r + j)] = m[(i, j)];
            h[(r + j, i)] = m[(i, j)].conj();
        }
    }
    let spec = jacobi(h);
    spec.eigenvalues
        .into_iter()
        .take(r.min(c))
        .map(|s| s.max(T::zero()))
        .collect()
}

/// Applies a real function to the spectrum of a Hermitian matrix.
pub fn hermitian_fn<T: Real>(m: &CMatrix<T>, f: impl Fn(T) -> T) -> Result<CMatrix<T>> {
    let spec = eig_hermitian(m)?;
    let mapped = SpectralDecomposition {
        eigenvalues: spec.eigenvalues.iter().map(|&l| f(l)).collect(),
        eigenvectors: spec.eigenvectors,
        rank: spec.rank,
    };
    Ok(mapped.reconstruct())
}

/// `exp(i H)` for Hermitian `H`, a unitary.
pub fn expi_hermitian<T: Real>(h: &CMatrix<T>) -> Result<CMatrix<T>> {
    let spec = eig_hermitian(h)?;
    let n = h.rows();
    let mut u = CMatrix::zeros(n, n);
    for (l, v) in spec.eigenvalues.iter().zip(&spec.eigenvectors) {
        let ph = cplx(l.cos(), l.sin());
        for i in 0..n {
            for j in 0..n {
                u[(i, j)] = u[(i, j)] + v[i] * v[j].conj() * ph;
            }
        }
    }
    Ok(u)
}

/// Traceless Hermitian generators of `su(n)` (generalized Gell-Mann matrices),
/// `n^2 - 1` of them.
pub fn gell_mann<T: Real>(n: usize) -> Vec<CMatrix<T>> {
    let mut gens = Vec::with_capacity(n * n - 1);
    for j in 0..n {
        for k in (j + 1)..n {
            let mut sym = CMatrix::zeros(n, n);
            sym[(j, k)] = C::one();
            sym[(k, j)] = C::one();
            gens.push(sym);
            let mut anti = CMatrix::zeros(n, n);
            anti[(j, k)] = cplx(T::zero(), -T::one());
            anti[(k, j)] = cplx(T::zero(), T::one());
            gens.push(anti);
        }
    }
    for l in 1..n {
        let norm = (T::lit(2.0) / T::from_usize(l * (l + 1)).unwrap()).sqrt();
        let mut d = CMatrix::zeros(n, n);
        for i in 0..l {
            d[(i, i)] = creal(norm);
        }
        d[(l, l)] = creal(-norm * T::from_usize(l).unwrap());
        gens.push(d);
    }
    gens
}

/// Inner product `<u|v>`.
pub fn inner<T: Real>(u: &[C<T>], v: &[C<T>]) -> C<T> {
    u.iter().zip(v).map(|(a, b)| a.conj() * *b).sum()
}

pub fn vec_norm<T: Real>(v: &[C<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

pub fn kron_vec<T: Real>(a: &[C<T>], b: &[C<T>]) -> Vec<C<T>> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| *x * *y))
        .collect()
}
