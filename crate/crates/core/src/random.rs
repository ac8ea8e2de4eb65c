//! Random states and unitaries for tests, property checks and the self-check.

use rand::seq::index::sample;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{inner, vec_norm, CMatrix};
use crate::qstate::{default_labels, DensityMatrix, PureState};
use crate::scalar::{cplx, Real, C};

fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    cplx(T::lit(re), T::lit(im))
}

/// Haar-random pure state on the given local dimensions.
pub fn haar_pure<T: Real, R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> PureState<T> {
    let d: usize = dims.iter().product();
    let amps = (0..d).map(|_| gaussian(rng)).collect();
    PureState::normalized(amps, dims.to_vec()).expect("nonzero Gaussian vector")
}

/// `G G^dagger / Tr` for a `d x rank` complex Ginibre matrix `G`.
pub fn ginibre_density<T: Real, R: Rng + ?Sized>(
    dims: &[usize],
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix<T>> {
    let d: usize = dims.iter().product();
    if rank == 0 || rank > d {
        return Err(Error::Config(format!("rank {rank} outside 1..={d}")));
    }
    let g = CMatrix::from_vec(d, rank, (0..d * rank).map(|_| gaussian(rng)).collect())?;
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(T::one() / tr), dims.to_vec(), default_labels(dims.len()))
}

/// Haar-random unitary from Gram-Schmidt on Gaussian columns.
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix<T> {
    let mut cols: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C<T>> = (0..n).map(|_| gaussian(rng)).collect();
        for u in &cols {
            let c = inner(u, &v);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi = *vi - *ui * c;
            }
        }
        let nv = vec_norm(&v);
        if nv < T::lit(1e-6) {
            continue;
        }
        cols.push(v.into_iter().map(|x| x / nv).collect());
    }
    let mut u = CMatrix::zeros(n, n);
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            u[(i, j)] = x;
        }
    }
    u
}

/// `U_1 ⊗ U_2 ⊗ ...` with each factor Haar-random.
pub fn product_unitary<T: Real, R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> CMatrix<T> {
    dims.iter()
        .fold(CMatrix::identity(1), |acc, &d| acc.kron(&haar_unitary(d, rng)))
}

fn random_weights<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<T> {
    let w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1) + 1e-3).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| T::lit(x / s)).collect()
}

/// Classical-quantum state `Σ_k p_k |k><k| ⊗ rho_k` with `{|k>}` a random
/// basis of the first party, which is the classical side.
pub fn random_cq_state<T: Real, R: Rng + ?Sized>(
    classical_dim: usize,
    rest_dims: &[usize],
    rng: &mut R,
) -> Result<DensityMatrix<T>> {
    let rest: usize = rest_dims.iter().product();
    let basis = haar_unitary::<T, _>(classical_dim, rng);
    let p = random_weights::<T, _>(classical_dim, rng);
    let mut dims = vec![classical_dim];
    dims.extend_from_slice(rest_dims);
    let d = classical_dim * rest;
    let mut m = CMatrix::zeros(d, d);
    for (k, &pk) in p.iter().enumerate() {
        let proj = CMatrix::projector(&basis.column(k));
        let rank = rng.gen_range(1..=rest);
        let local = ginibre_density::<T, _>(&[rest], rank, rng)?;
        m = &m + &proj.kron(local.matrix()).scale_real(pk);
    }
    DensityMatrix::new(m, dims.clone(), default_labels(dims.len()))
}

/// Mixture of `rank` distinct product basis states, rotated by a random
/// product unitary so it is diagonal in a random product basis.
pub fn random_classical_classical<T: Real, R: Rng + ?Sized>(
    dims: &[usize],
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix<T>> {
    let d: usize = dims.iter().product();
    if rank == 0 || rank > d {
        return Err(Error::Config(format!("rank {rank} outside 1..={d}")));
    }
    let p = random_weights::<T, _>(rank, rng);
    let mut diag = vec![T::zero(); d];
    for (k, idx) in sample(rng, d, rank).into_iter().enumerate() {
        diag[idx] = p[k];
    }
    let rho = DensityMatrix::new(CMatrix::from_real_diag(&diag), dims.to_vec(), default_labels(dims.len()))?;
    rho.transform(&product_unitary(dims, rng))
}

/// Uniform point on the qubit Bloch sphere as a pure state.
pub fn random_qubit<T: Real, R: Rng + ?Sized>(rng: &mut R) -> PureState<T> {
    haar_pure(&[2], rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [1, 2, 4, 8] {
            let u = haar_unitary::<f64, _>(n, &mut rng);
            assert!((&u.adjoint() * &u).max_abs_diff(&CMatrix::identity(n)) < 1e-12);
        }
        let u = product_unitary::<f64, _>(&[2, 2, 2], &mut rng);
        assert!((&u * &u.adjoint()).max_abs_diff(&CMatrix::identity(8)) < 1e-12);
    }

    #[test]
    fn ginibre_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for r in 1..=4 {
            let rho = ginibre_density::<f64, _>(&[2, 2, 2], r, &mut rng).unwrap();
            assert_eq!(rho.rank(), r);
        }
        assert!(ginibre_density::<f64, _>(&[2], 3, &mut rng).is_err());
    }

    #[test]
    fn classical_classical_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = random_classical_classical::<f64, _>(&[2, 2, 2], 2, &mut rng).unwrap();
        assert_eq!(rho.rank(), 2);
    }

    #[test]
    fn cq_state_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rho = random_cq_state::<f64, _>(2, &[2], &mut rng).unwrap();
        assert_eq!(rho.dims(), &[2, 2]);
        assert!(rho.eig().min_eigenvalue() > -1e-12);
    }
}
