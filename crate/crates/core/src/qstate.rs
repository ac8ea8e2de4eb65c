//! Density matrices, pure states and the primitives built on them: tensor
//! products, partial traces, entropies, purification and the two-qubit Bloch
//! decomposition.
//!
//! Parties are identified by string labels. Label order is the tensor-factor
//! order and is never changed implicitly; reduced states keep the surviving
//! parties in their original order.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, kron_vec, paulis, vec_norm, CMatrix, SpectralDecomposition};
use crate::scalar::{cplx, creal, xlog2x_neg, Real, C};

/// Label given to the purifying ancilla.
pub const ANCILLA_LABEL: &str = "E";

/// Default party labels `A, B, C, ...`.
pub fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| char::from(b'A' + (i as u8 % 26)).to_string())
        .collect()
}

fn check_layout(dim: usize, dims: &[usize], labels: &[String]) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::DimensionMismatch("no parties".into()));
    }
    if dims.iter().any(|&d| d == 0) {
        return Err(Error::DimensionMismatch("zero local dimension".into()));
    }
    let prod: usize = dims.iter().product();
    if prod != dim {
        return Err(Error::DimensionMismatch(format!(
            "local dims {dims:?} multiply to {prod}, state dimension is {dim}"
        )));
    }
    if labels.len() != dims.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} labels for {} parties",
            labels.len(),
            dims.len()
        )));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::InvalidPartition(format!("duplicate label `{l}`")));
        }
    }
    Ok(())
}

fn positions(labels: &[String], wanted: &[&str]) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(wanted.len());
    for w in wanted {
        let p = labels
            .iter()
            .position(|l| l == w)
            .ok_or_else(|| Error::UnknownLabel((*w).to_string()))?;
        if out.contains(&p) {
            return Err(Error::InvalidPartition(format!("label `{w}` repeated")));
        }
        out.push(p);
    }
    Ok(out)
}

/// Splits every flat index into (index over `first` parties, index over the
/// remaining parties), each in the order given / original order respectively.
pub(crate) fn split_indices(dims: &[usize], first: &[usize]) -> Vec<(usize, usize)> {
    let n: usize = dims.iter().product();
    let rest: Vec<usize> = (0..dims.len()).filter(|p| !first.contains(p)).collect();
    let mut strides = vec![1usize; dims.len()];
    for p in (0..dims.len().saturating_sub(1)).rev() {
        strides[p] = strides[p + 1] * dims[p + 1];
    }
    (0..n)
        .map(|i| {
            let digit = |p: usize| (i / strides[p]) % dims[p];
            let a = first.iter().fold(0, |acc, &p| acc * dims[p] + digit(p));
            let b = rest.iter().fold(0, |acc, &p| acc * dims[p] + digit(p));
            (a, b)
        })
        .collect()
}

/// Maps flat indices to the flat index after reordering parties to `order`.
fn permutation_map(dims: &[usize], order: &[usize]) -> Vec<usize> {
    split_indices(dims, order).into_iter().map(|(a, _)| a).collect()
}

/// Complex Hermitian, unit-trace, positive semidefinite operator over labelled
/// tensor factors.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T: Real> {
    data: CMatrix<T>,
    dims: Vec<usize>,
    labels: Vec<String>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates and wraps a matrix.
    ///
    /// Eigenvalues in `[-tol, 0)` are clipped to zero and the matrix is
    /// renormalized; anything more negative is rejected.
    pub fn new(data: CMatrix<T>, dims: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        if !data.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix is not square",
                data.rows(),
                data.cols()
            )));
        }
        check_layout(data.rows(), &dims, &labels)?;
        let tol = T::state_tol();
        let defect = data.hermiticity_defect();
        if defect > tol {
            return Err(Error::NotHermitian {
                deviation: defect.as_f64(),
            });
        }
        let tr = data.trace();
        if (tr - C::one()).norm() > tol {
            return Err(Error::TraceNotUnit {
                trace: tr.re.as_f64(),
            });
        }
        let spec = eig_hermitian(&data)?;
        let min = spec.min_eigenvalue();
        if min < -tol {
            return Err(Error::NotPositive {
                min_eigenvalue: min.as_f64(),
            });
        }
        let mut data = data;
        if min < T::zero() {
            let clipped = SpectralDecomposition {
                eigenvalues: spec.eigenvalues.iter().map(|l| l.max(T::zero())).collect(),
                eigenvectors: spec.eigenvectors,
                rank: spec.rank,
            };
            data = clipped.reconstruct();
            let tr = data.trace().re;
            data = data.scale_real(T::one() / tr);
        }
        data.hermitize();
        Ok(Self { data, dims, labels })
    }

    /// Validates with default labels `A, B, ...`.
    pub fn with_dims(data: CMatrix<T>, dims: Vec<usize>) -> Result<Self> {
        let labels = default_labels(dims.len());
        Self::new(data, dims, labels)
    }

    /// Wraps a matrix already known to be a valid state.
    pub(crate) fn from_parts(mut data: CMatrix<T>, dims: Vec<usize>, labels: Vec<String>) -> Self {
        debug_assert!(check_layout(data.rows(), &dims, &labels).is_ok());
        data.hermitize();
        Self { data, dims, labels }
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let n: usize = dims.iter().product();
        let data = CMatrix::identity(n).scale_real(T::one() / T::from_usize(n).unwrap());
        let labels = default_labels(dims.len());
        Self::from_parts(data, dims, labels)
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.data
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.data.rows()
    }

    pub fn party_count(&self) -> usize {
        self.dims.len()
    }

    /// Local dimension of a labelled party.
    pub fn party_dim(&self, label: &str) -> Result<usize> {
        Ok(self.dims[positions(&self.labels, &[label])?[0]])
    }

    pub(crate) fn positions(&self, labels: &[&str]) -> Result<Vec<usize>> {
        positions(&self.labels, labels)
    }

    pub fn relabel(mut self, labels: Vec<String>) -> Result<Self> {
        check_layout(self.dim(), &self.dims, &labels)?;
        self.labels = labels;
        Ok(self)
    }

    pub fn eig(&self) -> SpectralDecomposition<T> {
        eig_hermitian(&self.data).expect("density matrix is Hermitian")
    }

    pub fn rank(&self) -> usize {
        self.eig().rank
    }

    /// `Tr rho^2`.
    pub fn purity(&self) -> T {
        self.data.hs_norm_sqr()
    }

    /// Tensor product with concatenated dims and labels.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut dims = self.dims.clone();
        dims.extend(&other.dims);
        let data = self.data.kron(&other.data);
        check_layout(data.rows(), &dims, &labels)?;
        Ok(Self::from_parts(data, dims, labels))
    }

    /// Reduced state on `keep`, which must be a nonempty proper subset.
    pub fn partial_trace(&self, keep: &[&str]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::InvalidPartition("empty keep set".into()));
        }
        let pos = self.positions(keep)?;
        if pos.len() == self.party_count() {
            return Err(Error::InvalidPartition(
                "keep set contains every party".into(),
            ));
        }
        Ok(self.marginal_at(pos))
    }

    /// Reduced state on `keep`; keeping every party returns a copy.
    pub fn marginal(&self, keep: &[&str]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::InvalidPartition("empty keep set".into()));
        }
        let pos = self.positions(keep)?;
        Ok(self.marginal_at(pos))
    }

    fn marginal_at(&self, mut pos: Vec<usize>) -> Self {
        pos.sort_unstable();
        if pos.len() == self.party_count() {
            return self.clone();
        }
        let dims: Vec<usize> = pos.iter().map(|&p| self.dims[p]).collect();
        let labels: Vec<String> = pos.iter().map(|&p| self.labels[p].clone()).collect();
        let kd: usize = dims.iter().product();
        let map = split_indices(&self.dims, &pos);
        let mut out = CMatrix::zeros(kd, kd);
        for (i, &(ki, ti)) in map.iter().enumerate() {
            for (j, &(kj, tj)) in map.iter().enumerate() {
                if ti == tj {
                    out[(ki, kj)] = out[(ki, kj)] + self.data[(i, j)];
                }
            }
        }
        Self::from_parts(out, dims, labels)
    }

    /// Reorders tensor factors so that labels appear in `order`.
    pub fn permute(&self, order: &[&str]) -> Result<Self> {
        let pos = self.positions(order)?;
        if pos.len() != self.party_count() {
            return Err(Error::InvalidPartition(
                "permutation must list every party".into(),
            ));
        }
        let map = permutation_map(&self.dims, &pos);
        let n = self.dim();
        let mut out = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(map[i], map[j])] = self.data[(i, j)];
            }
        }
        let dims = pos.iter().map(|&p| self.dims[p]).collect();
        let labels = pos.iter().map(|&p| self.labels[p].clone()).collect();
        Ok(Self::from_parts(out, dims, labels))
    }

    /// `U rho U^dagger` for a unitary `U` of matching dimension.
    pub fn transform(&self, u: &CMatrix<T>) -> Result<Self> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} operator on a {}-dimensional state",
                u.rows(),
                u.cols(),
                self.dim()
            )));
        }
        let data = &(u * &self.data) * &u.adjoint();
        Ok(Self::from_parts(data, self.dims.clone(), self.labels.clone()))
    }

    /// Dominant eigenvector as a pure state; only meaningful for rank one.
    pub fn to_pure(&self) -> Result<PureState<T>> {
        let purity = self.purity();
        if purity < T::one() - T::lit(1e-9).max(T::state_tol()) {
            return Err(Error::NotPure {
                purity: purity.as_f64(),
            });
        }
        let spec = self.eig();
        PureState::new(
            spec.eigenvectors[0].clone(),
            self.dims.clone(),
            self.labels.clone(),
        )
    }
}

/// Normalized state vector over labelled tensor factors.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState<T: Real> {
    amplitudes: Vec<C<T>>,
    dims: Vec<usize>,
    labels: Vec<String>,
}

impl<T: Real> PureState<T> {
    pub fn new(amplitudes: Vec<C<T>>, dims: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        check_layout(amplitudes.len(), &dims, &labels)?;
        let norm = vec_norm(&amplitudes);
        if (norm - T::one()).abs() > T::state_tol() {
            return Err(Error::NotNormalized {
                norm: norm.as_f64(),
            });
        }
        Ok(Self {
            amplitudes,
            dims,
            labels,
        })
    }

    /// Normalizes the given amplitudes, default labels.
    pub fn normalized(amplitudes: Vec<C<T>>, dims: Vec<usize>) -> Result<Self> {
        let norm = vec_norm(&amplitudes);
        if norm <= T::zero() {
            return Err(Error::NotNormalized { norm: 0.0 });
        }
        let amps = amplitudes.into_iter().map(|a| a / norm).collect();
        let labels = default_labels(dims.len());
        Self::new(amps, dims, labels)
    }

    /// Computational basis state `|index>`.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let n: usize = dims.iter().product();
        if index >= n {
            return Err(Error::DimensionMismatch(format!(
                "basis index {index} in dimension {n}"
            )));
        }
        let mut amps = vec![C::zero(); n];
        amps[index] = C::one();
        let labels = default_labels(dims.len());
        Self::new(amps, dims, labels)
    }

    /// `(|0...0> + |1...1>)/sqrt 2` on `n` qubits.
    pub fn ghz(n: usize) -> Self {
        let d = 1usize << n;
        let mut amps = vec![C::zero(); d];
        let a = creal(T::FRAC_1_SQRT_2());
        amps[0] = a;
        amps[d - 1] = a;
        Self::new(amps, vec![2; n], default_labels(n)).expect("GHZ is normalized")
    }

    /// Equal superposition of all single-excitation states on `n` qubits.
    pub fn w(n: usize) -> Self {
        let d = 1usize << n;
        let mut amps = vec![C::zero(); d];
        let a = creal(T::one() / T::from_usize(n).unwrap().sqrt());
        for k in 0..n {
            amps[1 << k] = a;
        }
        Self::new(amps, vec![2; n], default_labels(n)).expect("W is normalized")
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn relabel(mut self, labels: Vec<String>) -> Result<Self> {
        check_layout(self.dim(), &self.dims, &labels)?;
        self.labels = labels;
        Ok(self)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut dims = self.dims.clone();
        dims.extend(&other.dims);
        let amplitudes = kron_vec(&self.amplitudes, &other.amplitudes);
        check_layout(amplitudes.len(), &dims, &labels)?;
        Ok(Self {
            amplitudes,
            dims,
            labels,
        })
    }

    pub fn permute(&self, order: &[&str]) -> Result<Self> {
        let pos = positions(&self.labels, order)?;
        if pos.len() != self.dims.len() {
            return Err(Error::InvalidPartition(
                "permutation must list every party".into(),
            ));
        }
        let map = permutation_map(&self.dims, &pos);
        let mut amps = vec![C::zero(); self.dim()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            amps[map[i]] = *a;
        }
        Ok(Self {
            amplitudes: amps,
            dims: pos.iter().map(|&p| self.dims[p]).collect(),
            labels: pos.iter().map(|&p| self.labels[p].clone()).collect(),
        })
    }

    pub fn to_density(&self) -> DensityMatrix<T> {
        DensityMatrix::from_parts(
            CMatrix::projector(&self.amplitudes),
            self.dims.clone(),
            self.labels.clone(),
        )
    }

    /// Reduced state of a pure state, without forming the full projector.
    pub fn reduced(&self, keep: &[&str]) -> Result<DensityMatrix<T>> {
        if keep.is_empty() {
            return Err(Error::InvalidPartition("empty keep set".into()));
        }
        let mut pos = positions(&self.labels, keep)?;
        pos.sort_unstable();
        let dims: Vec<usize> = pos.iter().map(|&p| self.dims[p]).collect();
        let labels: Vec<String> = pos.iter().map(|&p| self.labels[p].clone()).collect();
        let kd: usize = dims.iter().product();
        let td = self.dim() / kd;
        // Amplitudes as a kd x td matrix M; reduced state is M M^dagger.
        let mut m = CMatrix::zeros(kd, td);
        for (i, &(k, t)) in split_indices(&self.dims, &pos).iter().enumerate() {
            m[(k, t)] = self.amplitudes[i];
        }
        Ok(DensityMatrix::from_parts(&m * &m.adjoint(), dims, labels))
    }
}

/// Tensor product of two states of the same kind.
pub trait Tensor: Sized {
    fn tensor(&self, other: &Self) -> Result<Self>;
}

impl<T: Real> Tensor for DensityMatrix<T> {
    fn tensor(&self, other: &Self) -> Result<Self> {
        DensityMatrix::tensor(self, other)
    }
}

impl<T: Real> Tensor for PureState<T> {
    fn tensor(&self, other: &Self) -> Result<Self> {
        PureState::tensor(self, other)
    }
}

pub fn tensor<S: Tensor>(a: &S, b: &S) -> Result<S> {
    a.tensor(b)
}

pub fn partial_trace<T: Real>(rho: &DensityMatrix<T>, keep: &[&str]) -> Result<DensityMatrix<T>> {
    rho.partial_trace(keep)
}

/// Entropy in bits of a spectrum, `0 log 0 = 0`.
pub fn spectrum_entropy<T: Real>(eigenvalues: &[T]) -> T {
    eigenvalues.iter().map(|&l| xlog2x_neg(l)).sum::<T>().max(T::zero())
}

/// Von Neumann entropy `-Tr rho log2 rho`.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> T {
    spectrum_entropy(&rho.eig().eigenvalues)
}

/// Entropy of the marginal on `parties` (all parties allowed).
pub fn marginal_entropy<T: Real>(rho: &DensityMatrix<T>, parties: &[&str]) -> Result<T> {
    Ok(von_neumann_entropy(&rho.marginal(parties)?))
}

/// `S(target, condition) - S(condition)`; negative for entangled states.
pub fn conditional_entropy<T: Real>(
    rho: &DensityMatrix<T>,
    target: &str,
    condition: &str,
) -> Result<T> {
    if target == condition {
        return Err(Error::InvalidPartition(format!(
            "target and condition are both `{target}`"
        )));
    }
    let joint = marginal_entropy(rho, &[target, condition])?;
    let cond = marginal_entropy(rho, &[condition])?;
    Ok(joint - cond)
}

fn fresh_ancilla_label(labels: &[String]) -> String {
    let mut label = ANCILLA_LABEL.to_string();
    let mut k = 1;
    while labels.contains(&label) {
        label = format!("{ANCILLA_LABEL}{k}");
        k += 1;
    }
    label
}

/// Purifies `rho` with an ancilla whose dimension equals the rank.
pub fn purify<T: Real>(rho: &DensityMatrix<T>) -> PureState<T> {
    purify_with_ancilla(rho, 0).expect("rank-sized ancilla always fits")
}

/// Purifies with an ancilla of at least `min_dim` levels (padded with empty
/// levels when the rank is smaller).
pub fn purify_with_ancilla<T: Real>(rho: &DensityMatrix<T>, min_dim: usize) -> Result<PureState<T>> {
    let spec = rho.eig();
    let kept: Vec<(T, &Vec<C<T>>)> = spec
        .eigenvalues
        .iter()
        .copied()
        .zip(&spec.eigenvectors)
        .filter(|(l, _)| *l > T::rank_cutoff())
        .collect();
    let r = kept.len().max(1);
    let e = r.max(min_dim);
    let n = rho.dim();
    let mut amps = vec![C::zero(); n * e];
    let total: T = kept.iter().map(|(l, _)| *l).sum();
    for (k, (l, v)) in kept.iter().enumerate() {
        let w = (*l / total).sqrt();
        for i in 0..n {
            amps[i * e + k] = v[i] * w;
        }
    }
    let mut dims = rho.dims.clone();
    dims.push(e);
    let mut labels = rho.labels.clone();
    labels.push(fresh_ancilla_label(&rho.labels));
    PureState::new(amps, dims, labels)
}

/// Local Bloch vectors and correlation matrix of a two-qubit state.
///
/// `x` belongs to the first party, `y` to the second,
/// `t[i][j] = Tr(sigma_i ⊗ sigma_j rho)` and `k = x x^T + T T^T`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = ""))]
pub struct BlochForm<T: Real> {
    pub x: [T; 3],
    pub y: [T; 3],
    pub t: [[T; 3]; 3],
    pub k: [[T; 3]; 3],
}

impl<T: Real> BlochForm<T> {
    pub fn new(x: [T; 3], y: [T; 3], t: [[T; 3]; 3]) -> Self {
        let mut k = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                k[i][j] = x[i] * x[j] + (0..3).map(|l| t[i][l] * t[j][l]).sum::<T>();
            }
        }
        Self { x, y, t, k }
    }

    /// `||T||^2 = Tr T T^T`.
    pub fn t_norm_sqr(&self) -> T {
        self.t.iter().flatten().map(|v| *v * *v).sum()
    }

    pub fn x_norm_sqr(&self) -> T {
        self.x.iter().map(|v| *v * *v).sum()
    }

    /// Rebuilds the 4x4 matrix `(I⊗I + x·σ⊗I + I⊗y·σ + Σ t_ij σ_i⊗σ_j)/4`.
    pub fn reconstruct(&self) -> CMatrix<T> {
        let s = paulis::<T>();
        let id = CMatrix::<T>::identity(2);
        let mut m = id.kron(&id);
        for i in 0..3 {
            m = &m + &s[i].kron(&id).scale_real(self.x[i]);
            m = &m + &id.kron(&s[i]).scale_real(self.y[i]);
            for j in 0..3 {
                m = &m + &s[i].kron(&s[j]).scale_real(self.t[i][j]);
            }
        }
        m.scale_real(T::lit(0.25))
    }

    /// Same state with the parties swapped.
    pub fn swapped(&self) -> Self {
        let mut t = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                t[i][j] = self.t[j][i];
            }
        }
        Self::new(self.y, self.x, t)
    }
}

fn expect_two_qubits<T: Real>(rho: &DensityMatrix<T>) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::UnsupportedDimension(format!(
            "expected a two-qubit state, got dims {:?}",
            rho.dims()
        )));
    }
    Ok(())
}

pub fn bloch_decompose<T: Real>(rho: &DensityMatrix<T>) -> Result<BlochForm<T>> {
    expect_two_qubits(rho)?;
    let s = paulis::<T>();
    let id = CMatrix::<T>::identity(2);
    let expect = |op: &CMatrix<T>| (op * rho.matrix()).trace().re;
    let mut x = [T::zero(); 3];
    let mut y = [T::zero(); 3];
    let mut t = [[T::zero(); 3]; 3];
    for i in 0..3 {
        x[i] = expect(&s[i].kron(&id));
        y[i] = expect(&id.kron(&s[i]));
        for j in 0..3 {
            t[i][j] = expect(&s[i].kron(&s[j]));
        }
    }
    Ok(BlochForm::new(x, y, t))
}

fn parse_complex<T: Real>(tok: &str) -> Option<C<T>> {
    let tok = tok.trim();
    if let Some(body) = tok.strip_suffix(['j', 'i']) {
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        match split {
            Some(k) => {
                let re = T::from_str(&body[..k]).ok()?;
                let im_txt = &body[k..];
                let im = match im_txt {
                    "+" => T::one(),
                    "-" => -T::one(),
                    s => T::from_str(s.trim_start_matches('+')).ok()?,
                };
                Some(cplx(re, im))
            }
            None => {
                let im = match body {
                    "" | "+" => T::one(),
                    "-" => -T::one(),
                    s => T::from_str(s.trim_start_matches('+')).ok()?,
                };
                Some(cplx(T::zero(), im))
            }
        }
    } else {
        T::from_str(tok.trim_start_matches('+')).ok().map(creal)
    }
}

/// Parses the text state format: a `dims: d1 d2 ...` header, an optional
/// `labels: A B ...` line, then one matrix row per line with entries written
/// as `re+imj`. Blank lines and `#` comments are ignored.
pub fn parse_state<T: Real>(text: &str) -> Result<DensityMatrix<T>> {
    let mut dims: Option<Vec<usize>> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut rows: Vec<Vec<C<T>>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse {
            line: lineno + 1,
            msg,
        };
        if let Some(rest) = line.strip_prefix("dims:") {
            let d = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|e| err(format!("bad dimension `{t}`: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            dims = Some(d);
        } else if let Some(rest) = line.strip_prefix("labels:") {
            labels = Some(rest.split_whitespace().map(str::to_string).collect());
        } else {
            if dims.is_none() {
                return Err(err("matrix row before `dims:` header".into()));
            }
            let row = line
                .split_whitespace()
                .map(|t| parse_complex::<T>(t).ok_or_else(|| err(format!("bad complex entry `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
    }
    let dims = dims.ok_or_else(|| Error::Parse {
        line: 0,
        msg: "missing `dims:` header".into(),
    })?;
    let n: usize = dims.iter().product();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "expected a {n}x{n} matrix for dims {dims:?}"
        )));
    }
    let labels = labels.unwrap_or_else(|| default_labels(dims.len()));
    DensityMatrix::new(CMatrix::from_rows(&rows)?, dims, labels)
}

/// Writes a state in the format read by [`parse_state`].
pub fn format_state<T: Real>(rho: &DensityMatrix<T>) -> String {
    let mut out = String::new();
    let dims: Vec<String> = rho.dims().iter().map(usize::to_string).collect();
    writeln!(out, "dims: {}", dims.join(" ")).unwrap();
    writeln!(out, "labels: {}", rho.labels().join(" ")).unwrap();
    let m = rho.matrix();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| {
                let z = m[(i, j)];
                let sign = if z.im.is_sign_negative() { "-" } else { "+" };
                format!("{}{}{}j", z.re, sign, z.im.abs())
            })
            .collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

impl<T: Real> FromStr for DensityMatrix<T> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_state(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type D = DensityMatrix<f64>;
    type P = PureState<f64>;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn plus() -> P {
        P::normalized(vec![creal(1.0), creal(1.0)], vec![2]).unwrap()
    }

    fn bell() -> P {
        P::normalized(vec![creal(1.0), C::zero(), C::zero(), creal(1.0)], vec![2, 2]).unwrap()
    }

    #[test]
    fn tensor_of_basis_states() {
        let z = P::basis(vec![2], 0).unwrap();
        let zz = tensor(&z, &z.clone().relabel(vec!["B".into()]).unwrap()).unwrap();
        assert_eq!(zz.dims(), &[2, 2]);
        assert_eq!(zz.amplitudes()[0], creal(1.0));
        assert!(zz.amplitudes()[1..].iter().all(|a| a.is_zero()));
    }

    #[test]
    fn tensor_of_mixed_states() {
        let half = D::maximally_mixed(vec![2]);
        let q = half.tensor(&half.clone().relabel(vec!["B".into()]).unwrap()).unwrap();
        assert!(q.matrix().max_abs_diff(&CMatrix::identity(4).scale_real(0.25)) < 1e-15);
    }

    #[test]
    fn tensor_one_with_plus() {
        let one = P::basis(vec![2], 1).unwrap().to_density();
        let p = plus().relabel(vec!["B".into()]).unwrap().to_density();
        let m = one.tensor(&p).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if (2..4).contains(&i) && (2..4).contains(&j) { 0.5 } else { 0.0 };
                assert!(close(m.matrix()[(i, j)].re, want, 1e-15));
            }
        }
    }

    #[test]
    fn tensor_rejects_label_collision() {
        let z = P::basis(vec![2], 0).unwrap();
        assert!(z.tensor(&z).is_err());
    }

    #[test]
    fn partial_traces_of_named_states() {
        let b = bell().to_density();
        let a = b.partial_trace(&["A"]).unwrap();
        assert!(a.matrix().max_abs_diff(&CMatrix::identity(2).scale_real(0.5)) < 1e-15);

        let ghz = P::ghz(3).to_density();
        let ab = ghz.partial_trace(&["A", "B"]).unwrap();
        assert!(ab.matrix().max_abs_diff(&CMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5])) < 1e-15);

        let w = P::w(3).to_density();
        let a = w.partial_trace(&["A"]).unwrap();
        assert!(a.matrix().max_abs_diff(&CMatrix::from_real_diag(&[2.0 / 3.0, 1.0 / 3.0])) < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let ghz = P::ghz(3).to_density();
        assert!(matches!(ghz.partial_trace(&[]), Err(Error::InvalidPartition(_))));
        assert!(matches!(ghz.partial_trace(&["A", "B", "C"]), Err(Error::InvalidPartition(_))));
        assert!(matches!(ghz.partial_trace(&["Z"]), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn partial_trace_preserves_label_order() {
        let ghz = P::ghz(3).to_density();
        let r = ghz.partial_trace(&["C", "A"]).unwrap();
        assert_eq!(r.labels(), &["A".to_string(), "C".to_string()]);
    }

    #[test]
    fn pure_reduction_matches_density_reduction() {
        let w = P::w(3);
        let via_pure = w.reduced(&["A", "C"]).unwrap();
        let via_rho = w.to_density().partial_trace(&["A", "C"]).unwrap();
        assert!(via_pure.matrix().max_abs_diff(via_rho.matrix()) < 1e-15);
    }

    #[test]
    fn entropies() {
        assert!(von_neumann_entropy(&P::ghz(3).to_density()).abs() < 1e-12);
        assert!(close(von_neumann_entropy(&D::maximally_mixed(vec![2])), 1.0, 1e-14));
        let w_a = P::w(3).reduced(&["A"]).unwrap();
        let want = 3f64.log2() - 2.0 / 3.0;
        assert!(close(von_neumann_entropy(&w_a), want, 1e-12));
        assert!(close(want, 0.918296, 1e-6));
    }

    #[test]
    fn conditional_entropies() {
        let mm = D::maximally_mixed(vec![2, 2]).relabel(vec!["A".into(), "E".into()]).unwrap();
        assert!(close(conditional_entropy(&mm, "A", "E").unwrap(), 1.0, 1e-12));
        let b = bell().relabel(vec!["A".into(), "E".into()]).unwrap().to_density();
        assert!(close(conditional_entropy(&b, "A", "E").unwrap(), -1.0, 1e-12));
        assert!(conditional_entropy(&b, "A", "A").is_err());
        assert!(conditional_entropy(&b, "A", "Q").is_err());
    }

    #[test]
    fn conditional_entropy_with_trivial_environment() {
        // W purified (rank one) has a one-level ancilla, so S_E = 0.
        let psi = purify(&P::w(3).to_density());
        assert_eq!(psi.dims(), &[2, 2, 2, 1]);
        let rho = psi.to_density();
        let s = conditional_entropy(&rho, "A", "E").unwrap();
        assert!(close(s, 0.918296, 1e-6));
    }

    #[test]
    fn purification_of_maximally_mixed_qubit() {
        let rho = D::maximally_mixed(vec![2]);
        let psi = purify(&rho);
        assert_eq!(psi.dims(), &[2, 2]);
        assert_eq!(psi.labels()[1], "E");
        let back = psi.reduced(&["A"]).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-12);
        assert!(close(von_neumann_entropy(&psi.reduced(&["E"]).unwrap()), 1.0, 1e-12));
    }

    #[test]
    fn purification_of_dephased_ghz() {
        let p = 0.5f64;
        let c = (1.0 - p).powf(1.5);
        let mut m = CMatrix::zeros(8, 8);
        m[(0, 0)] = creal(0.5);
        m[(7, 7)] = creal(0.5);
        m[(0, 7)] = creal(c / 2.0);
        m[(7, 0)] = creal(c / 2.0);
        let rho = D::with_dims(m, vec![2, 2, 2]).unwrap();
        let psi = purify(&rho);
        assert_eq!(psi.dims(), &[2, 2, 2, 2]);
        let back = psi.reduced(&["A", "B", "C"]).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-9);
        let ev = back.eig().eigenvalues;
        assert!(close(ev[0], 0.676777, 1e-6));
        assert!(close(ev[1], 0.323223, 1e-6));
    }

    #[test]
    fn padded_purification() {
        let psi = purify_with_ancilla(&P::ghz(3).to_density(), 2).unwrap();
        assert_eq!(psi.dims(), &[2, 2, 2, 2]);
        let e = psi.reduced(&["E"]).unwrap();
        assert!(close(e.matrix()[(0, 0)].re, 1.0, 1e-12));
    }

    #[test]
    fn bloch_forms() {
        let mm = D::maximally_mixed(vec![2, 2]);
        let f = bloch_decompose(&mm).unwrap();
        assert!(f.x_norm_sqr() < 1e-15 && f.t_norm_sqr() < 1e-15);

        let f = bloch_decompose(&bell().to_density()).unwrap();
        let want = [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]];
        for i in 0..3 {
            assert!(f.x[i].abs() < 1e-15 && f.y[i].abs() < 1e-15);
            for j in 0..3 {
                assert!(close(f.t[i][j], want[i][j], 1e-15));
            }
        }

        let cl = D::with_dims(CMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5]), vec![2, 2]).unwrap();
        let f = bloch_decompose(&cl).unwrap();
        assert!(close(f.t[2][2], 1.0, 1e-15));
        assert!(f.t_norm_sqr() - 1.0 < 1e-15);
        assert!(bloch_decompose(&P::ghz(3).to_density()).is_err());
    }

    #[test]
    fn validation_errors() {
        let bad = CMatrix::from_vec(2, 2, vec![creal(0.5), creal(0.3), creal(0.0), creal(0.5)]).unwrap();
        assert!(matches!(D::with_dims(bad, vec![2]), Err(Error::NotHermitian { .. })));
        let bad = CMatrix::from_real_diag(&[0.6, 0.6]);
        assert!(matches!(D::with_dims(bad, vec![2]), Err(Error::TraceNotUnit { .. })));
        let bad = CMatrix::from_real_diag(&[1.1, -0.1]);
        assert!(matches!(D::with_dims(bad, vec![2]), Err(Error::NotPositive { .. })));
        let bad = CMatrix::from_real_diag(&[0.25; 4]);
        assert!(matches!(D::with_dims(bad, vec![2, 3]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn tiny_negative_eigenvalues_are_clipped() {
        let m = CMatrix::from_real_diag(&[1.0 + 5e-11, -5e-11]);
        let rho = D::with_dims(m, vec![2]).unwrap();
        assert!(rho.eig().min_eigenvalue() >= 0.0);
        assert!(close(rho.matrix().trace().re, 1.0, 1e-15));
    }

    #[test]
    fn state_file_round_trip() {
        let rho = P::w(3).to_density();
        let text = format_state(&rho);
        let back: D = text.parse().unwrap();
        assert_eq!(back.dims(), rho.dims());
        assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn parses_complex_tokens() {
        let z = parse_complex::<f64>("0.5-0.25j").unwrap();
        assert_eq!((z.re, z.im), (0.5, -0.25));
        let z = parse_complex::<f64>("1e-3+2E-4j").unwrap();
        assert_eq!((z.re, z.im), (1e-3, 2e-4));
        let z = parse_complex::<f64>("-1.5").unwrap();
        assert_eq!((z.re, z.im), (-1.5, 0.0));
        assert!(parse_complex::<f64>("abc").is_none());
    }

    #[test]
    fn parser_rejects_invalid_states() {
        let text = "dims: 2\n0.5+0j 0.3+0j\n0+0j 0.5+0j\n";
        assert!(matches!(parse_state::<f64>(text), Err(Error::NotHermitian { .. })));
        let text = "dims: 2\n0.7+0j 0+0j\n0+0j 0.7+0j\n";
        assert!(matches!(parse_state::<f64>(text), Err(Error::TraceNotUnit { .. })));
        assert!(parse_state::<f64>("0.5 0\n0 0.5\n").is_err());
    }

    #[test]
    fn permute_round_trip() {
        let w = P::w(3).to_density();
        let p = w.permute(&["C", "A", "B"]).unwrap();
        assert_eq!(p.labels(), &["C".to_string(), "A".into(), "B".into()]);
        let back = p.permute(&["A", "B", "C"]).unwrap();
        assert!(back.matrix().max_abs_diff(w.matrix()) < 1e-15);
        // |100> (A excited) maps to index with C first: |010>
        let psi = P::basis(vec![2, 2, 2], 4).unwrap().permute(&["C", "A", "B"]).unwrap();
        assert_eq!(psi.amplitudes()[2], creal(1.0));
    }

    #[test]
    fn works_in_single_precision() {
        let w = PureState::<f32>::w(3).to_density();
        let s = von_neumann_entropy(&w.partial_trace(&["A"]).unwrap());
        assert!((s - 0.918296).abs() < 1e-5);
    }
}
