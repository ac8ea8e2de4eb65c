//! Bipartite correlation measures.
//!
//! Entanglement of formation comes from the Wootters concurrence (two qubits)
//! or from a reduced-state entropy (pure states). Discord and the variational
//! geometric discord search projective bases on the measured side with
//! [`optimize_over_bases`].

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, paulis, singular_values, CMatrix};
use crate::optimize::{
    optimize_over_bases, stable_seed, MeasurementBasis, Mode, OptimizerOptions, OptimizerReport,
};
use crate::qstate::{
    bloch_decompose, marginal_entropy, split_indices, spectrum_entropy, BlochForm, DensityMatrix,
    PureState,
};
use crate::scalar::{binary_entropy, xlog2x_neg, Real};

/// Which correlation measure a value belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CorrelationKind {
    #[serde(rename = "EOF")]
    Eof,
    #[serde(rename = "QD")]
    Qd,
    #[serde(rename = "GQD")]
    Gqd,
}

impl CorrelationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CorrelationKind::Eof => "EOF",
            CorrelationKind::Qd => "QD",
            CorrelationKind::Gqd => "GQD",
        }
    }
}

impl std::fmt::Display for CorrelationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CorrelationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "EOF" => Ok(CorrelationKind::Eof),
            "QD" => Ok(CorrelationKind::Qd),
            "GQD" => Ok(CorrelationKind::Gqd),
            other => Err(Error::Config(format!("unknown measure `{other}`"))),
        }
    }
}

/// A single correlation value between two sets of parties.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = ""))]
pub struct CorrelationValue<T: Real> {
    pub kind: CorrelationKind,
    /// Measured side; `None` for the symmetric entanglement of formation.
    pub measured: Option<Vec<String>>,
    pub unmeasured: Vec<String>,
    /// Reported value, with optimizer slack in `[-1e-6, 0)` clipped to zero.
    pub value: T,
    /// Value before clipping.
    pub raw_value: T,
    /// False for geometric discord with a four-level measured side, which is
    /// reported as the raw distance rather than twice it.
    pub normalized: bool,
    pub report: OptimizerReport,
}

impl<T: Real> CorrelationValue<T> {
    pub fn new(
        kind: CorrelationKind,
        measured: Option<Vec<String>>,
        unmeasured: Vec<String>,
        raw_value: T,
        report: OptimizerReport,
    ) -> Self {
        Self {
            kind,
            measured,
            unmeasured,
            value: clip_slack(raw_value),
            raw_value,
            normalized: true,
            report,
        }
    }

    pub fn converged(&self) -> bool {
        self.report.converged
    }
}

/// Clips values in `[-slack, 0)` to zero; more negative values are kept so
/// they stay visible.
pub fn clip_slack<T: Real>(v: T) -> T {
    if v < T::zero() && v >= -slack::<T>() {
        T::zero()
    } else {
        v
    }
}

pub(crate) fn slack<T: Real>() -> T {
    T::lit(1e-6).max(T::state_tol() * T::lit(100.0))
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

/// Wootters concurrence of a two-qubit state.
///
/// With `rho = W W^dagger`, the numbers `lambda_i` are the singular values of
/// `W^T (sigma_y ⊗ sigma_y) W`, i.e. the square roots of the spectrum of
/// `rho (sigma_y ⊗ sigma_y) rho* (sigma_y ⊗ sigma_y)`.
pub fn concurrence<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    expect_two_qubits(rho)?;
    let spec = rho.eig();
    let mut w = CMatrix::zeros(4, 4);
    for (k, (l, v)) in spec.eigenvalues.iter().zip(&spec.eigenvectors).enumerate() {
        let s = l.max(T::zero()).sqrt();
        for i in 0..4 {
            w[(i, k)] = v[i] * s;
        }
    }
    let sy = &paulis::<T>()[1];
    let yy = sy.kron(sy);
    let tau = &(&w.transpose() * &yy) * &w;
    let sv = singular_values(&tau);
    let c = sv[0] - sv[1] - sv[2] - sv[3];
    Ok(c.max(T::zero()).min(T::one()))
}

/// `h((1 + sqrt(1 - C^2)) / 2)`.
pub fn eof_from_concurrence<T: Real>(c: T) -> T {
    let c = c.max(T::zero()).min(T::one());
    let half = T::lit(0.5);
    binary_entropy(half + half * (T::one() - c * c).sqrt())
}

/// Entanglement of formation of a two-qubit state, in bits.
pub fn eof_two_qubit<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    Ok(eof_from_concurrence(concurrence(rho)?))
}

fn check_cut(labels: &[String], a: &[&str], b: &[&str]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidPartition("both sides of a cut must be nonempty".into()));
    }
    if a.iter().any(|x| b.contains(x)) {
        return Err(Error::InvalidPartition("cut sides overlap".into()));
    }
    if a.len() + b.len() != labels.len() {
        return Err(Error::InvalidPartition(format!(
            "cut {a:?}|{b:?} does not cover parties {labels:?}"
        )));
    }
    for x in a.iter().chain(b) {
        if !labels.iter().any(|l| l == x) {
            return Err(Error::UnknownLabel((*x).to_string()));
        }
    }
    Ok(())
}

/// Entanglement of a pure state across `side_a | side_b`: the entropy of
/// either reduction.
pub fn eof_pure_cut<T: Real>(psi: &PureState<T>, side_a: &[&str], side_b: &[&str]) -> Result<T> {
    check_cut(psi.labels(), side_a, side_b)?;
    let sa = crate::qstate::von_neumann_entropy(&psi.reduced(side_a)?);
    let sb = crate::qstate::von_neumann_entropy(&psi.reduced(side_b)?);
    debug_assert!((sa - sb).abs() <= T::lit(1e-8).max(T::state_tol() * T::lit(100.0)));
    Ok(sa)
}

/// `S_A + S_B - S_AB` for a cut that partitions the state's parties.
pub fn mutual_information<T: Real>(rho: &DensityMatrix<T>, side_a: &[&str], side_b: &[&str]) -> Result<T> {
    check_cut(rho.labels(), side_a, side_b)?;
    let sa = marginal_entropy(rho, side_a)?;
    let sb = marginal_entropy(rho, side_b)?;
    let sab = crate::qstate::von_neumann_entropy(rho);
    Ok(sa + sb - sab)
}

/// Index layout for contracting a measured subsystem with a basis vector.
pub(crate) struct MeasuredLayout {
    /// `table[r][m]` is the flat index with unmeasured index `r` and measured
    /// index `m`.
    table: Vec<Vec<usize>>,
    measured_dim: usize,
    pub(crate) measured: Vec<String>,
    pub(crate) unmeasured: Vec<String>,
}

impl MeasuredLayout {
    pub(crate) fn new<T: Real>(rho: &DensityMatrix<T>, measured: &[&str]) -> Result<Self> {
        if measured.is_empty() {
            return Err(Error::InvalidPartition("empty measured side".into()));
        }
        let mut pos = rho.positions(measured)?;
        if pos.len() == rho.party_count() {
            return Err(Error::InvalidPartition("measured side has every party".into()));
        }
        pos.sort_unstable();
        let dims = rho.dims();
        let md: usize = pos.iter().map(|&p| dims[p]).product();
        let rd = rho.dim() / md;
        let mut table = vec![vec![0usize; md]; rd];
        for (i, (m, r)) in split_indices(dims, &pos).into_iter().enumerate() {
            table[r][m] = i;
        }
        let labels = rho.labels();
        Ok(Self {
            table,
            measured_dim: md,
            measured: pos.iter().map(|&p| labels[p].clone()).collect(),
            unmeasured: (0..labels.len())
                .filter(|p| !pos.contains(p))
                .map(|p| labels[p].clone())
                .collect(),
        })
    }

    pub(crate) fn measured_dim(&self) -> usize {
        self.measured_dim
    }

    /// `(<u| ⊗ I) rho (|u> ⊗ I)` on the unmeasured parties; its trace is the
    /// outcome probability.
    pub(crate) fn block<T: Real>(&self, rho: &CMatrix<T>, u: &[crate::scalar::C<T>]) -> CMatrix<T> {
        let rd = self.table.len();
        let mut out = CMatrix::zeros(rd, rd);
        for r1 in 0..rd {
            for r2 in r1..rd {
                let mut acc = crate::scalar::C::<T>::zero();
                for (m1, &i) in self.table[r1].iter().enumerate() {
                    let mut row = crate::scalar::C::<T>::zero();
                    for (m2, &j) in self.table[r2].iter().enumerate() {
                        row = row + rho[(i, j)] * u[m2];
                    }
                    acc = acc + u[m1].conj() * row;
                }
                out[(r1, r2)] = acc;
                out[(r2, r1)] = acc.conj();
            }
        }
        out
    }
}

/// `p S(block / p)` computed from the unnormalized block.
fn weighted_block_entropy<T: Real>(block: &CMatrix<T>) -> T {
    let p = block.trace().re;
    if p < T::lit(1e-12) {
        return T::zero();
    }
    let spec = eig_hermitian(block).expect("conditional block is Hermitian");
    let s: T = spec.eigenvalues.iter().map(|&l| xlog2x_neg(l)).sum();
    (s + p * p.log2()).max(T::zero())
}

fn measured_qubit<T: Real>(rho: &DensityMatrix<T>, measured: &str) -> Result<MeasuredLayout> {
    let d = rho.party_dim(measured)?;
    if d != 2 {
        return Err(Error::UnsupportedDimension(format!(
            "measured party `{measured}` has dimension {d}, a qubit is required"
        )));
    }
    let layout = MeasuredLayout::new(rho, &[measured])?;
    if layout.table.len() > 4 {
        return Err(Error::UnsupportedDimension(format!(
            "unmeasured side of dimension {} exceeds 4",
            layout.table.len()
        )));
    }
    Ok(layout)
}

/// Classical correlation `J` with a projective measurement on the qubit
/// `measured`: the maximum over bases of `S_rest - Σ_k p_k S(rho_rest|k)`.
pub fn classical_correlation<T: Real>(
    rho: &DensityMatrix<T>,
    measured: &str,
) -> Result<(T, MeasurementBasis<T>, OptimizerReport)> {
    classical_correlation_with(rho, measured, &OptimizerOptions::default())
}

pub fn classical_correlation_with<T: Real>(
    rho: &DensityMatrix<T>,
    measured: &str,
    opts: &OptimizerOptions,
) -> Result<(T, MeasurementBasis<T>, OptimizerReport)> {
    let layout = measured_qubit(rho, measured)?;
    let rest: Vec<&str> = layout.unmeasured.iter().map(String::as_str).collect();
    let s_rest = marginal_entropy(rho, &rest)?;
    let m = rho.matrix();
    let objective = |b: &MeasurementBasis<T>| -> T {
        let cond: T = b
            .vectors
            .iter()
            .map(|u| weighted_block_entropy(&layout.block(m, u)))
            .sum();
        s_rest - cond
    };
    let seed = stable_seed(rho, &format!("J|{measured}"), opts.seed);
    let (j, basis, report) = optimize_over_bases(objective, 2, Mode::Maximize, opts, seed)?;
    Ok((j, basis.with_parties(layout.measured.clone()), report))
}

/// Discord `I - J` with the qubit `measured` as the measured side.
pub fn quantum_discord<T: Real>(rho: &DensityMatrix<T>, measured: &str) -> Result<CorrelationValue<T>> {
    quantum_discord_with(rho, measured, &OptimizerOptions::default())
}

pub fn quantum_discord_with<T: Real>(
    rho: &DensityMatrix<T>,
    measured: &str,
    opts: &OptimizerOptions,
) -> Result<CorrelationValue<T>> {
    let (j, _, report) = classical_correlation_with(rho, measured, opts)?;
    let rest: Vec<String> = rho.labels().iter().filter(|l| *l != measured).cloned().collect();
    let rest_ref: Vec<&str> = rest.iter().map(String::as_str).collect();
    let i = mutual_information(rho, &rest_ref, &[measured])?;
    Ok(CorrelationValue::new(
        CorrelationKind::Qd,
        Some(vec![measured.to_string()]),
        rest,
        i - j,
        report,
    ))
}

/// `D = (||x||^2 + ||T||^2 - lambda_max(K)) / 4` from a Bloch form whose `x`
/// belongs to the measured party.
pub fn gqd_from_bloch<T: Real>(form: &BlochForm<T>) -> T {
    let mut k = CMatrix::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            k[(i, j)] = crate::scalar::creal(form.k[i][j]);
        }
    }
    let lmax = eig_hermitian(&k).expect("K is symmetric").max_eigenvalue();
    (form.x_norm_sqr() + form.t_norm_sqr() - lmax) * T::lit(0.25)
}

/// Closed-form geometric discord of a two-qubit state with the first listed
/// party measured, reported as `2D`.
pub fn gqd_closed_form<T: Real>(rho: &DensityMatrix<T>) -> Result<CorrelationValue<T>> {
    expect_two_qubits(rho)?;
    let d = gqd_from_bloch(&bloch_decompose(rho)?);
    let two_d = d * T::lit(2.0);
    Ok(CorrelationValue::new(
        CorrelationKind::Gqd,
        Some(vec![rho.labels()[0].clone()]),
        vec![rho.labels()[1].clone()],
        two_d,
        OptimizerReport::analytic(two_d.as_f64()),
    ))
}

/// Geometric discord as `min_Π ||rho - Π(rho)||^2` over projective bases on
/// `measured` (total dimension 2 or 4).
///
/// A qubit measured side is reported as `2D` with `normalized = true`; a
/// four-level side is reported as raw `D` with `normalized = false`.
pub fn gqd_variational<T: Real>(rho: &DensityMatrix<T>, measured: &[&str]) -> Result<CorrelationValue<T>> {
    gqd_variational_with(rho, measured, &OptimizerOptions::default())
}

pub fn gqd_variational_with<T: Real>(
    rho: &DensityMatrix<T>,
    measured: &[&str],
    opts: &OptimizerOptions,
) -> Result<CorrelationValue<T>> {
    if rho.dim() > 16 {
        return Err(Error::UnsupportedDimension(format!(
            "state dimension {} exceeds 16",
            rho.dim()
        )));
    }
    let layout = MeasuredLayout::new(rho, measured)?;
    let md = layout.measured_dim();
    if md != 2 && md != 4 {
        return Err(Error::UnsupportedDimension(format!(
            "measured side of dimension {md}; 2 or 4 supported"
        )));
    }
    let m = rho.matrix();
    let purity = rho.purity();
    // ||rho - Π(rho)||^2 = Tr rho^2 - Σ_k Tr (rho_k)^2 for the measured blocks.
    let objective = |b: &MeasurementBasis<T>| -> T {
        let kept: T = b
            .vectors
            .iter()
            .map(|u| layout.block(m, u).hs_norm_sqr())
            .sum();
        purity - kept
    };
    let seed = stable_seed(rho, &format!("GQD|{}", layout.measured.join(",")), opts.seed);
    let (d, _, report) = optimize_over_bases(objective, md, Mode::Minimize, opts, seed)?;
    let (value, normalized) = if md == 2 {
        (d * T::lit(2.0), true)
    } else {
        (d, false)
    };
    let mut cv = CorrelationValue::new(
        CorrelationKind::Gqd,
        Some(layout.measured.clone()),
        layout.unmeasured.clone(),
        value,
        report,
    );
    cv.normalized = normalized;
    Ok(cv)
}

/// Entropy in bits of the reduced state of a pure state on `parties`.
pub fn pure_cut_entropy<T: Real>(psi: &PureState<T>, parties: &[&str]) -> Result<T> {
    Ok(spectrum_entropy(&psi.reduced(parties)?.eig().eigenvalues))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::creal;

    type D = DensityMatrix<f64>;
    type P = PureState<f64>;

    fn bell() -> D {
        P::normalized(vec![creal(1.0), creal(0.0), creal(0.0), creal(1.0)], vec![2, 2])
            .unwrap()
            .to_density()
    }

    fn classical_pair() -> D {
        D::with_dims(CMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5]), vec![2, 2]).unwrap()
    }

    fn product() -> D {
        let a = P::normalized(vec![creal(0.6), crate::scalar::cplx(0.0, 0.8)], vec![2]).unwrap();
        let b = P::normalized(vec![creal(1.0), creal(2.0)], vec![2])
            .unwrap()
            .relabel(vec!["B".into()])
            .unwrap();
        a.tensor(&b).unwrap().to_density()
    }

    /// ½|0><0|⊗|0><0| + ½|1><1|⊗|+><+|
    fn cq_state() -> D {
        let h = 0.5f64;
        let m = CMatrix::from_real_diag(&[h, 0.0, 0.0, 0.0]);
        let mut m2 = CMatrix::zeros(4, 4);
        for i in 2..4 {
            for j in 2..4 {
                m2[(i, j)] = creal(h * 0.5);
            }
        }
        D::with_dims(&m + &m2, vec![2, 2]).unwrap()
    }

    #[test]
    fn concurrence_of_reference_states() {
        assert!((concurrence(&bell()).unwrap() - 1.0).abs() < 1e-12);
        assert!(concurrence(&product()).unwrap() < 1e-12);
        let w_ab = P::w(3).reduced(&["A", "B"]).unwrap();
        assert!((concurrence(&w_ab).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert!(concurrence(&P::ghz(3).to_density()).is_err());
    }

    #[test]
    fn eof_values() {
        assert!((eof_from_concurrence(1.0f64) - 1.0).abs() < 1e-15);
        assert_eq!(eof_from_concurrence(0.0f64), 0.0);
        let w_ab = P::w(3).reduced(&["A", "B"]).unwrap();
        let e = eof_two_qubit(&w_ab).unwrap();
        // h((1 + sqrt 5 / 3) / 2)
        let want = binary_entropy(0.5 + 5f64.sqrt() / 6.0);
        assert!((e - want).abs() < 1e-12);
        assert!((e - 0.550048).abs() < 1e-6);
    }

    #[test]
    fn eof_strictly_increasing_in_concurrence() {
        let vals: Vec<f64> = (0..100).map(|k| eof_from_concurrence(k as f64 / 99.0)).collect();
        assert!(vals.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn pure_cut_entropies() {
        let ghz = P::ghz(3);
        assert!((eof_pure_cut(&ghz, &["A"], &["B", "C"]).unwrap() - 1.0).abs() < 1e-12);
        let w = P::w(3);
        assert!((eof_pure_cut(&w, &["A"], &["B", "C"]).unwrap() - 0.918296).abs() < 1e-6);
        assert!(
            (eof_pure_cut(&w, &["A"], &["B", "C"]).unwrap() - eof_pure_cut(&w, &["B", "C"], &["A"]).unwrap()).abs()
                < 1e-9
        );
        let bc = P::normalized(vec![creal(0.0), creal(1.0), creal(1.0), creal(0.0)], vec![2, 2])
            .unwrap()
            .relabel(vec!["B".into(), "C".into()])
            .unwrap();
        let prod = P::basis(vec![2], 0).unwrap().tensor(&bc).unwrap();
        assert!(eof_pure_cut(&prod, &["A"], &["B", "C"]).unwrap().abs() < 1e-12);
        assert!(eof_pure_cut(&ghz, &["A"], &["B"]).is_err());
        assert!(eof_pure_cut(&ghz, &["A"], &["A", "B", "C"]).is_err());
    }

    #[test]
    fn mutual_information_values() {
        assert!(mutual_information(&product(), &["A"], &["B"]).unwrap().abs() < 1e-12);
        assert!((mutual_information(&bell(), &["A"], &["B"]).unwrap() - 2.0).abs() < 1e-12);
        assert!((mutual_information(&classical_pair(), &["A"], &["B"]).unwrap() - 1.0).abs() < 1e-12);
        assert!(mutual_information(&bell(), &["A"], &["A"]).is_err());
    }

    #[test]
    fn classical_correlation_values() {
        let (j, b, _) = classical_correlation(&product(), "A").unwrap();
        assert!(j.abs() < 1e-10);
        assert!(b.orthonormality_defect() < 1e-12);
        assert_eq!(b.parties, vec!["A".to_string()]);
        for m in ["A", "B"] {
            let (j, _, rep) = classical_correlation(&bell(), m).unwrap();
            assert!((j - 1.0).abs() < 1e-9, "{j}");
            assert!(rep.converged);
        }
        let chi = cq_state();
        let (j, _, _) = classical_correlation(&chi, "A").unwrap();
        let i = mutual_information(&chi, &["A"], &["B"]).unwrap();
        assert!((i - j).abs() < 1e-9);
    }

    #[test]
    fn discord_values() {
        let q = quantum_discord(&bell(), "B").unwrap();
        assert!((q.value - 1.0).abs() < 1e-9);
        assert_eq!(q.kind, CorrelationKind::Qd);
        assert_eq!(q.measured.as_deref(), Some(&["B".to_string()][..]));
        assert!(quantum_discord(&cq_state(), "A").unwrap().value < 1e-9);
        // measuring the quantum side of the CQ state is disturbing
        assert!(quantum_discord(&cq_state(), "B").unwrap().value > 1e-3);
    }

    #[test]
    fn discord_requires_measured_qubit() {
        let w = P::w(3).to_density();
        let purified = crate::qstate::purify(&D::maximally_mixed(vec![2]));
        assert!(quantum_discord(&w, "Z").is_err());
        let rho = purified.relabel(vec!["A".into(), "B".into()]).unwrap().to_density();
        assert!(quantum_discord(&rho, "A").is_ok());
        let q3 = D::maximally_mixed(vec![3, 2]);
        assert!(matches!(quantum_discord(&q3, "A"), Err(Error::UnsupportedDimension(_))));
        let big = D::maximally_mixed(vec![2, 2, 2, 2]);
        assert!(matches!(quantum_discord(&big, "A"), Err(Error::UnsupportedDimension(_))));
    }

    #[test]
    fn gqd_closed_form_values() {
        assert!(gqd_closed_form(&product()).unwrap().value.abs() < 1e-12);
        assert!(gqd_closed_form(&cq_state()).unwrap().value.abs() < 1e-12);
        assert!((gqd_closed_form(&bell()).unwrap().value - 1.0).abs() < 1e-12);
        assert!(gqd_closed_form(&classical_pair()).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn gqd_variational_values() {
        let v = gqd_variational(&cq_state(), &["A"]).unwrap();
        assert!(v.value < 1e-10 && v.normalized);
        let v = gqd_variational(&bell(), &["A"]).unwrap();
        assert!((v.value - 1.0).abs() < 1e-9);
        // pure state: D = 1 - Σ λ_i^2 of the measured reduction
        let ghz = P::ghz(3).to_density();
        let v = gqd_variational(&ghz, &["B", "C"]).unwrap();
        assert!(!v.normalized);
        assert!((v.value - 0.5).abs() < 1e-8, "{}", v.value);
        assert!(gqd_variational(&D::maximally_mixed(vec![2, 2, 2, 2, 2]), &["A"]).is_err());
        assert!(gqd_variational(&ghz, &["A", "B", "C"]).is_err());
        assert!(gqd_variational(&D::maximally_mixed(vec![2, 2, 2, 2]), &["A", "B", "C"]).is_err());
    }

    #[test]
    fn clipping() {
        assert_eq!(clip_slack(-5e-7f64), 0.0);
        assert_eq!(clip_slack(-5e-6f64), -5e-6);
        assert_eq!(clip_slack(0.25f64), 0.25);
    }
}
