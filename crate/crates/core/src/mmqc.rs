//! Multipartite measure of quantum correlation: a bipartite measure summed
//! over every ordered pair of disjoint party subsets.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bicorr::{
    clip_slack, concurrence, eof_from_concurrence, eof_two_qubit, gqd_variational_with, pure_cut_entropy,
    quantum_discord_with, CorrelationKind, CorrelationValue,
};
use crate::error::{Error, Result};
use crate::optimize::OptimizerOptions;
use crate::qstate::{conditional_entropy, purify_with_ancilla, DensityMatrix, PureState};
use crate::scalar::Real;

/// `M_{unmeasured(measured)}`: a correlation between two disjoint, nonempty
/// groups of parties, evaluated on their joint reduced state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartitionTerm {
    pub unmeasured: Vec<String>,
    pub measured: Vec<String>,
}

impl BipartitionTerm {
    pub fn new(unmeasured: Vec<String>, measured: Vec<String>) -> Result<Self> {
        if unmeasured.is_empty() || measured.is_empty() {
            return Err(Error::InvalidPartition("empty side".into()));
        }
        if unmeasured.iter().any(|l| measured.contains(l)) {
            return Err(Error::InvalidPartition(format!(
                "sides {unmeasured:?} and {measured:?} overlap"
            )));
        }
        Ok(Self { unmeasured, measured })
    }

    /// Compact name such as `A(BC)`.
    pub fn name(&self) -> String {
        format!("{}({})", self.unmeasured.concat(), self.measured.concat())
    }

    pub fn is_pairwise(&self) -> bool {
        self.unmeasured.len() == 1 && self.measured.len() == 1
    }

    /// Parties the term is evaluated on, in the order of `order`.
    pub fn support<'a>(&self, order: &'a [String]) -> Vec<&'a str> {
        order
            .iter()
            .filter(|l| self.unmeasured.contains(l) || self.measured.contains(l))
            .map(String::as_str)
            .collect()
    }
}

impl std::fmt::Display for BipartitionTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

fn members(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// All ordered pairs of disjoint nonempty subsets of `parties`.
///
/// Terms are grouped by their joint support (smaller supports first, then
/// lexicographically); within a support each split is emitted as
/// `(smaller side, larger side)` followed by its mirror. For three parties
/// this yields `A(B) B(A) A(C) C(A) B(C) C(B) A(BC) BC(A) B(AC) AC(B) C(AB) AB(C)`.
pub fn enumerate_terms<S: AsRef<str>>(parties: &[S]) -> Result<Vec<BipartitionTerm>> {
    let n = parties.len();
    if n < 2 {
        return Err(Error::TooFewParties(n));
    }
    if n > 16 {
        return Err(Error::Config(format!("{n} parties is too many to enumerate")));
    }
    let names: Vec<String> = parties.iter().map(|s| s.as_ref().to_string()).collect();
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(Error::InvalidPartition(format!("duplicate party `{a}`")));
        }
    }
    let pick = |idx: &[usize]| idx.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();

    let mut unions: Vec<usize> = (1..1usize << n).filter(|m| m.count_ones() >= 2).collect();
    unions.sort_by_key(|&m| (m.count_ones(), members(m, n)));

    let mut terms = Vec::new();
    for u in unions {
        let low = u & u.wrapping_neg();
        let size = u.count_ones();
        let mut splits: Vec<usize> = Vec::new();
        let mut sub = (u - 1) & u;
        while sub > 0 {
            let k = sub.count_ones();
            if 2 * k < size || (2 * k == size && sub & low != 0) {
                splits.push(sub);
            }
            sub = (sub - 1) & u;
        }
        splits.sort_by_key(|&s| (s.count_ones(), members(s, n)));
        for s in splits {
            let first = pick(&members(s, n));
            let second = pick(&members(u & !s, n));
            terms.push(BipartitionTerm { unmeasured: first.clone(), measured: second.clone() });
            terms.push(BipartitionTerm { unmeasured: second, measured: first });
        }
    }
    Ok(terms)
}

/// How a report was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "pure-analytic")]
    PureAnalytic,
    #[serde(rename = "rank2-monogamy")]
    Rank2Monogamy,
    #[serde(rename = "direct")]
    Direct,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::PureAnalytic => "pure-analytic",
            Method::Rank2Monogamy => "rank2-monogamy",
            Method::Direct => "direct",
        }
    }
}

/// One evaluated term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = ""))]
pub struct TermResult<T: Real> {
    pub unmeasured: Vec<String>,
    pub measured: Vec<String>,
    pub value: T,
    pub raw_value: T,
    pub converged: bool,
    pub normalized: bool,
}

impl<T: Real> TermResult<T> {
    fn exact(term: &BipartitionTerm, raw: T) -> Self {
        Self::from_raw(term, raw, true, true)
    }

    fn from_raw(term: &BipartitionTerm, raw: T, converged: bool, normalized: bool) -> Self {
        Self {
            unmeasured: term.unmeasured.clone(),
            measured: term.measured.clone(),
            value: clip_slack(raw),
            raw_value: raw,
            converged,
            normalized,
        }
    }

    fn from_value(term: &BipartitionTerm, v: &CorrelationValue<T>) -> Self {
        Self::from_raw(term, v.raw_value, v.converged(), v.normalized)
    }

    pub fn term(&self) -> BipartitionTerm {
        BipartitionTerm { unmeasured: self.unmeasured.clone(), measured: self.measured.clone() }
    }

    pub fn name(&self) -> String {
        self.term().name()
    }
}

/// Quantities of a single party `X` and the purifying qubit `E`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = ""))]
pub struct EnvironmentTerms<T: Real> {
    pub party: String,
    /// Discord of `rho_XE` with `E` measured.
    pub discord: T,
    /// Entanglement of formation of `rho_XE`.
    pub eof: T,
    pub concurrence: T,
    /// `S(X|E) = S(XE) - S(E)`.
    pub conditional_entropy: T,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = ""))]
pub struct MmqcReport<T: Real> {
    pub kind: CorrelationKind,
    pub method: Method,
    pub total: T,
    pub terms: Vec<TermResult<T>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub environment: Vec<EnvironmentTerms<T>>,
}

impl<T: Real> MmqcReport<T> {
    fn assemble(kind: CorrelationKind, method: Method, terms: Vec<TermResult<T>>) -> Self {
        let total = terms.iter().map(|t| t.value).sum();
        Self { kind, method, total, terms, environment: Vec::new() }
    }

    pub fn converged(&self) -> bool {
        self.terms.iter().all(|t| t.converged) && self.environment.iter().all(|e| e.converged)
    }

    pub fn term(&self, name: &str) -> Option<&TermResult<T>> {
        self.terms.iter().find(|t| t.name() == name)
    }

    pub fn pairwise_sum(&self) -> T {
        self.terms.iter().filter(|t| t.term().is_pairwise()).map(|t| t.value).sum()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Which geometric-discord terms to evaluate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GqdTerms {
    /// Every term, including those with a two-qubit measured side.
    #[default]
    All,
    /// Only terms whose measured side is a single qubit.
    QubitMeasured,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MmqcOptions {
    pub optimizer: OptimizerOptions,
    pub gqd_terms: GqdTerms,
}

impl MmqcOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self { optimizer: OptimizerOptions::with_seed(seed), ..Self::default() }
    }
}

fn expect_three_qubits(dims: &[usize]) -> Result<()> {
    if dims != [2, 2, 2] {
        return Err(Error::UnsupportedDimension(format!(
            "three qubits required, got dims {dims:?}"
        )));
    }
    Ok(())
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn expect_eof_or_qd(kind: CorrelationKind) -> Result<()> {
    if kind == CorrelationKind::Gqd {
        return Err(Error::Config("this path evaluates EOF or QD only".into()));
    }
    Ok(())
}

fn pairwise_term<T: Real>(
    reduced: &DensityMatrix<T>,
    term: &BipartitionTerm,
    kind: CorrelationKind,
    opts: &OptimizerOptions,
) -> Result<TermResult<T>> {
    match kind {
        CorrelationKind::Eof => Ok(TermResult::exact(term, eof_two_qubit(reduced)?)),
        CorrelationKind::Qd => {
            let v = quantum_discord_with(reduced, &term.measured[0], opts)?;
            Ok(TermResult::from_value(term, &v))
        }
        CorrelationKind::Gqd => {
            let v = gqd_variational_with(reduced, &refs(&term.measured), opts)?;
            Ok(TermResult::from_value(term, &v))
        }
    }
}

/// Pure three-qubit path: every cut term equals the entropy of the single
/// party, and pairwise terms are evaluated on two-qubit reductions.
pub fn mmqc_pure<T: Real>(psi: &PureState<T>, kind: CorrelationKind) -> Result<MmqcReport<T>> {
    mmqc_pure_with(psi, kind, &MmqcOptions::default())
}

pub fn mmqc_pure_with<T: Real>(
    psi: &PureState<T>,
    kind: CorrelationKind,
    opts: &MmqcOptions,
) -> Result<MmqcReport<T>> {
    expect_eof_or_qd(kind)?;
    expect_three_qubits(psi.dims())?;
    let labels = psi.labels().to_vec();
    let terms = enumerate_terms(&labels)?;
    let results = terms
        .par_iter()
        .map(|term| {
            if term.is_pairwise() {
                let reduced = psi.reduced(&term.support(&labels))?;
                pairwise_term(&reduced, term, kind, &opts.optimizer)
            } else {
                let single = if term.unmeasured.len() == 1 { &term.unmeasured } else { &term.measured };
                Ok(TermResult::exact(term, pure_cut_entropy(psi, &refs(single))?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = MmqcReport::assemble(kind, Method::PureAnalytic, results);
    report.environment = labels
        .iter()
        .map(|x| {
            Ok(EnvironmentTerms {
                party: x.clone(),
                discord: T::zero(),
                eof: T::zero(),
                concurrence: T::zero(),
                conditional_entropy: pure_cut_entropy(psi, &[x.as_str()])?,
                converged: true,
            })
        })
        .collect::<Result<_>>()?;
    Ok(report)
}

/// Sum of the six pairwise EOF terms and of the six pairwise discord terms of
/// a pure three-qubit state; the two agree for every pure state.
pub fn pairwise_sum_identity_check<T: Real>(psi: &PureState<T>) -> Result<(T, T)> {
    pairwise_sum_identity_check_with(psi, &MmqcOptions::default())
}

pub fn pairwise_sum_identity_check_with<T: Real>(psi: &PureState<T>, opts: &MmqcOptions) -> Result<(T, T)> {
    let eof = mmqc_pure_with(psi, CorrelationKind::Eof, opts)?;
    let qd = mmqc_pure_with(psi, CorrelationKind::Qd, opts)?;
    Ok((eof.pairwise_sum(), qd.pairwise_sum()))
}

/// Rank-2 three-qubit path. The state is purified with a qubit environment
/// `E`; the cut terms follow from two-qubit quantities of `rho_XE`:
///
/// * `E_{X(YZ)} = E_{YZ(X)} = delta_{X(E)} + S(X|E)`
/// * `delta_{X(YZ)} = E_{X(E)} + S(X|E)`
///
/// while `delta_{YZ(X)}` is optimized directly on the full state.
pub fn mmqc_rank2<T: Real>(rho: &DensityMatrix<T>, kind: CorrelationKind) -> Result<MmqcReport<T>> {
    mmqc_rank2_with(rho, kind, &MmqcOptions::default())
}

pub fn mmqc_rank2_with<T: Real>(
    rho: &DensityMatrix<T>,
    kind: CorrelationKind,
    opts: &MmqcOptions,
) -> Result<MmqcReport<T>> {
    expect_eof_or_qd(kind)?;
    expect_three_qubits(rho.dims())?;
    let rank = rho.rank();
    if rank > 2 {
        return Err(Error::RankTooHigh { rank });
    }
    let psi = purify_with_ancilla(rho, 2)?;
    let env_label = psi.labels().last().expect("ancilla label").clone();
    let labels = rho.labels().to_vec();

    let environment = labels
        .par_iter()
        .map(|x| {
            let rho_xe = psi.reduced(&[x.as_str(), env_label.as_str()])?;
            let delta = quantum_discord_with(&rho_xe, &env_label, &opts.optimizer)?;
            let c = concurrence(&rho_xe)?;
            Ok(EnvironmentTerms {
                party: x.clone(),
                discord: delta.raw_value,
                eof: eof_from_concurrence(c),
                concurrence: c,
                conditional_entropy: conditional_entropy(&rho_xe, x, &env_label)?,
                converged: delta.converged(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let env_of = |x: &str| environment.iter().find(|e| e.party == x).expect("every party has an entry");

    let terms = enumerate_terms(&labels)?;
    let results = terms
        .par_iter()
        .map(|term| {
            if term.is_pairwise() {
                let reduced = rho.marginal(&term.support(&labels))?;
                return pairwise_term(&reduced, term, kind, &opts.optimizer);
            }
            let single_unmeasured = term.unmeasured.len() == 1;
            let x = if single_unmeasured { &term.unmeasured[0] } else { &term.measured[0] };
            let env = env_of(x);
            match (kind, single_unmeasured) {
                (CorrelationKind::Eof, _) => Ok(TermResult::from_raw(
                    term,
                    env.discord + env.conditional_entropy,
                    env.converged,
                    true,
                )),
                (_, true) => Ok(TermResult::exact(term, env.eof + env.conditional_entropy)),
                (_, false) => {
                    let v = quantum_discord_with(rho, x, &opts.optimizer)?;
                    Ok(TermResult::from_value(term, &v))
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = MmqcReport::assemble(kind, Method::Rank2Monogamy, results);
    report.environment = environment;
    Ok(report)
}

/// Geometric discord summed over the terms of a three-qubit state of any
/// rank, by direct minimization over measurement bases.
pub fn mmqc_gqd<T: Real>(rho: &DensityMatrix<T>) -> Result<MmqcReport<T>> {
    mmqc_gqd_with(rho, &MmqcOptions::default())
}

pub fn mmqc_gqd_with<T: Real>(rho: &DensityMatrix<T>, opts: &MmqcOptions) -> Result<MmqcReport<T>> {
    expect_three_qubits(rho.dims())?;
    let labels = rho.labels().to_vec();
    let terms: Vec<BipartitionTerm> = enumerate_terms(&labels)?
        .into_iter()
        .filter(|t| opts.gqd_terms == GqdTerms::All || t.measured.len() == 1)
        .collect();
    let results = terms
        .par_iter()
        .map(|term| {
            let reduced = if term.is_pairwise() {
                rho.marginal(&term.support(&labels))?
            } else {
                rho.clone()
            };
            pairwise_term(&reduced, term, CorrelationKind::Gqd, &opts.optimizer)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MmqcReport::assemble(CorrelationKind::Gqd, Method::Direct, results))
}

/// Purity at or above which a state takes the pure path.
pub const PURE_THRESHOLD: f64 = 1.0 - 1e-9;

/// Picks the evaluation path: GQD is always direct; EOF and QD use the pure
/// path for pure states, the monogamy path for rank 2, and fail otherwise.
pub fn mmqc<T: Real>(rho: &DensityMatrix<T>, kind: CorrelationKind) -> Result<MmqcReport<T>> {
    mmqc_with(rho, kind, &MmqcOptions::default())
}

pub fn mmqc_with<T: Real>(
    rho: &DensityMatrix<T>,
    kind: CorrelationKind,
    opts: &MmqcOptions,
) -> Result<MmqcReport<T>> {
    if kind == CorrelationKind::Gqd {
        return mmqc_gqd_with(rho, opts);
    }
    if rho.purity().as_f64() >= PURE_THRESHOLD {
        if let Ok(psi) = rho.to_pure() {
            return mmqc_pure_with(&psi, kind, opts);
        }
    }
    mmqc_rank2_with(rho, kind, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::channels::{evolve, phase_damping};
    use crate::random::{ginibre_density, haar_pure, random_classical_classical};
    use crate::scalar::binary_entropy;

    type P = PureState<f64>;

    fn names(terms: &[BipartitionTerm]) -> Vec<String> {
        terms.iter().map(BipartitionTerm::name).collect()
    }

    #[test]
    fn enumeration() {
        assert_eq!(names(&enumerate_terms(&["A", "B"]).unwrap()), ["A(B)", "B(A)"]);
        assert_eq!(
            names(&enumerate_terms(&["A", "B", "C"]).unwrap()),
            [
                "A(B)", "B(A)", "A(C)", "C(A)", "B(C)", "C(B)", "A(BC)", "BC(A)", "B(AC)", "AC(B)", "C(AB)",
                "AB(C)"
            ]
        );
        let four = enumerate_terms(&["A", "B", "C", "D"]).unwrap();
        assert_eq!(four.len(), 50);
        let unique: std::collections::HashSet<_> = four.iter().collect();
        assert_eq!(unique.len(), 50);
        assert!(matches!(enumerate_terms(&["A"]), Err(Error::TooFewParties(1))));
        assert!(enumerate_terms(&["A", "A"]).is_err());
    }

    #[test]
    fn term_validation() {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert!(BipartitionTerm::new(s(&["A"]), s(&["A", "B"])).is_err());
        assert!(BipartitionTerm::new(s(&[]), s(&["B"])).is_err());
        assert_eq!(BipartitionTerm::new(s(&["A"]), s(&["B", "C"])).unwrap().name(), "A(BC)");
    }

    #[test]
    fn ghz_pure_totals() {
        let ghz = P::ghz(3);
        for kind in [CorrelationKind::Eof, CorrelationKind::Qd] {
            let r = mmqc_pure(&ghz, kind).unwrap();
            assert_eq!(r.terms.len(), 12);
            assert!((r.total - 6.0).abs() < 2e-4, "{kind}: {}", r.total);
            assert!(r.pairwise_sum().abs() < 1e-6);
        }
    }

    #[test]
    fn w_pure_totals() {
        let w = P::w(3);
        let r = mmqc_pure(&w, CorrelationKind::Eof).unwrap();
        let s_a = binary_entropy(1.0 / 3.0);
        let c = 2.0f64 / 3.0;
        let e = binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0);
        assert!((r.total - 6.0 * (s_a + e)).abs() < 1e-9);
        let (lhs, rhs) = pairwise_sum_identity_check(&w).unwrap();
        assert!((lhs - 6.0 * e).abs() < 1e-9);
        assert!((lhs - rhs).abs() < 2e-4, "{lhs} vs {rhs}");
    }

    #[test]
    fn product_state_is_zero() {
        let zero = P::basis(vec![2, 2, 2], 0).unwrap();
        for kind in [CorrelationKind::Eof, CorrelationKind::Qd] {
            assert!(mmqc_pure(&zero, kind).unwrap().total.abs() < 1e-9);
        }
        assert!(mmqc_gqd(&zero.to_density()).unwrap().total.abs() < 1e-9);
    }

    #[test]
    fn mixed_input_is_rejected_by_pure_path_dispatch() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = ginibre_density::<f64, _>(&[2, 2, 2], 3, &mut rng).unwrap();
        assert!(matches!(mmqc(&rho, CorrelationKind::Eof), Err(Error::RankTooHigh { rank: 3 })));
        assert!(mmqc_gqd(&rho).is_ok());
    }

    #[test]
    fn rank2_matches_pure_on_rank1() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..3 {
            let psi = haar_pure::<f64, _>(&[2, 2, 2], &mut rng);
            for kind in [CorrelationKind::Eof, CorrelationKind::Qd] {
                let a = mmqc_pure(&psi, kind).unwrap();
                let b = mmqc_rank2(&psi.to_density(), kind).unwrap();
                assert_eq!(b.method, Method::Rank2Monogamy);
                assert!((a.total - b.total).abs() < 2e-4, "{kind}: {} vs {}", a.total, b.total);
            }
        }
    }

    #[test]
    fn eof_cut_terms_are_reported_twice() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rho = ginibre_density::<f64, _>(&[2, 2, 2], 2, &mut rng).unwrap();
        let r = mmqc_rank2(&rho, CorrelationKind::Eof).unwrap();
        for (a, b) in [("A(BC)", "BC(A)"), ("B(AC)", "AC(B)"), ("C(AB)", "AB(C)")] {
            assert_eq!(r.term(a).unwrap().raw_value, r.term(b).unwrap().raw_value);
        }
        assert!((r.total - r.terms.iter().map(|t| t.value).sum::<f64>()).abs() < 1e-12);
    }

    #[test]
    fn dephased_ghz_identities() {
        let ghz = P::ghz(3).to_density();
        for p in [0.2, 0.6, 0.9] {
            let rho = evolve(&ghz, &vec![phase_damping(p).unwrap(); 3]).unwrap();
            let qd = mmqc_rank2(&rho, CorrelationKind::Qd).unwrap();
            let eof = mmqc_rank2(&rho, CorrelationKind::Eof).unwrap();
            let s: f64 = qd.environment.iter().map(|e| e.conditional_entropy).sum();
            let d: f64 = eof.environment.iter().map(|e| e.discord).sum();
            let c = (1.0 - p).powf(1.5);
            assert!((qd.environment[0].conditional_entropy - (1.0 - binary_entropy((1.0 + c) / 2.0))).abs() < 1e-9);
            assert!((qd.total - 2.0 * s).abs() < 1e-4, "p={p}: {} vs {}", qd.total, 2.0 * s);
            assert!((eof.total - qd.total - 2.0 * d).abs() < 1e-4);
            assert!(eof.total >= qd.total - 1e-9);
            for e in &eof.environment {
                assert!(e.concurrence <= 1e-8);
            }
        }
    }

    #[test]
    fn classical_classical_totals_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..2 {
            let rho = random_classical_classical::<f64, _>(&[2, 2, 2], 2, &mut rng).unwrap();
            for kind in [CorrelationKind::Eof, CorrelationKind::Qd, CorrelationKind::Gqd] {
                let r = mmqc(&rho, kind).unwrap();
                assert!(r.total.abs() <= 1e-6, "{kind}: {}", r.total);
            }
        }
    }

    #[test]
    fn qubit_measured_gqd_has_nine_terms() {
        let opts = MmqcOptions { gqd_terms: GqdTerms::QubitMeasured, ..MmqcOptions::default() };
        let r = mmqc_gqd_with(&P::ghz(3).to_density(), &opts).unwrap();
        assert_eq!(r.terms.len(), 9);
        assert!(r.terms.iter().all(|t| t.normalized));
    }

    #[test]
    fn json_round_trip() {
        let r = mmqc_pure(&P::w(3), CorrelationKind::Eof).unwrap();
        let back = MmqcReport::<f64>::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(r, back);
        let v: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(v["kind"], "EOF");
        assert_eq!(v["method"], "pure-analytic");
        let t = &v["terms"][0];
        for key in ["unmeasured", "measured", "value", "raw_value", "converged", "normalized"] {
            assert!(t.get(key).is_some(), "{key}");
        }
    }
}
