//! Single-qubit Kraus channels and their product action on multi-qubit states.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::qstate::DensityMatrix;
use crate::scalar::{creal, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    AmplitudeDamping,
    PhaseDamping,
    Identity,
}

impl ChannelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "amplitude_damping",
            ChannelKind::PhaseDamping => "phase_damping",
            ChannelKind::Identity => "identity",
        }
    }
}

impl std::str::FromStr for ChannelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ad" | "amplitude_damping" => Ok(ChannelKind::AmplitudeDamping),
            "pd" | "phase_damping" => Ok(ChannelKind::PhaseDamping),
            "id" | "identity" => Ok(ChannelKind::Identity),
            other => Err(Error::Config(format!("unknown channel `{other}`"))),
        }
    }
}

/// A single-qubit channel `rho -> Σ E rho E^dagger` at damping probability `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel<T: Real> {
    pub kind: ChannelKind,
    pub p: T,
    pub operators: Vec<CMatrix<T>>,
}

fn check_probability<T: Real>(p: T) -> Result<()> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::ProbabilityOutOfRange(p.as_f64()));
    }
    Ok(())
}

fn mat2<T: Real>(a: T, b: T, c: T, d: T) -> CMatrix<T> {
    CMatrix::from_vec(2, 2, vec![creal(a), creal(b), creal(c), creal(d)]).unwrap()
}

/// `E0 = sqrt(p) |0><1|`, `E1 = diag(1, sqrt(1 - p))`.
pub fn amplitude_damping<T: Real>(p: T) -> Result<KrausChannel<T>> {
    check_probability(p)?;
    let z = T::zero();
    Ok(KrausChannel {
        kind: ChannelKind::AmplitudeDamping,
        p,
        operators: vec![
            mat2(z, p.sqrt(), z, z),
            mat2(T::one(), z, z, (T::one() - p).sqrt()),
        ],
    })
}

/// `E0 = diag(1, sqrt(1 - p))`, `E1 = diag(0, sqrt(p))`: populations are kept
/// and coherences shrink by `sqrt(1 - p)`.
pub fn phase_damping<T: Real>(p: T) -> Result<KrausChannel<T>> {
    check_probability(p)?;
    let z = T::zero();
    Ok(KrausChannel {
        kind: ChannelKind::PhaseDamping,
        p,
        operators: vec![
            mat2(T::one(), z, z, (T::one() - p).sqrt()),
            mat2(z, z, z, p.sqrt()),
        ],
    })
}

pub fn identity_channel<T: Real>() -> KrausChannel<T> {
    KrausChannel {
        kind: ChannelKind::Identity,
        p: T::zero(),
        operators: vec![CMatrix::identity(2)],
    }
}

impl<T: Real> KrausChannel<T> {
    pub fn new(kind: ChannelKind, p: T) -> Result<Self> {
        match kind {
            ChannelKind::AmplitudeDamping => amplitude_damping(p),
            ChannelKind::PhaseDamping => phase_damping(p),
            ChannelKind::Identity => {
                check_probability(p)?;
                Ok(identity_channel())
            }
        }
    }

    /// `max |Σ E^dagger E - I|`.
    pub fn completeness_defect(&self) -> T {
        completeness_defect(&self.operators)
    }
}

pub fn completeness_defect<T: Real>(ops: &[CMatrix<T>]) -> T {
    let n = ops[0].rows();
    let mut sum = CMatrix::zeros(n, n);
    for e in ops {
        sum = &sum + &(&e.adjoint() * e);
    }
    sum.max_abs_diff(&CMatrix::identity(n))
}

/// Composite Kraus set `{E_a ⊗ E_b ⊗ ...}` for independent environments.
pub fn product_operators<T: Real>(channels: &[KrausChannel<T>]) -> Vec<CMatrix<T>> {
    channels.iter().fold(vec![CMatrix::identity(1)], |acc, ch| {
        acc.iter()
            .flat_map(|a| ch.operators.iter().map(move |e| a.kron(e)))
            .collect()
    })
}

/// Applies one channel per party. Each party must be a qubit.
pub fn evolve<T: Real>(rho: &DensityMatrix<T>, channels: &[KrausChannel<T>]) -> Result<DensityMatrix<T>> {
    if channels.len() != rho.party_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} channels for {} parties",
            channels.len(),
            rho.party_count()
        )));
    }
    if rho.dims().iter().any(|&d| d != 2) {
        return Err(Error::UnsupportedDimension(format!(
            "channels act on qubits, got dims {:?}",
            rho.dims()
        )));
    }
    let n = rho.party_count();
    let mut m = rho.matrix().clone();
    for (k, ch) in channels.iter().enumerate() {
        if ch.kind == ChannelKind::Identity {
            continue;
        }
        let left = CMatrix::<T>::identity(1 << k);
        let right = CMatrix::<T>::identity(1 << (n - k - 1));
        let mut next = CMatrix::zeros(m.rows(), m.cols());
        for e in &ch.operators {
            let full = left.kron(e).kron(&right);
            next = &next + &(&(&full * &m) * &full.adjoint());
        }
        m = next;
    }
    DensityMatrix::new(m, rho.dims().to_vec(), rho.labels().to_vec())
}

/// Damping probabilities at which a trajectory is sampled, ascending in
/// `[0, 1]`. When built from times, `p = 1 - exp(-gamma t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = ""))]
pub struct SweepGrid<T: Real> {
    pub gamma: Option<T>,
    pub points: Vec<T>,
}

impl<T: Real> SweepGrid<T> {
    pub fn new(points: Vec<T>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Config("empty grid".into()));
        }
        for &p in &points {
            check_probability(p)?;
        }
        if points.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Config("grid points must be sorted ascending".into()));
        }
        Ok(Self { gamma: None, points })
    }

    /// `n` evenly spaced points from 0 to 1 inclusive.
    pub fn uniform(n: usize) -> Result<Self> {
        match n {
            0 => Err(Error::Config("grid needs at least one point".into())),
            1 => Self::new(vec![T::zero()]),
            _ => {
                let last = T::from_usize(n - 1).unwrap();
                let mut pts: Vec<T> = (0..n).map(|k| T::from_usize(k).unwrap() / last).collect();
                pts[n - 1] = T::one();
                Self::new(pts)
            }
        }
    }

    /// Grid sampled at the given times for decay rate `gamma`.
    pub fn from_times(gamma: T, times: &[T]) -> Result<Self> {
        if !(gamma > T::zero()) {
            return Err(Error::Config("decay rate must be positive".into()));
        }
        let pts = times.iter().map(|&t| T::one() - (-gamma * t).exp()).collect();
        let mut g = Self::new(pts)?;
        g.gamma = Some(gamma);
        Ok(g)
    }

    /// `gamma t = -ln(1 - p)`; infinite at `p = 1`.
    pub fn gamma_t(p: T) -> T {
        (T::one() - p).ln().abs()
    }
}

/// Evolves `rho0` with the same channel family on every party at each grid
/// point. Points are independent and evaluated in parallel.
pub fn sweep<T: Real>(
    rho0: &DensityMatrix<T>,
    kind: ChannelKind,
    grid: &SweepGrid<T>,
) -> Result<Vec<(T, DensityMatrix<T>)>> {
    grid.points
        .par_iter()
        .map(|&p| {
            let ch = KrausChannel::new(kind, p)?;
            let channels = vec![ch; rho0.party_count()];
            Ok((p, evolve(rho0, &channels)?))
        })
        .collect()
}
