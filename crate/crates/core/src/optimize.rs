//! Multi-start Nelder-Mead search over projective measurement bases.
//!
//! A qubit basis is parameterized by Bloch angles `(theta, phi)`; a basis of a
//! four-level measured side is the column set of `exp(i H)` with `H` spanned
//! by the 15 generalized Gell-Mann matrices. Both charts are smooth and
//! cover every basis up to phases, which the objectives are insensitive to.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{expi_hermitian, gell_mann, inner, CMatrix};
use crate::qstate::DensityMatrix;
use crate::scalar::{cplx, Real, C};

/// Orthonormal projective basis on one or more parties.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementBasis<T: Real> {
    /// Measured parties, in tensor order.
    pub parties: Vec<String>,
    /// Basis vectors; the projectors are `|v><v|`.
    pub vectors: Vec<Vec<C<T>>>,
    /// Chart coordinates that generated the basis.
    pub angles: Vec<T>,
}

impl<T: Real> MeasurementBasis<T> {
    /// `|b0> = cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`, `|b1>` orthogonal.
    pub fn qubit(theta: T, phi: T) -> Self {
        let half = T::lit(0.5);
        let (s, c) = ((theta * half).sin(), (theta * half).cos());
        let e = cplx(phi.cos(), phi.sin());
        let b0 = vec![cplx(c, T::zero()), e * s];
        let b1 = vec![-e.conj() * s, cplx(c, T::zero())];
        Self {
            parties: Vec::new(),
            vectors: vec![b0, b1],
            angles: vec![theta, phi],
        }
    }

    /// Columns of `exp(i Σ a_k G_k)` for the `n^2 - 1` Gell-Mann generators.
    pub fn from_generators(n: usize, params: &[T]) -> Result<Self> {
        Self::from_generator_set(&gell_mann::<T>(n), params)
    }

    fn from_generator_set(gens: &[CMatrix<T>], params: &[T]) -> Result<Self> {
        if params.len() != gens.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} parameters for {} generators",
                params.len(),
                gens.len()
            )));
        }
        let n = gens[0].rows();
        let mut h = CMatrix::zeros(n, n);
        for (g, &a) in gens.iter().zip(params) {
            if !a.is_zero() {
                h = &h + &g.scale_real(a);
            }
        }
        let u = expi_hermitian(&h)?;
        Ok(Self {
            parties: Vec::new(),
            vectors: (0..n).map(|j| u.column(j)).collect(),
            angles: params.to_vec(),
        })
    }

    /// Chart point for a basis of dimension `dim` (2 or 4).
    pub fn from_params(dim: usize, params: &[T]) -> Result<Self> {
        match dim {
            2 if params.len() == 2 => Ok(Self::qubit(params[0], params[1])),
            2 => Err(Error::DimensionMismatch("qubit basis takes two angles".into())),
            n => Self::from_generators(n, params),
        }
    }

    pub fn computational(dim: usize) -> Self {
        let vectors = (0..dim)
            .map(|k| {
                let mut v = vec![C::zero(); dim];
                v[k] = C::one();
                v
            })
            .collect();
        Self {
            parties: Vec::new(),
            vectors,
            angles: Vec::new(),
        }
    }

    pub fn with_parties(mut self, parties: Vec<String>) -> Self {
        self.parties = parties;
        self
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn projectors(&self) -> Vec<CMatrix<T>> {
        self.vectors.iter().map(|v| CMatrix::projector(v)).collect()
    }

    /// Largest deviation from `Σ Π_k = I` and `Π_k Π_l = δ_kl Π_k`.
    pub fn orthonormality_defect(&self) -> T {
        let n = self.dim();
        let mut sum = CMatrix::zeros(n, n);
        for p in self.projectors() {
            sum = &sum + &p;
        }
        let mut d = sum.max_abs_diff(&CMatrix::identity(n));
        for (i, u) in self.vectors.iter().enumerate() {
            for (j, v) in self.vectors.iter().enumerate() {
                let want = if i == j { T::one() } else { T::zero() };
                d = d.max((inner(u, v) - cplx(want, T::zero())).norm());
            }
        }
        d
    }
}

/// Direction of the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Maximize,
    Minimize,
}

/// Knobs for [`optimize_over_bases`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerOptions {
    /// Global seed; per-call seeds are derived from it.
    pub seed: u64,
    pub starts_qubit: usize,
    pub starts_four_level: usize,
    /// Evaluation budget of a single Nelder-Mead run.
    pub max_evals: usize,
    /// Refinement restarts from the best point are repeated until the
    /// objective improves by less than this.
    pub refine_tol: f64,
    pub max_refinements: usize,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            starts_qubit: 24,
            starts_four_level: 64,
            max_evals: 6000,
            refine_tol: 1e-10,
            max_refinements: 6,
        }
    }
}

impl OptimizerOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// Outcome summary of a multi-start search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerReport {
    pub starts: usize,
    pub best_start: usize,
    pub best_objective: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl OptimizerReport {
    /// Report for a value obtained without search.
    pub fn analytic(value: f64) -> Self {
        Self {
            starts: 0,
            best_start: 0,
            best_objective: value,
            evaluations: 0,
            converged: true,
        }
    }
}

struct NmResult<T> {
    x: Vec<T>,
    f: T,
    evals: usize,
    converged: bool,
}

/// Minimizes `f` with the Nelder-Mead simplex method.
fn nelder_mead<T: Real>(f: &dyn Fn(&[T]) -> T, x0: &[T], step: T, ftol: T, max_evals: usize) -> NmResult<T> {
    let n = x0.len();
    // Dimension-adapted coefficients; they reduce to the classic
    // (1, 2, 1/2, 1/2) for two parameters.
    let nf = n as f64;
    let (alpha, gamma, rho, sigma) = (
        T::one(),
        T::lit(1.0 + 2.0 / nf),
        T::lit(0.75 - 0.5 / nf),
        T::lit(1.0 - 1.0 / nf),
    );

    let mut simplex: Vec<Vec<T>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] = x[i] + step;
        simplex.push(x);
    }
    let mut fx: Vec<T> = simplex.iter().map(|x| f(x)).collect();
    let mut evals = n + 1;
    let mut converged = false;

    while evals < max_evals {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| fx[a].partial_cmp(&fx[b]).unwrap_or(std::cmp::Ordering::Equal));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        fx = order.iter().map(|&i| fx[i]).collect();

        // Convergence on the spread of simplex values.
        if fx[n] - fx[0] <= ftol * (T::one() + fx[0].abs()) {
            converged = true;
            break;
        }

        let mut centroid = vec![T::zero(); n];
        for x in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c = *c + *v;
            }
        }
        let nn = T::from_usize(n).unwrap();
        centroid.iter_mut().for_each(|c| *c = *c / nn);
        let along = |t: T| -> Vec<T> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| *c + t * (*c - *w))
                .collect()
        };

        let xr = along(alpha);
        let fr = f(&xr);
        evals += 1;
        if fr < fx[0] {
            let xe = along(gamma);
            let fe = f(&xe);
            evals += 1;
            if fe < fr {
                simplex[n] = xe;
                fx[n] = fe;
            } else {
                simplex[n] = xr;
                fx[n] = fr;
            }
        } else if fr < fx[n - 1] {
            simplex[n] = xr;
            fx[n] = fr;
        } else {
            let (xc, fc) = if fr < fx[n] {
                let xc = along(rho);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(-rho);
                let fc = f(&xc);
                (xc, fc)
            };
            evals += 1;
            if fc < fx[n].min(fr) {
                simplex[n] = xc;
                fx[n] = fc;
            } else {
                let best = simplex[0].clone();
                for i in 1..=n {
                    let xs: Vec<T> = best
                        .iter()
                        .zip(&simplex[i])
                        .map(|(b, x)| *b + sigma * (*x - *b))
                        .collect();
                    fx[i] = f(&xs);
                    simplex[i] = xs;
                }
                evals += n;
            }
        }
    }
    let best = (0..=n)
        .min_by(|&a, &b| fx[a].partial_cmp(&fx[b]).unwrap_or(std::cmp::Ordering::Equal))
        .unwrap();
    NmResult {
        x: simplex[best].clone(),
        f: fx[best],
        evals,
        converged,
    }
}

fn random_start<T: Real>(dim: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    let pi = std::f64::consts::PI;
    if dim == 2 {
        // Uniform on the sphere.
        let theta = (1.0 - 2.0 * rng.gen::<f64>()).acos();
        let phi = 2.0 * pi * rng.gen::<f64>();
        vec![T::lit(theta), T::lit(phi)]
    } else {
        (0..dim * dim - 1)
            .map(|_| T::lit(pi * (2.0 * rng.gen::<f64>() - 1.0)))
            .collect()
    }
}

/// Multi-start search of `objective` over bases of a `dim`-level system.
///
/// Start 0 is the computational basis; the remaining starts are drawn from a
/// generator seeded with `seed`. Every start runs one simplex search; the best
/// (lowest start index on ties) is then refined by restarts until a restart
/// improves the objective by less than `refine_tol`.
pub fn optimize_over_bases<T, F>(
    objective: F,
    dim: usize,
    mode: Mode,
    opts: &OptimizerOptions,
    seed: u64,
) -> Result<(T, MeasurementBasis<T>, OptimizerReport)>
where
    T: Real,
    F: Fn(&MeasurementBasis<T>) -> T,
{
    if dim != 2 && dim != 4 {
        return Err(Error::UnsupportedDimension(format!(
            "measurement bases of dimension {dim}"
        )));
    }
    let sign = match mode {
        Mode::Maximize => -T::one(),
        Mode::Minimize => T::one(),
    };
    let gens = gell_mann::<T>(dim);
    let cost = |x: &[T]| -> T {
        let basis = if dim == 2 {
            MeasurementBasis::qubit(x[0], x[1])
        } else {
            MeasurementBasis::from_generator_set(&gens, x).expect("parameter count fixed by dim")
        };
        let v = objective(&basis);
        if v.is_nan() {
            T::infinity()
        } else {
            sign * v
        }
    };
    let (starts, step) = if dim == 2 {
        (opts.starts_qubit.max(1), T::lit(0.4))
    } else {
        (opts.starts_four_level.max(1), T::lit(0.5))
    };
    let nparams = if dim == 2 { 2 } else { 15 };

    let search_tol = T::lit(1e-9).max(T::kernel_eps() * T::lit(100.0));
    let polish_tol = T::kernel_eps() * T::lit(100.0);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluations = 0;
    let mut best: Option<(usize, NmResult<T>)> = None;
    for s in 0..starts {
        let x0 = if s == 0 {
            vec![T::zero(); nparams]
        } else {
            random_start::<T>(dim, &mut rng)
        };
        let r = nelder_mead(&cost, &x0, step, search_tol, opts.max_evals);
        evaluations += r.evals;
        let better = match &best {
            None => true,
            Some((_, b)) => r.f < b.f,
        };
        if better {
            best = Some((s, r));
        }
    }
    let (best_start, mut run) = best.expect("at least one start");

    let refine_tol = T::lit(opts.refine_tol);
    let mut converged = false;
    let mut refine_step = step * T::lit(0.25);
    for _ in 0..opts.max_refinements {
        let r = nelder_mead(&cost, &run.x, refine_step, polish_tol, opts.max_evals);
        evaluations += r.evals;
        let gain = run.f - r.f;
        let settled = r.converged;
        if r.f < run.f {
            run = r;
        }
        if gain < refine_tol && settled {
            converged = true;
            break;
        }
        refine_step = refine_step * T::lit(0.5);
    }

    let value = sign * run.f;
    let basis = MeasurementBasis::from_params(dim, &run.x)?;
    let report = OptimizerReport {
        starts,
        best_start,
        best_objective: value.as_f64(),
        evaluations,
        converged,
    };
    Ok((value, basis, report))
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(mut h: u64, bytes: &[u8]) -> u64 {
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Seed derived from the state contents, a term identifier and a global seed,
/// so results do not depend on evaluation order.
pub fn stable_seed<T: Real>(rho: &DensityMatrix<T>, term: &str, global: u64) -> u64 {
    let mut h = fnv1a(FNV_OFFSET, &global.to_le_bytes());
    h = fnv1a(h, term.as_bytes());
    for l in rho.labels() {
        h = fnv1a(h, l.as_bytes());
    }
    for z in rho.matrix().as_slice() {
        h = fnv1a(h, &z.re.as_f64().to_bits().to_le_bytes());
        h = fnv1a(h, &z.im.as_f64().to_bits().to_le_bytes());
    }
    h
}
