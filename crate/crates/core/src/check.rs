//! Invariant self-check run by `qcorr check`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bicorr::{gqd_closed_form, gqd_variational, mutual_information, quantum_discord, CorrelationKind};
use crate::channels::{amplitude_damping, evolve, phase_damping, KrausChannel};
use crate::error::Result;
use crate::mmqc::{mmqc, mmqc_pure, mmqc_rank2, pairwise_sum_identity_check};
use crate::qstate::{bloch_decompose, marginal_entropy, purify, von_neumann_entropy, PureState};
use crate::random::{ginibre_density, haar_pure, random_classical_classical};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Worst observed deviation.
    pub worst: f64,
    pub tolerance: f64,
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}: worst {:.3e} (tolerance {:.0e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.worst,
            self.tolerance
        )
    }
}

fn outcome(name: &str, worst: f64, tolerance: f64) -> CheckOutcome {
    CheckOutcome { name: name.to_string(), passed: worst <= tolerance, worst, tolerance }
}

/// Runs every check with `samples` random states each (fewer for the
/// expensive three-qubit ones).
pub fn run_checks(seed: u64, samples: usize) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let few = samples.div_ceil(5).max(1);
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    for k in 0..=10 {
        let p = k as f64 / 10.0;
        worst = worst
            .max(amplitude_damping(p)?.completeness_defect())
            .max(phase_damping(p)?.completeness_defect());
    }
    out.push(outcome("kraus completeness", worst, 1e-10));

    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let rho = ginibre_density::<f64, _>(&[2], 2, &mut rng)?;
        let (p1, p2) = (0.3, 0.55);
        let twice = evolve(&evolve(&rho, &[amplitude_damping(p1)?])?, &[amplitude_damping(p2)?])?;
        let once = evolve(&rho, &[amplitude_damping(1.0 - (1.0 - p1) * (1.0 - p2))?])?;
        worst = worst.max(twice.matrix().max_abs_diff(once.matrix()));
    }
    out.push(outcome("amplitude damping semigroup", worst, 1e-10));

    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let rho = ginibre_density::<f64, _>(&[2, 2], 1 + i % 2, &mut rng)?;
        let back = purify(&rho).reduced(&["A", "B"])?;
        worst = worst.max(back.matrix().max_abs_diff(rho.matrix()));
    }
    out.push(outcome("purify round trip", worst, 1e-9));

    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let rho = ginibre_density::<f64, _>(&[2, 2], 1 + i % 4, &mut rng)?;
        let excess = von_neumann_entropy(&rho) - marginal_entropy(&rho, &["A"])? - marginal_entropy(&rho, &["B"])?;
        worst = worst.max(excess);
    }
    out.push(outcome("subadditivity", worst, 1e-9));

    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let rho = ginibre_density::<f64, _>(&[2, 2], 1 + i % 4, &mut rng)?;
        worst = worst.max(bloch_decompose(&rho)?.reconstruct().max_abs_diff(rho.matrix()));
    }
    out.push(outcome("bloch involution", worst, 1e-10));

    let (mut neg, mut gqd_gap, mut discord_gap): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for i in 0..samples {
        let rho = ginibre_density::<f64, _>(&[2, 2], 1 + i % 4, &mut rng)?;
        let qd = quantum_discord(&rho, "B")?;
        neg = neg.max(-qd.raw_value);
        discord_gap = discord_gap.max(qd.raw_value - mutual_information(&rho, &["A"], &["B"])?);
        gqd_gap = gqd_gap.max((gqd_variational(&rho, &["A"])?.value - gqd_closed_form(&rho)?.value).abs());
    }
    out.push(outcome("discord nonnegative", neg, 1e-6));
    out.push(outcome("discord bounded by mutual information", discord_gap, 1e-9));
    out.push(outcome("geometric discord closed form", gqd_gap, 1e-6));

    let (mut equiv, mut identity): (f64, f64) = (0.0, 0.0);
    for _ in 0..few {
        let psi = haar_pure::<f64, _>(&[2, 2, 2], &mut rng);
        let e = mmqc_pure(&psi, CorrelationKind::Eof)?;
        let q = mmqc_pure(&psi, CorrelationKind::Qd)?;
        equiv = equiv.max((e.total - q.total).abs());
        let (lhs, rhs) = pairwise_sum_identity_check(&psi)?;
        identity = identity.max((lhs - rhs).abs());
    }
    out.push(outcome("pure-state EOF/QD equivalence", equiv, 2e-4));
    out.push(outcome("pairwise sum identity", identity, 2e-4));

    let mut worst: f64 = 0.0;
    for _ in 0..few {
        let psi = haar_pure::<f64, _>(&[2, 2, 2], &mut rng);
        let rho = psi.to_density();
        for kind in [CorrelationKind::Eof, CorrelationKind::Qd] {
            worst = worst.max((mmqc_pure(&psi, kind)?.total - mmqc_rank2(&rho, kind)?.total).abs());
        }
    }
    out.push(outcome("rank-2 path continuity at rank 1", worst, 2e-4));

    let mut worst: f64 = 0.0;
    for _ in 0..few {
        let rho = random_classical_classical::<f64, _>(&[2, 2, 2], 2, &mut rng)?;
        for kind in [CorrelationKind::Eof, CorrelationKind::Qd, CorrelationKind::Gqd] {
            worst = worst.max(mmqc(&rho, kind)?.total.abs());
        }
    }
    out.push(outcome("classical-classical null", worst, 1e-6));

    let ghz = PureState::<f64>::ghz(3).to_density();
    let (mut qd_gap, mut eof_gap, mut env_c): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for p in [0.25, 0.5, 0.75] {
        let rho = evolve(&ghz, &vec![KrausChannel::new(crate::channels::ChannelKind::PhaseDamping, p)?; 3])?;
        let e = mmqc_rank2(&rho, CorrelationKind::Eof)?;
        let q = mmqc_rank2(&rho, CorrelationKind::Qd)?;
        let s: f64 = q.environment.iter().map(|x| x.conditional_entropy).sum();
        let d: f64 = e.environment.iter().map(|x| x.discord).sum();
        qd_gap = qd_gap.max((q.total - 2.0 * s).abs());
        eof_gap = eof_gap.max((e.total - q.total - 2.0 * d).abs());
        env_c = env_c.max(e.environment.iter().map(|x| x.concurrence).fold(0.0, f64::max));
    }
    out.push(outcome("dephased GHZ discord identity", qd_gap, 1e-4));
    out.push(outcome("dephased GHZ EOF-discord gap", eof_gap, 1e-4));
    out.push(outcome("dephased GHZ environment concurrence", env_c, 1e-8));

    Ok(out)
}
