use proptest::prelude::*;
use qcorr_core::channels::{completeness_defect, product_operators};
use qcorr_core::mmqc::{mmqc_gqd_with, mmqc_pure, mmqc_rank2, pairwise_sum_identity_check, GqdTerms, MmqcOptions};
use qcorr_core::qstate::marginal_entropy;
use qcorr_core::random::{ginibre_density, haar_pure, product_unitary, random_classical_classical, random_cq_state};
use qcorr_core::{
    amplitude_damping, bloch_decompose, concurrence, eof_pure_cut, eof_two_qubit, evolve, gqd_closed_form,
    gqd_variational, mmqc, phase_damping, purify, quantum_discord, sweep, von_neumann_entropy, ChannelKind,
    CorrelationKind, DensityMatrixF64, MmqcReport, PureStateF64, SweepGrid,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn state(seed: u64, dims: &[usize], rank: usize) -> DensityMatrixF64 {
    ginibre_density(dims, rank, &mut rng(seed)).unwrap()
}

fn min_eig(rho: &DensityMatrixF64) -> f64 {
    rho.eig().min_eigenvalue()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn partial_trace_is_a_valid_state(seed in any::<u64>(), rank in 1usize..=8, keep in 0usize..6) {
        let rho = state(seed, &[2, 2, 2], rank);
        let sets: [&[&str]; 6] = [&["A"], &["B"], &["C"], &["A", "B"], &["A", "C"], &["B", "C"]];
        let red = rho.partial_trace(sets[keep]).unwrap();
        prop_assert!((red.matrix().trace().re - 1.0).abs() < 1e-10);
        prop_assert!(red.matrix().hermiticity_defect() < 1e-12);
        prop_assert!(min_eig(&red) > -1e-10);
    }

    #[test]
    fn entropy_bounds(seed in any::<u64>(), rank in 1usize..=4) {
        let rho = state(seed, &[2, 2], rank);
        let s = von_neumann_entropy(&rho);
        prop_assert!(s >= 0.0 && s <= 2.0 + 1e-12);
        prop_assert_eq!(s < 1e-9, rho.rank() == 1);
    }

    #[test]
    fn subadditivity(seed in any::<u64>(), rank in 1usize..=4) {
        let rho = state(seed, &[2, 2], rank);
        let sa = marginal_entropy(&rho, &["A"]).unwrap();
        let sb = marginal_entropy(&rho, &["B"]).unwrap();
        prop_assert!(von_neumann_entropy(&rho) <= sa + sb + 1e-9);
    }

    #[test]
    fn bloch_round_trip(seed in any::<u64>(), rank in 1usize..=4) {
        let rho = state(seed, &[2, 2], rank);
        let back = bloch_decompose(&rho).unwrap().reconstruct();
        prop_assert!(back.max_abs_diff(rho.matrix()) <= 1e-10);
    }

    #[test]
    fn gqd_variational_matches_closed_form(seed in any::<u64>(), rank in 1usize..=4) {
        let rho = state(seed, &[2, 2], rank);
        let v = gqd_variational(&rho, &["A"]).unwrap().value;
        let c = gqd_closed_form(&rho).unwrap().value;
        prop_assert!((v - c).abs() <= 1e-6, "{} vs {}", v, c);
    }

    #[test]
    fn local_unitary_invariance(seed in any::<u64>(), rank in 1usize..=4) {
        let mut r = rng(seed);
        let rho: DensityMatrixF64 = ginibre_density(&[2, 2], rank, &mut r).unwrap();
        let moved = rho.transform(&product_unitary(&[2, 2], &mut r)).unwrap();
        prop_assert!((concurrence(&rho).unwrap() - concurrence(&moved).unwrap()).abs() <= 1e-6);
        prop_assert!((eof_two_qubit(&rho).unwrap() - eof_two_qubit(&moved).unwrap()).abs() <= 1e-6);
        let qd = |s: &DensityMatrixF64| quantum_discord(s, "B").unwrap().value;
        prop_assert!((qd(&rho) - qd(&moved)).abs() <= 1e-6);
        let gqd = |s: &DensityMatrixF64| gqd_variational(s, &["A"]).unwrap().value;
        prop_assert!((gqd(&rho) - gqd(&moved)).abs() <= 1e-6);
    }

    #[test]
    fn channels_preserve_trace_and_positivity(seed in any::<u64>(), rank in 1usize..=8) {
        let rho = state(seed, &[2, 2, 2], rank);
        for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
            for ch in [amplitude_damping(p).unwrap(), phase_damping(p).unwrap()] {
                let out = evolve(&rho, &vec![ch; 3]).unwrap();
                prop_assert!((out.matrix().trace().re - 1.0).abs() <= 1e-10);
                prop_assert!(min_eig(&out) > -1e-10);
            }
        }
    }

    #[test]
    fn amplitude_damping_semigroup(seed in any::<u64>(), p1 in 0.0f64..=1.0, p2 in 0.0f64..=1.0) {
        let rho = state(seed, &[2], 2);
        let twice = evolve(&evolve(&rho, &[amplitude_damping(p1).unwrap()]).unwrap(), &[amplitude_damping(p2).unwrap()]).unwrap();
        let once = evolve(&rho, &[amplitude_damping(1.0 - (1.0 - p1) * (1.0 - p2)).unwrap()]).unwrap();
        prop_assert!(twice.matrix().max_abs_diff(once.matrix()) <= 1e-10);
    }

    #[test]
    fn composite_kraus_sets_are_complete(p in 0.0f64..=1.0, q in 0.0f64..=1.0) {
        let set = product_operators(&[amplitude_damping(p).unwrap(), phase_damping(q).unwrap(), amplitude_damping(q).unwrap()]);
        prop_assert!(completeness_defect(&set) <= 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn purify_round_trip(seed in any::<u64>(), rank in 1usize..=2, three in any::<bool>()) {
        let dims: &[usize] = if three { &[2, 2, 2] } else { &[2, 2] };
        let rho = state(seed, dims, rank);
        let labels: Vec<&str> = rho.labels().iter().map(String::as_str).collect();
        let back = purify(&rho).reduced(&labels).unwrap();
        prop_assert!(back.matrix().max_abs_diff(rho.matrix()) <= 1e-9);
    }

    #[test]
    fn discord_is_nonnegative(seed in any::<u64>(), rank in 1usize..=4) {
        let rho = state(seed, &[2, 2], rank);
        prop_assert!(quantum_discord(&rho, "B").unwrap().raw_value >= -1e-6);
        prop_assert!(quantum_discord(&rho, "A").unwrap().raw_value >= -1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn cq_states_have_no_discord(seed in any::<u64>()) {
        let rho: DensityMatrixF64 = random_cq_state(2, &[2], &mut rng(seed)).unwrap();
        prop_assert!(quantum_discord(&rho, "A").unwrap().raw_value <= 1e-6);
        prop_assert!(gqd_variational(&rho, &["A"]).unwrap().raw_value <= 1e-8);
    }

    #[test]
    fn pure_cut_eof_is_symmetric(seed in any::<u64>()) {
        let psi: PureStateF64 = haar_pure(&[2, 2, 2], &mut rng(seed));
        let a = eof_pure_cut(&psi, &["A"], &["B", "C"]).unwrap();
        let b = eof_pure_cut(&psi, &["B", "C"], &["A"]).unwrap();
        prop_assert!((a - b).abs() <= 1e-9);
    }

    #[test]
    fn pairwise_sums_agree_on_pure_states(seed in any::<u64>()) {
        let psi: PureStateF64 = haar_pure(&[2, 2, 2], &mut rng(seed));
        let (lhs, rhs) = pairwise_sum_identity_check(&psi).unwrap();
        prop_assert!((lhs - rhs).abs() <= 2e-4, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn rank2_path_is_continuous_at_rank1(seed in any::<u64>()) {
        let psi: PureStateF64 = haar_pure(&[2, 2, 2], &mut rng(seed));
        for kind in [CorrelationKind::Eof, CorrelationKind::Qd] {
            let a = mmqc_pure(&psi, kind).unwrap().total;
            let b = mmqc_rank2(&psi.to_density(), kind).unwrap().total;
            prop_assert!((a - b).abs() <= 2e-4);
        }
    }

    #[test]
    fn rank2_totals_are_nonnegative(seed in any::<u64>()) {
        let rho = state(seed, &[2, 2, 2], 2);
        for kind in [CorrelationKind::Eof, CorrelationKind::Qd] {
            let r = mmqc_rank2(&rho, kind).unwrap();
            prop_assert!(r.total >= 0.0);
            prop_assert!(r.terms.iter().all(|t| t.value >= 0.0));
            prop_assert!((r.total - r.terms.iter().map(|t| t.value).sum::<f64>()).abs() <= 1e-9);
        }
    }
}

/// Relabels parties A->B, B->C, C->A and stores them in the order C, A, B.
fn relabel_and_reorder(rho: &DensityMatrixF64) -> DensityMatrixF64 {
    let renamed = rho.clone().relabel(vec!["B".into(), "C".into(), "A".into()]).unwrap();
    renamed.permute(&["C", "A", "B"]).unwrap()
}

fn rename(name: &str) -> String {
    name.chars()
        .map(|c| match c {
            'A' => 'B',
            'B' => 'C',
            'C' => 'A',
            other => other,
        })
        .collect()
}

fn canonical(name: &str) -> String {
    let (u, rest) = name.split_once('(').unwrap();
    let m = rest.trim_end_matches(')');
    let sort = |s: &str| {
        let mut c: Vec<char> = s.chars().collect();
        c.sort_unstable();
        c.into_iter().collect::<String>()
    };
    format!("{}({})", sort(u), sort(m))
}

fn covariant(a: &MmqcReport<f64>, b: &MmqcReport<f64>) -> Result<(), TestCaseError> {
    prop_assert!((a.total - b.total).abs() <= 1e-9, "totals {} vs {}", a.total, b.total);
    for t in &a.terms {
        let target = canonical(&rename(&t.name()));
        let u = b.terms.iter().find(|s| canonical(&s.name()) == target).unwrap();
        prop_assert!((t.value - u.value).abs() <= 1e-9, "{}: {} vs {}", t.name(), t.value, u.value);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn permutation_covariance_pure(seed in any::<u64>()) {
        let psi: PureStateF64 = haar_pure(&[2, 2, 2], &mut rng(seed));
        let moved = relabel_and_reorder(&psi.to_density()).to_pure().unwrap();
        for kind in [CorrelationKind::Eof, CorrelationKind::Qd] {
            covariant(&mmqc_pure(&psi, kind).unwrap(), &mmqc_pure(&moved, kind).unwrap())?;
        }
    }

    #[test]
    fn permutation_covariance_rank2(seed in any::<u64>()) {
        let rho = state(seed, &[2, 2, 2], 2);
        let moved = relabel_and_reorder(&rho);
        for kind in [CorrelationKind::Eof, CorrelationKind::Qd] {
            covariant(&mmqc_rank2(&rho, kind).unwrap(), &mmqc_rank2(&moved, kind).unwrap())?;
        }
    }

    #[test]
    fn permutation_covariance_direct(seed in any::<u64>(), rank in 1usize..=8) {
        let rho = state(seed, &[2, 2, 2], rank);
        let moved = relabel_and_reorder(&rho);
        let opts = MmqcOptions { gqd_terms: GqdTerms::All, ..MmqcOptions::default() };
        covariant(&mmqc_gqd_with(&rho, &opts).unwrap(), &mmqc_gqd_with(&moved, &opts).unwrap())?;
    }

    #[test]
    fn classical_classical_totals_vanish(seed in any::<u64>(), rank in 1usize..=2) {
        let rho: DensityMatrixF64 = random_classical_classical(&[2, 2, 2], rank, &mut rng(seed)).unwrap();
        for kind in [CorrelationKind::Eof, CorrelationKind::Qd, CorrelationKind::Gqd] {
            prop_assert!(mmqc(&rho, kind).unwrap().total.abs() <= 1e-6);
        }
    }
}

#[test]
fn w_amplitude_damping_trajectory_has_rank_two() {
    let w = PureStateF64::w(3).to_density();
    let states = sweep(&w, ChannelKind::AmplitudeDamping, &SweepGrid::uniform(101).unwrap()).unwrap();
    assert!(states.iter().all(|(_, rho)| rho.rank() <= 2));
}

#[test]
fn single_precision_pipeline() {
    let ghz = qcorr_core::PureStateF32::ghz(3);
    let r = mmqc_pure(&ghz, CorrelationKind::Eof).unwrap();
    assert!((r.total - 6.0).abs() < 1e-4);
    let rho = evolve(&ghz.to_density(), &vec![phase_damping(0.5f32).unwrap(); 3]).unwrap();
    let q = mmqc(&rho, CorrelationKind::Qd).unwrap();
    let s: f32 = q.environment.iter().map(|e| e.conditional_entropy).sum();
    assert!((q.total - 2.0 * s).abs() < 1e-3);
}
