// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;

use qmult::channels::random::{random_kraus_channel, random_qc, random_qubit_channel, random_translation_condition_params};
use qmult::channels::{canonicalize_qubit, tensor_channels, Channel};
use qmult::conjectures::{
    block_decompose, check_conjecture1, check_lieb_ruskai, check_qc_identity, random_block_psd, CheckReport,
};
use qmult::matcore::{
    eigvalsh, entropy_of_spectrum, haar_unitary, partial_trace, random_instance, schatten_norm, tensor, CMatrix,
    DensityMatrix, Keep, RandomKind, SeededRng,
};
use qmult::purity::{nu_p, PurityOptions};

fn density(dim: usize, rng: &mut SeededRng) -> CMatrix {
    random_instance(RandomKind::Density, dim, rng)
}

fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn schatten_norm_is_multiplicative_on_tensors(seed in any::<u64>(), p in 1.0f64..6.0, da in 1usize..4, db in 1usize..4) {
        let mut rng = SeededRng::new(seed, 0);
        let a = random_instance(RandomKind::Psd, da, &mut rng);
        let b = random_instance(RandomKind::Psd, db, &mut rng);
        let joint = schatten_norm(&tensor(&a, &b), p).unwrap();
        let prod = schatten_norm(&a, p).unwrap() * schatten_norm(&b, p).unwrap();
        prop_assert!((joint - prod).abs() <= 1e-12 * prod.max(1.0));
    }

    #[test]
    fn schatten_norm_decreases_in_p(seed in any::<u64>(), p in 1.0f64..5.0, dp in 0.0f64..3.0) {
        let mut rng = SeededRng::new(seed, 0);
        let rho = density(4, &mut rng);
        let lo = schatten_norm(&rho, p).unwrap();
        let hi = schatten_norm(&rho, p + dp).unwrap();
        prop_assert!(hi <= lo + 1e-14);
        prop_assert!(lo <= 1.0 + 1e-14);
    }

    #[test]
    fn partial_trace_recovers_factors(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let mut rng = SeededRng::new(seed, 0);
        let a = density(da, &mut rng);
        let b = density(db, &mut rng);
        let ab = tensor(&a, &b);
        prop_assert!(max_diff(&partial_trace(&ab, (da, db), Keep::First).unwrap(), &a) < 1e-14);
        prop_assert!(max_diff(&partial_trace(&ab, (da, db), Keep::Second).unwrap(), &b) < 1e-14);
    }

    #[test]
    fn entropy_is_bounded_by_dimension(seed in any::<u64>(), d in 1usize..7) {
        let mut rng = SeededRng::new(seed, 0);
        let s = entropy_of_spectrum(&eigvalsh(&density(d, &mut rng)));
        prop_assert!(s >= -1e-14 && s <= (d as f64).ln() + 1e-12);
    }

    #[test]
    fn product_channels_factor_on_product_states(seed in any::<u64>()) {
        let mut rng = SeededRng::new(seed, 0);
        let omega = random_kraus_channel(2, 3, 2, &mut rng);
        let phi = random_kraus_channel(3, 2, 3, &mut rng);
        let (rho, sigma) = (density(2, &mut rng), density(3, &mut rng));
        let joint = tensor_channels(&omega, &phi).apply_matrix(&tensor(&rho, &sigma));
        let split = tensor(&omega.apply_matrix(&rho), &phi.apply_matrix(&sigma));
        prop_assert!(max_diff(&joint, &split) < 1e-12);
        prop_assert!(tensor_channels(&omega, &phi).is_cptp(1e-8).pass);
    }

    #[test]
    fn block_matrices_are_states(seed in any::<u64>(), k in 1usize..5) {
        let mut rng = SeededRng::new(seed, 0);
        let m = random_block_psd(k, &mut rng);
        prop_assert!(eigvalsh(&m)[0] >= -1e-10);
        prop_assert!((m.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn block_bound_holds_at_p2(seed in any::<u64>(), k in 2usize..5) {
        let mut rng = SeededRng::new(seed, 0);
        let phi = random_qubit_channel(&mut rng);
        let m = random_block_psd(k, &mut rng);
        let r = check_conjecture1(&phi, &m, 2.0, &PurityOptions::default()).unwrap();
        prop_assert!(r.gap >= -1e-10, "{:?}", r);
    }

    #[test]
    fn block_expansion_sub_checks(seed in any::<u64>(), k in 1usize..4, p in 1u32..5) {
        let mut rng = SeededRng::new(seed, 0);
        let params = canonicalize_qubit(&random_translation_condition_params(&mut rng)).params;
        let m = random_block_psd(k, &mut rng);
        let (_, reports) = block_decompose(&m, &Channel::qubit_affine(params), p).unwrap();
        for r in reports {
            prop_assert!(r.pass, "{:?}", r);
        }
    }

    #[test]
    fn lieb_ruskai_holds(seed in any::<u64>(), k in 1usize..5, lambda in 0.0f64..=1.0, p in 1.0f64..4.0) {
        let mut rng = SeededRng::new(seed, 0);
        let x = density(k, &mut rng);
        let v = haar_unitary(k, &mut rng);
        for r in check_lieb_ruskai(&x, &v, lambda, p).unwrap() {
            prop_assert!(r.pass, "{:?}", r);
        }
    }

    #[test]
    fn qc_identity_holds_for_any_references(seed in any::<u64>(), outcomes in 2usize..4) {
        let mut rng = SeededRng::new(seed, 0);
        let omega = random_kraus_channel(2, 2, 2, &mut rng);
        let phi = random_qc(2, outcomes, &mut rng);
        let tau = DensityMatrix::new(density(4, &mut rng)).unwrap();
        let ro = DensityMatrix::new(density(2, &mut rng)).unwrap();
        let rp = DensityMatrix::new(density(outcomes, &mut rng)).unwrap();
        let r = check_qc_identity(&omega, &phi, &tau, &ro, &rp).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn kraus_rank_two_qubit_channels_have_pure_outputs(seed in any::<u64>(), p in 1.5f64..4.0) {
        // K₁v ∥ K₂v always has a solution for 2×2 Kraus operators.
        let mut rng = SeededRng::new(seed, 0);
        let phi = random_kraus_channel(2, 2, 2, &mut rng);
        let r = nu_p(&phi, p, &PurityOptions::default()).unwrap();
        prop_assert!((r.value - 1.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn report_pass_matches_gap(lhs in -10.0f64..10.0, rhs in -10.0f64..10.0, tol in 0.0f64..1.0) {
        let r = CheckReport::at_most("x", lhs, rhs, tol);
        prop_assert_eq!(r.pass, r.gap >= -tol);
        prop_assert_eq!(r.gap, rhs - lhs);
    }
}
