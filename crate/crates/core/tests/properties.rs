use entbound::geo_bounds::SuperpositionPair;
use entbound::geometric::{lambda_max_bipartite_exact, lambda_max_estimate, GeometricOptions};
use entbound::sq_bounds::{binary_entropy, thm3_upper, thm4_upper, thm5_lower};
use entbound::states::{
    entropy_profile, inner_product, random_state, random_unitary, reduced_density_matrix, superpose,
    von_neumann_entropy, SuperpositionSpec,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2usize..=3, 2..=4)
}

fn unit_coeffs() -> impl Strategy<Value = (Complex64, Complex64)> {
    (0.0f64..std::f64::consts::FRAC_PI_2, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(t, p)| (Complex64::new(t.cos(), 0.0), Complex64::from_polar(t.sin(), p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sparse_and_dense_agree(dims in dims_strategy(), s1: u64, s2: u64) {
        let a = random_state(&dims, s1).unwrap();
        let b = random_state(&dims, s2).unwrap();
        let (sa, sb) = (a.to_sparse(), b.to_sparse());
        let dense = inner_product(&a, &b).unwrap();
        for (x, y) in [(&sa, &sb), (&a, &sb), (&sa, &b)] {
            prop_assert!((inner_product(x, y).unwrap() - dense).norm() < 1e-12);
        }
        for k in 0..dims.len() {
            let rd = reduced_density_matrix(&a, k).unwrap();
            let rs = reduced_density_matrix(&sa, k).unwrap();
            prop_assert!((rd - rs).norm() < 1e-12);
        }
    }

    #[test]
    fn inner_product_conjugate_symmetric(dims in dims_strategy(), s1: u64, s2: u64) {
        let a = random_state(&dims, s1).unwrap();
        let b = random_state(&dims, s2).unwrap();
        let ab = inner_product(&a, &b).unwrap();
        let ba = inner_product(&b, &a).unwrap();
        prop_assert!((ab - ba.conj()).norm() < 1e-14);
        prop_assert!((inner_product(&a, &a).unwrap().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn superposition_is_normalized(dims in dims_strategy(), s1: u64, s2: u64, (a, b) in unit_coeffs()) {
        let spec = SuperpositionSpec::pair(a, random_state(&dims, s1).unwrap(), b, random_state(&dims, s2).unwrap()).unwrap();
        let (gamma, norm) = superpose(&spec).unwrap();
        prop_assert!((gamma.norm_sqr() - 1.0).abs() < 1e-12);
        let pair = SuperpositionPair::from_spec(&spec).unwrap();
        prop_assert!((norm * norm - pair.norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn bipartite_entropies_match(d1 in 2usize..=4, d2 in 2usize..=4, seed: u64) {
        let psi = random_state(&[d1, d2], seed).unwrap();
        let s0 = von_neumann_entropy(&reduced_density_matrix(&psi, 0).unwrap()).unwrap();
        let s1 = von_neumann_entropy(&reduced_density_matrix(&psi, 1).unwrap()).unwrap();
        prop_assert!((s0 - s1).abs() < 1e-8);
    }

    #[test]
    fn local_unitaries_preserve_measures(d1 in 2usize..=4, d2 in 2usize..=4, seed: u64) {
        let psi = random_state(&[d1, d2], seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let moved = psi
            .apply_local(0, &random_unitary(d1, &mut rng)).unwrap()
            .apply_local(1, &random_unitary(d2, &mut rng)).unwrap();
        let l0 = lambda_max_bipartite_exact(&psi).unwrap().lambda_max;
        let l1 = lambda_max_bipartite_exact(&moved).unwrap().lambda_max;
        prop_assert!((l0 - l1).abs() < 1e-10);
        let e0 = entropy_profile(&psi).unwrap().total;
        let e1 = entropy_profile(&moved).unwrap().total;
        prop_assert!((e0 - e1).abs() < 1e-8);
    }

    #[test]
    fn binary_entropy_symmetric_and_bounded(x in 0.0f64..=1.0) {
        let h = binary_entropy(x).unwrap();
        prop_assert!((0.0..=1.0).contains(&h));
        prop_assert!((h - binary_entropy(1.0 - x).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn thm4_never_exceeds_thm3(
        (a, b) in unit_coeffs(),
        re in -1.0f64..1.0,
        e1 in 0.0f64..6.0,
        e2 in 0.0f64..6.0,
        n in 2usize..6,
    ) {
        let pair = SuperpositionPair::new(a, b, Complex64::new(re * 0.9, 0.0));
        prop_assume!(pair.norm_sqr() > 1e-6);
        let t3 = thm3_upper(&pair, e1, e2, n).unwrap();
        if let Some(t4) = thm4_upper(&pair, e1, e2, n).unwrap() {
            prop_assert!(t4.value <= t3 + 1e-9 * t3.max(1.0), "{} > {}", t4.value, t3);
        }
        let t5 = thm5_lower(&pair.renormalized().unwrap(), e1, e2, n).unwrap();
        prop_assert!(t5.value >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn three_qubit_lambda_local_unitary_invariant(seed: u64) {
        let psi = random_state(&[2, 2, 2], seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let mut moved = psi.clone();
        for k in 0..3 {
            moved = moved.apply_local(k, &random_unitary(2, &mut rng)).unwrap();
        }
        let opts = GeometricOptions::default();
        let l0 = lambda_max_estimate(&psi, &opts).unwrap().lambda_max;
        let l1 = lambda_max_estimate(&moved, &opts).unwrap().lambda_max;
        prop_assert!((l0 - l1).abs() < 1e-7, "{l0} vs {l1}");
    }
}
