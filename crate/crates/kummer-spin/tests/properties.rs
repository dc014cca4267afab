use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kummer_spin::exact_linalg::{int, Int};
use kummer_spin::fm::{phi_f, verify_reflection_lifts, LineBundleClass};
use kummer_spin::stabilizer::{mod_n_rep, random_sl4, sl4_embed, ModNMatrix};
use kummer_spin::spinor::{clifford_embed, group_flags, v_vector};
use kummer_spin::triality::mu_tilde;
use kummer_spin::weil::{random_wh, weil_structure};

fn line_bundle() -> impl Strategy<Value = LineBundleClass> {
    proptest::collection::vec(-4i64..=4, 6).prop_map(|c| LineBundleClass::new(c.into_iter().map(int).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fm_lifts_hold_for_any_line_bundles(f1 in line_bundle(), f2 in line_bundle()) {
        for c in verify_reflection_lifts(&f1, &f2) {
            prop_assert!(c.passed(), "{} {}", c.name, c.detail);
        }
        let flags = phi_f(&f1).flags().clone();
        prop_assert!(flags.is_isometry && flags.is_algebra_automorphism);
    }

    #[test]
    fn sl4_elements_fix_s_n_and_reduce_literally(seed in any::<u64>(), n in 2u32..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_sl4(&mut rng);
        let g = sl4_embed(&m).unwrap();
        prop_assert!(g.maps_sn_per_contract(n));
        let r = mod_n_rep(&g, n).unwrap();
        prop_assert_eq!(r, ModNMatrix::new(&m, &int(n as i64)));
    }

    #[test]
    fn theta_prime_squares_to_minus_d(seed in any::<u64>(), n in 1u32..=7, k in 1i64..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (w, h) = random_wh(n, k, &mut rng);
        let ws = weil_structure(&w, &h).unwrap();
        prop_assert_eq!(ws.d.clone(), Int::from(n as i64 * k));
        prop_assert!(ws.squares_to_minus_d() && ws.anti_self_dual());
    }

    #[test]
    fn mu_tilde_of_vector_pairs_is_automorphism(a in -2i64..=2, b in -2i64..=2) {
        // a product of two vectors with Q = −1
        let v = clifford_embed(&v_vector([1, a, 0, 0], [-1, 0, 0, 0]));
        let w = clifford_embed(&v_vector([0, 1, 0, b], [0, -1, 0, 0]));
        let x = v.multiply(&w);
        let f = group_flags(&x).unwrap();
        prop_assume!(f.in_g0);
        let g = mu_tilde(&x).unwrap();
        prop_assert!(g.flags().is_algebra_automorphism && g.flags().is_isometry);
    }
}
