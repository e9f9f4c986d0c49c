use curvelab::factory::{construct_set_curve, SetOptions};
use curvelab::formulas::{
    choose2, expected_hilbert, h_b_profile, rao_piecewise, reference_rao, third_difference,
    CurveNumerics, RaoKind,
};
use curvelab_kernel::SeededRng;
use proptest::prelude::*;

/// `(d, g, b)` with `d >= 7`, `r >= 1` and `b` admissible.
fn set_numerics(max_d: i64) -> impl Strategy<Value = CurveNumerics> {
    (7..=max_d)
        .prop_flat_map(|d| (Just(d), -20..=choose2(d - 3)))
        .prop_flat_map(|(d, g)| {
            let n = CurveNumerics::new(d, g).unwrap();
            (Just(n), 0..=n.max_b().unwrap())
        })
        .prop_map(|(n, b)| n.with_b(b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn set_rao_is_symmetric_and_bounded(n in set_numerics(25)) {
        let rho = rao_piecewise(RaoKind::SetB, &n).unwrap();
        let se = rao_piecewise(RaoKind::Subextremal, &n).unwrap();
        let ext = rao_piecewise(RaoKind::Extremal, &n).unwrap();
        for j in -n.r - 5..=n.d + n.r + 5 {
            prop_assert_eq!(rho.eval(j), rho.eval(n.d - 2 - j));
            prop_assert!(0 <= rho.eval(j) && rho.eval(j) <= se.eval(j) && se.eval(j) <= ext.eval(j));
        }
        prop_assert!((1..=n.d - 3).all(|j| rho.eval(j) == n.r));
        prop_assert!(rho.endpoint_conflicts().is_empty());
    }

    #[test]
    fn h_b_sums_to_r(n in set_numerics(30)) {
        let b = n.b.unwrap();
        let values: Vec<i64> = (-2..=n.r + 2).map(|j| h_b_profile(n.r, b, j).unwrap()).collect();
        prop_assert!(values.iter().all(|&v| v >= 0));
        prop_assert_eq!(values.iter().sum::<i64>(), n.r);
    }

    #[test]
    fn postulation_character_is_minus_third_difference(n in set_numerics(20)) {
        let h = |j: i64| expected_hilbert(&n, j).unwrap().h_c;
        for j in 0..=n.d + n.r + 3 {
            prop_assert_eq!(expected_hilbert(&n, j).unwrap().gamma, -third_difference(h, j));
        }
        // eventually the Hilbert polynomial dj - g + 1
        let top = n.d + n.r + 3;
        prop_assert_eq!(h(top), n.d * top - n.g + 1);
    }

    #[test]
    fn riemann_roch_links_h2_and_rao(n in set_numerics(20)) {
        for j in 1..=n.d + n.r {
            let e = expected_hilbert(&n, j).unwrap();
            let rho = reference_rao(RaoKind::SetB, &n, j).unwrap();
            // h⁰(O_C(j)) = h_C(j) + ρ(j) = dj - g + 1 + h²(I_C(j))
            prop_assert_eq!(e.h_c + rho, n.d * j - n.g + 1 + e.h2);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn constructed_rao_is_symmetric(seed in any::<u64>(), n in set_numerics(8)) {
        let c = construct_set_curve(n.d, n.g, n.b.unwrap(), false, &mut SeededRng::new(seed), &SetOptions::default()).unwrap();
        let sheaf = c.sheaf();
        let (lo, hi) = sheaf.rao_support().unwrap();
        for j in lo - 2..=hi + 2 {
            prop_assert_eq!(sheaf.h1(j), sheaf.h1(n.d - 2 - j));
        }
        let (a, b) = sheaf.default_window();
        prop_assert!(sheaf.cohomology_table(a, b).riemann_roch_failures().is_empty());
    }
}
