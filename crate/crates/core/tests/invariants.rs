use curvelab::factory::{construct_extremal, construct_set_curve, space, SetOptions};
use curvelab::invariants::{
    betti_table, cohomology_table, hilbert_function, hyperplane_section_diff, numerical_characters,
    rao_function, SheafData,
};
use curvelab::verify::twisted_cubic;
use curvelab::CurveError;
use curvelab_kernel::{random_form, BettiTable, Ideal, Poly, PrimeField, SeededRng};

fn lines() -> (Ideal, Ideal) {
    let ring = space(PrimeField::default());
    let v = |i| Poly::var(&ring, i);
    let line = Ideal::new(&ring, vec![v(0), v(1)]).unwrap();
    let skew = Ideal::new(&ring, vec![v(2), v(3)]).unwrap();
    (line, skew)
}

#[test]
fn hilbert_function_of_a_plane() {
    let ring = space(PrimeField::default());
    let plane = Ideal::new(&ring, vec![Poly::var(&ring, 0)]).unwrap();
    assert_eq!(hilbert_function(&plane, 2), 6);
}

#[test]
fn line_invariants() {
    let (line, _) = lines();
    let mut rng = SeededRng::new(1);
    assert_eq!(
        betti_table(&line, &mut rng).unwrap(),
        BettiTable::from_shifts(&[vec![1, 1], vec![2]])
    );
    assert!(rao_function(&line).unwrap().is_zero());
    let table = cohomology_table(&line, -6, 6).unwrap();
    assert!(table.rows.iter().all(|(_, h)| h[1] == 0));
    assert_eq!(
        hyperplane_section_diff(&line, &mut rng).unwrap(),
        vec![1, 0]
    );
}

#[test]
fn twisted_cubic_is_acm() {
    let ideal = twisted_cubic(PrimeField::default()).unwrap();
    let sheaf = SheafData::compute(&ideal).unwrap();
    assert_eq!((sheaf.degree(), sheaf.genus()), (3, 0));
    assert!(sheaf.rao().is_zero());
    assert_eq!(
        sheaf.resolution().betti(),
        BettiTable::from_shifts(&[vec![2, 2, 2], vec![3, 3]])
    );
    let chars = sheaf.numerical_characters();
    // h¹(O_C(-1)) = h¹(O_P1(-3)) = 2
    assert_eq!(chars.speciality_index, Some(-1));
    assert_eq!(
        hyperplane_section_diff(&ideal, &mut SeededRng::new(2)).unwrap(),
        vec![1, 2, 0]
    );
}

#[test]
fn two_skew_lines() {
    let (a, b) = lines();
    let ideal = a.intersect(&b).unwrap();
    let sheaf = SheafData::compute(&ideal).unwrap();
    assert_eq!((sheaf.degree(), sheaf.genus()), (2, -1));
    let rao = sheaf.rao();
    assert_eq!(rao.support, Some((0, 0)));
    assert_eq!(rao.value(0), 1);
    let (lo, hi) = sheaf.default_window();
    assert!(sheaf
        .cohomology_table(lo, hi)
        .riemann_roch_failures()
        .is_empty());
}

#[test]
fn complete_intersections_are_acm() {
    let ring = space(PrimeField::default());
    let mut rng = SeededRng::new(3);
    for (a, b) in [(2, 2), (2, 3), (3, 3)] {
        let ideal = Ideal::new(
            &ring,
            vec![
                random_form(&ring, a, &mut rng),
                random_form(&ring, b, &mut rng),
            ],
        )
        .unwrap();
        let sheaf = SheafData::compute(&ideal).unwrap();
        assert_eq!(sheaf.degree(), (a * b) as i64);
        assert!(sheaf.rao().is_zero());
        let genus = 1 + (a * b) as i64 * (a + b) as i64 / 2 - 2 * (a * b) as i64;
        assert_eq!(sheaf.genus(), genus);
    }
}

#[test]
fn non_saturated_ideals_are_rejected() {
    let ring = space(PrimeField::default());
    let v = |i| Poly::var(&ring, i);
    let x = v(0);
    let ideal = Ideal::new(
        &ring,
        vec![x.mul(&x), x.mul(&v(1)), x.mul(&v(2)), x.mul(&v(3))],
    )
    .unwrap();
    assert!(matches!(
        SheafData::compute(&ideal),
        Err(CurveError::NotSaturated) | Err(CurveError::NotACurve(_))
    ));
}

#[test]
fn set_curve_cohomology() {
    let c = construct_set_curve(
        7,
        0,
        2,
        false,
        &mut SeededRng::new(4),
        &SetOptions::default(),
    )
    .unwrap();
    let sheaf = c.sheaf();
    assert!((1..=4).all(|j| sheaf.h1(j) == 7));
    assert_eq!(sheaf.h2(1), 3);
    let chars = numerical_characters(&c.ideal).unwrap();
    assert_eq!(chars.speciality_index, Some(2));
    assert_eq!(
        [0, 1, 2, 3, 4, 5, 6].map(|j| chars.gamma_at(j)),
        [-1, -1, 0, 1, 0, 0, 0]
    );
    for j in -3..12 {
        // ℓ = ∂²h⁰(O_C) = ∂²h²(I_C)
        let d2 = sheaf.h2(j) - 2 * sheaf.h2(j - 1) + sheaf.h2(j - 2);
        assert_eq!(chars.spectrum_at(j), d2, "j = {j}");
        assert_eq!(
            chars.speciality_character_at(j),
            chars.spectrum_at(j) - chars.spectrum_at(j - 1)
        );
    }
    assert_eq!(
        hyperplane_section_diff(&c.ideal, &mut SeededRng::new(5)).unwrap(),
        vec![1, 2, 2, 1, 1, 0]
    );
}

#[test]
fn extremal_section_profile() {
    let c = construct_extremal(7, 0, &mut SeededRng::new(6), PrimeField::default()).unwrap();
    assert_eq!(
        hyperplane_section_diff(&c.ideal, &mut SeededRng::new(7)).unwrap(),
        vec![1, 2, 1, 1, 1, 1, 0]
    );
}

#[test]
fn cohomology_is_nonnegative_and_satisfies_riemann_roch() {
    let mut rng = SeededRng::new(8);
    for b in 0..=3 {
        let c = construct_set_curve(7, 0, b, false, &mut rng, &SetOptions::default()).unwrap();
        let (lo, hi) = c.sheaf().default_window();
        let table = c.sheaf().cohomology_table(lo, hi);
        assert!(!table.has_negative_entry());
        assert!(table.riemann_roch_failures().is_empty());
    }
}
