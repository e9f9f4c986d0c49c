use curvelab::factory::{
    attach_two_secant_line, basic_double_link, classify, classify_sheaf, construct_extremal,
    construct_set_curve, double_link_bundle, points_on_conic_ideal, quadric_rank,
    residual_decomposition, space, ClassTag, ConicPointConfig, Construction, SetOptions,
};
use curvelab::formulas::{
    choose2, expected_betti, reference_rao, residual_degree, BettiCase, CurveNumerics, RaoKind,
};
use curvelab::CurveError;
use curvelab_kernel::{random_form, Ideal, Poly, PrimeField, SeededRng};

fn field() -> PrimeField {
    PrimeField::default()
}

fn set(d: i64, g: i64, b: i64, ci: bool, seed: u64) -> curvelab::factory::CurveBundle {
    construct_set_curve(
        d,
        g,
        b,
        ci,
        &mut SeededRng::new(seed),
        &SetOptions::default(),
    )
    .unwrap()
}

#[test]
fn conic_point_configurations() {
    let collinear =
        points_on_conic_ideal(&ConicPointConfig::standard(4, 0).unwrap(), field()).unwrap();
    assert_eq!(collinear.generator_degrees, vec![1, 4]);
    assert_eq!(collinear.b, 0);

    let split = points_on_conic_ideal(&ConicPointConfig::standard(4, 1).unwrap(), field()).unwrap();
    assert_eq!(split.generator_degrees, vec![2, 2, 3]);
    assert_eq!(split.b, 1);

    let ci = points_on_conic_ideal(
        &ConicPointConfig::complete_intersection(3).unwrap(),
        field(),
    )
    .unwrap();
    assert_eq!(ci.generator_degrees, vec![2, 3]);
    assert_eq!(ci.ideal.dimension_degree().unwrap().degree, 6);
}

#[test]
fn set_curve_with_b_two() {
    let c = set(7, 0, 2, false, 1);
    assert_eq!(c.ideal.generator_degrees(), vec![2, 3, 7, 8, 10]);
    let n = CurveNumerics::new(7, 0).unwrap().with_b(2).unwrap();
    let rao = c.sheaf().rao();
    for j in -5..15 {
        assert_eq!(
            rao.value(j),
            reference_rao(RaoKind::SetB, &n, j).unwrap(),
            "j = {j}"
        );
    }
    assert_eq!(
        c.sheaf().resolution().betti(),
        expected_betti(&n, BettiCase::SetNonCi).unwrap()
    );
    assert_eq!([5, 6, 7, 8, 9].map(|j| rao.value(j)), [6, 4, 2, 1, 0]);
}

#[test]
fn complete_intersection_case() {
    let c = set(7, 1, 2, true, 1);
    let n = CurveNumerics::new(7, 1).unwrap().with_b(2).unwrap();
    assert_eq!(n.r, 6);
    assert_eq!(
        c.sheaf().resolution().betti(),
        expected_betti(&n, BettiCase::SetCi).unwrap()
    );
}

#[test]
fn b_zero_is_subextremal() {
    let c = set(7, 0, 0, false, 1);
    let n = CurveNumerics::new(7, 0).unwrap();
    for j in -5..15 {
        assert_eq!(
            c.sheaf().h1(j),
            reference_rao(RaoKind::Subextremal, &n, j).unwrap()
        );
    }
    let cl = classify_sheaf(c.sheaf(), &mut SeededRng::new(2)).unwrap();
    assert_eq!(cl.tag, ClassTag::Subextremal);
    // the four syzygy degrees of the subextremal shape
    let mut syzygies = c.sheaf().resolution().shifts(2);
    syzygies.sort();
    assert_eq!(syzygies, vec![4, 7, 13, 13]);
}

#[test]
fn set_curves_reject_bad_parameters() {
    let mut rng = SeededRng::new(1);
    let opts = SetOptions::default();
    for (d, g, b, ci) in [
        (6, 0, 0, false),
        (7, 0, 4, false),
        (7, 0, 1, true),
        (7, 11, 0, false),
    ] {
        let err = construct_set_curve(d, g, b, ci, &mut rng, &opts)
            .err()
            .unwrap();
        assert!(
            matches!(err, CurveError::InvalidParameters(_)),
            "({d},{g},{b},{ci}): {err}"
        );
    }
}

#[test]
fn extremal_curves() {
    let c = construct_extremal(6, -3, &mut SeededRng::new(7), field()).unwrap();
    let n = CurveNumerics::new(6, -3).unwrap();
    let rao = c.sheaf().rao();
    assert_eq!(rao.max, choose2(4) + 3);
    for j in -12..20 {
        assert_eq!(
            rao.value(j),
            reference_rao(RaoKind::Extremal, &n, j).unwrap()
        );
    }
    assert_eq!(c.sheaf().h0(2), 2);

    let c = construct_extremal(7, 0, &mut SeededRng::new(7), field()).unwrap();
    let rao = c.sheaf().rao();
    assert!((0..=5).all(|j| rao.value(j) == 10));
    assert_eq!(rao.value(6), 9);
    assert_eq!(rao.support.unwrap().1, 14);
    assert_eq!(
        classify(&c.ideal, &mut SeededRng::new(1)).unwrap().tag,
        ClassTag::Extremal
    );

    let err = construct_extremal(7, choose2(5), &mut SeededRng::new(7), field())
        .err()
        .unwrap();
    assert!(matches!(err, CurveError::InvalidParameters(_)));
}

#[test]
fn two_secant_line_gives_subextremal_curve() {
    let base = construct_extremal(6, -3, &mut SeededRng::new(7), field()).unwrap();
    let c = attach_two_secant_line(&base, &mut SeededRng::new(8)).unwrap();
    assert_eq!((c.d, c.g), (7, -2));
    assert_eq!(c.construction, Construction::TwoSecant);
    let n = CurveNumerics::new(7, -2).unwrap();
    assert_eq!(c.sheaf().h0(2), 1);
    let q = c
        .ideal
        .gens()
        .iter()
        .find(|p| p.degree() == Some(2))
        .unwrap();
    assert_eq!(quadric_rank(q).unwrap(), 2);
    assert!(c.sheaf().h1(n.d + n.r - 4) > 0);

    let cl = classify_sheaf(c.sheaf(), &mut SeededRng::new(3)).unwrap();
    assert_eq!(cl.tag, ClassTag::Subextremal);
    assert_eq!(cl.evidence.quadric_reduced, Some(true));

    // the double line component has genus at most -r
    let y = c.component("double line").expect("double line witness");
    let genus = y.dimension_degree().unwrap().genus.unwrap();
    assert!(genus <= -n.r, "p_a(Y) = {genus}, r = {}", n.r);
}

#[test]
fn double_link_of_a_line() {
    let ring = space(field());
    let v = |i| Poly::var(&ring, i);
    let line = Ideal::new(&ring, vec![v(0), v(1)]).unwrap();
    let linked = basic_double_link(&line, &v(0).mul(&v(1)), &v(2)).unwrap();
    let dd = linked.dimension_degree().unwrap();
    assert_eq!((dd.proj_dim, dd.degree), (1, 3));
    assert!(basic_double_link(&line, &v(2).mul(&v(3)), &v(0)).is_err());
}

#[test]
fn double_link_shifts_the_rao_function() {
    let base = construct_extremal(5, 0, &mut SeededRng::new(5), field()).unwrap();
    let ring = base.ideal.ring().clone();
    let q = base
        .ideal
        .gens()
        .iter()
        .find(|p| p.degree() == Some(2))
        .unwrap()
        .clone();
    let f = random_form(&ring, 1, &mut SeededRng::new(6));
    let linked = double_link_bundle(&base, &q, &f).unwrap();
    assert_eq!((linked.d, linked.g), (7, 4));
    let (lo, hi) = base.sheaf().rao_support().unwrap();
    assert_eq!(linked.sheaf().rao_support(), Some((lo + 1, hi + 1)));
    for j in lo - 2..=hi + 3 {
        assert_eq!(linked.sheaf().h1(j), base.sheaf().h1(j - 1));
    }
    let n = CurveNumerics::new(7, 4).unwrap();
    for j in lo - 2..=hi + 3 {
        assert_eq!(
            linked.sheaf().h1(j),
            reference_rao(RaoKind::Subextremal, &n, j).unwrap()
        );
    }
}

#[test]
fn residual_of_set_and_extremal_curves() {
    let mut rng = SeededRng::new(9);
    let c = set(7, 0, 2, false, 1);
    let x = c.witnesses.plane.clone().unwrap();
    let res = residual_decomposition(&c.ideal, &x, &mut rng).unwrap();
    assert_eq!(res.points_degree, 7);
    assert_eq!(res.residual_degree, 2);
    assert!(res.contained_in_residual_section);
    assert!(res.residual_curve.contains(&x));
    assert_eq!(residual_degree(7, 0, 2, 0).unwrap(), 7);

    let e = construct_extremal(7, -2, &mut SeededRng::new(4), field()).unwrap();
    let res =
        residual_decomposition(&e.ideal, e.witnesses.plane.as_ref().unwrap(), &mut rng).unwrap();
    assert_eq!(res.residual_degree, 1);
    let a_ext = CurveNumerics::new(7, -2).unwrap().a_ext;
    assert_eq!(residual_degree(7, -2, 1, 0).unwrap(), a_ext);
    assert_eq!(res.points_degree, a_ext);
    assert_eq!(
        res.points_degree,
        residual_degree(7, -2, res.residual_degree, res.residual_genus).unwrap()
    );
}

#[test]
fn rao_function_from_residual_points() {
    // h¹(I_C(j)) = deg Z - h_Z(2 - d + j) for j >= 1
    let mut rng = SeededRng::new(10);
    for (d, g, b) in [(7, 0, 0), (7, 0, 2), (8, -1, 3), (9, 1, 1)] {
        let c = set(d, g, b, false, 2);
        let res = residual_decomposition(&c.ideal, c.witnesses.plane.as_ref().unwrap(), &mut rng)
            .unwrap();
        for j in 1..=d + res.points_degree {
            let expected = res.points_degree - res.points.hilbert_function(2 - d + j);
            assert_eq!(c.sheaf().h1(j), expected, "({d},{g},{b}) j = {j}");
        }
    }
}

#[test]
fn classification_round_trip() {
    let c = set(8, -1, 1, false, 3);
    let cl = classify(&c.ideal, &mut SeededRng::new(1)).unwrap();
    assert_eq!(cl.tag, ClassTag::SetB(1));
    assert!(cl.structure.all());
    assert_eq!(cl.evidence.b_from_points, Some(1));
    assert_eq!(cl.evidence.quadric_reduced, Some(false));

    let ring = space(field());
    let mut rng = SeededRng::new(4);
    let ci = Ideal::new(
        &ring,
        vec![
            random_form(&ring, 2, &mut rng),
            random_form(&ring, 3, &mut rng),
        ],
    )
    .unwrap();
    assert_eq!(classify(&ci, &mut rng).unwrap().tag, ClassTag::Acm);
}

#[test]
fn every_small_stratum_round_trips() {
    let mut rng = SeededRng::new(12);
    for (d, g) in [(7, 0), (7, 1), (8, 2)] {
        let n = CurveNumerics::new(d, g).unwrap();
        for b in 0..=n.max_b().unwrap() {
            let c = set(d, g, b, false, 20 + b as u64);
            let cl = classify_sheaf(c.sheaf(), &mut rng).unwrap();
            assert_eq!(
                cl.tag.set_parameter(),
                Some(b),
                "({d},{g},{b}) gave {}",
                cl.tag
            );
            let section = &cl.evidence.section_profile;
            assert_eq!(section.iter().sum::<i64>(), d);
            assert_eq!(section[0], 1);
            assert!(section.iter().all(|&v| v >= 0));
        }
    }
}
