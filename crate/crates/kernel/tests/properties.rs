use curvelab_kernel::{random_form, Ideal, Poly, PrimeField, Ring, RingRef, SeededRng};
use proptest::prelude::*;

fn ring() -> RingRef {
    Ring::projective_space(PrimeField::default())
}

/// A small homogeneous ideal drawn from a seed.
fn seeded_ideal(seed: u64, count: usize, max_deg: u32) -> (Ideal, Vec<Poly>, SeededRng) {
    let r = ring();
    let mut rng = SeededRng::new(seed);
    let gens: Vec<Poly> = (0..count)
        .map(|_| random_form(&r, rng.range(1, max_deg as i64) as u32, &mut rng))
        .collect();
    (Ideal::new(&r, gens.clone()).unwrap(), gens, rng)
}

fn monomial_ideal(seed: u64) -> Ideal {
    let r = ring();
    let mut rng = SeededRng::new(seed);
    let count = rng.range(1, 3) as usize;
    let gens = (0..count)
        .map(|_| {
            let e: Vec<u32> = (0..4).map(|_| rng.range(0, 2) as u32).collect();
            let e = if e.iter().all(|&v| v == 0) {
                vec![1, 0, 0, 0]
            } else {
                e
            };
            (0..4).fold(Poly::one(&r), |acc, i| acc.mul(&Poly::var(&r, i).pow(e[i])))
        })
        .collect();
    Ideal::new(&r, gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groebner_basis_is_idempotent(seed in any::<u64>(), count in 1usize..4) {
        let (ideal, _, _) = seeded_ideal(seed, count, 3);
        let again = Ideal::new(ideal.ring(), ideal.groebner().to_vec()).unwrap();
        prop_assert_eq!(again.groebner(), ideal.groebner());
    }

    #[test]
    fn combinations_of_generators_are_members(seed in any::<u64>(), count in 1usize..4) {
        let (ideal, gens, mut rng) = seeded_ideal(seed, count, 3);
        let r = ideal.ring().clone();
        let combo = gens.iter().fold(Poly::zero(&r), |acc, g| {
            acc.add(&g.mul(&random_form(&r, 4 - g.degree().unwrap(), &mut rng)))
        });
        prop_assert!(ideal.contains(&combo));
        prop_assert!(ideal.reduce(&combo).is_zero());
    }

    #[test]
    fn intersection_is_commutative_and_contained(a in any::<u64>(), b in any::<u64>()) {
        let i = monomial_ideal(a);
        let j = monomial_ideal(b);
        let ij = i.intersect(&j).unwrap();
        let ji = j.intersect(&i).unwrap();
        prop_assert!(ij.contains_ideal(&ji) && ji.contains_ideal(&ij));
        prop_assert!(i.contains_ideal(&ij) && j.contains_ideal(&ij));
        prop_assert!(ij.contains_ideal(&i.product(&j).unwrap()));
    }

    #[test]
    fn saturation_is_idempotent(seed in any::<u64>()) {
        let (ideal, _, _) = seeded_ideal(seed, 2, 2);
        let m = Ideal::irrelevant(ideal.ring());
        let (sat, _) = ideal.saturate(&m).unwrap();
        let (again, _) = sat.saturate(&m).unwrap();
        prop_assert!(sat.contains_ideal(&ideal));
        prop_assert!(again.contains_ideal(&sat) && sat.contains_ideal(&again));
    }

    #[test]
    fn quotient_contains_the_ideal(seed in any::<u64>()) {
        let (ideal, _, mut rng) = seeded_ideal(seed, 2, 2);
        let l = random_form(ideal.ring(), 1, &mut rng);
        let q = ideal.quotient_by(&l).unwrap();
        prop_assert!(q.contains_ideal(&ideal));
        for g in q.gens() {
            prop_assert!(ideal.contains(&g.mul(&l)));
        }
    }
}
