//! A basic double link moves the Rao function by the degree of `F`.

use curvelab::factory::{construct_extremal, double_link_bundle};
use curvelab_kernel::{random_form, PrimeField, SeededRng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = SeededRng::new(5);
    let base = construct_extremal(5, 0, &mut rng, PrimeField::default())?;
    let ring = base.ideal.ring().clone();
    let q = base
        .ideal
        .gens()
        .iter()
        .find(|p| p.degree() == Some(2))
        .expect("a quadric")
        .clone();
    let f = random_form(&ring, 1, &mut rng);
    let linked = double_link_bundle(&base, &q, &f)?;

    println!("({}, {}) -> ({}, {})", base.d, base.g, linked.d, linked.g);
    let (lo, hi) = linked.sheaf().rao_support().unwrap();
    for j in lo - 1..=hi + 1 {
        println!(
            "j = {j:>2}: before {:>2}, after {:>2}",
            base.sheaf().h1(j),
            linked.sheaf().h1(j)
        );
    }
    Ok(())
}
