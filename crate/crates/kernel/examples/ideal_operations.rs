//! Quotients, saturation and intersection on small ideals.

use curvelab_kernel::{Ideal, Poly, PrimeField, Ring};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = Ring::projective_space(PrimeField::default());
    let v = |i| Poly::var(&ring, i);
    let (x, y, z, t) = (v(0), v(1), v(2), v(3));

    let two_lines = Ideal::new(&ring, vec![x.clone(), y.clone()])?
        .intersect(&Ideal::new(&ring, vec![z.clone(), t.clone()])?)?;
    println!(
        "two skew lines: {:?}",
        two_lines
            .minimal_generators()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
    );

    let q = Ideal::new(&ring, vec![x.mul(&y), x.mul(&z)])?.quotient_by(&x)?;
    println!(
        "(xy, xz) : x = {:?}",
        q.gens().iter().map(|p| p.to_string()).collect::<Vec<_>>()
    );

    let embedded = Ideal::new(&ring, vec![x.mul(&x), x.mul(&y), x.mul(&z), x.mul(&t)])?;
    let (sat, steps) = embedded.saturate(&Ideal::irrelevant(&ring))?;
    println!(
        "saturation of (x^2, xy, xz, xt): {:?} after {steps} steps",
        sat.minimal_generators()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
    );
    Ok(())
}
