//! An extremal curve of degree `d - 1` plus a line meeting it twice gives a
//! subextremal curve of degree `d`.

use curvelab::factory::{attach_two_secant_line, classify_sheaf, construct_extremal};
use curvelab::formulas::{reference_rao, CurveNumerics, RaoKind};
use curvelab_kernel::{PrimeField, SeededRng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (d, g) = (8, -4);
    let mut rng = SeededRng::new(7);
    let base = construct_extremal(d - 1, g - 1, &mut rng, PrimeField::default())?;
    println!(
        "extremal ({}, {}): Rao maximum {}",
        base.d,
        base.g,
        base.sheaf().rao().max
    );

    let curve = attach_two_secant_line(&base, &mut rng)?;
    let n = CurveNumerics::new(d, g)?;
    let sheaf = curve.sheaf();
    let (lo, hi) = sheaf.rao_support().unwrap();
    let agrees = (lo - 2..=hi + 2)
        .all(|j| sheaf.h1(j) == reference_rao(RaoKind::Subextremal, &n, j).unwrap());
    println!(
        "with the line: ({}, {}), Rao function equals the subextremal bound: {agrees}",
        curve.d, curve.g
    );

    let class = classify_sheaf(sheaf, &mut rng)?;
    println!(
        "classified as {} (quadric reduced: {:?})",
        class.tag, class.evidence.quadric_reduced
    );
    Ok(())
}
