//! Build a curve in the double plane `x² = 0` and compare its Rao function
//! and Betti table with the closed forms.
//!
//! `cargo run --example set_curve -- 8 -1 2`

use curvelab::factory::{construct_set_curve, SetOptions};
use curvelab::formulas::{expected_betti, reference_rao, BettiCase, CurveNumerics, RaoKind};
use curvelab_kernel::SeededRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let (d, g, b) = match args[..] {
        [d, g, b] => (d, g, b),
        _ => (7, 0, 2),
    };
    let curve = construct_set_curve(
        d,
        g,
        b,
        false,
        &mut SeededRng::new(42),
        &SetOptions::default(),
    )?;
    let n = CurveNumerics::new(d, g)?.with_b(b)?;
    println!("degree {d}, genus {g}, r = {}, b = {b}", n.r);
    println!("generator degrees {:?}", curve.ideal.generator_degrees());

    let sheaf = curve.sheaf();
    let (lo, hi) = sheaf.rao_support().expect("not ACM");
    println!("{:>4} {:>6} {:>8}", "j", "h1", "formula");
    for j in lo - 1..=hi + 1 {
        println!(
            "{j:>4} {:>6} {:>8}",
            sheaf.h1(j),
            reference_rao(RaoKind::SetB, &n, j)?
        );
    }
    let expected = expected_betti(&n, BettiCase::for_construction(&n, false)?)?;
    println!("Betti table:\n{}", sheaf.resolution().betti());
    println!(
        "matches the closed form: {}",
        sheaf.resolution().betti() == expected
    );
    Ok(())
}
