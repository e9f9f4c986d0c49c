//! Point sets on a pair of lines and their Hilbert–Burch data.

use curvelab::factory::{points_on_conic_ideal, ConicPointConfig};
use curvelab_kernel::PrimeField;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = 7;
    for b in 0..=(r - 1) / 2 {
        let pts = points_on_conic_ideal(&ConicPointConfig::standard(r, b)?, PrimeField::default())?;
        println!(
            "r = {r}, b = {b}: generators in degrees {:?}, profile {:?}",
            pts.generator_degrees, pts.difference_profile
        );
    }
    let ci = points_on_conic_ideal(
        &ConicPointConfig::complete_intersection(4)?,
        PrimeField::default(),
    )?;
    println!(
        "complete intersection: generators in degrees {:?}",
        ci.generator_degrees
    );
    Ok(())
}
