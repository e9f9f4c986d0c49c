//! Cut a curve with its distinguished plane: residual curve, planar part
//! and residual points.

use curvelab::factory::{construct_set_curve, residual_decomposition, SetOptions};
use curvelab::formulas::residual_degree;
use curvelab_kernel::SeededRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = SeededRng::new(3);
    for b in 0..=3 {
        let curve = construct_set_curve(7, 0, b, false, &mut rng, &SetOptions::default())?;
        let h = curve.witnesses.plane.clone().unwrap();
        let res = residual_decomposition(&curve.ideal, &h, &mut rng)?;
        println!(
            "b = {b}: planar part of degree {}, residual curve of degree {}, {} points (predicted {}), profile {:?}, on a line: {}",
            res.planar_degree,
            res.residual_degree,
            res.points_degree,
            residual_degree(7, 0, res.residual_degree, res.residual_genus)?,
            res.points_difference_profile(),
            res.points_linear_forms() > 0,
        );
    }
    Ok(())
}
