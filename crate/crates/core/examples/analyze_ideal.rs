//! Read an ideal file, report its invariants and classify it.
//!
//! `cargo run --example analyze_ideal -- curve.ideal`

use curvelab::factory::{classify_sheaf, space};
use curvelab::invariants::SheafData;
use curvelab::report::{report_for_ideal, InputEcho};
use curvelab_kernel::{parse_ideal_file, Ideal, PrimeField, SeededRng};

const SKEW_LINES: &str = "# two skew lines\nx*z\nx*t\ny*z\ny*t\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => SKEW_LINES.to_string(),
    };
    let ring = space(PrimeField::default());
    let ideal = Ideal::new(&ring, parse_ideal_file(&ring, &text)?)?;
    let sheaf = SheafData::compute(&ideal)?;
    let mut rng = SeededRng::new(0);
    println!("degree {}, genus {}", sheaf.degree(), sheaf.genus());
    println!("Rao function {:?}", sheaf.rao().values);
    println!("class {}", classify_sheaf(&sheaf, &mut rng)?.tag);

    let report = report_for_ideal(InputEcho::default(), &sheaf, &mut rng, Vec::new())?;
    println!(
        "{} checks, all passed: {}",
        report.checks.len(),
        report.passed()
    );
    Ok(())
}
