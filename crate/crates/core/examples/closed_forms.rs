//! Tabulate the reference Rao functions and family dimensions.

use curvelab::formulas::{family_dimensions, rao_piecewise, CurveNumerics, RaoKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = CurveNumerics::new(9, 2)?;
    let ext = rao_piecewise(RaoKind::Extremal, &n)?;
    let se = rao_piecewise(RaoKind::Subextremal, &n)?;
    let strata: Vec<_> = (0..=n.max_b().unwrap())
        .map(|b| rao_piecewise(RaoKind::SetB, &n.with_b(b)?))
        .collect::<Result<_, _>>()?;

    print!("{:>4} {:>4} {:>4}", "j", "E", "SE");
    (0..strata.len()).for_each(|b| print!(" {:>4}", format!("b={b}")));
    println!();
    for j in -2..=n.d + n.r {
        print!("{j:>4} {:>4} {:>4}", ext.eval(j), se.eval(j));
        strata.iter().for_each(|s| print!(" {:>4}", s.eval(j)));
        println!();
    }
    let f = family_dimensions(&n)?;
    println!(
        "extremal family {}, subextremal family {}",
        f.dim_extremal, f.dim_f_se
    );
    Ok(())
}
