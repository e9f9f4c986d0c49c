//! Gröbner basis, Hilbert function and minimal free resolution of the
//! twisted cubic, with the Betti numbers recomputed from Koszul homology.

use curvelab_kernel::{
    koszul_betti, minimal_free_resolution, parse_ideal_file, Ideal, PrimeField, Ring, SeededRng,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = Ring::projective_space(PrimeField::default());
    let gens = parse_ideal_file(&ring, "x*z - y^2\ny*t - z^2\nx*t - y*z\n")?;
    let ideal = Ideal::new(&ring, gens)?;

    println!("Groebner basis:");
    for g in ideal.groebner() {
        println!("  {g}");
    }
    let dd = ideal.dimension_degree()?;
    println!(
        "dimension {}, degree {}, genus {:?}",
        dd.proj_dim, dd.degree, dd.genus
    );
    let h: Vec<i64> = (0..8).map(|j| ideal.hilbert_function(j)).collect();
    println!("Hilbert function: {h:?}");

    let res = minimal_free_resolution(&ideal)?;
    println!("Betti table:\n{}", res.betti());
    let tor = koszul_betti(&ideal, 6, &mut SeededRng::new(1))?;
    println!("Koszul homology agrees: {}", tor == res.betti());
    Ok(())
}
