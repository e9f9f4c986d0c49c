use curvelab_kernel::{Ideal, Monomial, Poly, Ring, RingRef, SeededRng};

use crate::error::{CurveError, Result};

/// The pieces of a curve cut out by a plane `H`: the residual curve
/// `C′ = (I_C : H)`, the planar part `D ⊂ H` and the residual points
/// `I_{Z,H} = (I_{C∩H,H} : I_{D,H})` in the coordinates of `H`.
#[derive(Clone, Debug)]
pub struct ResidualData {
    pub residual_curve: Ideal,
    /// Degree and genus of `C′`.
    pub residual_degree: i64,
    pub residual_genus: i64,
    /// Equation of `D` in the plane ring.
    pub planar_equation: Poly,
    pub planar_degree: i64,
    /// Ideal of `Z` in the plane ring (the unit ideal when `Z` is empty).
    pub points: Ideal,
    pub points_degree: i64,
    /// `Z ⊆ C′ ∩ H`.
    pub contained_in_residual_section: bool,
    /// Images of `x, y, z, t` in the plane ring.
    pub restriction: Vec<Poly>,
}

impl ResidualData {
    /// `∂h_Z(j)` for `j = 0, 1, …` through the last nonzero value.
    pub fn points_difference_profile(&self) -> Vec<i64> {
        let mut v: Vec<i64> = (0..=self.points_degree.max(1))
            .map(|j| self.points.hilbert_function(j) - self.points.hilbert_function(j - 1))
            .collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// `h⁰(I_{Z,H}(1))`.
    pub fn points_linear_forms(&self) -> i64 {
        self.points.dim_in_degree(1)
    }
}

/// Coordinates on the plane `l = 0`: the images of the four variables in the
/// ring `y, z, t`.
pub fn plane_restriction(l: &Poly, plane: &RingRef) -> Result<Vec<Poly>> {
    let space = l.ring();
    if l.degree() != Some(1) {
        return Err(CurveError::invalid(format!("{l} is not a linear form")));
    }
    let f = space.field();
    let coef = |i: usize| l.coefficient(&Monomial::var(i));
    let pivot = (0..4).find(|&i| coef(i) != 0).unwrap();
    let inv = f.inv(coef(pivot));
    let mut images = Vec::with_capacity(4);
    let mut next = 0;
    let mut others = Vec::new();
    for i in 0..4 {
        if i == pivot {
            images.push(Poly::zero(plane));
        } else {
            images.push(Poly::var(plane, next));
            others.push((i, next));
            next += 1;
        }
    }
    images[pivot] = Poly::from_terms(
        plane,
        others
            .iter()
            .map(|&(i, k)| (Monomial::var(k), f.neg(f.mul(coef(i), inv)))),
    );
    Ok(images)
}

/// Greatest common divisor of forms, through `gcd(a, b) = ab / lcm(a, b)`
/// with the least common multiple generating `(a) ∩ (b)`.
pub fn gcd_of_forms(forms: &[Poly]) -> Result<Poly> {
    let mut it = forms.iter().filter(|f| !f.is_zero());
    let Some(first) = it.next() else {
        return Err(CurveError::invalid("gcd of no forms"));
    };
    let ring = first.ring().clone();
    let mut acc = first.monic();
    for f in it {
        if acc.is_constant() {
            break;
        }
        let a = Ideal::new(&ring, vec![acc.clone()])?;
        let b = Ideal::new(&ring, vec![f.clone()])?;
        let lcm = a.intersect(&b)?;
        let gens = lcm.minimal_generators();
        if gens.len() != 1 {
            return Err(CurveError::Disagreement(
                "intersection of principal ideals is not principal".into(),
            ));
        }
        acc = acc.mul(f).div_exact(&gens[0])?.monic();
    }
    Ok(acc)
}

/// Residual decomposition of a saturated curve ideal with respect to the
/// plane `h = 0`.
pub fn residual_decomposition(
    ideal: &Ideal,
    h: &Poly,
    rng: &mut SeededRng,
) -> Result<ResidualData> {
    let dd = ideal.dimension_degree()?;
    if dd.proj_dim != 1 {
        return Err(CurveError::NotACurve(format!(
            "projective dimension {}",
            dd.proj_dim
        )));
    }
    let plane = Ring::plane(ideal.ring().field());
    let restriction = plane_restriction(h, &plane)?;
    let section = ideal.map(&plane, &restriction)?.saturate_irrelevant(rng)?;
    let gens = section.minimal_generators();
    let planar = gcd_of_forms(&gens)?;
    let planar_degree = planar.degree().unwrap_or(0) as i64;
    if planar_degree == 0 {
        return Err(CurveError::invalid(format!(
            "the plane {h} contains no curve of the given curve"
        )));
    }
    let points = Ideal::new(
        &plane,
        gens.iter()
            .map(|g| g.div_exact(&planar))
            .collect::<curvelab_kernel::Result<Vec<_>>>()?,
    )?
    .minimized();
    let points_degree = match points.dimension_degree()? {
        pd if pd.proj_dim < 0 => 0,
        pd if pd.proj_dim == 0 => pd.degree,
        pd => {
            return Err(CurveError::Disagreement(format!(
                "residual points have dimension {}",
                pd.proj_dim
            )))
        }
    };
    let residual_curve = ideal.quotient_by(h)?;
    let rd = residual_curve.dimension_degree()?;
    if rd.proj_dim != 1 {
        return Err(CurveError::invalid(format!(
            "the plane {h} contains the whole curve"
        )));
    }
    let cut = residual_curve.map(&plane, &restriction)?;
    let contained = points.contains_ideal(&cut);
    Ok(ResidualData {
        residual_curve,
        residual_degree: rd.degree,
        residual_genus: rd.genus.expect("curves have a genus"),
        planar_equation: planar,
        planar_degree,
        points,
        points_degree,
        contained_in_residual_section: contained,
        restriction,
    })
}
