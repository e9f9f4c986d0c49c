//! Explicit ideals of curves: double-plane curves of subextremal type,
//! extremal curves, their 2-secant extensions and basic double links, plus
//! the residual machinery and a classifier.

mod classify;
mod conic;
mod extremal;
mod link;
mod residual;
mod set_curve;

use std::sync::Arc;

use curvelab_kernel::{Ideal, Poly, PrimeField, Ring, RingRef};

use crate::error::{CurveError, Result};
use crate::invariants::SheafData;

pub use classify::{
    classify, classify_sheaf, quadric_rank, split_quadric, ClassTag, Classification, Evidence,
    StructureChecks, SubextremalChecks,
};
pub use conic::{points_on_conic_ideal, ConicPointConfig, ConicPoints};
pub use extremal::{attach_two_secant_line, construct_extremal, general_surface, LINE_BUDGET};
pub use link::{basic_double_link, double_link_bundle, linked_genus};
pub use residual::{gcd_of_forms, plane_restriction, residual_decomposition, ResidualData};
pub use set_curve::{construct_set_curve, SetOptions, MAX_DRAWS};

/// How a bundle was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Double-plane curve of subextremal type with parameter `b`.
    SetCurve { b: i64, ci: bool },
    /// Plane curve through a line union a double structure on that line,
    /// the double structure given by forms of degree `m`.
    Extremal { m: i64 },
    /// Extremal curve with a 2-secant line attached.
    TwoSecant,
    /// Basic double link of another curve; the Rao function moves by
    /// `shift = deg F`.
    DoubleLink { shift: i64 },
}

/// Auxiliary objects of a construction, kept for inspection and re-checks.
#[derive(Clone, Debug, Default)]
pub struct Witnesses {
    /// Linear form of the distinguished plane `H`.
    pub plane: Option<Poly>,
    /// Equation of the residual conic inside `H`.
    pub phi: Option<Poly>,
    /// Second generator of a complete-intersection point scheme.
    pub psi: Option<Poly>,
    pub h: Option<Poly>,
    pub f: Option<Poly>,
    pub g: Option<Poly>,
    /// `2 × 3` matrix whose minors generate the residual points (plane ring).
    pub a_matrix: Option<Vec<Vec<Poly>>>,
    /// `A` extended by the column `(F, G)`.
    pub m_matrix: Option<Vec<Vec<Poly>>>,
    /// Ideal of the residual points in the plane ring.
    pub points: Option<Ideal>,
    /// Named component ideals (planar part, double line, attached line, …).
    pub components: Vec<(String, Ideal)>,
    /// Degree-`m` forms `(f, e)` of a double line `(x², xt, t², x f − t e)`.
    pub double_line_forms: Option<(Poly, Poly)>,
}

/// A constructed curve with its certificates.
#[derive(Clone)]
pub struct CurveBundle {
    pub ideal: Ideal,
    pub d: i64,
    pub g: i64,
    pub construction: Construction,
    pub witnesses: Witnesses,
    pub seed: u64,
    /// Number of random draws used before every certificate passed.
    pub attempts: usize,
    sheaf: Arc<SheafData>,
}

impl CurveBundle {
    /// Minimal resolution and cohomology data, computed during certification.
    pub fn sheaf(&self) -> &SheafData {
        &self.sheaf
    }

    pub fn b(&self) -> Option<i64> {
        match self.construction {
            Construction::SetCurve { b, .. } => Some(b),
            _ => None,
        }
    }

    pub fn component(&self, name: &str) -> Option<&Ideal> {
        self.witnesses
            .components
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, i)| i)
    }
}

pub(crate) struct Certified {
    pub ideal: Ideal,
    pub sheaf: Arc<SheafData>,
}

/// Checks that `ideal` is a saturated curve of the given degree and genus and
/// returns it with minimal generators.
pub(crate) fn certify_curve(ideal: &Ideal, d: i64, g: i64) -> Result<Certified> {
    let dd = ideal.dimension_degree()?;
    if (dd.proj_dim, dd.degree, dd.genus) != (1, d, Some(g)) {
        return Err(CurveError::certificate(
            "degree and genus",
            format!(
                "expected a curve of degree {d} and genus {g}, got dimension {}, degree {}, genus {:?}",
                dd.proj_dim, dd.degree, dd.genus
            ),
        ));
    }
    let ideal = ideal.minimized();
    let sheaf = match SheafData::compute(&ideal) {
        Ok(s) => s,
        Err(CurveError::NotSaturated) => {
            return Err(CurveError::certificate(
                "saturation",
                "the ideal has depth zero",
            ))
        }
        Err(e) => return Err(e),
    };
    Ok(Certified {
        ideal,
        sheaf: Arc::new(sheaf),
    })
}

pub(crate) fn bundle(
    c: Certified,
    d: i64,
    g: i64,
    construction: Construction,
    witnesses: Witnesses,
    seed: u64,
    attempts: usize,
) -> CurveBundle {
    CurveBundle {
        ideal: c.ideal,
        d,
        g,
        construction,
        witnesses,
        seed,
        attempts,
        sheaf: c.sheaf,
    }
}

/// `ℙ³` with coordinates `x, y, z, t`.
pub fn space(field: PrimeField) -> RingRef {
    Ring::projective_space(field)
}

/// Map a form in `y, z, t` into `ℙ³`.
pub fn lift(p: &Poly, space: &RingRef) -> Poly {
    p.relabel(space, &[1, 2, 3])
}

/// Whether the ideal generated by the forms defines the empty set.
pub(crate) fn is_irrelevant(ring: &RingRef, forms: Vec<Poly>) -> Result<bool> {
    let forms: Vec<Poly> = forms.into_iter().filter(|f| !f.is_zero()).collect();
    if forms.is_empty() {
        return Ok(false);
    }
    Ok(Ideal::new(ring, forms)?.dimension_degree()?.proj_dim < 0)
}
