use std::fmt;

use curvelab_kernel::{DenseMatrix, Ideal, Monomial, Poly, SeededRng};

use super::extremal::matches_rao;
use super::residual::{residual_decomposition, ResidualData};
use crate::error::{CurveError, Result};
use crate::formulas::{h_b_profile, CurveNumerics, RaoKind};
use crate::invariants::{hyperplane_section_diff, SheafData};

/// Coarse type of a curve read off its Rao function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassTag {
    Acm,
    Extremal,
    /// Subextremal Rao function; for double-plane curves this is `b = 0`.
    Subextremal,
    /// Rao function of subextremal type with parameter `b > 0`.
    SetB(i64),
    Other,
}

impl ClassTag {
    /// The parameter `b` when the tag describes a curve of subextremal type.
    pub fn set_parameter(&self) -> Option<i64> {
        match self {
            ClassTag::Subextremal => Some(0),
            ClassTag::SetB(b) => Some(*b),
            _ => None,
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::Acm => write!(f, "acm"),
            ClassTag::Extremal => write!(f, "extremal"),
            ClassTag::Subextremal => write!(f, "subextremal"),
            ClassTag::SetB(b) => write!(f, "set_b({b})"),
            ClassTag::Other => write!(f, "other"),
        }
    }
}

/// Four characterizations of curves of subextremal type, evaluated
/// independently. For a non-degenerate curve with `d >= 7` they agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureChecks {
    /// `ρ(j) = r` for `1 <= j <= d - 3`.
    pub rao_plateau: bool,
    /// `h⁰(I_C(2)) = 1` and `h⁰(I_C(3)) = 5`.
    pub generators: bool,
    /// `h⁰(I_C(2)) = 1` and the plane section has `∂h_Γ = 1,2,2,1,…,1,0`.
    pub section: bool,
    /// Some plane meets the curve in a plane curve of degree `d - 2` whose
    /// residual is a plane conic.
    pub planar_part: bool,
}

impl StructureChecks {
    pub fn agree(&self) -> bool {
        let v = [
            self.rao_plateau,
            self.generators,
            self.section,
            self.planar_part,
        ];
        v.iter().all(|&b| b == v[0])
    }

    pub fn all(&self) -> bool {
        self.rao_plateau && self.generators && self.section && self.planar_part
    }
}

/// Four characterizations of subextremal curves among curves of
/// subextremal type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubextremalChecks {
    pub rao_is_subextremal: bool,
    /// `h⁰(I_{Z,H}(1)) > 0`.
    pub collinear_points: bool,
    pub b_zero: bool,
    /// `ρ(d + r - 4) > 0`.
    pub tail_positive: bool,
}

impl SubextremalChecks {
    pub fn agree(&self) -> bool {
        let v = [
            self.rao_is_subextremal,
            self.collinear_points,
            self.b_zero,
            self.tail_positive,
        ];
        v.iter().all(|&b| b == v[0])
    }
}

/// The data behind a classification.
#[derive(Clone, Debug)]
pub struct Evidence {
    pub d: i64,
    pub g: i64,
    pub r: i64,
    pub h0_2: i64,
    pub h0_3: i64,
    /// `∂h_Γ` of a general plane section.
    pub section_profile: Vec<i64>,
    /// Rank of the quadric when `h⁰(I_C(2)) = 1`.
    pub quadric_rank: Option<usize>,
    /// Whether that quadric is reduced (rank at least 2).
    pub quadric_reduced: Option<bool>,
    pub b_from_rao: Option<i64>,
    /// `b` read off `∂h_Z` of the residual points.
    pub b_from_points: Option<i64>,
    /// Plane containing the planar part of degree `d - 2`.
    pub plane: Option<Poly>,
    /// `ρ(d + r - 3)`, which vanishes for every curve of subextremal type.
    pub rao_at_d_plus_r_minus_3: i64,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub tag: ClassTag,
    pub evidence: Evidence,
    pub structure: StructureChecks,
    /// Present when the Rao function has the plateau of subextremal type.
    pub subextremal: Option<SubextremalChecks>,
    pub residual: Option<ResidualData>,
}

/// Rank of the symmetric matrix of a quadratic form (odd characteristic).
pub fn quadric_rank(q: &Poly) -> Result<usize> {
    let m = quadric_matrix(q)?;
    Ok(m.rank(q.ring().field()))
}

fn quadric_matrix(q: &Poly) -> Result<DenseMatrix> {
    let ring = q.ring();
    let f = ring.field();
    if f.characteristic() == 2 {
        return Err(CurveError::invalid("quadric rank needs odd characteristic"));
    }
    if q.degree() != Some(2) || !q.is_homogeneous() {
        return Err(CurveError::invalid(format!("{q} is not a quadratic form")));
    }
    let n = ring.nvars();
    let half = f.inv(2);
    let mut m = DenseMatrix::zeros(n, n);
    for (mono, c) in q.terms() {
        let vars: Vec<usize> = (0..n)
            .flat_map(|i| std::iter::repeat_n(i, mono.exponent(i) as usize))
            .collect();
        let (i, j) = (vars[0], vars[1]);
        if i == j {
            m.set(i, i, *c);
        } else {
            let v = f.mul(*c, half);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    Ok(m)
}

fn linear_form(ring: &curvelab_kernel::RingRef, coeffs: &[u32]) -> Poly {
    Poly::from_terms(
        ring,
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (Monomial::var(i), c)),
    )
}

/// Linear factors of a quadratic form of rank at most 2 that splits over
/// the field: `[l, l]` for `c·l²`, `[l₁, l₂]` for `c·l₁·l₂`, `None` otherwise.
pub fn split_quadric(q: &Poly) -> Result<Option<Vec<Poly>>> {
    let ring = q.ring();
    let f = ring.field();
    let m = quadric_matrix(q)?;
    let n = ring.nvars();
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j)).collect())
        .collect();
    match m.rank(f) {
        1 => {
            let row = rows.iter().find(|r| r.iter().any(|&c| c != 0)).unwrap();
            let l = linear_form(ring, row).monic();
            Ok(Some(vec![l.clone(), l]))
        }
        2 => {
            let mut basis: Vec<&Vec<u32>> = Vec::new();
            for r in &rows {
                let mut cand: Vec<Vec<u32>> = basis.iter().map(|b| (*b).clone()).collect();
                cand.push(r.clone());
                if DenseMatrix::from_rows(&cand).rank(f) == cand.len() {
                    basis.push(r);
                }
                if basis.len() == 2 {
                    break;
                }
            }
            let (w1, w2) = (linear_form(ring, basis[0]), linear_form(ring, basis[1]));
            let cols = [w1.mul(&w1), w1.mul(&w2), w2.mul(&w2), q.clone()];
            let monos = ring.monomials_of_degree(2);
            let system: Vec<Vec<u32>> = monos
                .iter()
                .map(|mono| cols.iter().map(|c| c.coefficient(mono)).collect())
                .collect();
            let kernel = DenseMatrix::from_rows(&system).kernel(f);
            let v = kernel.iter().find(|v| v[3] != 0).ok_or_else(|| {
                CurveError::Disagreement(
                    "rank-2 quadric outside the square of its row space".into(),
                )
            })?;
            let scale = f.neg(f.inv(v[3]));
            let (a, b, c) = (f.mul(v[0], scale), f.mul(v[1], scale), f.mul(v[2], scale));
            if a == 0 {
                return Ok(Some(vec![
                    w2.monic(),
                    w1.scale(b).add(&w2.scale(c)).monic(),
                ]));
            }
            let disc = f.sub(f.mul(b, b), f.mul(4, f.mul(a, c)));
            let Some(s) = f.sqrt(disc) else {
                return Ok(None);
            };
            let two_a_inv = f.inv(f.mul(2, a));
            let roots = [
                f.mul(f.add(f.neg(b), s), two_a_inv),
                f.mul(f.sub(f.neg(b), s), two_a_inv),
            ];
            Ok(Some(
                roots
                    .iter()
                    .map(|&rt| w1.sub(&w2.scale(rt)).monic())
                    .collect(),
            ))
        }
        _ => Ok(None),
    }
}

/// A spanning set of the quadrics in the ideal.
fn quadrics(ideal: &Ideal) -> Vec<Poly> {
    let ring = ideal.ring();
    let mut out = Vec::new();
    for g in ideal.groebner() {
        match g.degree() {
            Some(2) => out.push(g.clone()),
            Some(1) => out.extend((0..ring.nvars()).map(|i| g.mul(&Poly::var(ring, i)))),
            _ => {}
        }
    }
    out
}

/// Planes `l = 0` occurring as linear factors of quadrics of the ideal.
fn candidate_planes(ideal: &Ideal) -> Result<Vec<Poly>> {
    let mut planes: Vec<Poly> = Vec::new();
    for q in quadrics(ideal) {
        if let Some(factors) = split_quadric(&q)? {
            for l in factors {
                if !planes.contains(&l) {
                    planes.push(l);
                }
            }
        }
    }
    Ok(planes)
}

/// Expected `∂h_Γ` of a plane section of a curve of subextremal type.
fn set_section_profile(d: i64) -> Vec<i64> {
    let mut v = vec![1, 2, 2];
    v.extend(std::iter::repeat_n(1, (d - 5).max(0) as usize));
    v.push(0);
    v
}

fn b_from_profile(profile: &[i64], r: i64) -> Option<i64> {
    (0..=(r - 1) / 2).find(|&b| {
        let len = profile.len() as i64;
        (0..len + 2).all(|j| {
            h_b_profile(r, b, j).ok() == Some(profile.get(j as usize).copied().unwrap_or(0))
        })
    })
}

/// Classify a saturated curve ideal.
pub fn classify(ideal: &Ideal, rng: &mut SeededRng) -> Result<Classification> {
    let sheaf = SheafData::compute(ideal)?;
    classify_sheaf(&sheaf, rng)
}

/// Classify from already computed cohomology data.
pub fn classify_sheaf(sheaf: &SheafData, rng: &mut SeededRng) -> Result<Classification> {
    let ideal = sheaf.ideal();
    let (d, g) = (sheaf.degree(), sheaf.genus());
    let n = CurveNumerics::new(d, g)?;
    let rao = sheaf.rao();
    let (h0_2, h0_3) = (sheaf.h0(2), sheaf.h0(3));
    let section_profile = hyperplane_section_diff(ideal, &mut rng.fork(1))?;
    let planes = candidate_planes(ideal)?;

    let rao_plateau = d >= 5 && n.r >= 1 && (1..=d - 3).all(|j| rao.value(j) == n.r);
    let generators = h0_2 == 1 && h0_3 == 5;
    let section = h0_2 == 1 && section_profile == set_section_profile(d);
    let mut plane = None;
    for l in &planes {
        let residual = ideal.quotient_by(l)?;
        let dd = residual.dimension_degree()?;
        if dd.proj_dim == 1 && dd.degree == 2 && residual.dim_in_degree(1) > 0 {
            plane = Some(l.clone());
            break;
        }
    }
    let structure = StructureChecks {
        rao_plateau,
        generators,
        section,
        planar_part: plane.is_some(),
    };

    let (quadric_rank_v, quadric_reduced) = if h0_2 == 1 {
        let q = ideal.gens().iter().find(|g| g.degree() == Some(2)).cloned();
        match q {
            Some(q) => {
                let rk = quadric_rank(&q)?;
                (Some(rk), Some(rk >= 2))
            }
            None => (None, None),
        }
    } else {
        (None, None)
    };

    let is = |kind| -> Result<bool> {
        match kind {
            RaoKind::Extremal if n.a_ext < 0 || d < 2 => Ok(false),
            RaoKind::Subextremal if d < 5 || n.r < 1 => Ok(false),
            _ => matches_rao(sheaf, &n, kind),
        }
    };
    let set_type = rao_plateau && d >= 7;
    let mut b_from_rao = None;
    let tag = if rao.is_zero() {
        ClassTag::Acm
    } else if is(RaoKind::Extremal)? {
        ClassTag::Extremal
    } else if is(RaoKind::Subextremal)? {
        ClassTag::Subextremal
    } else if set_type {
        match rao.b_fit {
            Some(b) if n.with_b(b).is_ok() && matches_rao(sheaf, &n.with_b(b)?, RaoKind::SetB)? => {
                b_from_rao = Some(b);
                ClassTag::SetB(b)
            }
            _ => ClassTag::Other,
        }
    } else {
        ClassTag::Other
    };
    if tag == ClassTag::Subextremal && set_type {
        b_from_rao = Some(0);
    }

    let mut residual = None;
    let mut b_from_points = None;
    let mut subextremal = None;
    if set_type {
        if let Some(l) = &plane {
            let res = residual_decomposition(ideal, l, &mut rng.fork(2))?;
            b_from_points = b_from_profile(&res.points_difference_profile(), res.points_degree);
            subextremal = Some(SubextremalChecks {
                rao_is_subextremal: is(RaoKind::Subextremal)?,
                collinear_points: res.points_degree > 0 && res.points_linear_forms() > 0,
                b_zero: rao.b_fit == Some(0),
                tail_positive: rao.value(d + n.r - 4) > 0,
            });
            residual = Some(res);
        }
    }

    let evidence = Evidence {
        d,
        g,
        r: n.r,
        h0_2,
        h0_3,
        section_profile,
        quadric_rank: quadric_rank_v,
        quadric_reduced,
        b_from_rao,
        b_from_points,
        plane,
        rao_at_d_plus_r_minus_3: rao.value(d + n.r - 3),
    };
    Ok(Classification {
        tag,
        evidence,
        structure,
        subextremal,
        residual,
    })
}
