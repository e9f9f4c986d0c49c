use curvelab_kernel::{GradedMap, Ideal, Poly, PrimeField, Ring, RingRef};

use crate::error::{CurveError, Result};
use crate::formulas::h_b_profile;
use crate::invariants::presentation_matrix;

/// Points on the reducible conic `zt = 0` of the plane `y, z, t`:
/// `[1 : 0 : c]` on `L₁ = {z = 0}` for each `c` in `on_l1`, `[1 : c : 0]` on
/// `L₂ = {t = 0}` for each `c` in `on_l2`, and optionally the corner
/// `L₁ ∩ L₂ = [1 : 0 : 0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicPointConfig {
    pub on_l1: Vec<i64>,
    pub on_l2: Vec<i64>,
    pub include_intersection: bool,
}

impl ConicPointConfig {
    /// `b` points on `L₁`, `r - b - 1` on `L₂`, and the corner.
    pub fn standard(r: i64, b: i64) -> Result<Self> {
        if r < 1 || b < 0 || 2 * b > r - 1 {
            return Err(CurveError::invalid(format!(
                "b = {b} is not admissible for r = {r}"
            )));
        }
        Ok(ConicPointConfig {
            on_l1: (1..=b).collect(),
            on_l2: (1..=r - b - 1).collect(),
            include_intersection: true,
        })
    }

    /// `k` points on each line and not the corner: the complete intersection
    /// of the conic with a curve of degree `k`.
    pub fn complete_intersection(k: i64) -> Result<Self> {
        if k < 1 {
            return Err(CurveError::invalid("need at least one point per line"));
        }
        Ok(ConicPointConfig {
            on_l1: (1..=k).collect(),
            on_l2: (1..=k).collect(),
            include_intersection: false,
        })
    }

    pub fn len(&self) -> usize {
        self.on_l1.len() + self.on_l2.len() + usize::from(self.include_intersection)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether the configuration is the complete-intersection one.
    pub fn is_complete_intersection(&self) -> bool {
        !self.include_intersection && self.on_l1.len() == self.on_l2.len() && !self.on_l1.is_empty()
    }

    /// The parameter `b` of the Hilbert function of the points.
    pub fn expected_b(&self) -> i64 {
        if self.is_complete_intersection() {
            self.on_l1.len() as i64 - 1
        } else {
            self.on_l1.len().min(self.on_l2.len()) as i64
        }
    }

    fn validate(&self, f: PrimeField) -> Result<()> {
        for (name, list) in [("L1", &self.on_l1), ("L2", &self.on_l2)] {
            let mut seen: Vec<u32> = list.iter().map(|&c| f.from_i64(c)).collect();
            if seen.contains(&0) {
                return Err(CurveError::invalid(format!(
                    "a point on {name} collides with the corner"
                )));
            }
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(CurveError::invalid(format!("repeated point on {name}")));
            }
        }
        if self.is_empty() {
            return Err(CurveError::invalid("empty configuration"));
        }
        Ok(())
    }
}

/// Ideal of a point configuration with its Hilbert–Burch matrix.
#[derive(Clone, Debug)]
pub struct ConicPoints {
    pub ideal: Ideal,
    pub hilbert_burch: GradedMap,
    pub generator_degrees: Vec<u32>,
    /// `∂h_Z(j)` for `j = 0, 1, …` up to the last nonzero value.
    pub difference_profile: Vec<i64>,
    pub b: i64,
}

fn point_ideal(ring: &RingRef, on_l1: bool, c: i64) -> Result<Ideal> {
    let (y, z, t) = (Poly::var(ring, 0), Poly::var(ring, 1), Poly::var(ring, 2));
    let cy = y.scale(ring.field().from_i64(c));
    Ok(if on_l1 {
        Ideal::new(ring, vec![z, t.sub(&cy)])?
    } else {
        Ideal::new(ring, vec![t, z.sub(&cy)])?
    })
}

/// The saturated ideal of the configured points, by intersecting the ideals
/// of the points one by one.
pub fn points_on_conic_ideal(cfg: &ConicPointConfig, field: PrimeField) -> Result<ConicPoints> {
    cfg.validate(field)?;
    let ring = Ring::plane(field);
    let mut parts = Vec::new();
    if cfg.include_intersection {
        parts.push(Ideal::new(
            &ring,
            vec![Poly::var(&ring, 1), Poly::var(&ring, 2)],
        )?);
    }
    for &c in &cfg.on_l1 {
        parts.push(point_ideal(&ring, true, c)?);
    }
    for &c in &cfg.on_l2 {
        parts.push(point_ideal(&ring, false, c)?);
    }
    let mut ideal = parts[0].clone();
    for p in &parts[1..] {
        ideal = ideal.intersect(p)?;
    }
    let ideal = ideal.minimized();
    let r = cfg.len() as i64;
    let dd = ideal.dimension_degree()?;
    if (dd.proj_dim, dd.degree) != (0, r) {
        return Err(CurveError::certificate(
            "point count",
            format!("expected {r} points, got degree {}", dd.degree),
        ));
    }
    let mut gens = ideal.gens().to_vec();
    gens.sort_by_key(|g| g.degree());
    let hilbert_burch = presentation_matrix(&ring, &gens)?;
    let difference_profile: Vec<i64> = (0..=r)
        .map(|j| ideal.hilbert_function(j) - ideal.hilbert_function(j - 1))
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .skip_while(|&v| v == 0)
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    let b = cfg.expected_b();
    let expected: Vec<i64> = (0..difference_profile.len() as i64)
        .map(|j| h_b_profile(r, b, j))
        .collect::<Result<_>>()?;
    let total: i64 = (0..=r).map(|j| h_b_profile(r, b, j)).sum::<Result<i64>>()?;
    if difference_profile != expected || total != r {
        return Err(CurveError::certificate(
            "Hilbert function of the points",
            format!("difference profile {difference_profile:?} is not h_b for b = {b}"),
        ));
    }
    let generator_degrees = ideal.generator_degrees();
    Ok(ConicPoints {
        ideal,
        hilbert_burch,
        generator_degrees,
        difference_profile,
        b,
    })
}
