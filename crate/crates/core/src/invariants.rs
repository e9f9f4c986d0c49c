//! Cohomology and numerical characters of curves in projective 3-space.
//!
//! For a saturated curve ideal `I` with minimal resolution
//! `0 → F3 → F2 → F1 → S`, graded local duality gives
//! `h¹(I_C(j)) = dim Ext³(S/I, S)_{-j-4}` and
//! `h²(I_C(j)) = dim Ext²(S/I, S)_{-j-4}`. Both are read off the dualized
//! resolution through Hilbert functions of cokernels, degree by degree.

use std::collections::BTreeMap;

use curvelab_kernel::graded::ModuleHilbert;
use curvelab_kernel::hilbert::binomial_poly;
use curvelab_kernel::{
    koszul_betti, minimal_free_resolution, BettiTable, GradedMap, Ideal, Poly, Resolution, Ring,
    RingRef, SeededRng,
};

use crate::error::{CurveError, Result};
use crate::formulas::{difference, second_difference, third_difference};

/// `dim (S/I)_j`.
pub fn hilbert_function(ideal: &Ideal, j: i64) -> i64 {
    ideal.hilbert_function(j)
}

/// Hilbert function of a curve on `[0, cap]` with its differences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub cap: i64,
    values: Vec<i64>,
    pub degree: i64,
    pub genus: i64,
    /// First degree from which `h(j) = dj - g + 1`.
    pub stabilization: i64,
}

impl HilbertData {
    pub fn compute(ideal: &Ideal, cap: i64) -> Result<Self> {
        let dd = ideal.dimension_degree()?;
        if dd.proj_dim != 1 {
            return Err(CurveError::NotACurve(format!(
                "projective dimension {}",
                dd.proj_dim
            )));
        }
        let genus = dd.genus.expect("curves have a genus");
        let hp = ideal.hilbert_polynomial();
        let stabilization =
            hp.regularity_index(ideal.hilbert_numerator(), ideal.ring().graded_nvars());
        let cap = cap.max(stabilization + 3);
        Ok(HilbertData {
            cap,
            values: (0..=cap).map(|j| ideal.hilbert_function(j)).collect(),
            degree: dd.degree,
            genus,
            stabilization,
        })
    }

    /// `h(j)`; zero for negative `j`, the polynomial past the table.
    pub fn value(&self, j: i64) -> i64 {
        if j < 0 {
            0
        } else if j <= self.cap {
            self.values[j as usize]
        } else {
            self.degree * j - self.genus + 1
        }
    }

    pub fn first_difference(&self, j: i64) -> i64 {
        difference(|k| self.value(k), j)
    }

    pub fn second_difference(&self, j: i64) -> i64 {
        second_difference(|k| self.value(k), j)
    }

    pub fn third_difference(&self, j: i64) -> i64 {
        third_difference(|k| self.value(k), j)
    }
}

/// The ideal, its minimal resolution and the Hilbert functions of the two
/// Ext modules that carry the intermediate cohomology.
pub struct SheafData {
    ideal: Ideal,
    resolution: Resolution,
    degree: i64,
    genus: i64,
    ext3: Option<(ModuleHilbert, i64, i64)>,
    ext2: Option<(ModuleHilbert, Vec<i64>)>,
}

impl SheafData {
    /// Rejects ideals that are not saturated or do not define curves.
    pub fn compute(ideal: &Ideal) -> Result<Self> {
        let dd = ideal.dimension_degree()?;
        if dd.proj_dim != 1 {
            return Err(CurveError::NotACurve(format!(
                "projective dimension {}",
                dd.proj_dim
            )));
        }
        let resolution = minimal_free_resolution(ideal)?;
        // depth S/I >= 1 exactly when the projective dimension is at most 3
        if resolution.length() > 3 {
            return Err(CurveError::NotSaturated);
        }
        let maps = resolution.maps();
        let ext3 = match maps.get(2) {
            Some(d3) => {
                let t = d3.transpose();
                let gens: Vec<i64> = t.target_shifts().to_vec();
                let lo = *gens.iter().min().unwrap();
                let hi = *gens.iter().max().unwrap();
                Some((t.cokernel_hilbert()?, lo, hi))
            }
            None => None,
        };
        let ext2 = match maps.get(1) {
            Some(d2) => {
                let t = d2.transpose();
                Some((t.cokernel_hilbert()?, t.target_shifts().to_vec()))
            }
            None => None,
        };
        Ok(SheafData {
            ideal: ideal.clone(),
            resolution,
            degree: dd.degree,
            genus: dd.genus.expect("curves have a genus"),
            ext3,
            ext2,
        })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn resolution(&self) -> &Resolution {
        &self.resolution
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    /// `dim Ext³(S/I, S)_k`.
    fn ext3_dim(&self, k: i64) -> i64 {
        self.ext3.as_ref().map_or(0, |(h, _, _)| h.value(k))
    }

    /// `dim F3*_k`.
    fn dual_f3_dim(&self, k: i64) -> i64 {
        let Some(d3) = self.resolution.maps().get(2) else {
            return 0;
        };
        d3.source_shifts()
            .iter()
            .map(|&c| binomial_poly(k + c + 3, 3).max(0))
            .sum()
    }

    /// `h⁰(I_C(j)) = dim I_j`.
    pub fn h0(&self, j: i64) -> i64 {
        self.ideal.dim_in_degree(j)
    }

    /// `h¹(I_C(j))`, the Rao function.
    pub fn h1(&self, j: i64) -> i64 {
        self.ext3_dim(-j - 4)
    }

    /// `h²(I_C(j)) = h¹(O_C(j))`.
    pub fn h2(&self, j: i64) -> i64 {
        let k = -j - 4;
        let Some((coker2, _)) = &self.ext2 else {
            return 0;
        };
        // ker(d3ᵀ)_k / im(d2ᵀ)_k
        let rank_d3t = self.dual_f3_dim(k) - self.ext3_dim(k);
        coker2.value(k) - rank_d3t
    }

    /// `h³(I_C(j)) = h³(O(j))`.
    pub fn h3(&self, j: i64) -> i64 {
        if j <= -4 {
            binomial_poly(-j - 1, 3)
        } else {
            0
        }
    }

    /// `h⁰(O_C(j)) = h_C(j) + ρ(j)`.
    pub fn h0_oc(&self, j: i64) -> i64 {
        self.ideal.hilbert_function(j) + self.h1(j)
    }

    /// Support of `h¹` in twists. Ext³ has finite length, so past its top
    /// generator degree it vanishes from the first zero on.
    fn h1_window(&self) -> Option<(i64, i64)> {
        let (h, lo, hi) = self.ext3.as_ref()?;
        let mut end = *hi;
        while h.value(end) != 0 {
            end += 1;
        }
        let nonzero: Vec<i64> = (*lo..end).filter(|&k| h.value(k) != 0).collect();
        let (first, last) = (*nonzero.first()?, *nonzero.last()?);
        Some((-last - 4, -first - 4))
    }

    /// Exact support `[lo, hi]` of the Rao function, `None` for ACM curves.
    pub fn rao_support(&self) -> Option<(i64, i64)> {
        self.h1_window()
    }

    pub fn rao(&self) -> RaoProfile {
        let support = self.rao_support();
        let values: BTreeMap<i64, i64> = match support {
            Some((lo, hi)) => (lo..=hi).map(|j| (j, self.h1(j))).collect(),
            None => BTreeMap::new(),
        };
        let max = values.values().copied().max().unwrap_or(0);
        let b_fit = fit_b(&values, self.degree, max);
        RaoProfile {
            values,
            support,
            max,
            b_fit,
        }
    }

    /// Index of speciality: the largest `j` with `h²(I_C(j)) != 0`.
    pub fn speciality_index(&self) -> Option<i64> {
        let (_, shifts) = self.ext2.as_ref()?;
        // Ext² vanishes below the smallest generator degree of F2*
        let top = -shifts.iter().copied().min()? - 4;
        // h¹(O_C(j)) grows like -dj for j ≪ 0, so the downward scan stops
        std::iter::successors(Some(top), |j| Some(j - 1)).find(|&j| self.h2(j) != 0)
    }

    pub fn cohomology_table(&self, lo: i64, hi: i64) -> CohomologyTable {
        CohomologyTable {
            degree: self.degree,
            genus: self.genus,
            rows: (lo..=hi)
                .map(|j| (j, [self.h0(j), self.h1(j), self.h2(j), self.h3(j)]))
                .collect(),
        }
    }

    /// Default table window `[-(d + r), 2(d + r)]` with `r` the Rao maximum.
    pub fn default_window(&self) -> (i64, i64) {
        let r = self.rao().max;
        let w = self.degree + r;
        (-w, 2 * w)
    }

    pub fn numerical_characters(&self) -> NumericalCharacters {
        let rao = self.rao();
        let hp = self.ideal.hilbert_polynomial();
        let stab = hp.regularity_index(
            self.ideal.hilbert_numerator(),
            self.ideal.ring().graded_nvars(),
        );
        let h = |j: i64| self.ideal.hilbert_function(j);
        let gamma: Vec<(i64, i64)> = (0..=stab + 3)
            .map(|j| (j, -third_difference(h, j)))
            .filter(|(_, v)| *v != 0)
            .collect();
        let e = self.speciality_index();
        let lo = rao.support.map_or(0, |(a, _)| a.min(0)) - 2;
        let hi = rao
            .support
            .map_or(0, |(_, b)| b)
            .max(e.unwrap_or(0))
            .max(stab)
            + 3;
        let spectrum: Vec<(i64, i64)> = (lo..=hi)
            .map(|j| (j, second_difference(|k| self.h0_oc(k), j)))
            .filter(|(_, v)| *v != 0)
            .collect();
        let speciality_character: Vec<(i64, i64)> = (lo..=hi + 1)
            .map(|j| (j, third_difference(|k| self.h0_oc(k), j)))
            .filter(|(_, v)| *v != 0)
            .collect();
        NumericalCharacters {
            gamma,
            spectrum,
            speciality_character,
            speciality_index: e,
        }
    }
}

/// `h⁰, h¹, h², h³` of the ideal sheaf on a window of twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub degree: i64,
    pub genus: i64,
    pub rows: Vec<(i64, [i64; 4])>,
}

impl CohomologyTable {
    pub fn get(&self, j: i64) -> Option<[i64; 4]> {
        self.rows.iter().find(|(k, _)| *k == j).map(|(_, v)| *v)
    }

    /// Twists where `h⁰ - h¹ + h² - h³ ≠ C(j+3,3) - (dj - g + 1)`.
    pub fn riemann_roch_failures(&self) -> Vec<i64> {
        self.rows
            .iter()
            .filter(|(j, [h0, h1, h2, h3])| {
                h0 - h1 + h2 - h3 != binomial_poly(j + 3, 3) - (self.degree * j - self.genus + 1)
            })
            .map(|(j, _)| *j)
            .collect()
    }

    pub fn has_negative_entry(&self) -> bool {
        self.rows.iter().any(|(_, v)| v.iter().any(|&x| x < 0))
    }
}

/// The Rao function with its support and the stratum parameter it suggests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaoProfile {
    pub values: BTreeMap<i64, i64>,
    pub support: Option<(i64, i64)>,
    pub max: i64,
    /// Number of steps where the function drops by two after degree `d-2`,
    /// when its tail has the shape of a curve of subextremal type.
    pub b_fit: Option<i64>,
}

impl RaoProfile {
    pub fn value(&self, j: i64) -> i64 {
        self.values.get(&j).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_none()
    }
}

fn fit_b(values: &BTreeMap<i64, i64>, d: i64, max: i64) -> Option<i64> {
    let v = |j: i64| values.get(&j).copied().unwrap_or(0);
    if max == 0 || v(d - 2) != max - 1 {
        return None;
    }
    let mut j = d - 1;
    let mut b = 0;
    while v(j - 1) - v(j) == 2 {
        b += 1;
        j += 1;
    }
    while v(j - 1) > 0 {
        if v(j - 1) - v(j) != 1 {
            return None;
        }
        j += 1;
    }
    Some(b)
}

/// Postulation character, spectrum, speciality character and index of
/// speciality, as finitely supported tables of nonzero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalCharacters {
    /// `-∂³h_C`.
    pub gamma: Vec<(i64, i64)>,
    /// `∂²h⁰(O_C(·))`.
    pub spectrum: Vec<(i64, i64)>,
    /// `∂ℓ_C`.
    pub speciality_character: Vec<(i64, i64)>,
    pub speciality_index: Option<i64>,
}

impl NumericalCharacters {
    pub fn gamma_at(&self, j: i64) -> i64 {
        lookup(&self.gamma, j)
    }
    pub fn spectrum_at(&self, j: i64) -> i64 {
        lookup(&self.spectrum, j)
    }
    pub fn speciality_character_at(&self, j: i64) -> i64 {
        lookup(&self.speciality_character, j)
    }
}

fn lookup(t: &[(i64, i64)], j: i64) -> i64 {
    t.iter().find(|(k, _)| *k == j).map_or(0, |(_, v)| *v)
}

/// Betti numbers from the minimal resolution, confirmed by Koszul homology.
pub fn betti_table(ideal: &Ideal, rng: &mut SeededRng) -> Result<BettiTable> {
    let res = minimal_free_resolution(ideal)?;
    betti_checked(&res, ideal, rng)
}

/// The resolution's Betti table after comparing it with Tor computed from
/// Koszul homology up to two degrees past the largest shift.
pub fn betti_checked(res: &Resolution, ideal: &Ideal, rng: &mut SeededRng) -> Result<BettiTable> {
    let from_res = res.betti();
    let top = from_res.entries().map(|(_, j, _)| j).max().unwrap_or(0);
    let from_tor = koszul_betti(ideal, top + 2, rng)?;
    if from_res != from_tor {
        return Err(CurveError::Disagreement(format!(
            "resolution gives\n{from_res}Koszul homology gives\n{from_tor}"
        )));
    }
    Ok(from_res)
}

pub fn cohomology_table(ideal: &Ideal, lo: i64, hi: i64) -> Result<CohomologyTable> {
    Ok(SheafData::compute(ideal)?.cohomology_table(lo, hi))
}

pub fn rao_function(ideal: &Ideal) -> Result<RaoProfile> {
    Ok(SheafData::compute(ideal)?.rao())
}

pub fn numerical_characters(ideal: &Ideal) -> Result<NumericalCharacters> {
    Ok(SheafData::compute(ideal)?.numerical_characters())
}

/// Number of random planes tried by [`hyperplane_section_diff`].
pub const SECTION_SAMPLES: usize = 5;

/// `∂h_Γ` for a general plane section `Γ`: the Hilbert function of the
/// saturated section is taken pointwise maximal over several random planes,
/// then differenced. The result sums to the degree.
pub fn hyperplane_section_diff(ideal: &Ideal, rng: &mut SeededRng) -> Result<Vec<i64>> {
    let dd = ideal.dimension_degree()?;
    if dd.proj_dim != 1 {
        return Err(CurveError::NotACurve(format!(
            "projective dimension {}",
            dd.proj_dim
        )));
    }
    let ring = ideal.ring();
    let f = ring.field();
    let plane = Ring::plane(f);
    let mut best: Option<Vec<i64>> = None;
    let mut failures = Vec::new();
    for _ in 0..SECTION_SAMPLES {
        let section = match plane_section(ideal, &plane, rng) {
            Ok(s) => s,
            Err(e) => {
                failures.push(e.to_string());
                continue;
            }
        };
        let sd = section.dimension_degree()?;
        if sd.proj_dim != 0 || sd.degree != dd.degree {
            failures.push(format!(
                "section of dimension {} and degree {}",
                sd.proj_dim, sd.degree
            ));
            continue;
        }
        let hp = section.hilbert_polynomial();
        let stab = hp.regularity_index(section.hilbert_numerator(), 3);
        let h: Vec<i64> = (0..=stab + 1)
            .map(|k| section.hilbert_function(k))
            .collect();
        best = Some(match best {
            None => h,
            Some(b) => {
                let n = b.len().max(h.len());
                let at = |v: &Vec<i64>, k: usize| v.get(k).copied().unwrap_or(dd.degree);
                (0..n).map(|k| at(&b, k).max(at(&h, k))).collect()
            }
        });
    }
    let h = best.ok_or_else(|| {
        CurveError::certificate(
            "general plane section",
            format!("every sample degenerate: {}", failures.join("; ")),
        )
    })?;
    let mut diff: Vec<i64> = (0..h.len())
        .map(|k| h[k] - if k == 0 { 0 } else { h[k - 1] })
        .collect();
    while diff.last() == Some(&0) {
        diff.pop();
    }
    diff.push(0);
    Ok(diff)
}

/// Saturated ideal of `C ∩ {x = a y + b z + c t}` in the plane ring.
fn plane_section(ideal: &Ideal, plane: &RingRef, rng: &mut SeededRng) -> Result<Ideal> {
    let f = plane.field();
    let x_image = Poly::from_terms(
        plane,
        (0..3).map(|i| (curvelab_kernel::Monomial::var(i), rng.nonzero(f))),
    );
    let mut images = vec![x_image];
    images.extend((0..3).map(|i| Poly::var(plane, i)));
    let restricted = ideal.map(plane, &images)?;
    Ok(restricted.saturate_irrelevant(rng)?)
}

/// The graded map of the first syzygies of a list of forms.
pub fn presentation_matrix(ring: &RingRef, gens: &[Poly]) -> Result<GradedMap> {
    let syz = curvelab_kernel::syzygies_of_forms(gens)?;
    let target: Vec<i64> = gens
        .iter()
        .map(|g| g.degree().unwrap_or(0) as i64)
        .collect();
    let source: Vec<i64> = syz
        .iter()
        .map(|s| {
            s.iter()
                .zip(&target)
                .find(|(e, _)| !e.is_zero())
                .map(|(e, t)| e.degree().unwrap() as i64 + t)
                .unwrap_or(0)
        })
        .collect();
    Ok(GradedMap::new(ring, target, source, syz)?)
}
