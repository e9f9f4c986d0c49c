//! Machine-readable reports: computed invariants next to the closed-form
//! values they should equal, with exact integer differences.
//!
//! All numbers are integers. Tables indexed by a twist are lists of
//! `[j, value]` pairs; diff tables name their columns.

use std::collections::BTreeSet;

use curvelab_kernel::{BettiTable, SeededRng};
use serde::Serialize;

use crate::error::{CurveError, Result};
use crate::factory::{
    classify_sheaf, residual_decomposition, Classification, Construction, CurveBundle,
};
use crate::formulas::{
    expected_betti, expected_hilbert, rao_piecewise, rao_support, residual_degree, BettiCase,
    CurveNumerics, RaoKind,
};
use crate::invariants::{betti_checked, SheafData};

pub const SCHEMA_VERSION: u32 = 1;

/// What the report was asked to do.
#[derive(Clone, Debug, Default, Serialize)]
pub struct InputEcho {
    pub command: String,
    pub kind: Option<String>,
    pub d: Option<i64>,
    pub g: Option<i64>,
    pub b: Option<i64>,
    pub ci: bool,
    pub seed: u64,
    pub characteristic: u32,
    pub source: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Rows of `key columns…, expected, computed, diff`.
#[derive(Clone, Debug, Serialize)]
pub struct DiffTable {
    pub quantity: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<i64>>,
    pub max_abs_diff: i64,
}

impl DiffTable {
    fn new(quantity: &str, keys: &[&str], rows: Vec<(Vec<i64>, i64, i64)>) -> Self {
        let mut columns: Vec<String> = keys.iter().map(|k| k.to_string()).collect();
        columns.extend(["expected", "computed", "diff"].map(String::from));
        let max_abs_diff = rows
            .iter()
            .map(|(_, e, c)| (c - e).abs())
            .max()
            .unwrap_or(0);
        let rows = rows
            .into_iter()
            .map(|(mut k, e, c)| {
                k.extend([e, c, c - e]);
                k
            })
            .collect();
        DiffTable {
            quantity: quantity.into(),
            columns,
            rows,
            max_abs_diff,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub name: String,
    pub b: Option<i64>,
    pub m: Option<i64>,
    pub attempts: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub tag: String,
    pub h0_i2: i64,
    pub h0_i3: i64,
    pub rao_max: i64,
    pub rao_support: Option<[i64; 2]>,
    pub quadric_rank: Option<usize>,
    pub quadric_reduced: Option<bool>,
    pub b_from_rao: Option<i64>,
    pub b_from_points: Option<i64>,
    pub plane: Option<String>,
    pub rao_at_d_plus_r_minus_3: i64,
    /// `[ρ-plateau, generators, plane section, planar part]`.
    pub structure: [bool; 4],
    /// `[subextremal ρ, collinear points, b = 0, ρ(d+r-4) > 0]`.
    pub subextremal: Option<[bool; 4]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub plane: String,
    pub residual_degree: i64,
    pub residual_genus: i64,
    pub planar_degree: i64,
    pub points_degree: i64,
    pub expected_points_degree: i64,
    pub points_profile: Vec<i64>,
    pub contained_in_residual_section: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub input: InputEcho,
    pub notices: Vec<String>,
    pub degree: i64,
    pub genus: i64,
    pub generator_degrees: Vec<u32>,
    pub construction: Option<ConstructionReport>,
    pub classification: ClassificationReport,
    pub rao: Vec<[i64; 2]>,
    pub hilbert: Vec<[i64; 2]>,
    /// `[i, j, β_ij]` with `i = 0` the minimal generators.
    pub betti: Vec<[i64; 3]>,
    /// `[j, h⁰, h¹, h², h³]` of the ideal sheaf.
    pub cohomology: Vec<[i64; 5]>,
    pub gamma: Vec<[i64; 2]>,
    pub spectrum: Vec<[i64; 2]>,
    pub speciality_character: Vec<[i64; 2]>,
    pub speciality_index: Option<i64>,
    pub section_profile: Vec<i64>,
    pub residual: Option<ResidualReport>,
    pub expected: Vec<DiffTable>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Reference values the computed invariants are compared with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    None,
    /// Curve of subextremal type in a double plane with parameter `b`.
    SetB {
        b: i64,
        ci: bool,
    },
    Extremal,
    Subextremal,
    /// Rao function equal to that of another curve shifted by `shift`.
    Shifted {
        shift: i64,
    },
}

fn pairs(v: impl IntoIterator<Item = (i64, i64)>) -> Vec<[i64; 2]> {
    v.into_iter().map(|(a, b)| [a, b]).collect()
}

fn betti_rows(t: &BettiTable) -> Vec<[i64; 3]> {
    t.entries()
        .map(|(i, j, c)| [i as i64, j, c as i64])
        .collect()
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn diff_check(t: &DiffTable) -> Check {
    let detail = if t.max_abs_diff == 0 {
        format!("{} rows agree", t.rows.len())
    } else {
        let bad = t.rows.iter().filter(|r| r[r.len() - 1] != 0).count();
        format!("{bad} of {} rows differ", t.rows.len())
    };
    check(
        &format!("expected_{}", t.quantity),
        t.max_abs_diff == 0,
        detail,
    )
}

fn classification_report(c: &Classification) -> ClassificationReport {
    let s = c.structure;
    ClassificationReport {
        tag: c.tag.to_string(),
        h0_i2: c.evidence.h0_2,
        h0_i3: c.evidence.h0_3,
        rao_max: 0,
        rao_support: None,
        quadric_rank: c.evidence.quadric_rank,
        quadric_reduced: c.evidence.quadric_reduced,
        b_from_rao: c.evidence.b_from_rao,
        b_from_points: c.evidence.b_from_points,
        plane: c.evidence.plane.as_ref().map(|p| p.to_string()),
        rao_at_d_plus_r_minus_3: c.evidence.rao_at_d_plus_r_minus_3,
        structure: [s.rao_plateau, s.generators, s.section, s.planar_part],
        subextremal: c.subextremal.map(|x| {
            [
                x.rao_is_subextremal,
                x.collinear_points,
                x.b_zero,
                x.tail_positive,
            ]
        }),
    }
}

/// Expectation implied by a construction.
pub fn expectation_for(bundle: &CurveBundle) -> Expectation {
    match bundle.construction {
        Construction::SetCurve { b, ci } => Expectation::SetB { b, ci },
        Construction::Extremal { .. } => Expectation::Extremal,
        Construction::TwoSecant => Expectation::Subextremal,
        Construction::DoubleLink { shift } => Expectation::Shifted { shift },
    }
}

/// Expectation read off a classification, for ideals of unknown origin.
fn expectation_from_class(c: &Classification) -> Expectation {
    use crate::factory::ClassTag;
    let double_plane = c.evidence.quadric_rank == Some(1);
    match c.tag {
        ClassTag::Extremal => Expectation::Extremal,
        t @ (ClassTag::Subextremal | ClassTag::SetB(_))
            if double_plane && c.structure.rao_plateau =>
        {
            // a complete intersection of the conic with a curve, not a line
            let ci = c.residual.as_ref().is_some_and(|r| {
                let degs = r.points.generator_degrees();
                degs.len() == 2 && degs.iter().all(|&k| k >= 2)
            });
            Expectation::SetB {
                b: t.set_parameter().unwrap(),
                ci,
            }
        }
        ClassTag::Subextremal => Expectation::Subextremal,
        _ => Expectation::None,
    }
}

/// Build the report of a constructed curve.
pub fn report_for_bundle(
    input: InputEcho,
    bundle: &CurveBundle,
    rng: &mut SeededRng,
) -> Result<Report> {
    let mut report = build_report(
        input,
        bundle.sheaf(),
        Some(bundle),
        expectation_for(bundle),
        rng,
        Vec::new(),
    )?;
    let (name, m) = match bundle.construction {
        Construction::SetCurve { ci: true, .. } => ("set_ci", None),
        Construction::SetCurve { .. } => ("set", None),
        Construction::Extremal { m } => ("extremal", Some(m)),
        Construction::TwoSecant => ("two_secant", None),
        Construction::DoubleLink { .. } => ("double_link", None),
    };
    report.construction = Some(ConstructionReport {
        name: name.into(),
        b: bundle.b(),
        m,
        attempts: bundle.attempts,
        seed: bundle.seed,
    });
    Ok(report)
}

/// Build the report of an arbitrary saturated curve ideal.
pub fn report_for_ideal(
    input: InputEcho,
    sheaf: &SheafData,
    rng: &mut SeededRng,
    notices: Vec<String>,
) -> Result<Report> {
    build_report(input, sheaf, None, Expectation::None, rng, notices)
}

fn build_report(
    input: InputEcho,
    sheaf: &SheafData,
    bundle: Option<&CurveBundle>,
    expectation: Expectation,
    rng: &mut SeededRng,
    mut notices: Vec<String>,
) -> Result<Report> {
    let ideal = sheaf.ideal();
    let (d, g) = (sheaf.degree(), sheaf.genus());
    let rao = sheaf.rao();
    let mut checks = Vec::new();

    let class = classify_sheaf(sheaf, &mut rng.fork(10))?;
    let expectation = if bundle.is_none() {
        expectation_from_class(&class)
    } else {
        expectation
    };

    let betti = match betti_checked(sheaf.resolution(), ideal, &mut rng.fork(11)) {
        Ok(t) => {
            checks.push(check(
                "betti_dual_path",
                true,
                "resolution and Koszul homology agree",
            ));
            t
        }
        Err(CurveError::Disagreement(msg)) => {
            checks.push(check("betti_dual_path", false, msg));
            sheaf.resolution().betti()
        }
        Err(e) => return Err(e),
    };

    let (lo, hi) = sheaf.default_window();
    let table = sheaf.cohomology_table(lo, hi);
    let rr = table.riemann_roch_failures();
    checks.push(check(
        "riemann_roch",
        rr.is_empty(),
        if rr.is_empty() {
            format!("holds on [{lo}, {hi}]")
        } else {
            format!("fails at {rr:?}")
        },
    ));
    checks.push(check(
        "cohomology_nonnegative",
        !table.has_negative_entry(),
        "",
    ));
    checks.push(check(
        "structure_equivalence",
        d < 7 || class.structure.agree(),
        format!("{:?}", class.structure),
    ));
    if let Some(s) = class.subextremal {
        checks.push(check(
            "subextremal_equivalence",
            s.agree(),
            format!("{s:?}"),
        ));
    }

    let n = CurveNumerics::new(d, g)?;
    let r_plateau = n.r.max(rao.max);
    let hilbert_hi = d + r_plateau.max(0) + 2;
    let mut expected = Vec::new();

    let rao_table = |kind: RaoKind, n: &CurveNumerics| -> Result<DiffTable> {
        let f = rao_piecewise(kind, n)?;
        let (a, b) = rao_support(kind, n)?.unwrap_or((0, 0));
        let (a, b) = (
            a.min(rao.support.map_or(a, |s| s.0)) - 1,
            b.max(rao.support.map_or(b, |s| s.1)) + 1,
        );
        Ok(DiffTable::new(
            "rao",
            &["j"],
            (a..=b)
                .map(|j| (vec![j], f.eval(j), rao.value(j)))
                .collect(),
        ))
    };
    match expectation {
        Expectation::None => {}
        Expectation::Extremal => expected.push(rao_table(RaoKind::Extremal, &n)?),
        Expectation::Subextremal => expected.push(rao_table(RaoKind::Subextremal, &n)?),
        Expectation::Shifted { shift } => {
            let base = bundle
                .and_then(|b| b.component("linked from"))
                .ok_or_else(|| {
                    CurveError::invalid("a shifted expectation needs the linked curve")
                })?;
            let base_rao = SheafData::compute(base)?.rao();
            let keys: BTreeSet<i64> = base_rao
                .values
                .keys()
                .map(|j| j + shift)
                .chain(rao.values.keys().copied())
                .collect();
            expected.push(DiffTable::new(
                "rao",
                &["j"],
                keys.into_iter()
                    .map(|j| (vec![j], base_rao.value(j - shift), rao.value(j)))
                    .collect(),
            ));
        }
        Expectation::SetB { b, ci } => {
            let nb = n.with_b(b)?;
            expected.push(rao_table(RaoKind::SetB, &nb)?);
            let rows: Vec<_> = (0..=d + nb.r)
                .map(|j| Ok((j, expected_hilbert(&nb, j)?)))
                .collect::<Result<_>>()?;
            let chars = sheaf.numerical_characters();
            expected.push(DiffTable::new(
                "hilbert",
                &["j"],
                rows.iter()
                    .map(|(j, e)| (vec![*j], e.h_c, ideal.hilbert_function(*j)))
                    .collect(),
            ));
            expected.push(DiffTable::new(
                "h2",
                &["j"],
                rows.iter()
                    .map(|(j, e)| (vec![*j], e.h2, sheaf.h2(*j)))
                    .collect(),
            ));
            expected.push(DiffTable::new(
                "gamma",
                &["j"],
                rows.iter()
                    .map(|(j, e)| (vec![*j], e.gamma, chars.gamma_at(*j)))
                    .collect(),
            ));
            expected.push(DiffTable::new(
                "speciality_index",
                &[],
                vec![(vec![], d - 5, chars.speciality_index.unwrap_or(i64::MIN))],
            ));
            let case = BettiCase::for_construction(&nb, ci)?;
            let eb = expected_betti(&nb, case)?;
            let keys: BTreeSet<(usize, i64)> = eb
                .entries()
                .chain(betti.entries())
                .map(|(i, j, _)| (i, j))
                .collect();
            expected.push(DiffTable::new(
                "betti",
                &["i", "j"],
                keys.into_iter()
                    .map(|(i, j)| {
                        (
                            vec![i as i64, j],
                            eb.get(i, j) as i64,
                            betti.get(i, j) as i64,
                        )
                    })
                    .collect(),
            ));
            let sym = rao
                .values
                .keys()
                .all(|&j| rao.value(j) == rao.value(d - 2 - j));
            checks.push(check(
                "rao_symmetry",
                sym,
                format!("ρ(j) = ρ({} - j)", d - 2),
            ));
            let tag_ok = class.tag.set_parameter() == Some(b);
            checks.push(check("classification", tag_ok, class.tag.to_string()));
        }
    }
    if matches!(expectation, Expectation::Extremal) {
        checks.push(check(
            "classification",
            class.tag == crate::factory::ClassTag::Extremal,
            class.tag.to_string(),
        ));
    }
    if matches!(expectation, Expectation::Subextremal) {
        checks.push(check(
            "classification",
            class.tag == crate::factory::ClassTag::Subextremal,
            class.tag.to_string(),
        ));
    }
    checks.extend(expected.iter().map(diff_check));

    let plane = bundle
        .and_then(|b| b.witnesses.plane.clone())
        .or_else(|| class.evidence.plane.clone());
    let residual = match plane.map(|h| (residual_decomposition(ideal, &h, &mut rng.fork(12)), h)) {
        None => None,
        Some((Err(CurveError::InvalidParameters(msg)), _)) => {
            notices.push(format!("no residual decomposition: {msg}"));
            None
        }
        Some((Err(e), _)) => return Err(e),
        Some((Ok(res), h)) => {
            let expected_z = residual_degree(d, g, res.residual_degree, res.residual_genus)?;
            checks.push(check(
                "residual_degree",
                expected_z == res.points_degree,
                format!("deg Z = {}, predicted {expected_z}", res.points_degree),
            ));
            checks.push(check(
                "residual_containment",
                res.contained_in_residual_section,
                "Z ⊆ C′ ∩ H",
            ));
            checks.push(check(
                "residual_empty_iff_acm",
                (res.points_degree == 0) == rao.is_zero(),
                format!("deg Z = {}", res.points_degree),
            ));
            Some(ResidualReport {
                plane: h.to_string(),
                residual_degree: res.residual_degree,
                residual_genus: res.residual_genus,
                planar_degree: res.planar_degree,
                points_degree: res.points_degree,
                expected_points_degree: expected_z,
                points_profile: res.points_difference_profile(),
                contained_in_residual_section: res.contained_in_residual_section,
            })
        }
    };

    let chars = sheaf.numerical_characters();
    let mut class_report = classification_report(&class);
    class_report.rao_max = rao.max;
    class_report.rao_support = rao.support.map(|(a, b)| [a, b]);
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        input,
        notices,
        degree: d,
        genus: g,
        generator_degrees: ideal.generator_degrees(),
        construction: None,
        classification: class_report,
        rao: pairs(rao.values.iter().map(|(j, v)| (*j, *v))),
        hilbert: pairs((0..=hilbert_hi).map(|j| (j, ideal.hilbert_function(j)))),
        betti: betti_rows(&betti),
        cohomology: table
            .rows
            .iter()
            .map(|(j, h)| [*j, h[0], h[1], h[2], h[3]])
            .collect(),
        gamma: pairs(chars.gamma.iter().copied()),
        spectrum: pairs(chars.spectrum.iter().copied()),
        speciality_character: pairs(chars.speciality_character.iter().copied()),
        speciality_index: chars.speciality_index,
        section_profile: class.evidence.section_profile.clone(),
        residual,
        expected,
        checks,
    })
}
