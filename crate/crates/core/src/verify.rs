//! Verification suites over grids of parameters, counting passes and
//! failures per named check.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use curvelab_kernel::{random_form, Ideal, Poly, PrimeField, SeededRng};

use crate::error::Result;
use crate::factory::{
    attach_two_secant_line, construct_extremal, construct_set_curve, space, SetOptions,
};
use crate::formulas::{
    choose2, expected_hilbert, family_dimensions, h_b_piecewise, h_b_profile, rao_piecewise,
    second_difference, CurveNumerics, RaoKind,
};
use crate::invariants::{betti_checked, SheafData};
use crate::report::{report_for_bundle, InputEcho};

/// Pass and failure counts per check, with the first failures kept.
#[derive(Clone, Debug, Default)]
pub struct SuiteSummary {
    pub suite: String,
    pub counts: BTreeMap<String, (u64, u64)>,
    pub failures: Vec<String>,
}

const KEPT_FAILURES: usize = 50;

impl SuiteSummary {
    pub fn new(suite: &str) -> Self {
        SuiteSummary {
            suite: suite.into(),
            ..Default::default()
        }
    }

    pub fn record(&mut self, check: &str, pass: bool, context: impl FnOnce() -> String) {
        let entry = self.counts.entry(check.into()).or_default();
        if pass {
            entry.0 += 1;
        } else {
            entry.1 += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(format!("{check}: {}", context()));
            }
        }
    }

    pub fn failures(&self) -> u64 {
        self.counts.values().map(|c| c.1).sum()
    }

    pub fn passes(&self) -> u64 {
        self.counts.values().map(|c| c.0).sum()
    }
}

impl fmt::Display for SuiteSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for (name, (p, q)) in &self.counts {
            writeln!(f, "  {name:<34} {p:>6} passed {q:>4} failed")?;
        }
        for msg in &self.failures {
            writeln!(f, "  FAIL {msg}")?;
        }
        write!(
            f,
            "total: {} passed, {} failed",
            self.passes(),
            self.failures()
        )
    }
}

/// Parameter grid for the suites. Without a genus range the genera from
/// the top value down to `max(top - g_span, g_floor)` are used.
#[derive(Clone, Debug)]
pub struct Grid {
    pub d: RangeInclusive<i64>,
    pub g: Option<RangeInclusive<i64>>,
    pub b: Option<i64>,
    pub g_floor: i64,
    pub g_span: i64,
}

impl Grid {
    pub fn genera(&self, top: i64) -> Vec<i64> {
        match &self.g {
            Some(r) => r.clone().filter(|&g| g <= top).collect(),
            None => (self.g_floor.max(top - self.g_span)..=top).collect(),
        }
    }
}

/// Closed-form self-consistency: shared branch endpoints, sums, symmetry,
/// the ordering of the bounds and the family dimension identities.
pub fn verify_formulas(grid: &Grid) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("formulas");
    for d in grid.d.clone().filter(|&d| d >= 7) {
        for g in grid.genera(choose2(d - 3) - 2) {
            let n = CurveNumerics::new(d, g)?;
            let ctx = |what: &str| format!("d={d} g={g} {what}");
            let ext = rao_piecewise(RaoKind::Extremal, &n)?;
            let se = rao_piecewise(RaoKind::Subextremal, &n)?;
            s.record(
                "extremal_endpoints",
                ext.endpoint_conflicts().is_empty(),
                || ctx(""),
            );
            s.record(
                "subextremal_endpoints",
                se.endpoint_conflicts().is_empty(),
                || ctx(""),
            );
            let window = -n.a_ext - 2..=choose2(d - 1) - g + 2;
            s.record(
                "subextremal_below_extremal",
                window.clone().all(|j| se.eval(j) <= ext.eval(j)),
                || ctx(""),
            );
            let bs: Vec<i64> = match grid.b {
                Some(b) => vec![b],
                None => (0..=n.max_b().unwrap_or(-1)).collect(),
            };
            for b in bs {
                let Ok(nb) = n.with_b(b) else { continue };
                let ctxb = || ctx(&format!("b={b}"));
                let rho = rao_piecewise(RaoKind::SetB, &nb)?;
                s.record("set_b_endpoints", rho.endpoint_conflicts().is_empty(), ctxb);
                s.record(
                    "set_b_symmetry",
                    window.clone().all(|j| rho.eval(j) == rho.eval(d - 2 - j)),
                    ctxb,
                );
                s.record(
                    "set_b_below_subextremal",
                    window.clone().all(|j| rho.eval(j) <= se.eval(j)),
                    ctxb,
                );
                if b == 0 {
                    s.record(
                        "set_b_zero_is_subextremal",
                        window.clone().all(|j| rho.eval(j) == se.eval(j)),
                        ctxb,
                    );
                }
                let hb = h_b_piecewise(n.r, b)?;
                s.record("h_b_endpoints", hb.endpoint_conflicts().is_empty(), ctxb);
                let total: i64 = (0..=n.r)
                    .map(|j| h_b_profile(n.r, b, j))
                    .sum::<Result<i64>>()?;
                s.record("h_b_sum", total == n.r, ctxb);
                let h = |j: i64| expected_hilbert(&nb, j).map(|e| e.h_c).unwrap_or(0);
                let top = d + n.r + 4;
                let gamma_sum: i64 = (0..=top)
                    .map(|j| expected_hilbert(&nb, j).map(|e| e.gamma))
                    .sum::<Result<i64>>()?;
                s.record("gamma_sum_zero", gamma_sum == 0, ctxb);
                s.record(
                    "hilbert_eventually_linear",
                    second_difference(h, top) == 0,
                    ctxb,
                );
            }
            if n.r >= 3 {
                let f = family_dimensions(&n)?;
                s.record("dim_f_se", f.dim_f_se == f.dim_set_component, || ctx(""));
                s.record(
                    "dim_extremal",
                    f.dim_extremal == f.dim_extremal_component,
                    || ctx(""),
                );
                s.record("t_gamma_rho", f.t_gamma_rho == f.dim_f_se, || ctx(""));
                s.record(
                    "line_attachments",
                    f.dim_line_attachments == f.dim_f_se,
                    || ctx(""),
                );
            }
        }
    }
    Ok(s)
}

/// Construct every curve of the grid and compare its invariants with the
/// closed forms; also run the extremal + 2-secant pipeline.
pub fn verify_constructions(grid: &Grid, seed: u64, field: PrimeField) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("paper");
    let opts = SetOptions { field, h: None };
    for d in grid.d.clone().filter(|&d| d >= 7) {
        for g in grid.genera(choose2(d - 3)) {
            let n = CurveNumerics::new(d, g)?;
            let Some(max_b) = n.max_b() else { continue };
            let bs: Vec<i64> = match grid.b {
                Some(b) if b <= max_b => vec![b],
                Some(_) => vec![],
                None => (0..=max_b).collect(),
            };
            let mut cases: Vec<(i64, bool)> = bs.iter().map(|&b| (b, false)).collect();
            if let Some(b) = bs
                .iter()
                .copied()
                .find(|&b| n.with_b(b).is_ok_and(|nb| nb.ci_possible()))
            {
                cases.push((b, true));
            }
            for (b, ci) in cases {
                let mut rng = SeededRng::new(seed)
                    .fork(((d as u64) << 40) ^ (((g + 1000) as u64) << 16) ^ b as u64);
                let label = format!("set d={d} g={g} b={b}{}", if ci { " ci" } else { "" });
                let bundle = match construct_set_curve(d, g, b, ci, &mut rng, &opts) {
                    Ok(c) => c,
                    Err(e) => {
                        s.record("construct_set", false, || format!("{label}: {e}"));
                        continue;
                    }
                };
                s.record("construct_set", true, String::new);
                let input = InputEcho {
                    command: "verify".into(),
                    d: Some(d),
                    g: Some(g),
                    b: Some(b),
                    ci,
                    seed,
                    ..Default::default()
                };
                let report = report_for_bundle(input, &bundle, &mut rng)?;
                for c in &report.checks {
                    s.record(&c.name, c.pass, || format!("{label}: {}", c.detail));
                }
            }
            if n.a_ext >= 1 && d <= 9 && grid.b.is_none() {
                let mut rng = SeededRng::new(seed)
                    .fork(((d as u64) << 40) ^ (((g + 1000) as u64) << 16) ^ 0xe);
                let label = format!("two-secant d={d} g={g}");
                let built = construct_extremal(d - 1, g - 1, &mut rng, field)
                    .and_then(|e| attach_two_secant_line(&e, &mut rng));
                match built {
                    Ok(c) => {
                        s.record("construct_two_secant", true, String::new);
                        let report = report_for_bundle(InputEcho::default(), &c, &mut rng)?;
                        for chk in &report.checks {
                            s.record(&chk.name, chk.pass, || format!("{label}: {}", chk.detail));
                        }
                    }
                    Err(e) => s.record("construct_two_secant", false, || format!("{label}: {e}")),
                }
            }
        }
    }
    Ok(s)
}

/// Number of random ideals used by [`verify_kernel`].
pub const KERNEL_SAMPLES: u64 = 100;

/// Gröbner basis idempotence and membership on seeded random ideals, and
/// dual-path Betti numbers plus Riemann–Roch on a few curves.
pub fn verify_kernel(seed: u64, field: PrimeField) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("kernel");
    let ring = space(field);
    for k in 0..KERNEL_SAMPLES {
        let mut rng = SeededRng::new(seed).fork(k);
        let count = rng.range(2, 4) as usize;
        let gens: Vec<Poly> = (0..count)
            .map(|_| random_form(&ring, rng.range(1, 3) as u32, &mut rng))
            .collect();
        let ideal = Ideal::new(&ring, gens.clone())?;
        let again = Ideal::new(&ring, ideal.groebner().to_vec())?;
        s.record(
            "groebner_idempotent",
            again.groebner() == ideal.groebner(),
            || format!("sample {k}"),
        );
        let combo = gens.iter().fold(Poly::zero(&ring), |acc, g| {
            let deg = 4 - g.degree().unwrap_or(0).min(4);
            acc.add(&g.mul(&random_form(&ring, deg, &mut rng)))
        });
        s.record("membership", ideal.contains(&combo), || {
            format!("sample {k}")
        });
        let outside = random_form(&ring, 1, &mut rng);
        let expect_out = ideal.dim_in_degree(1) < 4;
        s.record(
            "non_membership",
            !expect_out || !ideal.contains(&outside),
            || format!("sample {k}"),
        );
    }
    let mut rng = SeededRng::new(seed).fork(0xc0);
    let mut curves: Vec<(String, Ideal)> = vec![
        ("twisted cubic".into(), twisted_cubic(field)?),
        ("complete intersection (2,3)".into(), {
            let q = random_form(&ring, 2, &mut rng);
            let c = random_form(&ring, 3, &mut rng);
            Ideal::new(&ring, vec![q, c])?
        }),
    ];
    for b in 0..=3 {
        let c = construct_set_curve(
            7,
            0,
            b,
            false,
            &mut rng.fork(b as u64),
            &SetOptions { field, h: None },
        )?;
        curves.push((format!("set d=7 g=0 b={b}"), c.ideal));
    }
    for (name, ideal) in curves {
        let sheaf = SheafData::compute(&ideal)?;
        let dual = betti_checked(sheaf.resolution(), &ideal, &mut rng);
        s.record("betti_dual_path", dual.is_ok(), || {
            format!("{name}: {}", dual.as_ref().err().unwrap())
        });
        let (lo, hi) = sheaf.default_window();
        let table = sheaf.cohomology_table(lo, hi);
        let fails = table.riemann_roch_failures();
        for (j, _) in &table.rows {
            s.record("riemann_roch", !fails.contains(j), || {
                format!("{name}: j = {j}")
            });
        }
    }
    Ok(s)
}

/// The twisted cubic `xz - y², yt - z², xt - yz`.
pub fn twisted_cubic(field: PrimeField) -> Result<Ideal> {
    let ring = space(field);
    let v = |i| Poly::var(&ring, i);
    let (x, y, z, t) = (v(0), v(1), v(2), v(3));
    Ok(Ideal::new(
        &ring,
        vec![
            x.mul(&z).sub(&y.mul(&y)),
            y.mul(&t).sub(&z.mul(&z)),
            x.mul(&t).sub(&y.mul(&z)),
        ],
    )?)
}
