use curvelab_kernel::rng::random_form_in;
use curvelab_kernel::{random_form, DenseMatrix, Ideal, Poly, PrimeField, SeededRng};

use super::{bundle, certify_curve, space, Construction, CurveBundle, Witnesses};
use crate::error::{CurveError, Result};
use crate::formulas::{rao_piecewise, rao_support, CurveNumerics, RaoKind};
use crate::invariants::SheafData;

/// Candidate lines tried by [`attach_two_secant_line`].
pub const LINE_BUDGET: usize = 25;

pub(crate) fn matches_rao(sheaf: &SheafData, n: &CurveNumerics, kind: RaoKind) -> Result<bool> {
    let reference = rao_piecewise(kind, n)?;
    let rao = sheaf.rao();
    let (lo, hi) = rao_support(kind, n)?.unwrap_or((0, -1));
    let window_lo = lo.min(rao.support.map_or(lo, |s| s.0));
    let window_hi = hi.max(rao.support.map_or(hi, |s| s.1));
    Ok((window_lo..=window_hi).all(|j| rao.value(j) == reference.eval(j)))
}

/// An extremal curve of degree `d` and genus `g`: a plane curve of degree
/// `d - 2` in `x = 0` through the line `x = t = 0`, union the double structure
/// `(x², xt, t², x f(y,z) - t e(y,z))` on that line.
///
/// The degree `m` of `f, e` is searched near its predicted value
/// `C(d-2,2) - g`, and the result is checked to have the extremal Rao function
/// and `h⁰(I_C(2)) = 2`.
pub fn construct_extremal(
    d: i64,
    g: i64,
    rng: &mut SeededRng,
    field: PrimeField,
) -> Result<CurveBundle> {
    let n = CurveNumerics::new(d, g)?;
    if d < 5 {
        return Err(CurveError::invalid("extremal curves are built for d >= 5"));
    }
    if n.a_ext <= 0 {
        return Err(CurveError::invalid(format!(
            "g = {g} leaves no room for a double line (need g < {})",
            (d - 2) * (d - 3) / 2
        )));
    }
    let p3 = space(field);
    let (x, t) = (Poly::var(&p3, 0), Poly::var(&p3, 3));
    let seed = rng.seed();
    let mut candidates: Vec<i64> = (0..=n.a_ext + 2).collect();
    candidates.sort_by_key(|m| ((m - n.a_ext).abs(), *m));
    let mut failures = Vec::new();
    for (attempt, m) in candidates.into_iter().enumerate() {
        let mut draw = rng.fork(m as u64);
        let fd = random_form_in(&p3, &[1, 2, 3], (d - 2) as u32, &mut draw);
        let f = random_form_in(&p3, &[1, 2], m as u32, &mut draw);
        let e = random_form_in(&p3, &[1, 2], m as u32, &mut draw);
        let planar = Ideal::new(&p3, vec![x.clone(), t.mul(&fd)])?;
        let double_line = Ideal::new(
            &p3,
            vec![x.mul(&x), x.mul(&t), t.mul(&t), x.mul(&f).sub(&t.mul(&e))],
        )?;
        let ideal = planar.intersect(&double_line)?;
        let certified = match certify_curve(&ideal, d, g) {
            Ok(c) => c,
            Err(e @ CurveError::Certificate { .. }) => {
                failures.push(format!("m = {m}: {e}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        if !matches_rao(&certified.sheaf, &n, RaoKind::Extremal)? {
            failures.push(format!("m = {m}: Rao function is not extremal"));
            continue;
        }
        if certified.sheaf.h0(2) != 2 {
            failures.push(format!("m = {m}: h0(I(2)) = {}", certified.sheaf.h0(2)));
            continue;
        }
        let w = Witnesses {
            plane: Some(x.clone()),
            components: vec![
                ("planar part".into(), Ideal::new(&p3, vec![x.clone(), fd])?),
                ("line".into(), Ideal::new(&p3, vec![x.clone(), t.clone()])?),
                ("double line".into(), double_line),
            ],
            double_line_forms: Some((f, e)),
            ..Default::default()
        };
        return Ok(bundle(
            certified,
            d,
            g,
            Construction::Extremal { m },
            w,
            seed,
            attempt + 1,
        ));
    }
    Err(CurveError::certificate(
        "extremal curve",
        failures.join("; "),
    ))
}

/// Ideal of the line through two points of `ℙ³`.
fn line_through(p: &[u32; 4], q: &[u32; 4], field: PrimeField) -> Result<Ideal> {
    let p3 = space(field);
    let m = DenseMatrix::from_rows(&[p.to_vec(), q.to_vec()]);
    if m.rank(field) != 2 {
        return Err(CurveError::invalid("the two points coincide"));
    }
    let forms: Vec<Poly> = m
        .kernel(field)
        .into_iter()
        .map(|v| {
            Poly::from_terms(
                &p3,
                v.into_iter()
                    .enumerate()
                    .map(|(i, c)| (curvelab_kernel::Monomial::var(i), c)),
            )
        })
        .collect();
    Ok(Ideal::new(&p3, forms)?)
}

/// Attach to an extremal curve of degree `d - 1` and genus `g - 1` a line
/// meeting it in a scheme of length 2, giving a curve of degree `d` and
/// genus `g` with the subextremal Rao function.
///
/// Lines are drawn through a random point `P` of the support line `x = t = 0`
/// of the double structure, inside its tangent plane `x f(P) - t e(P) = 0`.
pub fn attach_two_secant_line(base: &CurveBundle, rng: &mut SeededRng) -> Result<CurveBundle> {
    if !matches!(base.construction, Construction::Extremal { .. }) {
        return Err(CurveError::invalid(
            "a 2-secant line is attached to an extremal curve",
        ));
    }
    let (f, e) =
        base.witnesses.double_line_forms.clone().ok_or_else(|| {
            CurveError::invalid("the extremal curve carries no double-line witness")
        })?;
    let (d, g) = (base.d + 1, base.g + 1);
    let n = CurveNumerics::new(d, g)?;
    let field = base.ideal.ring().field();
    let seed = rng.seed();
    let mut failures = Vec::new();
    for attempt in 1..=LINE_BUDGET {
        let mut draw = rng.fork(attempt as u64);
        let p = [0, draw.element(field), draw.nonzero(field), 0];
        let (fp, ep) = (f.evaluate(&p), e.evaluate(&p));
        if ep == 0 {
            failures.push(format!("line {attempt}: e vanishes at P"));
            continue;
        }
        let q = [
            1,
            draw.element(field),
            draw.element(field),
            field.div(fp, ep),
        ];
        let line = line_through(&p, &q, field)?;
        let meet = line.sum(&base.ideal)?.dimension_degree()?;
        if (meet.proj_dim, meet.degree) != (0, 2) {
            failures.push(format!(
                "line {attempt}: meets the curve in dimension {} degree {}",
                meet.proj_dim, meet.degree
            ));
            continue;
        }
        let ideal = base.ideal.intersect(&line)?;
        let certified = match certify_curve(&ideal, d, g) {
            Ok(c) => c,
            Err(err @ CurveError::Certificate { .. }) => {
                failures.push(format!("line {attempt}: {err}"));
                continue;
            }
            Err(err) => return Err(err),
        };
        if !matches_rao(&certified.sheaf, &n, RaoKind::Subextremal)? {
            failures.push(format!("line {attempt}: Rao function is not subextremal"));
            continue;
        }
        let mut w = base.witnesses.clone();
        w.components.push(("attached line".into(), line));
        return Ok(bundle(
            certified,
            d,
            g,
            Construction::TwoSecant,
            w,
            seed,
            attempt,
        ));
    }
    Err(CurveError::certificate(
        "2-secant line",
        failures.join("; "),
    ))
}

/// A general form of degree `k` in `ℙ³`, for use as the surface of a basic
/// double link.
pub fn general_surface(field: PrimeField, k: u32, rng: &mut SeededRng) -> Poly {
    random_form(&space(field), k, rng)
}
