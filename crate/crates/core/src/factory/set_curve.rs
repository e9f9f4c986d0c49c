use curvelab_kernel::{random_form, Ideal, Poly, PrimeField, Ring, RingRef, SeededRng};

use super::{
    bundle, certify_curve, is_irrelevant, lift, space, Construction, CurveBundle, Witnesses,
};
use crate::error::{CurveError, Result};
use crate::formulas::CurveNumerics;

/// Maximum number of fresh draws of the general forms.
pub const MAX_DRAWS: usize = 10;

/// Options for [`construct_set_curve`].
#[derive(Clone, Debug, Default)]
pub struct SetOptions {
    pub field: PrimeField,
    /// Form of degree `d - 4` in `y, z, t`; defaults to `y^(d-4)`.
    pub h: Option<Poly>,
}

fn product_of_lines(plane: &RingRef, var: usize, count: i64) -> Poly {
    let f = plane.field();
    let y = Poly::var(plane, 0);
    let v = Poly::var(plane, var);
    let factors: Vec<Poly> = (1..=count)
        .map(|c| v.sub(&y.scale(f.from_i64(c))))
        .collect();
    Poly::product(plane, &factors)
}

fn det2(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> Poly {
    a.mul(d).sub(&b.mul(c))
}

/// A degree-`d` curve of genus `g` in the double plane `x² = 0` whose
/// residual points have Hilbert function parameter `b`.
///
/// The residual points are `b` points on `z = 0`, `r - b - 1` on `t = 0` and
/// the corner `[0:1:0:0]` (or, with `ci`, `r/2` points on each line), the
/// residual conic is `zt = 0`, and the general forms are redrawn until the
/// minors of the extended matrix have no common zero.
pub fn construct_set_curve(
    d: i64,
    g: i64,
    b: i64,
    ci: bool,
    rng: &mut SeededRng,
    opts: &SetOptions,
) -> Result<CurveBundle> {
    let n = CurveNumerics::new(d, g)?;
    n.check_set()?;
    let n = n.with_b(b)?;
    if ci && !n.ci_possible() {
        return Err(CurveError::invalid(format!(
            "the complete-intersection case needs r even and b = r/2 - 1 (r = {}, b = {b})",
            n.r
        )));
    }
    let field = opts.field;
    let p3 = space(field);
    let plane = Ring::plane(field);
    let seed = rng.seed();
    let h = match &opts.h {
        Some(h) => {
            if h.degree() != Some((d - 4) as u32) || h.is_zero() {
                return Err(CurveError::invalid(format!(
                    "h must be a nonzero form of degree {}",
                    d - 4
                )));
            }
            h.relabel(&plane, &[0, 1, 2])
        }
        None => Poly::var(&plane, 0).pow((d - 4) as u32),
    };
    let (z, t) = (Poly::var(&plane, 1), Poly::var(&plane, 2));
    let phi = z.mul(&t);
    let x = Poly::var(&p3, 0);
    let x2 = x.mul(&x);
    let (phi_l, h_l) = (lift(&phi, &p3), lift(&h, &p3));
    let mut failures = Vec::new();
    for attempt in 1..=MAX_DRAWS {
        let mut draw = rng.fork(attempt as u64);
        let mut w = Witnesses {
            plane: Some(x.clone()),
            phi: Some(phi.clone()),
            h: Some(h.clone()),
            ..Default::default()
        };
        let gens = if ci {
            let k = n.r / 2;
            let f = field;
            let corner = Poly::var(&plane, 0).pow(k as u32).scale(
                f.from_i64((1..=k).fold(1i64, |acc, c| acc * -c % f.characteristic() as i64)),
            );
            let psi = product_of_lines(&plane, 2, k)
                .add(&product_of_lines(&plane, 1, k))
                .sub(&corner);
            let ff = random_form(&plane, (d - 3 + k) as u32, &mut draw);
            if !is_irrelevant(&plane, vec![psi.clone(), phi.clone(), ff.clone()])? {
                failures.push(format!("draw {attempt}: (psi, phi, F) has a common zero"));
                continue;
            }
            let psi_l = lift(&psi, &p3);
            w.points = Some(Ideal::new(&plane, vec![psi.clone(), phi.clone()])?);
            w.psi = Some(psi);
            w.f = Some(ff.clone());
            vec![
                x2.clone(),
                x.mul(&phi_l),
                phi_l.mul(&phi_l).mul(&h_l),
                psi_l.mul(&phi_l).mul(&h_l).add(&x.mul(&lift(&ff, &p3))),
            ]
        } else {
            let a = n.r - b - 1;
            let p = product_of_lines(&plane, 2, b);
            let q = product_of_lines(&plane, 1, a);
            // A = [[p, y', m], [q, n, l]] with phi = y' l - m n
            let row1 = vec![p.clone(), z.neg(), Poly::zero(&plane)];
            let row2 = vec![q.clone(), Poly::zero(&plane), t.neg()];
            let ff = random_form(&plane, (b + d - 3) as u32, &mut draw);
            let gg = random_form(&plane, (a + d - 3) as u32, &mut draw);
            let m1 = [row1.clone(), vec![ff.clone()]].concat();
            let m2 = [row2.clone(), vec![gg.clone()]].concat();
            let mut minors = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    minors.push(det2(&m1[i], &m1[j], &m2[i], &m2[j]));
                }
            }
            if !is_irrelevant(&plane, minors)? {
                failures.push(format!(
                    "draw {attempt}: minors of [A | F G] have a common zero"
                ));
                continue;
            }
            let points = Ideal::new(
                &plane,
                vec![
                    det2(&row1[1], &row1[2], &row2[1], &row2[2]),
                    det2(&row1[0], &row1[2], &row2[0], &row2[2]),
                    det2(&row1[0], &row1[1], &row2[0], &row2[1]),
                ],
            )?;
            let l = |p: &Poly| lift(p, &p3);
            let (pp, yy, mm, qq, nn, ll, fl, gl) = (
                l(&row1[0]),
                l(&row1[1]),
                l(&row1[2]),
                l(&row2[0]),
                l(&row2[1]),
                l(&row2[2]),
                l(&ff),
                l(&gg),
            );
            let phih = phi_l.mul(&h_l);
            let g4 = phih
                .mul(&det2(&pp, &mm, &qq, &ll))
                .add(&x.mul(&det2(&mm, &fl, &ll, &gl)));
            let g5 = phih
                .mul(&det2(&pp, &yy, &qq, &nn))
                .add(&x.mul(&det2(&yy, &fl, &nn, &gl)));
            w.points = Some(points.minimized());
            w.a_matrix = Some(vec![row1, row2]);
            w.m_matrix = Some(vec![m1, m2]);
            w.f = Some(ff);
            w.g = Some(gg);
            vec![
                x2.clone(),
                x.mul(&phi_l),
                phi_l.mul(&phi_l).mul(&h_l),
                g4,
                g5,
            ]
        };
        let ideal = Ideal::new(&p3, gens)?;
        match certify_curve(&ideal, d, g) {
            Ok(c) => {
                w.components.push((
                    "residual conic".into(),
                    Ideal::new(&p3, vec![x.clone(), phi_l.clone()])?,
                ));
                return Ok(bundle(
                    c,
                    d,
                    g,
                    Construction::SetCurve { b, ci },
                    w,
                    seed,
                    attempt,
                ));
            }
            Err(e @ CurveError::Certificate { .. }) => {
                failures.push(format!("draw {attempt}: {e}"))
            }
            Err(e) => return Err(e),
        }
    }
    Err(CurveError::certificate(
        "general forms",
        failures.join("; "),
    ))
}
