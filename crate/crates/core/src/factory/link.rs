use curvelab_kernel::{Ideal, Poly, SeededRng};

use super::{bundle, certify_curve, Construction, CurveBundle};
use crate::error::{CurveError, Result};

/// Seed used for the random linear forms of the saturation in
/// [`basic_double_link`].
const LINK_SEED: u64 = 0x6c696e6b;

/// The basic double link `F·I_C + (q)` of a curve on the surface `q = 0`,
/// saturated. `q` must lie in `I_C` and share no factor with `F`.
///
/// The result has degree `d + deg q · deg F` and Rao function shifted by
/// `deg F`.
pub fn basic_double_link(ideal: &Ideal, q: &Poly, f: &Poly) -> Result<Ideal> {
    let ring = ideal.ring();
    for (name, p) in [("q", q), ("F", f)] {
        if p.is_zero() || !p.is_homogeneous() || p.is_constant() {
            return Err(CurveError::invalid(format!(
                "{name} must be a non-constant form"
            )));
        }
    }
    if !ideal.contains(q) {
        return Err(CurveError::invalid("q does not vanish on the curve"));
    }
    let pair = Ideal::new(ring, vec![q.clone(), f.clone()])?.dimension_degree()?;
    if pair.proj_dim != ring.nvars() as i64 - 3 {
        return Err(CurveError::invalid("q and F share a factor"));
    }
    let linked = ideal.scale_by(f)?.add_generators(std::slice::from_ref(q))?;
    let mut rng = SeededRng::new(LINK_SEED);
    Ok(linked.saturate_irrelevant(&mut rng)?.minimized())
}

/// Basic double link of a constructed curve, certified as a curve of the
/// predicted degree and genus.
pub fn double_link_bundle(base: &CurveBundle, q: &Poly, f: &Poly) -> Result<CurveBundle> {
    let ideal = basic_double_link(&base.ideal, q, f)?;
    let (dq, df) = (q.degree().unwrap() as i64, f.degree().unwrap() as i64);
    let d = base.d + dq * df;
    let g = linked_genus(base.d, base.g, dq, df);
    let certified = certify_curve(&ideal, d, g)?;
    let mut w = base.witnesses.clone();
    w.components
        .push(("linked from".into(), base.ideal.clone()));
    Ok(bundle(
        certified,
        d,
        g,
        Construction::DoubleLink { shift: df },
        w,
        base.seed,
        1,
    ))
}

/// Genus of `F·I_C + (q)` from the Hilbert polynomial identity
/// `h_Y(j) = h_{(q,F)}(j) + h_C(j - deg F)`.
pub fn linked_genus(d: i64, g: i64, dq: i64, df: i64) -> i64 {
    let ci_genus = 1 + dq * df * (dq + df - 4) / 2;
    // constant terms: (1 - ci_genus) + (1 - g - d·df) = 1 - g_Y
    ci_genus + g + d * df - 1
}
