//! First syzygies of lists of module elements.

use crate::error::Result;
use crate::groebner::{buchberger, GbOptions};
use crate::module::{
    vector_degree, vector_from_polys, vector_to_polys, ShiftedOrder, Term, TermOrder,
};
use crate::poly::Poly;
use crate::ring::RingRef;

/// Minimal generators of the syzygy module of `gens`, elements of the free
/// module `⊕ S(-shifts[c])` (one polynomial per component). Returned
/// syzygies have one entry per generator; each satisfies
/// `Σ s_k gens_k = 0`, checked exactly before returning.
///
/// Works on the augmented module `F ⊕ S^m` with `F` dominating, so basis
/// elements whose leading term falls in `S^m` are syzygies.
pub fn syzygy_basis(ring: &RingRef, gens: &[Vec<Poly>], shifts: &[i64]) -> Result<Vec<Vec<Poly>>> {
    let r = shifts.len();
    let m = gens.len();
    let base = ShiftedOrder::new(ring, shifts.to_vec())?;
    let mut degrees = Vec::with_capacity(m);
    for g in gens {
        let v = vector_from_polys(&base, g)?;
        degrees.push(vector_degree(&base, &v)?.unwrap_or(0));
    }
    let mut aug_shifts = shifts.to_vec();
    aug_shifts.extend(&degrees);
    let aug = ShiftedOrder::with_split(ring, aug_shifts, r)?;
    let mut inputs = Vec::with_capacity(m);
    for (k, g) in gens.iter().enumerate() {
        let mut entries: Vec<Poly> = g.clone();
        entries.extend((0..m).map(|l| {
            if l == k {
                Poly::one(ring)
            } else {
                Poly::zero(ring)
            }
        }));
        inputs.push(vector_from_polys(&aug, &entries)?);
    }
    let gb = buchberger(&aug, &inputs, &GbOptions::default())?;
    let target = ShiftedOrder::new(ring, degrees.clone())?;
    let mut syz: Vec<Vec<Term>> = gb
        .basis
        .into_iter()
        .filter(|v| v[0].comp as usize >= r)
        .map(|v| {
            let ts: Vec<Term> = v
                .into_iter()
                .map(|t| Term {
                    comp: t.comp - r as u32,
                    ..t
                })
                .collect();
            crate::module::normalize(&target, ts)
        })
        .collect();
    syz.sort_by_key(|v| target.degree(&v[0].mon, v[0].comp));
    let minimal = buchberger(&target, &syz, &GbOptions::default())?;
    let out: Vec<Vec<Poly>> = syz
        .into_iter()
        .zip(minimal.minimal_inputs)
        .filter(|(_, keep)| *keep)
        .map(|(v, _)| vector_to_polys(ring, &v, m))
        .collect();
    for s in &out {
        for c in 0..r {
            let mut acc = Poly::zero(ring);
            for (k, g) in gens.iter().enumerate() {
                acc = acc.add(&s[k].mul(&g[c]));
            }
            assert!(acc.is_zero(), "syzygy check failed");
        }
    }
    Ok(out)
}

/// Syzygies of a list of forms (rank-one case).
pub fn syzygies_of_forms(gens: &[Poly]) -> Result<Vec<Vec<Poly>>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let cols: Vec<Vec<Poly>> = gens.iter().map(|g| vec![g.clone()]).collect();
    syzygy_basis(&ring, &cols, &[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::ring::Ring;

    #[test]
    fn koszul_pair() {
        let r = Ring::projective_space(PrimeField::default());
        let (x, y) = (Poly::var(&r, 0), Poly::var(&r, 1));
        let s = syzygies_of_forms(&[x.clone(), y.clone()]).unwrap();
        assert_eq!(s.len(), 1);
        // (y, -x) up to scalar
        let c = s[0][0].leading_coefficient();
        assert_eq!(s[0][0], y.scale(c));
        assert_eq!(s[0][1], x.neg().scale(c));
    }

    #[test]
    fn monomial_pair() {
        let r = Ring::projective_space(PrimeField::default());
        let (x, y) = (Poly::var(&r, 0), Poly::var(&r, 1));
        let s = syzygies_of_forms(&[x.pow(2), x.mul(&y)]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0][0].degree(), Some(1));
    }
}
