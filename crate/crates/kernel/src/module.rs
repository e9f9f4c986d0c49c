//! Terms of graded free modules and the module orders used by the engine.
//!
//! A vector of a free module `⊕ S(-s_c)` is a list of [`Term`]s sorted
//! strictly descending by their order key. Ideals are rank-one modules.

use crate::error::{KernelError, Result};
use crate::monomial::{revlex_key, Monomial, MonomialOrder};
use crate::poly::{check_ring, Poly};
use crate::ring::RingRef;

/// One term `coef * mon * e_comp`, with its cached order key.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub key: u128,
    pub mon: Monomial,
    pub comp: u32,
    pub coef: u32,
}

/// A module element: terms sorted strictly descending by key.
pub type Vector = Vec<Term>;

/// A term order on a graded free module.
pub trait TermOrder: Send + Sync {
    fn ring(&self) -> &RingRef;
    /// Order key of `mon * e_comp`; injective on (mon, comp).
    fn key(&self, mon: &Monomial, comp: u32) -> u128;
    /// Degree of the basis vector `e_comp`.
    fn shift(&self, comp: u32) -> i64;
    /// Whether the product criterion may be applied (rank-one modules only).
    fn rank_one(&self) -> bool {
        false
    }

    fn degree(&self, mon: &Monomial, comp: u32) -> i64 {
        self.ring().degree(mon) as i64 + self.shift(comp)
    }
}

const SHIFT_OFFSET: i64 = 0x4000;

fn degree_field(deg: i64) -> u32 {
    let v = deg + SHIFT_OFFSET;
    assert!(
        (0..0x8000).contains(&v),
        "degree {deg} out of the supported range"
    );
    v as u32
}

fn check_comp(comp: u32) -> u128 {
    assert!(comp < 0xFFFF, "too many module components");
    (0xFFFF - comp) as u128
}

/// The ring's own order on rank-one modules.
#[derive(Clone, Debug)]
pub struct IdealOrder {
    ring: RingRef,
}

impl IdealOrder {
    pub fn new(ring: &RingRef) -> Self {
        IdealOrder { ring: ring.clone() }
    }
}

impl TermOrder for IdealOrder {
    fn ring(&self) -> &RingRef {
        &self.ring
    }
    #[inline]
    fn key(&self, mon: &Monomial, comp: u32) -> u128 {
        debug_assert_eq!(comp, 0);
        self.ring.key(mon)
    }
    fn shift(&self, _comp: u32) -> i64 {
        0
    }
    fn rank_one(&self) -> bool {
        true
    }
}

/// Term-over-position order with degree shifts: degree first, then
/// degrevlex on the monomial, then lower component index first. An optional
/// split index makes every component below it dominate (used to read off
/// syzygies from an augmented module).
#[derive(Clone, Debug)]
pub struct ShiftedOrder {
    ring: RingRef,
    shifts: Vec<i64>,
    split: u32,
}

impl ShiftedOrder {
    pub fn new(ring: &RingRef, shifts: Vec<i64>) -> Result<Self> {
        Self::with_split(ring, shifts, 0)
    }

    pub fn with_split(ring: &RingRef, shifts: Vec<i64>, split: usize) -> Result<Self> {
        if ring.order() != MonomialOrder::DegRevLex {
            return Err(KernelError::Invalid(
                "module orders need a degrevlex ring".into(),
            ));
        }
        Ok(ShiftedOrder {
            ring: ring.clone(),
            shifts,
            split: split as u32,
        })
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }
}

impl TermOrder for ShiftedOrder {
    fn ring(&self) -> &RingRef {
        &self.ring
    }
    #[inline]
    fn key(&self, mon: &Monomial, comp: u32) -> u128 {
        let mut df = degree_field(self.ring.degree(mon) as i64 + self.shifts[comp as usize]);
        if comp < self.split {
            df |= 0x8000;
        }
        revlex_key(mon, 0, self.ring.nvars(), df) | check_comp(comp)
    }
    fn shift(&self, comp: u32) -> i64 {
        self.shifts[comp as usize]
    }
}

/// Schreyer order induced by a list of lead terms of the previous level:
/// compare `mon * total(comp)` in degrevlex, ties broken by a fixed rank of
/// the component (lower rank dominates).
#[derive(Clone, Debug)]
pub struct SchreyerOrder {
    ring: RingRef,
    totals: Vec<Monomial>,
    ranks: Vec<u32>,
}

impl SchreyerOrder {
    pub fn new(ring: &RingRef, totals: Vec<Monomial>, ranks: Vec<u32>) -> Self {
        assert_eq!(totals.len(), ranks.len());
        assert_eq!(ring.order(), MonomialOrder::DegRevLex);
        SchreyerOrder {
            ring: ring.clone(),
            totals,
            ranks,
        }
    }

    pub fn total(&self, comp: u32) -> Monomial {
        self.totals[comp as usize]
    }
}

impl TermOrder for SchreyerOrder {
    fn ring(&self) -> &RingRef {
        &self.ring
    }
    #[inline]
    fn key(&self, mon: &Monomial, comp: u32) -> u128 {
        let tot = mon.mul(&self.totals[comp as usize]);
        let df = self.ring.degree(&tot);
        revlex_key(&tot, 0, self.ring.nvars(), df) | check_comp(self.ranks[comp as usize])
    }
    fn shift(&self, comp: u32) -> i64 {
        self.ring.degree(&self.totals[comp as usize]) as i64
    }
}

/// Sort terms, merge duplicates, drop zeros.
pub fn normalize<O: TermOrder + ?Sized>(order: &O, mut terms: Vec<Term>) -> Vector {
    let f = order.ring().field();
    for t in terms.iter_mut() {
        t.key = order.key(&t.mon, t.comp);
    }
    terms.sort_unstable_by(|a, b| b.key.cmp(&a.key));
    let mut out: Vector = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.key == t.key => last.coef = f.add(last.coef, t.coef),
            _ => out.push(t),
        }
        if out.last().map(|l| l.coef == 0).unwrap_or(false) {
            out.pop();
        }
    }
    out
}

/// Build a vector from one polynomial per component.
pub fn vector_from_polys<O: TermOrder + ?Sized>(order: &O, entries: &[Poly]) -> Result<Vector> {
    let mut terms = Vec::new();
    for (c, p) in entries.iter().enumerate() {
        check_ring(order.ring(), p.ring())?;
        terms.extend(p.terms().iter().map(|&(mon, coef)| Term {
            key: 0,
            mon,
            comp: c as u32,
            coef,
        }));
    }
    Ok(normalize(order, terms))
}

/// Split a vector into `rank` polynomials.
pub fn vector_to_polys(ring: &RingRef, v: &[Term], rank: usize) -> Vec<Poly> {
    let mut parts: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
    for t in v {
        parts[t.comp as usize].push((t.mon, t.coef));
    }
    parts
        .into_iter()
        .map(|ts| Poly::from_terms(ring, ts))
        .collect()
}

/// `c * m * v`; multiplicativity of the order keeps the result sorted.
pub fn mul_term<O: TermOrder + ?Sized>(order: &O, v: &[Term], m: &Monomial, c: u32) -> Vector {
    let f = order.ring().field();
    v.iter()
        .map(|t| {
            let mon = t.mon.mul(m);
            Term {
                key: order.key(&mon, t.comp),
                mon,
                comp: t.comp,
                coef: f.mul(t.coef, c),
            }
        })
        .collect()
}

/// `a + c * b` by merging.
pub fn add_scaled(f: crate::field::PrimeField, a: &[Term], b: &[Term], c: u32) -> Vector {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].key > b[j].key {
            out.push(a[i]);
            i += 1;
        } else if b[j].key > a[i].key {
            out.push(Term {
                coef: f.mul(b[j].coef, c),
                ..b[j]
            });
            j += 1;
        } else {
            let v = f.add(a[i].coef, f.mul(b[j].coef, c));
            if v != 0 {
                out.push(Term { coef: v, ..a[i] });
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|t| Term {
        coef: f.mul(t.coef, c),
        ..*t
    }));
    out.retain(|t| t.coef != 0);
    out
}

/// Degree of a homogeneous vector, or an error naming the offending degrees.
pub fn vector_degree<O: TermOrder + ?Sized>(order: &O, v: &[Term]) -> Result<Option<i64>> {
    let Some(first) = v.first() else {
        return Ok(None);
    };
    let d = order.degree(&first.mon, first.comp);
    for t in v {
        let e = order.degree(&t.mon, t.comp);
        if e != d {
            return Err(KernelError::NonHomogeneous(format!(
                "module element mixes degrees {d} and {e}"
            )));
        }
    }
    Ok(Some(d))
}

/// Make the leading coefficient 1.
pub fn make_monic(f: crate::field::PrimeField, v: &mut [Term]) {
    if let Some(first) = v.first() {
        if first.coef != 1 {
            let inv = f.inv(first.coef);
            for t in v.iter_mut() {
                t.coef = f.mul(t.coef, inv);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::ring::Ring;

    #[test]
    fn shifted_order_respects_degree_then_component() {
        let r = Ring::projective_space(PrimeField::default());
        let o = ShiftedOrder::new(&r, vec![0, 1]).unwrap();
        let x = Monomial::var(0);
        // degree dominates component
        assert!(o.key(&x.mul(&x), 0) > o.key(&Monomial::ONE, 1));
        assert!(o.key(&x, 1) > o.key(&Monomial::ONE, 1));
        // equal monomials and degrees: lower component first
        let flat = ShiftedOrder::new(&r, vec![0, 0]).unwrap();
        assert!(flat.key(&x, 0) > flat.key(&x, 1));
        let split = ShiftedOrder::with_split(&r, vec![0, 5], 1).unwrap();
        assert!(split.key(&Monomial::ONE, 0) > split.key(&x, 1));
    }

    #[test]
    fn add_scaled_cancels() {
        let r = Ring::projective_space(PrimeField::default());
        let o = IdealOrder::new(&r);
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let a = vector_from_polys(&o, &[x.add(&y)]).unwrap();
        let b = vector_from_polys(&o, std::slice::from_ref(&x)).unwrap();
        let f = r.field();
        let d = add_scaled(f, &a, &b, f.neg(1));
        assert_eq!(vector_to_polys(&r, &d, 1)[0], y);
    }
}
