//! Sparse polynomials over a prime field.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{KernelError, Result};
use crate::monomial::Monomial;
use crate::ring::RingRef;

/// A polynomial: terms sorted strictly descending in the ring's order, no
/// zero coefficients.
#[derive(Clone)]
pub struct Poly {
    ring: RingRef,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn check_ring(a: &RingRef, b: &RingRef) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(KernelError::RingMismatch(format!(
            "{:?} vs {:?}",
            a.names(),
            b.names()
        )))
    }
}

impl Poly {
    pub fn zero(ring: &RingRef) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: i64) -> Self {
        Self::monomial(ring, Monomial::ONE, ring.field().from_i64(c))
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::monomial(ring, Monomial::var(i), 1)
    }

    /// Variable by name; panics if absent.
    pub fn var_named(ring: &RingRef, name: &str) -> Self {
        let i = ring
            .var_index(name)
            .unwrap_or_else(|| panic!("no variable {name}"));
        Self::var(ring, i)
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: u32) -> Self {
        let c = c % ring.field().characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, u32)>>(ring: &RingRef, it: I) -> Self {
        let f = ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in it {
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c % f.characteristic());
        }
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by_cached_key(|(m, _)| std::cmp::Reverse(ring.key(m)));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusted constructor: terms already sorted descending, nonzero.
    pub(crate) fn from_sorted(ring: &RingRef, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.key(&w[0].0) > ring.key(&w[1].0)));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coefficient(&self) -> u32 {
        self.terms.first().map(|t| t.1).unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .iter()
            .find(|(mm, _)| mm == m)
            .map(|t| t.1)
            .unwrap_or(0)
    }

    /// Degree when homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let d = self.ring.degree(&self.terms.first()?.0);
        self.terms
            .iter()
            .all(|(m, _)| self.ring.degree(m) == d)
            .then_some(d)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| self.ring.degree(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Homogeneous degree or a diagnostic naming the polynomial.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        self.degree()
            .ok_or_else(|| KernelError::NonHomogeneous(self.to_string()))
    }

    pub fn neg(&self) -> Poly {
        let f = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let f = self.ring.field();
        self.scale(f.inv(self.leading_coefficient()))
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Poly {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        // multiplication by a monomial preserves the order
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|&(mm, a)| (mm.mul(m), f.mul(a, c)))
                .collect(),
        }
    }

    fn combine(&self, other: &Poly, sign_other: bool) -> Poly {
        assert!(
            same_ring(&self.ring, &other.ring),
            "ring mismatch in polynomial arithmetic"
        );
        let f = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let nb = |c: u32| if sign_other { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            let ka = self.ring.key(&a[i].0);
            let kb = self.ring.key(&b[j].0);
            if ka > kb {
                out.push(a[i]);
                i += 1;
            } else if kb > ka {
                out.push((b[j].0, nb(b[j].1)));
                j += 1;
            } else {
                let c = f.add(a[i].1, nb(b[j].1));
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, nb(c))));
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.combine(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(
            same_ring(&self.ring, &other.ring),
            "ring mismatch in polynomial arithmetic"
        );
        let f = self.ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(self.len() * other.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(&mb)).or_insert(0);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by_cached_key(|(m, _)| std::cmp::Reverse(self.ring.key(m)));
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Product of a list of polynomials (1 for the empty list).
    pub fn product<'a, I: IntoIterator<Item = &'a Poly>>(ring: &RingRef, it: I) -> Poly {
        it.into_iter().fold(Poly::one(ring), |acc, p| acc.mul(p))
    }

    /// Exact division; fails if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        check_ring(&self.ring, &divisor.ring)?;
        if divisor.is_zero() {
            return Err(KernelError::NotDivisible("division by zero".into()));
        }
        let f = self.ring.field();
        let (lm, lc) = divisor.terms[0];
        let lc_inv = f.inv(lc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().copied() {
            let q = m
                .try_div(&lm)
                .ok_or_else(|| KernelError::NotDivisible(format!("{} by {}", self, divisor)))?;
            let qc = f.mul(c, lc_inv);
            quot.push((q, qc));
            rem = rem.sub(&divisor.mul_term(&q, qc));
        }
        Ok(Poly::from_terms(&self.ring, quot))
    }

    /// Substitute the `i`-th variable by `images[i]`; the images all live in
    /// a common target ring.
    pub fn substitute(&self, target: &RingRef, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(target), p.clone()])
            .collect();
        let mut out = Poly::zero(target);
        for &(m, c) in &self.terms {
            let mut t = Poly::constant(target, c as i64);
            for (i, pw) in powers.iter_mut().enumerate() {
                let k = m.exponent(i) as usize;
                while pw.len() <= k {
                    let next = pw.last().unwrap().mul(&images[i]);
                    pw.push(next);
                }
                if k > 0 {
                    t = t.mul(&pw[k]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Re-express in another ring with the same variables but a different
    /// order, or with variables relabelled by slot map `slot_map[i]`.
    pub fn relabel(&self, target: &RingRef, slot_map: &[usize]) -> Poly {
        Poly::from_terms(
            target,
            self.terms.iter().map(|&(m, c)| (m.permuted(slot_map), c)),
        )
    }

    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let f = self.ring.field();
        let mut acc = 0;
        for &(m, c) in &self.terms {
            let mut v = c;
            for (i, &p) in point.iter().enumerate() {
                v = f.mul(v, f.pow(p, m.exponent(i) as u64));
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Whether the variable with index `i` occurs.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(i) > 0)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let f = self.ring.field();
        Poly::from_terms(
            &self.ring,
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(i) > 0)
                .map(|&(m, c)| {
                    let k = m.exponent(i);
                    let mut e = *m.exponents();
                    e[i] -= 1;
                    (
                        Monomial::from_exponents(&e),
                        f.mul(c, k as u32 % f.characteristic()),
                    )
                }),
        )
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let f = self.ring.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = f.to_signed(*c);
            let (neg, abs) = (s < 0, s.unsigned_abs());
            if i == 0 {
                if neg {
                    write!(out, "-")?;
                }
            } else {
                write!(out, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(out, "{abs}")?;
            } else if abs == 1 {
                write!(out, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(out, "{abs}*{}", self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
