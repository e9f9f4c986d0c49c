//! Homogeneous ideals and the ideal-level operations built on the engine.

use std::sync::OnceLock;

use crate::error::{KernelError, Result};
use crate::groebner::{buchberger, normal_form_vector, GbOptions};
use crate::hilbert::{monomial_numerator, series_coefficient, HilbertPolynomial, Numerator};
use crate::linalg::DenseMatrix;
use crate::module::{vector_from_polys, vector_to_polys, IdealOrder};
use crate::monomial::{Monomial, MAX_VARS};
use crate::poly::{check_ring, Poly};
use crate::ring::RingRef;
use crate::rng::SeededRng;

/// Reduced Gröbner basis of the ideal generated by `gens`, in the order of
/// their common ring, sorted by ascending leading monomial.
pub fn groebner_basis(gens: &[Poly]) -> Result<Vec<Poly>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let order = IdealOrder::new(&ring);
    let mut vecs = Vec::with_capacity(gens.len());
    for g in gens {
        check_ring(&ring, g.ring())?;
        g.homogeneous_degree()
            .or_else(|e| if g.is_zero() { Ok(0) } else { Err(e) })?;
        if !g.is_zero() {
            vecs.push(vector_from_polys(&order, std::slice::from_ref(g))?);
        }
    }
    let out = buchberger(&order, &vecs, &GbOptions::default())?;
    Ok(out
        .basis
        .iter()
        .map(|v| vector_to_polys(&ring, v, 1).remove(0))
        .collect())
}

/// Remainder of `f` under full reduction by `g`; zero iff `f` lies in the
/// ideal when `g` is a Gröbner basis.
pub fn normal_form(f: &Poly, g: &[Poly]) -> Result<Poly> {
    let Some(first) = g.first() else {
        return Err(KernelError::EmptyInput);
    };
    let ring = f.ring().clone();
    check_ring(&ring, first.ring())?;
    let order = IdealOrder::new(&ring);
    let mut basis = Vec::with_capacity(g.len());
    for p in g {
        check_ring(&ring, p.ring())?;
        if !p.is_zero() {
            basis.push(vector_from_polys(&order, std::slice::from_ref(p))?);
        }
    }
    let v = vector_from_polys(&order, std::slice::from_ref(f))?;
    let r = normal_form_vector(&order, &v, &basis);
    Ok(vector_to_polys(&ring, &r, 1).remove(0))
}

/// Projective dimension, degree and (for curves) arithmetic genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimDeg {
    pub proj_dim: i64,
    pub degree: i64,
    pub genus: Option<i64>,
}

/// A homogeneous ideal with a lazily computed, cached Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
    numerator: OnceLock<Numerator>,
}

impl PartialEq for Ideal {
    /// Equality of ideals (compares reduced Gröbner bases).
    fn eq(&self, other: &Self) -> bool {
        crate::poly::same_ring(&self.ring, &other.ring) && self.groebner() == other.groebner()
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Poly>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            check_ring(ring, g.ring())?;
            if g.is_zero() {
                continue;
            }
            g.homogeneous_degree()?;
            kept.push(g);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: kept,
            gb: OnceLock::new(),
            numerator: OnceLock::new(),
        })
    }

    /// Ideal from generators known to be a reduced Gröbner basis.
    fn from_groebner(ring: &RingRef, gb: Vec<Poly>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(gb.clone());
        Ideal {
            ring: ring.clone(),
            gens: gb,
            gb: cell,
            numerator: OnceLock::new(),
        }
    }

    pub fn zero(ring: &RingRef) -> Self {
        Self::from_groebner(ring, Vec::new())
    }

    pub fn unit(ring: &RingRef) -> Self {
        Self::from_groebner(ring, vec![Poly::one(ring)])
    }

    /// The irrelevant ideal generated by all graded variables.
    pub fn irrelevant(ring: &RingRef) -> Self {
        let lo = ring.order().weightless_prefix();
        Ideal::new(
            ring,
            (lo..ring.nvars()).map(|i| Poly::var(ring, i)).collect(),
        )
        .unwrap()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn groebner(&self) -> &[Poly] {
        self.gb.get_or_init(|| {
            groebner_basis(&self.gens).expect("generators were validated at construction")
        })
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner()
            .iter()
            .map(|g| g.leading_monomial().unwrap())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.groebner().is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().iter().any(|g| g.is_constant())
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        if self.is_zero() {
            return f.clone();
        }
        normal_form(f, self.groebner()).expect("ring checked")
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        check_ring(&self.ring, &other.ring)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn add_generators(&self, extra: &[Poly]) -> Result<Ideal> {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        check_ring(&self.ring, &other.ring)?;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b));
            }
        }
        Ideal::new(&self.ring, g)
    }

    pub fn scale_by(&self, f: &Poly) -> Result<Ideal> {
        Ideal::new(&self.ring, self.gens.iter().map(|g| g.mul(f)).collect())
    }

    /// Numerator of the Hilbert series of `S/I`.
    pub fn hilbert_numerator(&self) -> &Numerator {
        self.numerator
            .get_or_init(|| monomial_numerator(&self.leading_monomials()))
    }

    /// `dim (S/I)_k`.
    pub fn hilbert_function(&self, k: i64) -> i64 {
        series_coefficient(self.hilbert_numerator(), self.ring.graded_nvars(), k)
    }

    /// `dim I_k`.
    pub fn dim_in_degree(&self, k: i64) -> i64 {
        self.ring.dim_in_degree(k) as i64 - self.hilbert_function(k)
    }

    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        HilbertPolynomial::from_numerator(self.hilbert_numerator(), self.ring.graded_nvars())
    }

    /// Dimension and degree of `V(I)`, plus the arithmetic genus for curves.
    /// The exact Hilbert polynomial is cross-checked against the Hilbert
    /// function on six consecutive degrees past its regularity index.
    pub fn dimension_degree(&self) -> Result<DimDeg> {
        let hp = self.hilbert_polynomial();
        let n = self.ring.graded_nvars();
        let num = self.hilbert_numerator();
        let start = hp.regularity_index(num, n);
        for k in start..start + 6 {
            if series_coefficient(num, n, k) != hp.value(k) {
                return Err(KernelError::Inconsistent(format!(
                    "Hilbert polynomial disagrees with the Hilbert function at degree {k}"
                )));
            }
        }
        Ok(DimDeg {
            proj_dim: hp.dim,
            degree: hp.degree(),
            genus: hp.genus(),
        })
    }

    /// A minimal generating subset of the given generators.
    pub fn minimal_generators(&self) -> Vec<Poly> {
        let order = IdealOrder::new(&self.ring);
        let mut gens = self.gens.clone();
        gens.sort_by_key(|g| g.degree().unwrap_or(0));
        let vecs: Vec<_> = gens
            .iter()
            .map(|g| vector_from_polys(&order, std::slice::from_ref(g)).unwrap())
            .collect();
        let out = buchberger(&order, &vecs, &GbOptions::default()).expect("validated");
        gens.into_iter()
            .zip(out.minimal_inputs)
            .filter(|(_, k)| *k)
            .map(|(g, _)| g)
            .collect()
    }

    /// Ideal with minimal generators (same ideal, cached basis kept).
    pub fn minimized(&self) -> Ideal {
        let mut out = Ideal::new(&self.ring, self.minimal_generators()).expect("validated");
        if let Some(gb) = self.gb.get() {
            let _ = out.gb.set(gb.clone());
        }
        out.numerator = self.numerator.clone();
        out
    }

    /// `I ∩ J` by elimination of one auxiliary weight-zero variable `s`
    /// from `s I + (1 - s) J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        check_ring(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let n = self.ring.nvars();
        if n + 1 > MAX_VARS - 1 {
            return Err(KernelError::Invalid(
                "no room for an elimination variable".into(),
            ));
        }
        let ering = self.ring.with_elimination_variable("_s")?;
        let up: Vec<usize> = (1..=n).collect();
        let s = Poly::var(&ering, 0);
        let one_minus_s = Poly::one(&ering).sub(&s);
        let mut gens = Vec::new();
        for g in self.groebner() {
            gens.push(g.relabel(&ering, &up).mul(&s));
        }
        for g in other.groebner() {
            gens.push(g.relabel(&ering, &up).mul(&one_minus_s));
        }
        let gb = groebner_basis(&gens)?;
        let mut down = vec![MAX_VARS - 1];
        down.extend(0..n);
        let kept: Vec<Poly> = gb
            .iter()
            .filter(|g| !g.involves(0))
            .map(|g| g.relabel(&self.ring, &down))
            .collect();
        Ok(Ideal::from_groebner(&self.ring, kept))
    }

    /// `(I : f)` for a single form.
    pub fn quotient_by(&self, f: &Poly) -> Result<Ideal> {
        check_ring(&self.ring, f.ring())?;
        if f.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if f.homogeneous_degree()? == 1 && self.ring.order() == crate::MonomialOrder::DegRevLex {
            return self.linear_colon(f, false);
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let inter = self.intersect(&principal)?;
        let gens = inter
            .groebner()
            .iter()
            .map(|g| g.div_exact(f))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `(I : J)` as the intersection of the quotients by generators of `J`.
    pub fn quotient(&self, j: &Ideal) -> Result<Ideal> {
        check_ring(&self.ring, &j.ring)?;
        let mut acc: Option<Ideal> = None;
        for g in j.gens() {
            let q = self.quotient_by(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// `(I : J^∞)` by iterated quotients; returns the fixpoint and the number
    /// of quotient steps taken.
    pub fn saturate(&self, j: &Ideal) -> Result<(Ideal, usize)> {
        const CAP: usize = 50;
        let mut cur = self.clone();
        for it in 1..=CAP {
            let next = cur.quotient(j)?;
            if next == cur {
                return Ok((cur, it));
            }
            cur = next;
        }
        Err(KernelError::IterationCap {
            cap: CAP,
            what: "saturating".into(),
        })
    }

    /// `(I : l^∞)` for a linear form `l`, in one Gröbner basis computation.
    pub fn saturate_by_linear(&self, l: &Poly) -> Result<Ideal> {
        self.linear_colon(l, true)
    }

    /// Saturation with respect to the irrelevant ideal, via a random linear
    /// form. The result is certified by an unchanged Hilbert polynomial; if
    /// the certificate fails for several draws the iterated method is used.
    pub fn saturate_irrelevant(&self, rng: &mut SeededRng) -> Result<Ideal> {
        let hp = self.hilbert_polynomial();
        for _ in 0..3 {
            let l = crate::rng::random_form(&self.ring, 1, rng);
            let cand = self.saturate_by_linear(&l)?;
            if cand.hilbert_polynomial() == hp {
                return Ok(cand);
            }
        }
        Ok(self.saturate(&Ideal::irrelevant(&self.ring))?.0)
    }

    /// Whether `I = (I : m)`.
    pub fn is_saturated(&self) -> Result<bool> {
        let q = self.quotient(&Ideal::irrelevant(&self.ring))?;
        Ok(q == *self)
    }

    fn linear_colon(&self, l: &Poly, infinite: bool) -> Result<Ideal> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let ch = LinearChange::sending_to_last(l)?;
        let moved: Vec<Poly> = self.groebner().iter().map(|g| ch.forward(g)).collect();
        let gb = groebner_basis(&moved)?;
        let last = Monomial::var(self.ring.nvars() - 1);
        let mut divided = Vec::with_capacity(gb.len());
        for g in gb {
            let mut g = g;
            loop {
                let lm = g.leading_monomial().unwrap();
                // in revlex, the last variable divides the lead iff it divides g
                if !last.divides(&lm) || g.is_constant() {
                    break;
                }
                g = Poly::from_sorted(
                    &self.ring,
                    g.terms()
                        .iter()
                        .map(|&(m, c)| (last.quotient_of(&m), c))
                        .collect(),
                );
                if !infinite {
                    break;
                }
            }
            divided.push(ch.backward(&g));
        }
        Ideal::new(&self.ring, divided)
    }

    /// Apply a ring map given by the images of the variables.
    pub fn map(&self, target: &RingRef, images: &[Poly]) -> Result<Ideal> {
        Ideal::new(
            target,
            self.gens
                .iter()
                .map(|g| g.substitute(target, images))
                .collect(),
        )
    }

    /// Generators sorted by degree then by the reduced basis order.
    pub fn generator_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.gens.iter().filter_map(|g| g.degree()).collect();
        d.sort_unstable();
        d
    }
}

/// An invertible linear change of coordinates.
#[derive(Clone, Debug)]
pub struct LinearChange {
    ring: RingRef,
    fwd: Vec<Poly>,
    bwd: Vec<Poly>,
}

impl LinearChange {
    /// From a matrix `m` with `x_i ↦ Σ_j m[i][j] x_j`.
    pub fn from_matrix(ring: &RingRef, m: &DenseMatrix) -> Result<Self> {
        let f = ring.field();
        let inv = m
            .inverse(f)
            .ok_or_else(|| KernelError::Invalid("singular coordinate change".into()))?;
        let images = |mat: &DenseMatrix| -> Vec<Poly> {
            (0..ring.nvars())
                .map(|i| {
                    Poly::from_terms(
                        ring,
                        (0..ring.nvars()).map(|j| (Monomial::var(j), mat.get(i, j))),
                    )
                })
                .collect()
        };
        Ok(LinearChange {
            ring: ring.clone(),
            fwd: images(m),
            bwd: images(&inv),
        })
    }

    /// A change mapping the linear form `l` to the last variable. When `l`
    /// is a scalar multiple of a variable the change is a permutation.
    pub fn sending_to_last(l: &Poly) -> Result<Self> {
        let ring = l.ring().clone();
        let n = ring.nvars();
        if l.degree() != Some(1) {
            return Err(KernelError::Invalid(format!("{l} is not a linear form")));
        }
        let coeffs: Vec<u32> = (0..n).map(|i| l.coefficient(&Monomial::var(i))).collect();
        let k = (0..n).rev().find(|&i| coeffs[i] != 0).unwrap();
        // rows: unit vectors except e_k, then the coefficients of l
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n);
        for i in 0..n {
            if i != k {
                let mut r = vec![0; n];
                r[i] = 1;
                rows.push(r);
            }
        }
        rows.push(coeffs);
        let nmat = DenseMatrix::from_rows(&rows);
        let f = ring.field();
        let m = nmat.inverse(f).expect("nonzero pivot");
        Self::from_matrix(&ring, &m)
    }

    pub fn forward(&self, p: &Poly) -> Poly {
        p.substitute(&self.ring, &self.fwd)
    }

    pub fn backward(&self, p: &Poly) -> Poly {
        p.substitute(&self.ring, &self.bwd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::ring::Ring;

    fn p3() -> (RingRef, [Poly; 4]) {
        let r = Ring::projective_space(PrimeField::default());
        let v = [
            Poly::var(&r, 0),
            Poly::var(&r, 1),
            Poly::var(&r, 2),
            Poly::var(&r, 3),
        ];
        (r, v)
    }

    #[test]
    fn normal_form_examples() {
        let (_, [x, y, z, _]) = p3();
        assert!(
            normal_form(&x.pow(2).add(&x.mul(&y)), std::slice::from_ref(&x))
                .unwrap()
                .is_zero()
        );
        assert_eq!(
            normal_form(&y.pow(2), std::slice::from_ref(&x)).unwrap(),
            y.pow(2)
        );
        let g = x.mul(&y).sub(&z.pow(2));
        assert!(normal_form(&g, &[x.pow(2), g.clone()]).unwrap().is_zero());
    }

    #[test]
    fn linear_change_sends_form_to_last_variable() {
        let (r, [x, y, z, t]) = p3();
        let l = x.add(&y.scale(3)).add(&z.scale(5));
        let ch = LinearChange::sending_to_last(&l).unwrap();
        assert_eq!(ch.forward(&l), t);
        let p = x.mul(&t).add(&y.pow(2));
        assert_eq!(ch.backward(&ch.forward(&p)), p);
        let _ = r;
    }

    #[test]
    fn quotient_examples() {
        let (r, [x, y, z, t]) = p3();
        let i = Ideal::new(&r, vec![x.pow(2)]).unwrap();
        assert_eq!(
            i.quotient_by(&x).unwrap(),
            Ideal::new(&r, vec![x.clone()]).unwrap()
        );
        let i = Ideal::new(&r, vec![x.mul(&y), x.mul(&z)]).unwrap();
        let xi = Ideal::new(&r, vec![x.clone()]).unwrap();
        assert_eq!(
            i.quotient(&xi).unwrap(),
            Ideal::new(&r, vec![y.clone(), z.clone()]).unwrap()
        );
        // non-linear divisor goes through intersection
        let i = Ideal::new(&r, vec![x.pow(2).mul(&t), y.pow(3)]).unwrap();
        let q = i.quotient_by(&x.pow(2)).unwrap();
        assert!(q.contains(&t));
        assert!(!q.contains(&x));
    }

    #[test]
    fn intersections() {
        let (r, [x, y, z, t]) = p3();
        let a = Ideal::new(&r, vec![x.clone()]).unwrap();
        let b = Ideal::new(&r, vec![y.clone()]).unwrap();
        assert_eq!(
            a.intersect(&b).unwrap(),
            Ideal::new(&r, vec![x.mul(&y)]).unwrap()
        );
        let l1 = Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap();
        let l2 = Ideal::new(&r, vec![z.clone(), t.clone()]).unwrap();
        let both = l1.intersect(&l2).unwrap();
        let expect = Ideal::new(&r, vec![x.mul(&z), x.mul(&t), y.mul(&z), y.mul(&t)]).unwrap();
        assert_eq!(both, expect);
        let dd = both.dimension_degree().unwrap();
        assert_eq!((dd.proj_dim, dd.degree, dd.genus), (1, 2, Some(-1)));
    }

    #[test]
    fn saturation_examples() {
        let (r, [x, y, z, t]) = p3();
        let m = Ideal::irrelevant(&r);
        let i = Ideal::new(&r, vec![x.pow(2)]).unwrap();
        assert_eq!(i.saturate(&m).unwrap().0, i);
        let j = Ideal::new(&r, vec![x.pow(2), x.mul(&y), x.mul(&z), x.mul(&t)]).unwrap();
        let (s, it) = j.saturate(&m).unwrap();
        assert_eq!(s, Ideal::new(&r, vec![x.clone()]).unwrap());
        assert!(it >= 2);
        let fast = j.saturate_irrelevant(&mut SeededRng::new(3)).unwrap();
        assert_eq!(fast, s);
        assert!(!j.is_saturated().unwrap());
        assert!(s.is_saturated().unwrap());
    }

    #[test]
    fn dimension_degree_examples() {
        let (r, [x, y, z, t]) = p3();
        let line = Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap();
        let dd = line.dimension_degree().unwrap();
        assert_eq!((dd.proj_dim, dd.degree, dd.genus), (1, 1, Some(0)));
        // double line x^2, xy, y^2, xz - yt: degree 2
        let dl = Ideal::new(
            &r,
            vec![x.pow(2), x.mul(&y), y.pow(2), x.mul(&z).sub(&y.mul(&t))],
        )
        .unwrap();
        let dd = dl.dimension_degree().unwrap();
        assert_eq!((dd.proj_dim, dd.degree), (1, 2));
        assert_eq!(Ideal::unit(&r).dimension_degree().unwrap().proj_dim, -1);
    }

    #[test]
    fn minimal_generators_drop_redundancy() {
        let (r, [x, y, _, _]) = p3();
        let i = Ideal::new(&r, vec![x.clone(), x.mul(&y), y.clone(), x.add(&y)]).unwrap();
        assert_eq!(i.minimal_generators().len(), 2);
    }
}
