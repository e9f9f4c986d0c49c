//! Seeded randomness for "general" choices.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::PrimeField;
use crate::poly::Poly;
use crate::ring::RingRef;

/// A deterministic random stream: equal seeds give equal draws.
#[derive(Clone, Debug)]
pub struct SeededRng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An independent stream derived from this seed and a label.
    pub fn fork(&self, label: u64) -> SeededRng {
        let mixed = self
            .seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .rotate_left(17)
            ^ label.wrapping_mul(0xD1B5_4A32_D192_ED03);
        SeededRng::new(mixed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform element of the field.
    pub fn element(&mut self, f: PrimeField) -> u32 {
        self.inner.gen_range(0..f.characteristic())
    }

    /// Uniform nonzero element of the field.
    pub fn nonzero(&mut self, f: PrimeField) -> u32 {
        self.inner.gen_range(1..f.characteristic())
    }

    pub fn range(&mut self, lo: i64, hi_inclusive: i64) -> i64 {
        self.inner.gen_range(lo..=hi_inclusive)
    }
}

/// Dense homogeneous form of the given degree with uniform coefficients.
/// Degree 0 yields a nonzero constant; higher degrees are resampled in the
/// (negligible) event of drawing zero.
pub fn random_form(ring: &RingRef, degree: u32, rng: &mut SeededRng) -> Poly {
    let f = ring.field();
    let mons = ring.monomials_of_degree(degree);
    loop {
        let terms: Vec<_> = mons.iter().map(|m| (*m, rng.element(f))).collect();
        let p = Poly::from_terms(ring, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random form in a subset of the variables (given by index).
pub fn random_form_in(ring: &RingRef, vars: &[usize], degree: u32, rng: &mut SeededRng) -> Poly {
    let f = ring.field();
    let mons: Vec<_> = ring
        .monomials_of_degree(degree)
        .into_iter()
        .filter(|m| (0..ring.nvars()).all(|i| vars.contains(&i) || m.exponent(i) == 0))
        .collect();
    assert!(!mons.is_empty(), "no monomials in the requested variables");
    loop {
        let terms: Vec<_> = mons.iter().map(|m| (*m, rng.element(f))).collect();
        let p = Poly::from_terms(ring, terms);
        if !p.is_zero() {
            return p;
        }
    }
}
