//! Exponent vectors and the two monomial orders used by the kernel.

use std::fmt;

/// Largest number of variables any ring may carry. Four projective
/// coordinates plus one elimination variable fit comfortably.
pub const MAX_VARS: usize = 6;

/// A monomial stored as a fixed-width exponent vector. Unused slots stay 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial {
    e: [u16; MAX_VARS],
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.e)
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e: [0; MAX_VARS] };

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut e = [0u16; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial { e }
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, k: u16) -> Self {
        let mut e = [0u16; MAX_VARS];
        e[i] = k;
        Monomial { e }
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u16 {
        self.e[i]
    }

    #[inline]
    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.e
    }

    /// Standard total degree (every variable of weight one).
    #[inline]
    pub fn total_degree(&self) -> u32 {
        self.e.iter().map(|&v| v as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.e == [0; MAX_VARS]
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.e;
        for i in 0..MAX_VARS {
            e[i] = e[i].checked_add(o.e[i]).expect("exponent overflow");
        }
        Monomial { e }
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] <= o.e[i])
    }

    /// `o / self`, assuming `self` divides `o`.
    #[inline]
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut e = o.e;
        for i in 0..MAX_VARS {
            e[i] -= self.e[i];
        }
        Monomial { e }
    }

    pub fn try_div(&self, by: &Monomial) -> Option<Monomial> {
        by.divides(self).then(|| by.quotient_of(self))
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut e = self.e;
        for i in 0..MAX_VARS {
            e[i] = e[i].max(o.e[i]);
        }
        Monomial { e }
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut e = self.e;
        for i in 0..MAX_VARS {
            e[i] = e[i].min(o.e[i]);
        }
        Monomial { e }
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] == 0 || o.e[i] == 0)
    }

    /// Bitmask of the variables occurring with positive exponent; a cheap
    /// necessary condition for divisibility.
    #[inline]
    pub fn support_mask(&self) -> u8 {
        let mut m = 0u8;
        for i in 0..MAX_VARS {
            if self.e[i] > 0 {
                m |= 1 << i;
            }
        }
        m
    }

    /// Apply a permutation of variable slots: slot `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        for (i, &j) in perm.iter().enumerate() {
            e[j] = self.e[i];
        }
        Monomial { e }
    }
}

/// Monomial orders supported by the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic order.
    #[default]
    DegRevLex,
    /// Block order eliminating the first `k` variables: compare the total
    /// exponent of the block first, then degrevlex on the remaining
    /// variables, then revlex inside the block. Variables of the block carry
    /// weight zero in the grading.
    Elimination(usize),
}

const FIELD_BITS: u32 = 16;

impl MonomialOrder {
    /// Number of leading variables that are excluded from the grading.
    pub fn weightless_prefix(&self) -> usize {
        match self {
            MonomialOrder::DegRevLex => 0,
            MonomialOrder::Elimination(k) => *k,
        }
    }

    /// Degree of `m` in the grading attached to this order.
    #[inline]
    pub fn degree(&self, m: &Monomial, nvars: usize) -> u32 {
        let k = self.weightless_prefix();
        m.e[k..nvars].iter().map(|&v| v as u32).sum()
    }

    /// An integer key whose natural order agrees with the monomial order.
    /// For degrevlex the low 16 bits are always zero, leaving room for a
    /// module component field.
    #[inline]
    pub fn key(&self, m: &Monomial, nvars: usize) -> u128 {
        match self {
            MonomialOrder::DegRevLex => revlex_key(m, 0, nvars, self.degree(m, nvars)),
            MonomialOrder::Elimination(k) => {
                let block: u32 = m.e[..*k].iter().map(|&v| v as u32).sum();
                let mut key = block as u128;
                key = (key << FIELD_BITS) | self.degree(m, nvars) as u128;
                for i in (*k..nvars).rev() {
                    key = (key << FIELD_BITS) | (0xFFFF - m.e[i]) as u128;
                }
                for i in (0..*k).rev() {
                    key = (key << FIELD_BITS) | (0xFFFF - m.e[i]) as u128;
                }
                key << (FIELD_BITS * (MAX_VARS as u32 - nvars as u32))
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> std::cmp::Ordering {
        self.key(a, nvars).cmp(&self.key(b, nvars))
    }
}

/// Degree field followed by reversed exponents from the last variable down,
/// left-aligned into `MAX_VARS + 1` fields. The lowest 16 bits stay zero.
#[inline]
pub(crate) fn revlex_key(m: &Monomial, lo: usize, nvars: usize, degree_field: u32) -> u128 {
    debug_assert!(degree_field <= 0xFFFF);
    let mut key = degree_field as u128;
    for i in (lo..nvars).rev() {
        key = (key << FIELD_BITS) | (0xFFFF - m.e[i]) as u128;
    }
    key << (FIELD_BITS * (MAX_VARS as u32 + 1 - (nvars - lo) as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_small_cases() {
        let o = MonomialOrder::DegRevLex;
        // x > y > z > t
        assert_eq!(o.cmp(&m(&[1, 0, 0, 0]), &m(&[0, 1, 0, 0]), 4), Greater);
        // degree dominates
        assert_eq!(o.cmp(&m(&[0, 0, 0, 2]), &m(&[1, 0, 0, 0]), 4), Greater);
        // xz < y^2 in degrevlex (the smaller power of the last variable wins)
        assert_eq!(o.cmp(&m(&[1, 0, 1, 0]), &m(&[0, 2, 0, 0]), 4), Less);
        assert_eq!(o.cmp(&m(&[1, 1, 0, 0]), &m(&[1, 1, 0, 0]), 4), Equal);
    }

    #[test]
    fn elimination_prefers_block() {
        let o = MonomialOrder::Elimination(1);
        assert_eq!(
            o.cmp(&m(&[1, 0, 0, 0, 0]), &m(&[0, 5, 0, 0, 0]), 5),
            Greater
        );
        assert_eq!(o.degree(&m(&[3, 1, 1, 0, 0]), 5), 2);
        assert_eq!(
            o.cmp(&m(&[1, 2, 0, 0, 0]), &m(&[1, 1, 1, 0, 0]), 5),
            Greater
        );
    }

    #[test]
    fn lcm_gcd_divides() {
        let a = m(&[2, 0, 1]);
        let b = m(&[1, 3, 0]);
        assert_eq!(a.lcm(&b), m(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), m(&[1, 0, 0]));
        assert!(a.gcd(&b).divides(&a));
        assert_eq!(a.quotient_of(&a.lcm(&b)), m(&[0, 3, 0]));
        assert!(!a.is_coprime(&b));
    }
}
