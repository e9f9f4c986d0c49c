//! Polynomial ring descriptors.

use std::sync::Arc;

use crate::error::{KernelError, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// A graded polynomial ring `F_p[v_1, ..., v_n]` with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    names: Vec<String>,
    order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(field: PrimeField, names: &[&str], order: MonomialOrder) -> Result<RingRef> {
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(KernelError::Invalid(format!(
                "a ring needs between 1 and {MAX_VARS} variables"
            )));
        }
        if let MonomialOrder::Elimination(k) = order {
            if k == 0 || k >= names.len() {
                return Err(KernelError::Invalid(
                    "elimination block out of range".into(),
                ));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for n in names {
            if !seen.insert(*n) {
                return Err(KernelError::Invalid(format!("duplicate variable {n}")));
            }
        }
        Ok(Arc::new(Ring {
            field,
            names: names.iter().map(|s| s.to_string()).collect(),
            order,
        }))
    }

    /// Projective 3-space: `x, y, z, t` with degrevlex.
    pub fn projective_space(field: PrimeField) -> RingRef {
        Self::new(field, &["x", "y", "z", "t"], MonomialOrder::DegRevLex).unwrap()
    }

    /// The plane `x = 0` of projective 3-space: `y, z, t` with degrevlex.
    pub fn plane(field: PrimeField) -> RingRef {
        Self::new(field, &["y", "z", "t"], MonomialOrder::DegRevLex).unwrap()
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<RingRef> {
        let names: Vec<&str> = self.names.iter().map(|s| s.as_str()).collect();
        Self::new(self.field, &names, order)
    }

    /// This ring with one extra weight-zero variable prepended, ordered to
    /// eliminate it.
    pub fn with_elimination_variable(&self, name: &str) -> Result<RingRef> {
        let mut names: Vec<&str> = vec![name];
        names.extend(self.names.iter().map(|s| s.as_str()));
        Self::new(self.field, &names, MonomialOrder::Elimination(1))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Number of graded (positive weight) variables.
    pub fn graded_nvars(&self) -> usize {
        self.nvars() - self.order.weightless_prefix()
    }

    #[inline]
    pub fn degree(&self, m: &Monomial) -> u32 {
        self.order.degree(m, self.nvars())
    }

    #[inline]
    pub fn key(&self, m: &Monomial) -> u128 {
        self.order.key(m, self.nvars())
    }

    /// Dimension of the degree-`k` piece of the ring (graded variables only).
    pub fn dim_in_degree(&self, k: i64) -> u64 {
        monomial_count(self.graded_nvars(), k)
    }

    /// All monomials of degree `k` in the graded variables, in descending
    /// order.
    pub fn monomials_of_degree(&self, k: u32) -> Vec<Monomial> {
        let lo = self.order.weightless_prefix();
        let n = self.nvars();
        let mut out = Vec::new();
        let mut e = [0u16; MAX_VARS];
        fn rec(i: usize, n: usize, left: u32, e: &mut [u16; MAX_VARS], out: &mut Vec<Monomial>) {
            if i == n - 1 {
                e[i] = left as u16;
                out.push(Monomial::from_exponents(&e[..]));
                return;
            }
            for k in (0..=left).rev() {
                e[i] = k as u16;
                rec(i + 1, n, left - k, e, out);
            }
            e[i] = 0;
        }
        rec(lo, n, k, &mut e, &mut out);
        out.sort_by_key(|m| std::cmp::Reverse(self.key(m)));
        out
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.names.iter().enumerate() {
            match m.exponent(i) {
                0 => {}
                1 => parts.push(name.clone()),
                k => parts.push(format!("{name}^{k}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Number of monomials of degree `k` in `n` variables: `C(k + n - 1, n - 1)`.
pub fn monomial_count(n: usize, k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    if n == 0 {
        return u64::from(k == 0);
    }
    binomial(k as u64 + n as u64 - 1, n as u64 - 1)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_enumeration() {
        let r = Ring::projective_space(PrimeField::default());
        for k in 0..7 {
            assert_eq!(
                r.monomials_of_degree(k).len() as u64,
                r.dim_in_degree(k as i64)
            );
        }
        assert_eq!(r.dim_in_degree(-1), 0);
        let e = r.with_elimination_variable("s").unwrap();
        assert_eq!(e.graded_nvars(), 4);
        assert_eq!(e.monomials_of_degree(2).len(), 10);
    }

    #[test]
    fn rejects_bad_rings() {
        let f = PrimeField::default();
        assert!(Ring::new(f, &["x", "x"], MonomialOrder::DegRevLex).is_err());
        assert!(Ring::new(f, &[], MonomialOrder::DegRevLex).is_err());
        assert!(Ring::new(f, &["x"], MonomialOrder::Elimination(1)).is_err());
    }
}
