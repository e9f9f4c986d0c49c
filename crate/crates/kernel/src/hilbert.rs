//! Hilbert series of monomial ideals and the numerical data read off them.
//!
//! Numerators are stored as coefficient vectors of polynomials in `t`,
//! lowest degree first, with the series equal to `N(t) / (1 - t)^n`.

use crate::monomial::{Monomial, MAX_VARS};
use crate::ring::binomial;

/// Polynomial in one variable with integer coefficients, lowest degree first.
pub type Numerator = Vec<i64>;

fn trim(mut v: Numerator) -> Numerator {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn add_shifted(a: &mut Numerator, b: &Numerator, shift: usize, sign: i64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &c) in b.iter().enumerate() {
        a[i + shift] += sign * c;
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `S / M` where `M` is generated by
/// `gens` (standard grading; unused exponent slots must be zero).
pub fn monomial_numerator(gens: &[Monomial]) -> Numerator {
    trim(numerator_rec(minimalize(gens.to_vec())))
}

fn numerator_rec(gens: Vec<Monomial>) -> Numerator {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    // pairwise coprime generators: product of (1 - t^deg)
    let mut coprime = true;
    'outer: for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !gens[i].is_coprime(&gens[j]) {
                coprime = false;
                break 'outer;
            }
        }
    }
    if coprime {
        let mut acc: Numerator = vec![1];
        for g in &gens {
            let d = g.total_degree() as usize;
            let mut next = acc.clone();
            add_shifted(&mut next, &acc, d, -1);
            acc = next;
        }
        return acc;
    }
    // pivot on the variable occurring in the most non-pure-power generators
    let mut counts = [0usize; MAX_VARS];
    for g in &gens {
        if g.support_mask().count_ones() > 1 {
            for (i, c) in counts.iter_mut().enumerate() {
                if g.exponent(i) > 0 {
                    *c += 1;
                }
            }
        }
    }
    let v = (0..MAX_VARS)
        .max_by_key(|&i| (counts[i], std::cmp::Reverse(i)))
        .unwrap();
    // pivot power: the smallest exponent of v among mixed generators, which
    // keeps x_v^e outside the (minimalized) ideal
    let e = gens
        .iter()
        .filter(|g| g.support_mask().count_ones() > 1 && g.exponent(v) > 0)
        .map(|g| g.exponent(v))
        .min()
        .unwrap();
    let p = Monomial::var_pow(v, e);

    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exponent(v) < e).copied().collect();
    plus.push(p);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut ex = *g.exponents();
            ex[v] = ex[v].saturating_sub(e);
            Monomial::from_exponents(&ex)
        })
        .collect();
    let mut out = numerator_rec(minimalize(plus));
    let q = numerator_rec(minimalize(colon));
    add_shifted(&mut out, &q, e as usize, 1);
    out
}

/// Value at degree `k` of the function with series `N(t) / (1 - t)^n`.
pub fn series_coefficient(num: &[i64], nvars: usize, k: i64) -> i64 {
    let mut s = 0i64;
    for (i, &c) in num.iter().enumerate() {
        let m = k - i as i64;
        if m < 0 || c == 0 {
            continue;
        }
        s += c * if nvars == 0 {
            i64::from(m == 0)
        } else {
            binomial(m as u64 + nvars as u64 - 1, nvars as u64 - 1) as i64
        };
    }
    s
}

/// Evaluate a numerator at `t = 1`.
pub fn eval_at_one(num: &[i64]) -> i64 {
    num.iter().sum()
}

/// Divide by `(1 - t)` as often as possible; returns the quotient and the
/// number of divisions.
pub fn strip_one_minus_t(num: &[i64]) -> (Numerator, usize) {
    let mut q = trim(num.to_vec());
    let mut k = 0;
    while !(q.len() == 1 && q[0] == 0) && eval_at_one(&q) == 0 {
        // q(t) = (1 - t) * r(t): r_i = sum_{j<=i} q_j
        let mut r = vec![0i64; q.len() - 1];
        let mut acc = 0;
        for i in 0..q.len() - 1 {
            acc += q[i];
            r[i] = acc;
        }
        q = trim(r);
        k += 1;
    }
    (q, k)
}

/// Hilbert polynomial data of a graded quotient with series `N/(1-t)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    /// Dimension of the projective scheme, −1 when empty.
    pub dim: i64,
    /// Reduced numerator `Q` with series `Q/(1-t)^(dim+1)`.
    pub reduced: Numerator,
}

impl HilbertPolynomial {
    pub fn from_numerator(num: &[i64], nvars: usize) -> Self {
        let trimmed = trim(num.to_vec());
        if trimmed.len() == 1 && trimmed[0] == 0 {
            return HilbertPolynomial {
                dim: -1,
                reduced: vec![0],
            };
        }
        let (q, k) = strip_one_minus_t(&trimmed);
        HilbertPolynomial {
            dim: nvars as i64 - k as i64 - 1,
            reduced: q,
        }
    }

    /// Leading coefficient times `dim!`: the degree of the scheme.
    pub fn degree(&self) -> i64 {
        if self.dim < 0 {
            0
        } else {
            eval_at_one(&self.reduced)
        }
    }

    /// Arithmetic genus `1 - P(0)` for curves.
    pub fn genus(&self) -> Option<i64> {
        (self.dim == 1).then(|| {
            let s: i64 = self
                .reduced
                .iter()
                .enumerate()
                .map(|(i, &c)| i as i64 * c)
                .sum();
            1 - self.degree() + s
        })
    }

    /// Value of the polynomial at `k`.
    pub fn value(&self, k: i64) -> i64 {
        if self.dim < 0 {
            return 0;
        }
        let d = self.dim;
        self.reduced
            .iter()
            .enumerate()
            .map(|(i, &c)| c * binomial_poly(k - i as i64 + d, d))
            .sum()
    }

    /// First degree from which the Hilbert function agrees with the polynomial.
    pub fn regularity_index(&self, num: &[i64], nvars: usize) -> i64 {
        // the difference HF - HP vanishes for k >= deg(numerator) - nvars + 1
        let bound = num.len() as i64 - nvars as i64;
        let mut k = bound.max(0);
        while k > 0 && series_coefficient(num, nvars, k - 1) == self.value(k - 1) {
            k -= 1;
        }
        k
    }
}

/// `C(n, k)` as a polynomial in `n` (valid for negative `n`).
pub fn binomial_poly(n: i64, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k {
        num *= (n - i) as i128;
        den *= (i + 1) as i128;
    }
    (num / den) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    /// Count standard monomials directly.
    fn brute(gens: &[Monomial], n: usize, k: u32) -> i64 {
        let mut count = 0;
        let mut e = vec![0u16; n];
        fn rec(
            i: usize,
            n: usize,
            left: u32,
            e: &mut Vec<u16>,
            gens: &[Monomial],
            count: &mut i64,
        ) {
            if i == n - 1 {
                e[i] = left as u16;
                let mon = Monomial::from_exponents(e);
                if !gens.iter().any(|g| g.divides(&mon)) {
                    *count += 1;
                }
                return;
            }
            for a in 0..=left {
                e[i] = a as u16;
                rec(i + 1, n, left - a, e, gens, count);
            }
        }
        rec(0, n, k, &mut e, gens, &mut count);
        count
    }

    #[test]
    fn matches_brute_force_counts() {
        let cases: Vec<Vec<Monomial>> = vec![
            vec![],
            vec![
                m(&[2, 0, 0, 0]),
                m(&[1, 1, 0, 0]),
                m(&[0, 2, 0, 0]),
                m(&[1, 0, 1, 0]),
            ],
            vec![
                m(&[1, 1, 1, 0]),
                m(&[0, 2, 0, 3]),
                m(&[3, 0, 1, 1]),
                m(&[0, 0, 2, 2]),
            ],
            vec![m(&[1, 0, 0, 0]), m(&[0, 1, 0, 0])],
        ];
        for gens in cases {
            let num = monomial_numerator(&gens);
            for k in 0..9 {
                assert_eq!(
                    series_coefficient(&num, 4, k),
                    brute(&gens, 4, k as u32),
                    "{gens:?} at {k}"
                );
            }
        }
    }

    #[test]
    fn line_and_points() {
        // (x, y): a line
        let num = monomial_numerator(&[m(&[1, 0, 0, 0]), m(&[0, 1, 0, 0])]);
        let hp = HilbertPolynomial::from_numerator(&num, 4);
        assert_eq!((hp.dim, hp.degree(), hp.genus()), (1, 1, Some(0)));
        // (x^2, xy, y^2) in 3 vars: a fat point of length 3
        let num = monomial_numerator(&[m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0])]);
        let hp = HilbertPolynomial::from_numerator(&num, 3);
        assert_eq!((hp.dim, hp.degree()), (0, 3));
        // unit ideal
        let hp = HilbertPolynomial::from_numerator(&monomial_numerator(&[Monomial::ONE]), 4);
        assert_eq!(hp.dim, -1);
    }

    #[test]
    fn binomial_polynomial_negative() {
        assert_eq!(binomial_poly(-1, 3), -1);
        assert_eq!(binomial_poly(5, 2), 10);
        assert_eq!(binomial_poly(1, 3), 0);
    }
}
