//! Graded Betti numbers as Tor dimensions, from Koszul homology.
//!
//! `Tor_i(S/I, k)_j` is the homology of the Koszul complex of `S/I` in
//! degree `j`. When a general linear form is a nonzerodivisor on `S/I`
//! (checked by comparing Hilbert series) the computation moves to the
//! quotient by that form, one variable fewer, with identical Tor.

use std::collections::HashMap;

use crate::error::{KernelError, Result};
use crate::hilbert::Numerator;
use crate::ideal::Ideal;
use crate::linalg::DenseMatrix;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::resolution::BettiTable;
use crate::ring::{Ring, RingRef};
use crate::rng::SeededRng;

/// Betti numbers of `I` (position 0 = generators) for internal degrees up
/// to `max_degree`.
pub fn koszul_betti(ideal: &Ideal, max_degree: i64, rng: &mut SeededRng) -> Result<BettiTable> {
    let reduced = reduce_by_general_form(ideal, rng)?;
    let j = reduced.as_ref().unwrap_or(ideal);
    let tor = koszul_tor(j, max_degree)?;
    let mut t = BettiTable::new();
    for ((i, deg), c) in tor {
        if i >= 1 {
            t.add(i - 1, deg, c);
        }
    }
    Ok(t)
}

/// Image of `I` modulo a general linear form, if one is a nonzerodivisor.
fn reduce_by_general_form(ideal: &Ideal, rng: &mut SeededRng) -> Result<Option<Ideal>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if n < 2 || ideal.is_unit() || ring.order() != crate::MonomialOrder::DegRevLex {
        return Ok(None);
    }
    let names: Vec<&str> = ring.names()[..n - 1].iter().map(|s| s.as_str()).collect();
    let small: RingRef = Ring::new(ring.field(), &names, crate::MonomialOrder::DegRevLex)?;
    let target: &Numerator = ideal.hilbert_numerator();
    for _ in 0..4 {
        let mut images: Vec<Poly> = (0..n - 1).map(|i| Poly::var(&small, i)).collect();
        let lin = Poly::from_terms(
            &small,
            (0..n - 1).map(|i| (Monomial::var(i), rng.element(ring.field()))),
        );
        images.push(lin);
        let img = ideal.map(&small, &images)?;
        if img.hilbert_numerator() == target {
            return Ok(Some(img));
        }
    }
    Ok(None)
}

/// Koszul homology `Tor_i(R/J, k)_j` for `0 <= j <= max_degree`.
pub fn koszul_tor(j_ideal: &Ideal, max_degree: i64) -> Result<HashMap<(usize, i64), u64>> {
    let ring = j_ideal.ring().clone();
    if ring.order() != crate::MonomialOrder::DegRevLex {
        return Err(KernelError::Invalid(
            "Koszul homology needs a degrevlex ring".into(),
        ));
    }
    let f = ring.field();
    let m = ring.nvars();
    let leads = j_ideal.leading_monomials();
    let standard = |k: i64| -> Vec<Monomial> {
        if k < 0 {
            return Vec::new();
        }
        ring.monomials_of_degree(k as u32)
            .into_iter()
            .filter(|mu| !leads.iter().any(|l| l.divides(mu)))
            .collect()
    };
    let bases: Vec<Vec<Monomial>> = (0..=max_degree).map(standard).collect();
    let index: Vec<HashMap<Monomial, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, m)| (*m, i)).collect())
        .collect();
    // mult[k][v][a] = coordinates of x_v * basis[k][a] in basis[k+1]
    let mut mult: Vec<Vec<Vec<Vec<(usize, u32)>>>> = Vec::new();
    for k in 0..max_degree.max(0) as usize {
        let mut per_var = Vec::with_capacity(m);
        for v in 0..m {
            let mut col = Vec::with_capacity(bases[k].len());
            for mu in &bases[k] {
                let prod = mu.mul(&Monomial::var(v));
                let coords = if let Some(&pos) = index[k + 1].get(&prod) {
                    vec![(pos, 1)]
                } else {
                    let nf = j_ideal.reduce(&Poly::monomial(&ring, prod, 1));
                    nf.terms()
                        .iter()
                        .map(|(mm, c)| (index[k + 1][mm], *c))
                        .collect()
                };
                col.push(coords);
            }
            per_var.push(col);
        }
        mult.push(per_var);
    }
    let subsets: Vec<Vec<Vec<usize>>> = (0..=m).map(|i| subsets_of_size(m, i)).collect();
    let subset_index: Vec<HashMap<Vec<usize>, usize>> = subsets
        .iter()
        .map(|ss| ss.iter().enumerate().map(|(a, s)| (s.clone(), a)).collect())
        .collect();
    let dim_k = |i: usize, deg: i64| -> usize {
        let k = deg - i as i64;
        if k < 0 || k > max_degree {
            0
        } else {
            bases[k as usize].len() * subsets[i].len()
        }
    };
    // rank of the differential K_i -> K_{i-1} in degree deg
    let rank = |i: usize, deg: i64| -> usize {
        if i == 0 || i > m {
            return 0;
        }
        let k = deg - i as i64; // source monomial degree
        if k < 0 || k + 1 > max_degree {
            return 0;
        }
        let k = k as usize;
        let src = bases[k].len();
        let tgt = bases[k + 1].len();
        let mut mat = DenseMatrix::zeros(tgt * subsets[i - 1].len(), src * subsets[i].len());
        for (si, s) in subsets[i].iter().enumerate() {
            for (p, &v) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(p);
                let ti = subset_index[i - 1][&rest];
                let sign_neg = p % 2 == 1;
                for a in 0..src {
                    for &(b, c) in &mult[k][v][a] {
                        let row = ti * tgt + b;
                        let col = si * src + a;
                        let val = if sign_neg { f.neg(c) } else { c };
                        mat.set(row, col, f.add(mat.get(row, col), val));
                    }
                }
            }
        }
        mat.rank(f)
    };
    let mut out = HashMap::new();
    for deg in 0..=max_degree {
        let ranks: Vec<usize> = (0..=m + 1).map(|i| rank(i, deg)).collect();
        for i in 0..=m {
            let dim = dim_k(i, deg);
            let h = dim - ranks[i] - ranks[i + 1];
            if h > 0 {
                out.insert((i, deg), h as u64);
            }
        }
    }
    Ok(out)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
