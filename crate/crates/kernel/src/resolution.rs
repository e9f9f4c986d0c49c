//! Minimal graded free resolutions via Schreyer frames.
//!
//! A Gröbner basis of the ideal is extended level by level with the
//! syzygies of pairs of elements sharing a leading component (only pairs
//! giving minimal generators of the leading syzygy ideals are used). Before
//! each level the elements are sorted by decreasing exponent of one
//! variable, so the frame has length at most the number of variables. The
//! frame is then pruned of unit entries by Gaussian elimination.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{KernelError, Result};
use crate::graded::GradedMap;
use crate::groebner::{reduce_to_zero_tracking, Lead};
use crate::ideal::Ideal;
use crate::module::{
    add_scaled, mul_term, normalize, vector_from_polys, vector_to_polys, SchreyerOrder, Term,
    TermOrder, Vector,
};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::RingRef;

/// Graded Betti numbers of an ideal: `(i, j) ↦ β_{i,j}` where `i = 0`
/// counts minimal generators, `i = 1` their syzygies, and so on.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), u64>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, j: i64, count: u64) {
        if count > 0 {
            *self.entries.entry((i, j)).or_insert(0) += count;
        }
    }

    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Shifts with multiplicity at homological position `i`.
    pub fn level(&self, i: usize) -> BTreeMap<i64, u64> {
        self.entries
            .iter()
            .filter(|((a, _), _)| *a == i)
            .map(|((_, j), c)| (*j, *c))
            .collect()
    }

    /// Multiset of shifts at position `i`, ascending.
    pub fn shifts(&self, i: usize) -> Vec<i64> {
        let mut v = Vec::new();
        for (j, c) in self.level(i) {
            v.extend(std::iter::repeat_n(j, c as usize));
        }
        v
    }

    pub fn length(&self) -> usize {
        self.entries.keys().map(|(i, _)| i + 1).max().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    /// Build from per-level shift lists.
    pub fn from_shifts(levels: &[Vec<i64>]) -> Self {
        let mut t = BettiTable::new();
        for (i, l) in levels.iter().enumerate() {
            for &j in l {
                t.add(i, j, 1);
            }
        }
        t
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.length() {
            let parts: Vec<String> = self
                .level(i)
                .iter()
                .map(|(j, c)| {
                    if *c == 1 {
                        format!("{j}")
                    } else {
                        format!("{j}^{c}")
                    }
                })
                .collect();
            writeln!(f, "  {i}: {}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A free resolution `S ← F_1 ← F_2 ← …` of `S/I`; `maps[0]` is the row of
/// generators of `I`.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: RingRef,
    maps: Vec<GradedMap>,
    minimal: bool,
}

impl Resolution {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }
    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }
    /// Number of nonzero free modules after `S`.
    pub fn length(&self) -> usize {
        self.maps.len()
    }
    /// Shifts of `F_k` (`F_0 = S`).
    pub fn shifts(&self, k: usize) -> Vec<i64> {
        if k == 0 {
            vec![0]
        } else if k <= self.maps.len() {
            self.maps[k - 1].source_shifts().to_vec()
        } else {
            Vec::new()
        }
    }
    /// The generators of `I` appearing in the first map.
    pub fn generators(&self) -> Vec<Poly> {
        self.maps
            .first()
            .map(|m| m.columns().iter().map(|c| c[0].clone()).collect())
            .unwrap_or_default()
    }

    /// Betti numbers of the ideal (position 0 = generators).
    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::new();
        for (i, m) in self.maps.iter().enumerate() {
            for &s in m.source_shifts() {
                t.add(i, s, 1);
            }
        }
        t
    }

    /// Consecutive maps compose to zero.
    pub fn is_complex(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[0].compose(&w[1]).map(|c| c.is_zero()).unwrap_or(false))
    }

    /// `Σ (-1)^i rank F_i` over `F_1, F_2, …`; equals 1 for a resolution of a nonzero ideal.
    pub fn alternating_rank_sum(&self) -> i64 {
        self.maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                if i % 2 == 0 {
                    m.cols() as i64
                } else {
                    -(m.cols() as i64)
                }
            })
            .sum()
    }
}

/// Minimal free resolution with a generous default degree cap.
pub fn minimal_free_resolution(ideal: &Ideal) -> Result<Resolution> {
    minimal_free_resolution_capped(ideal, 400)
}

/// Minimal free resolution; fails if any shift exceeds `cap`.
pub fn minimal_free_resolution_capped(ideal: &Ideal, cap: i64) -> Result<Resolution> {
    let frame = schreyer_frame(ideal, cap)?;
    let ring = ideal.ring().clone();
    let mut shifts: Vec<Vec<i64>> = vec![vec![0]];
    let mut mats: Vec<Vec<Vec<Poly>>> = Vec::new();
    for m in &frame {
        shifts.push(m.source_shifts().to_vec());
        mats.push(
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.entry(i, j).clone()).collect())
                .collect(),
        );
    }
    minimize(&ring, &mut mats, &mut shifts);
    let mut maps = Vec::new();
    for k in 0..mats.len() {
        if shifts[k + 1].is_empty() {
            break;
        }
        let cols: Vec<Vec<Poly>> = (0..shifts[k + 1].len())
            .map(|j| {
                (0..shifts[k].len())
                    .map(|i| mats[k][i][j].clone())
                    .collect()
            })
            .collect();
        maps.push(GradedMap::new(
            &ring,
            shifts[k].clone(),
            shifts[k + 1].clone(),
            cols,
        )?);
    }
    Ok(Resolution {
        ring,
        maps,
        minimal: true,
    })
}

/// The (usually non-minimal) Schreyer resolution.
pub fn schreyer_resolution(ideal: &Ideal) -> Result<Resolution> {
    let maps = schreyer_frame(ideal, 400)?;
    Ok(Resolution {
        ring: ideal.ring().clone(),
        maps,
        minimal: false,
    })
}

fn schreyer_frame(ideal: &Ideal, cap: i64) -> Result<Vec<GradedMap>> {
    let ring = ideal.ring().clone();
    if ring.order() != crate::MonomialOrder::DegRevLex {
        return Err(KernelError::Invalid(
            "resolutions need a degrevlex ring".into(),
        ));
    }
    let f = ring.field();
    let nvars = ring.nvars();
    let mut prev = SchreyerOrder::new(&ring, vec![Monomial::ONE], vec![0]);
    let mut prev_ranks = vec![0u32];
    let mut prev_shifts = vec![0i64];
    let mut elems: Vec<Vector> = ideal
        .groebner()
        .iter()
        .map(|g| vector_from_polys(&prev, std::slice::from_ref(g)))
        .collect::<Result<_>>()?;
    let mut maps = Vec::new();
    let mut level = 0usize;
    while !elems.is_empty() {
        if level < nvars {
            elems.sort_by_key(|v| std::cmp::Reverse(v[0].mon.exponent(level)));
        }
        let n = elems.len();
        let shifts: Vec<i64> = elems
            .iter()
            .map(|v| prev.degree(&v[0].mon, v[0].comp))
            .collect();
        if let Some(&bad) = shifts.iter().find(|&&s| s > cap) {
            return Err(KernelError::DegreeCap {
                cap,
                what: format!("resolution shift {bad}"),
            });
        }
        let cols: Vec<Vec<Poly>> = elems
            .iter()
            .map(|v| vector_to_polys(&ring, v, prev_shifts.len()))
            .collect();
        maps.push(GradedMap::new(
            &ring,
            prev_shifts.clone(),
            shifts.clone(),
            cols,
        )?);

        let totals: Vec<Monomial> = elems
            .iter()
            .map(|v| v[0].mon.mul(&prev.total(v[0].comp)))
            .collect();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by_key(|&c| (prev_ranks[elems[c][0].comp as usize], c));
        let mut ranks = vec![0u32; n];
        for (pos, &c) in idx.iter().enumerate() {
            ranks[c] = pos as u32;
        }
        let order = SchreyerOrder::new(&ring, totals, ranks.clone());
        let leads: Vec<Lead> = elems.iter().map(|v| Lead::of(&v[0])).collect();

        let mut next = Vec::new();
        for i in 0..n {
            let mi = leads[i].mon;
            let mut cands: Vec<(Monomial, usize)> = Vec::new();
            for j in i + 1..n {
                if leads[j].comp == leads[i].comp {
                    cands.push((mi.quotient_of(&mi.lcm(&leads[j].mon)), j));
                }
            }
            cands.sort_by_key(|(q, j)| (q.total_degree(), *j));
            let mut kept: Vec<(Monomial, usize)> = Vec::new();
            for (q, j) in cands {
                if !kept.iter().any(|(k, _)| k.divides(&q)) {
                    kept.push((q, j));
                }
            }
            for (qi, j) in kept {
                let lcm = qi.mul(&mi);
                let qj = leads[j].mon.quotient_of(&lcm);
                let ci = f.inv(elems[i][0].coef);
                let cj = f.neg(f.inv(elems[j][0].coef));
                let s = add_scaled(
                    f,
                    &mul_term(&prev, &elems[i], &qi, ci),
                    &mul_term(&prev, &elems[j], &qj, cj),
                    1,
                );
                let steps = reduce_to_zero_tracking(&prev, &s, &elems, &leads)?;
                let mut terms = vec![
                    Term {
                        key: 0,
                        mon: qi,
                        comp: i as u32,
                        coef: ci,
                    },
                    Term {
                        key: 0,
                        mon: qj,
                        comp: j as u32,
                        coef: cj,
                    },
                ];
                for (l, q, c) in steps {
                    terms.push(Term {
                        key: 0,
                        mon: q,
                        comp: l as u32,
                        coef: f.neg(c),
                    });
                }
                let syz = normalize(&order, terms);
                if syz.first().map(|t| (t.mon, t.comp)) != Some((qi, i as u32)) {
                    return Err(KernelError::Inconsistent(
                        "unexpected Schreyer lead term".into(),
                    ));
                }
                next.push(syz);
            }
        }
        prev = order;
        prev_ranks = ranks;
        prev_shifts = shifts;
        elems = next;
        level += 1;
    }
    Ok(maps)
}

fn minimize(ring: &RingRef, mats: &mut [Vec<Vec<Poly>>], shifts: &mut [Vec<i64>]) {
    let f = ring.field();
    for k in 0..mats.len() {
        loop {
            let rows = shifts[k].len();
            let cols = shifts[k + 1].len();
            let mut found = None;
            'search: for c in 0..cols {
                for r in 0..rows {
                    let e = &mats[k][r][c];
                    if !e.is_zero() && e.is_constant() {
                        found = Some((r, c));
                        break 'search;
                    }
                }
            }
            let Some((r, c)) = found else { break };
            let u_inv = f.inv(mats[k][r][c].leading_coefficient());
            let row_r: Vec<Poly> = mats[k][r].clone();
            for rr in 0..rows {
                if rr == r || mats[k][rr][c].is_zero() {
                    continue;
                }
                let factor = mats[k][rr][c].scale(u_inv);
                for cc in 0..cols {
                    if cc == c || row_r[cc].is_zero() {
                        continue;
                    }
                    let upd = mats[k][rr][cc].sub(&factor.mul(&row_r[cc]));
                    mats[k][rr][cc] = upd;
                }
            }
            mats[k].remove(r);
            for row in mats[k].iter_mut() {
                row.remove(c);
            }
            if k > 0 {
                for row in mats[k - 1].iter_mut() {
                    row.remove(r);
                }
            }
            if k + 1 < mats.len() {
                mats[k + 1].remove(c);
            }
            shifts[k].remove(r);
            shifts[k + 1].remove(c);
        }
    }
}
