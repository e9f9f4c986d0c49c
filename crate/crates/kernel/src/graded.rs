//! Matrices of forms between graded free modules.
//!
//! Convention: the source is `⊕_j S(-s_j)`, the target `⊕_i S(-t_i)`, and
//! entry `(i, j)` is zero or homogeneous of degree `s_j - t_i`.

use std::collections::HashMap;

use crate::error::{KernelError, Result};
use crate::groebner::{buchberger, GbOptions};
use crate::hilbert::{monomial_numerator, series_coefficient, Numerator};
use crate::linalg::DenseMatrix;
use crate::module::{vector_from_polys, ShiftedOrder};
use crate::monomial::Monomial;
use crate::poly::{check_ring, Poly};
use crate::ring::RingRef;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    ring: RingRef,
    source_shifts: Vec<i64>,
    target_shifts: Vec<i64>,
    /// `columns[j][i]` is entry `(i, j)`.
    columns: Vec<Vec<Poly>>,
}

impl GradedMap {
    pub fn new(
        ring: &RingRef,
        target_shifts: Vec<i64>,
        source_shifts: Vec<i64>,
        columns: Vec<Vec<Poly>>,
    ) -> Result<Self> {
        if columns.len() != source_shifts.len() {
            return Err(KernelError::Invalid(
                "column count differs from source rank".into(),
            ));
        }
        for (j, col) in columns.iter().enumerate() {
            if col.len() != target_shifts.len() {
                return Err(KernelError::Invalid(
                    "row count differs from target rank".into(),
                ));
            }
            for (i, e) in col.iter().enumerate() {
                check_ring(ring, e.ring())?;
                if e.is_zero() {
                    continue;
                }
                let want = source_shifts[j] - target_shifts[i];
                match e.degree() {
                    Some(d) if d as i64 == want => {}
                    _ => {
                        return Err(KernelError::NonHomogeneous(format!(
                            "entry ({i},{j}) = {e} should have degree {want}"
                        )))
                    }
                }
            }
        }
        Ok(GradedMap {
            ring: ring.clone(),
            source_shifts,
            target_shifts,
            columns,
        })
    }

    /// Zero map.
    pub fn zero(ring: &RingRef, target_shifts: Vec<i64>, source_shifts: Vec<i64>) -> Self {
        let columns = source_shifts
            .iter()
            .map(|_| target_shifts.iter().map(|_| Poly::zero(ring)).collect())
            .collect();
        GradedMap {
            ring: ring.clone(),
            source_shifts,
            target_shifts,
            columns,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.target_shifts.len()
    }
    pub fn cols(&self) -> usize {
        self.source_shifts.len()
    }
    pub fn source_shifts(&self) -> &[i64] {
        &self.source_shifts
    }
    pub fn target_shifts(&self) -> &[i64] {
        &self.target_shifts
    }
    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.columns[j][i]
    }
    pub fn column(&self, j: usize) -> &[Poly] {
        &self.columns[j]
    }
    pub fn columns(&self) -> &[Vec<Poly>] {
        &self.columns
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|e| e.is_zero()))
    }

    /// Whether some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.columns
            .iter()
            .any(|c| c.iter().any(|e| !e.is_zero() && e.is_constant()))
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target_shifts != self.source_shifts {
            return Err(KernelError::Invalid("maps are not composable".into()));
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                (0..self.rows())
                    .map(|i| {
                        let mut acc = Poly::zero(&self.ring);
                        for (k, c) in col.iter().enumerate() {
                            if !c.is_zero() && !self.columns[k][i].is_zero() {
                                acc = acc.add(&self.columns[k][i].mul(c));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        GradedMap::new(
            &self.ring,
            self.target_shifts.clone(),
            other.source_shifts.clone(),
            columns,
        )
    }

    /// The dual map `Hom(-, S)`: shifts are negated and the matrix transposed.
    pub fn transpose(&self) -> GradedMap {
        let columns = (0..self.rows())
            .map(|i| {
                (0..self.cols())
                    .map(|j| self.columns[j][i].clone())
                    .collect()
            })
            .collect();
        GradedMap {
            ring: self.ring.clone(),
            source_shifts: self.target_shifts.iter().map(|s| -s).collect(),
            target_shifts: self.source_shifts.iter().map(|s| -s).collect(),
            columns,
        }
    }

    /// Dense matrix of the map restricted to degree `degree`, with monomial
    /// bases of the graded pieces (ordered by component, then descending
    /// monomial).
    pub fn graded_piece(&self, degree: i64) -> DenseMatrix {
        let basis = |shifts: &[i64]| -> Vec<(usize, Monomial)> {
            let mut out = Vec::new();
            for (c, s) in shifts.iter().enumerate() {
                let k = degree - s;
                if k >= 0 {
                    out.extend(
                        self.ring
                            .monomials_of_degree(k as u32)
                            .into_iter()
                            .map(|m| (c, m)),
                    );
                }
            }
            out
        };
        let src = basis(&self.source_shifts);
        let tgt = basis(&self.target_shifts);
        let index: HashMap<(usize, Monomial), usize> =
            tgt.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut m = DenseMatrix::zeros(tgt.len(), src.len());
        for (col, (j, mu)) in src.iter().enumerate() {
            for (i, e) in self.columns[*j].iter().enumerate() {
                for &(mon, c) in e.terms() {
                    let row = index[&(i, mon.mul(mu))];
                    m.set(row, col, c);
                }
            }
        }
        m
    }
}

/// Hilbert function of a graded cokernel: one monomial-ideal numerator per
/// target component, shifted by that component's twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHilbert {
    nvars: usize,
    parts: Vec<(i64, Numerator)>,
}

impl ModuleHilbert {
    /// `dim M_k`.
    pub fn value(&self, k: i64) -> i64 {
        self.parts
            .iter()
            .map(|(s, num)| series_coefficient(num, self.nvars, k - s))
            .sum()
    }
}

impl GradedMap {
    /// Hilbert function of the cokernel of this map (via a Gröbner basis of
    /// the image under a shifted term-over-position order).
    pub fn cokernel_hilbert(&self) -> Result<ModuleHilbert> {
        let order = ShiftedOrder::new(&self.ring, self.target_shifts.clone())?;
        let mut inputs = Vec::with_capacity(self.cols());
        for col in &self.columns {
            let v = vector_from_polys(&order, col)?;
            if !v.is_empty() {
                inputs.push(v);
            }
        }
        let gb = buchberger(&order, &inputs, &GbOptions::default())?;
        let mut leads: Vec<Vec<Monomial>> = vec![Vec::new(); self.rows()];
        for v in &gb.basis {
            leads[v[0].comp as usize].push(v[0].mon);
        }
        Ok(ModuleHilbert {
            nvars: self.ring.nvars(),
            parts: self
                .target_shifts
                .iter()
                .zip(leads)
                .map(|(&s, l)| (s, monomial_numerator(&l)))
                .collect(),
        })
    }
}

/// Rank of the degree-`degree` piece of a graded map, with the dimensions of
/// the source and target pieces.
pub fn graded_piece_rank(m: &GradedMap, degree: i64) -> (usize, usize, usize) {
    let mat = m.graded_piece(degree);
    (mat.rank(m.ring.field()), mat.cols, mat.rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::ring::Ring;

    #[test]
    fn multiplication_by_x() {
        let r = Ring::projective_space(PrimeField::default());
        let x = Poly::var(&r, 0);
        let m = GradedMap::new(&r, vec![0], vec![1], vec![vec![x]]).unwrap();
        assert_eq!(graded_piece_rank(&m, 1), (1, 1, 4));
        let z = GradedMap::zero(&r, vec![0], vec![1]);
        assert_eq!(graded_piece_rank(&z, 2).0, 0);
        assert!(GradedMap::new(&r, vec![0], vec![2], vec![vec![Poly::var(&r, 1)]]).is_err());
    }

    #[test]
    fn transpose_and_compose() {
        let r = Ring::projective_space(PrimeField::default());
        let (x, y) = (Poly::var(&r, 0), Poly::var(&r, 1));
        // Koszul: S(-2) -> S(-1)^2 -> S
        let d1 = GradedMap::new(
            &r,
            vec![0],
            vec![1, 1],
            vec![vec![x.clone()], vec![y.clone()]],
        )
        .unwrap();
        let d2 = GradedMap::new(&r, vec![1, 1], vec![2], vec![vec![y.clone(), x.neg()]]).unwrap();
        assert!(d1.compose(&d2).unwrap().is_zero());
        let t = d2.transpose();
        assert_eq!(t.source_shifts(), &[-1, -1]);
        assert_eq!(t.target_shifts(), &[-2]);
        assert!(d2.transpose().compose(&d1.transpose()).unwrap().is_zero());
        // coker of S(-1)^2 -> S is S/(x, y)
        let h = d1.cokernel_hilbert().unwrap();
        assert_eq!((h.value(0), h.value(1), h.value(3)), (1, 2, 4));
        // coker of the dual Koszul map S(1)^2 -> S(2) is k(2): Ext^2(S/(x,y)) twisted
        let h = d2.transpose().cokernel_hilbert().unwrap();
        assert_eq!((h.value(-2), h.value(-1), h.value(0)), (1, 2, 3));
    }
}
