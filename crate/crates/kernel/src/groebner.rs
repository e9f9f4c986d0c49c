//! Buchberger's algorithm for homogeneous submodules of graded free modules.
//!
//! Pairs and input generators are processed degree by degree. Pairs are
//! pruned with the Gebauer-Möller criteria, plus the product criterion for
//! rank-one orders. The output is the reduced, monic basis sorted by
//! ascending leading term.

use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::hash::{BuildHasherDefault, Hasher};

use crate::error::{KernelError, Result};
use crate::field::PrimeField;
use crate::module::{make_monic, vector_degree, Term, TermOrder, Vector};
use crate::monomial::Monomial;

/// Multiplicative hasher for the u128 term keys.
#[derive(Default)]
pub(crate) struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(5) ^ b as u64).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
        }
    }
    fn write_u128(&mut self, v: u128) {
        let folded = (v as u64) ^ ((v >> 64) as u64).rotate_left(29);
        self.0 = (self.0 ^ folded).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        self.0 ^= self.0 >> 31;
    }
}

pub(crate) type KeyMap<V> = HashMap<u128, V, BuildHasherDefault<KeyHasher>>;

/// Sparse accumulator: a max-heap of keys over a key -> term map.
pub(crate) struct Accumulator {
    heap: BinaryHeap<u128>,
    map: KeyMap<Term>,
    field: PrimeField,
}

impl Accumulator {
    pub(crate) fn new(field: PrimeField) -> Self {
        Accumulator {
            heap: BinaryHeap::new(),
            map: KeyMap::default(),
            field,
        }
    }

    pub(crate) fn from_vector(field: PrimeField, v: &[Term]) -> Self {
        let mut a = Self::new(field);
        for t in v {
            a.heap.push(t.key);
            a.map.insert(t.key, *t);
        }
        a
    }

    /// Add `c * m * v[skip..]`.
    pub(crate) fn add_multiple<O: TermOrder + ?Sized>(
        &mut self,
        order: &O,
        v: &[Term],
        skip: usize,
        m: &Monomial,
        c: u32,
    ) {
        let f = self.field;
        for t in &v[skip..] {
            let mon = t.mon.mul(m);
            let key = order.key(&mon, t.comp);
            let coef = f.mul(t.coef, c);
            match self.map.get_mut(&key) {
                Some(e) => e.coef = f.add(e.coef, coef),
                None => {
                    self.map.insert(
                        key,
                        Term {
                            key,
                            mon,
                            comp: t.comp,
                            coef,
                        },
                    );
                    self.heap.push(key);
                }
            }
        }
    }

    /// Remove and return the largest term with nonzero coefficient.
    pub(crate) fn pop(&mut self) -> Option<Term> {
        while let Some(k) = self.heap.pop() {
            if let Some(t) = self.map.remove(&k) {
                if t.coef != 0 {
                    return Some(t);
                }
            }
        }
        None
    }

    pub(crate) fn drain_sorted(mut self) -> Vector {
        let mut out = Vec::new();
        while let Some(t) = self.pop() {
            out.push(t);
        }
        out
    }
}

/// Leading data of a basis element.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Lead {
    pub mon: Monomial,
    pub comp: u32,
    pub mask: u8,
}

impl Lead {
    pub(crate) fn of(t: &Term) -> Self {
        Lead {
            mon: t.mon,
            comp: t.comp,
            mask: t.mon.support_mask(),
        }
    }
}

/// A growing list of monic basis elements with a divisor search.
pub(crate) struct BasisSet {
    pub elems: Vec<Vector>,
    pub leads: Vec<Lead>,
    pub active: Vec<bool>,
}

impl BasisSet {
    pub(crate) fn new() -> Self {
        BasisSet {
            elems: Vec::new(),
            leads: Vec::new(),
            active: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, v: Vector) -> usize {
        self.leads.push(Lead::of(&v[0]));
        self.elems.push(v);
        self.active.push(true);
        self.elems.len() - 1
    }

    #[inline]
    pub(crate) fn find_divisor(
        &self,
        mon: &Monomial,
        comp: u32,
        skip: Option<usize>,
    ) -> Option<usize> {
        let mask = mon.support_mask();
        for (i, l) in self.leads.iter().enumerate() {
            if !self.active[i] || Some(i) == skip || l.comp != comp || l.mask & !mask != 0 {
                continue;
            }
            if l.mon.divides(mon) {
                return Some(i);
            }
        }
        None
    }

    /// Reduce the contents of `acc`; with `full` the tail is reduced as
    /// well, otherwise reduction stops at the first irreducible term.
    pub(crate) fn reduce<O: TermOrder + ?Sized>(
        &self,
        order: &O,
        mut acc: Accumulator,
        full: bool,
        skip: Option<usize>,
    ) -> Vector {
        let f = order.ring().field();
        let mut out = Vec::new();
        while let Some(t) = acc.pop() {
            match self.find_divisor(&t.mon, t.comp, skip) {
                Some(i) => {
                    let q = self.leads[i].mon.quotient_of(&t.mon);
                    acc.add_multiple(order, &self.elems[i], 1, &q, f.neg(t.coef));
                }
                None => {
                    out.push(t);
                    if !full {
                        out.extend(acc.drain_sorted());
                        break;
                    }
                }
            }
        }
        out
    }
}

/// Knobs for [`buchberger`].
#[derive(Clone, Debug, Default)]
pub struct GbOptions {
    /// Stop after this degree; the result is then a truncated basis.
    pub degree_cap: Option<i64>,
}

/// Result of [`buchberger`].
#[derive(Clone, Debug)]
pub struct GbOutput {
    /// Reduced monic basis, sorted by ascending leading term.
    pub basis: Vec<Vector>,
    /// For each input, whether it was needed as a generator when processed
    /// in its degree (i.e. it is part of a minimal generating set).
    pub minimal_inputs: Vec<bool>,
    /// Whether work above the degree cap was skipped.
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
}

/// Gröbner basis of the submodule generated by homogeneous `inputs`.
pub fn buchberger<O: TermOrder + ?Sized>(
    order: &O,
    inputs: &[Vector],
    opts: &GbOptions,
) -> Result<GbOutput> {
    let field = order.ring().field();
    let mut input_queue: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (idx, v) in inputs.iter().enumerate() {
        if let Some(d) = vector_degree(order, v)? {
            input_queue.entry(d).or_default().push(idx);
        }
    }
    let mut minimal_inputs = vec![false; inputs.len()];
    let mut basis = BasisSet::new();
    let mut pairs: BTreeMap<i64, Vec<Pair>> = BTreeMap::new();
    let mut truncated = false;

    loop {
        let next_pair = pairs.keys().next().copied();
        let next_input = input_queue.keys().next().copied();
        let deg = match (next_pair, next_input) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if let Some(cap) = opts.degree_cap {
            if deg > cap {
                truncated = true;
                break;
            }
        }
        let batch = pairs.remove(&deg).unwrap_or_default();
        for p in batch {
            let (gi, gj) = (&basis.elems[p.i], &basis.elems[p.j]);
            let ui = basis.leads[p.i].mon.quotient_of(&p.lcm);
            let uj = basis.leads[p.j].mon.quotient_of(&p.lcm);
            let mut acc = Accumulator::new(field);
            acc.add_multiple(order, gi, 1, &ui, 1);
            acc.add_multiple(order, gj, 1, &uj, field.neg(1));
            let r = basis.reduce(order, acc, true, None);
            if !r.is_empty() {
                insert(order, &mut basis, &mut pairs, r);
            }
        }
        for idx in input_queue.remove(&deg).unwrap_or_default() {
            let acc = Accumulator::from_vector(field, &inputs[idx]);
            let r = basis.reduce(order, acc, true, None);
            if !r.is_empty() {
                minimal_inputs[idx] = true;
                insert(order, &mut basis, &mut pairs, r);
            }
        }
    }

    Ok(GbOutput {
        basis: interreduce(order, basis),
        minimal_inputs,
        truncated,
    })
}

fn insert<O: TermOrder + ?Sized>(
    order: &O,
    basis: &mut BasisSet,
    pairs: &mut BTreeMap<i64, Vec<Pair>>,
    mut h: Vector,
) {
    make_monic(order.ring().field(), &mut h);
    let lh = Lead::of(&h[0]);
    let n = basis.elems.len();

    // Chain criterion on pending pairs.
    for list in pairs.values_mut() {
        list.retain(|p| {
            if p.comp != lh.comp || !lh.mon.divides(&p.lcm) {
                return true;
            }
            let li = basis.leads[p.i].mon.lcm(&lh.mon);
            let lj = basis.leads[p.j].mon.lcm(&lh.mon);
            li == p.lcm || lj == p.lcm
        });
    }
    pairs.retain(|_, l| !l.is_empty());

    // Candidate new pairs.
    let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
    for i in 0..n {
        if !basis.active[i] || basis.leads[i].comp != lh.comp {
            continue;
        }
        let li = basis.leads[i].mon;
        let coprime = order.rank_one() && li.is_coprime(&lh.mon);
        cands.push((i, li.lcm(&lh.mon), coprime));
    }
    // Drop candidates whose lcm is a proper multiple of another's.
    let mut keep = vec![true; cands.len()];
    for a in 0..cands.len() {
        for b in 0..cands.len() {
            if a != b && cands[b].1 != cands[a].1 && cands[b].1.divides(&cands[a].1) {
                keep[a] = false;
                break;
            }
        }
    }
    // Among equal lcms keep one, dropping the whole group if any member is coprime.
    let mut groups: HashMap<Monomial, (usize, bool)> = HashMap::new();
    for (a, c) in cands.iter().enumerate() {
        if !keep[a] {
            continue;
        }
        let e = groups.entry(c.1).or_insert((a, false));
        e.1 |= c.2;
    }
    let mut chosen: Vec<(usize, Monomial)> = groups
        .into_iter()
        .filter(|(_, (_, cop))| !cop)
        .map(|(lcm, (a, _))| (cands[a].0, lcm))
        .collect();
    chosen.sort_by_key(|c| c.0);
    for (i, lcm) in chosen {
        let d = order.degree(&lcm, lh.comp);
        pairs.entry(d).or_default().push(Pair {
            i,
            j: n,
            lcm,
            comp: lh.comp,
        });
    }

    // Elements whose lead the new one divides are redundant from now on.
    for i in 0..n {
        if basis.active[i] && basis.leads[i].comp == lh.comp && lh.mon.divides(&basis.leads[i].mon)
        {
            basis.active[i] = false;
        }
    }
    basis.push(h);
}

fn interreduce<O: TermOrder + ?Sized>(order: &O, mut basis: BasisSet) -> Vec<Vector> {
    let field = order.ring().field();
    let n = basis.elems.len();
    for i in 0..n {
        if !basis.active[i] {
            continue;
        }
        for j in 0..n {
            if i != j
                && basis.active[j]
                && basis.leads[j].comp == basis.leads[i].comp
                && basis.leads[j].mon.divides(&basis.leads[i].mon)
            {
                basis.active[i] = false;
                break;
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        if !basis.active[i] {
            continue;
        }
        let v = &basis.elems[i];
        let acc = Accumulator::from_vector(field, &v[1..]);
        let tail = basis.reduce(order, acc, true, Some(i));
        let mut r = Vec::with_capacity(tail.len() + 1);
        r.push(v[0]);
        r.extend(tail);
        out.push(r);
    }
    out.sort_by(|a, b| a[0].key.cmp(&b[0].key));
    out
}

/// Normal form of `v` with respect to a basis (full reduction).
pub fn normal_form_vector<O: TermOrder + ?Sized>(
    order: &O,
    v: &[Term],
    basis: &[Vector],
) -> Vector {
    let mut set = BasisSet::new();
    for b in basis {
        if !b.is_empty() {
            let mut b = b.clone();
            make_monic(order.ring().field(), &mut b);
            set.push(b);
        }
    }
    let acc = Accumulator::from_vector(order.ring().field(), v);
    set.reduce(order, acc, true, None)
}

/// Top-reduce `v` to zero against a basis, recording each step as
/// `(basis index, multiplier, coefficient)` with
/// `v = Σ coefficient * multiplier * basis[index]`. Fails if a nonzero
/// irreducible term remains.
pub(crate) fn reduce_to_zero_tracking<O: TermOrder + ?Sized>(
    order: &O,
    v: &[Term],
    basis: &[Vector],
    leads: &[Lead],
) -> Result<Vec<(usize, Monomial, u32)>> {
    let field = order.ring().field();
    let mut acc = Accumulator::from_vector(field, v);
    let mut steps = Vec::new();
    while let Some(t) = acc.pop() {
        let mask = t.mon.support_mask();
        let found = leads
            .iter()
            .enumerate()
            .find(|(_, l)| l.comp == t.comp && l.mask & !mask == 0 && l.mon.divides(&t.mon));
        let Some((i, l)) = found else {
            return Err(KernelError::Inconsistent(
                "syzygy candidate does not reduce to zero".into(),
            ));
        };
        let g = &basis[i];
        let q = l.mon.quotient_of(&t.mon);
        let c = field.div(t.coef, g[0].coef);
        steps.push((i, q, c));
        acc.add_multiple(order, g, 1, &q, field.neg(c));
    }
    Ok(steps)
}
