//! Sparse vectors over Q(zeta_M) and an incremental row-echelon eliminator.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::scalar::CycNumber;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(u32, CycNumber)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: u32, modulus: u32) -> Self {
        SparseVec { entries: vec![(index, CycNumber::one(modulus))] }
    }

    /// Builds from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries(entries: impl IntoIterator<Item = (u32, CycNumber)>) -> Self {
        let mut map: BTreeMap<u32, CycNumber> = BTreeMap::new();
        for (i, c) in entries {
            accumulate(&mut map, i, c);
        }
        Self::from_map(map)
    }

    pub fn from_map(map: BTreeMap<u32, CycNumber>) -> Self {
        SparseVec { entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(u32, CycNumber)> {
        self.entries.iter()
    }

    pub fn get(&self, index: u32) -> Option<&CycNumber> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn leading(&self) -> Option<&(u32, CycNumber)> {
        self.entries.first()
    }

    pub fn scale(&self, c: &CycNumber) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &CycNumber, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, xa)), Some((ib, xb))) => {
                    if ia < ib {
                        out.push((*ia, xa.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, xb * c));
                        b.next();
                    } else {
                        let s = xa + &(xb * c);
                        if !s.is_zero() {
                            out.push((*ia, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ia, xa)), None) => {
                    out.push((*ia, xa.clone()));
                    a.next();
                }
                (None, Some((ib, xb))) => {
                    out.push((*ib, xb * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, x)) => self.add_scaled(&CycNumber::one(x.modulus()), other),
        }
    }

    /// Re-indexes entries; `f` may merge indices.
    pub fn map_indices(&self, f: impl Fn(u32) -> u32) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(i, x)| (f(*i), x.clone())))
    }

    pub fn into_entries(self) -> Vec<(u32, CycNumber)> {
        self.entries
    }
}

pub(crate) fn accumulate(map: &mut BTreeMap<u32, CycNumber>, index: u32, c: CycNumber) {
    if c.is_zero() {
        return;
    }
    match map.entry(index) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Outcome of inserting a vector into an [`Eliminator`].
#[derive(Clone, Debug)]
pub enum Insertion {
    /// The vector extended the span; it is independent input number `index`.
    Independent(usize),
    /// The vector equals this combination of earlier independent inputs.
    Dependent(SparseVec),
}

/// Incremental Gaussian elimination. Each stored row has leading entry 1; a
/// vector is reduced by clearing, in increasing column order, every entry whose
/// column carries a pivot.
#[derive(Clone, Debug, Default)]
pub struct Eliminator {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<u32, usize>,
    pivot_cols: Vec<u32>,
    combos: Option<Vec<SparseVec>>,
}

impl Eliminator {
    pub fn new() -> Self {
        Eliminator { rows: Vec::new(), pivot_row: HashMap::new(), pivot_cols: Vec::new(), combos: None }
    }

    /// Also records each row as a combination of the independent inputs, so
    /// dependent insertions report their coordinates.
    pub fn tracking() -> Self {
        Eliminator { combos: Some(Vec::new()), ..Self::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Pivot columns in insertion order.
    pub fn pivot_columns(&self) -> &[u32] {
        &self.pivot_cols
    }

    fn reduce_inner(&self, v: &SparseVec, track: bool) -> (BTreeMap<u32, CycNumber>, BTreeMap<u32, CycNumber>) {
        let mut work: BTreeMap<u32, CycNumber> = v.iter().cloned().collect();
        let mut combo: BTreeMap<u32, CycNumber> = BTreeMap::new();
        let mut cursor = 0u32;
        loop {
            let (col, coef) = match work.range(cursor..).next() {
                Some((c, x)) => (*c, x.clone()),
                None => break,
            };
            if let Some(&r) = self.pivot_row.get(&col) {
                work.remove(&col);
                for (c, x) in self.rows[r].iter().skip(1) {
                    accumulate(&mut work, *c, -(&coef * x));
                }
                if track {
                    if let Some(combos) = &self.combos {
                        for (k, x) in combos[r].iter() {
                            accumulate(&mut combo, *k, &coef * x);
                        }
                    }
                }
            }
            match col.checked_add(1) {
                Some(next) => cursor = next,
                None => break,
            }
        }
        (work, combo)
    }

    /// Remainder of `v` after clearing all pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_map(self.reduce_inner(v, false).0)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_inner(v, false).0.is_empty()
    }

    pub fn insert(&mut self, v: &SparseVec) -> Insertion {
        let track = self.combos.is_some();
        let (rem, combo) = self.reduce_inner(v, track);
        if rem.is_empty() {
            return Insertion::Dependent(SparseVec::from_map(combo));
        }
        let index = self.rows.len();
        let (&lead_col, lead) = rem.iter().next().expect("nonempty remainder");
        let inv = lead.inv().expect("leading entry is nonzero");
        let row = SparseVec::from_map(rem.into_iter().map(|(c, x)| (c, &x * &inv)).collect());
        if let Some(combos) = &mut self.combos {
            let mut own: BTreeMap<u32, CycNumber> = combo.into_iter().map(|(k, x)| (k, -(&x * &inv))).collect();
            accumulate(&mut own, index as u32, inv.clone());
            combos.push(SparseVec::from_map(own));
        }
        self.pivot_row.insert(lead_col, index);
        self.pivot_cols.push(lead_col);
        self.rows.push(row);
        Insertion::Independent(index)
    }
}

/// Rank of a set of vectors.
pub fn rank<'a>(vectors: impl IntoIterator<Item = &'a SparseVec>) -> usize {
    let mut e = Eliminator::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Rank of a set of vectors, computed separately on each group of vectors
/// linked by shared indices.
pub fn block_rank(vectors: &[SparseVec]) -> usize {
    let mut parent: HashMap<u32, u32> = HashMap::new();
    fn find(parent: &mut HashMap<u32, u32>, x: u32) -> u32 {
        let p = *parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let root = find(parent, p);
        parent.insert(x, root);
        root
    }
    for v in vectors {
        let mut it = v.iter().map(|(i, _)| *i);
        if let Some(first) = it.next() {
            let r0 = find(&mut parent, first);
            for i in it {
                let r = find(&mut parent, i);
                if r != r0 {
                    parent.insert(r, r0);
                }
            }
        }
    }
    let mut blocks: HashMap<u32, Vec<&SparseVec>> = HashMap::new();
    for v in vectors {
        if let Some((first, _)) = v.leading() {
            let root = find(&mut parent, *first);
            blocks.entry(root).or_default().push(v);
        }
    }
    let blocks: Vec<Vec<&SparseVec>> = blocks.into_values().collect();
    blocks.par_iter().map(|b| rank(b.iter().copied())).sum()
}

/// A matrix stored by sparse columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        SparseMatrix { nrows, cols }
    }

    pub fn identity(n: usize, modulus: u32) -> Self {
        SparseMatrix { nrows: n, cols: (0..n).map(|i| SparseVec::unit(i as u32, modulus)).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&CycNumber> {
        self.cols[c].get(r as u32)
    }

    /// Image of a vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<u32, CycNumber> = BTreeMap::new();
        for (k, x) in v.iter() {
            for (r, y) in self.cols[*k as usize].iter() {
                accumulate(&mut acc, *r, x * y);
            }
        }
        SparseVec::from_map(acc)
    }

    /// The product self * other.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix { nrows: self.nrows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn rank(&self) -> usize {
        rank(self.cols.iter())
    }
}
