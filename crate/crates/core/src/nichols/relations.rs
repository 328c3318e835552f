use std::sync::Arc;

use crate::braiding::{Braiding, Terms};
use crate::error::Result;
use crate::freealg::{symmetrizer_step, FreeElement, Word};
use crate::linalg::{block_rank, Eliminator, Insertion, SparseMatrix, SparseVec};
use crate::scalar::CycNumber;

use super::{HilbertSeries, SeriesBuilder};

/// dim 𝔅(n) as the rank of the quantum symmetrizer 𝔖ₙ, for n up to `d` or termination.
pub fn dims_by_symmetrizer(b: &Braiding, d: usize) -> Result<HilbertSeries> {
    let mut series = SeriesBuilder::default();
    let mut s = SparseMatrix::identity(1, b.modulus());
    series.push(1);
    for n in 1..=d {
        s = symmetrizer_step(b, &s, n)?;
        if series.push(block_rank(s.columns())) {
            break;
        }
    }
    Ok(series.finish())
}

/// A basis of ker 𝔖ₙ, as vectors over word ranks.
pub fn symmetrizer_kernel(s: &SparseMatrix) -> Vec<SparseVec> {
    let m = s.columns().iter().find_map(|c| c.leading().map(|(_, x)| x.modulus())).unwrap_or(1);
    let mut elim = Eliminator::tracking();
    let mut independent: Vec<u32> = Vec::new();
    let mut kernel = Vec::new();
    for (c, col) in s.columns().iter().enumerate() {
        match elim.insert(col) {
            Insertion::Independent(_) => independent.push(c as u32),
            Insertion::Dependent(combo) => {
                let v = SparseVec::unit(c as u32, m);
                let rhs = combo.map_indices(|k| independent[k as usize]);
                kernel.push(v.add_scaled(&CycNumber::from_int(m, -1), &rhs));
            }
        }
    }
    kernel
}

/// New defining relations of 𝔅(V) in each degree 2..=d: a complement of
/// V·I(n-1) + I(n-1)·V inside I(n) = ker 𝔖ₙ.
pub fn relations(b: &Arc<Braiding>, d: usize) -> Result<Vec<(usize, Vec<FreeElement>)>> {
    let t = b.theta();
    let m = b.modulus();
    let mut s = SparseMatrix::identity(1, m);
    let mut prev_kernel: Vec<SparseVec> = Vec::new();
    let mut out = Vec::new();
    for n in 1..=d {
        s = symmetrizer_step(b, &s, n)?;
        let kernel = symmetrizer_kernel(&s);
        let mut closure = Eliminator::new();
        let tn1 = t.pow(n as u32 - 1) as u32;
        for k in &prev_kernel {
            for i in 0..t as u32 {
                closure.insert(&k.map_indices(|r| i * tn1 + r));
                closure.insert(&k.map_indices(|r| r * t as u32 + i));
            }
        }
        let mut new = Vec::new();
        for k in &kernel {
            if let Insertion::Independent(_) = closure.insert(k) {
                new.push(vector_to_element(b, k, n));
            }
        }
        if n >= 2 {
            out.push((n, new));
        }
        prev_kernel = kernel;
    }
    Ok(out)
}

fn vector_to_element(b: &Arc<Braiding>, v: &SparseVec, n: usize) -> FreeElement {
    let t = b.theta();
    let terms: Terms = v.iter().map(|(r, c)| (Word::unrank(*r as usize, n, t), c.clone())).collect();
    FreeElement::from_terms(b.clone(), terms)
}
