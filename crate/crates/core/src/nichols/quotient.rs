use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::model::{DegreeData, GradedAlgebraModel};
use super::{SeriesBuilder, CANDIDATE_BUDGET};
use crate::braiding::Braiding;
use crate::error::{Error, Result};
use crate::freealg::{same_braiding, FreeElement, Word};
use crate::linalg::{accumulate, Eliminator, SparseMatrix, SparseVec};
use crate::scalar::CycNumber;

/// The algebra T(V)/(relations) up to degree `d`, for homogeneous relations of degree >= 1.
///
/// Degree n is spanned by b·x_l with b a basis element of degree n - 1, modulo the
/// elements a·r with r a relation and a a basis element of the complementary degree.
pub fn build_quotient(b: &Arc<Braiding>, rels: &[FreeElement], d: usize) -> Result<GradedAlgebraModel> {
    let t = b.theta();
    let m = b.modulus();
    let mut by_degree: BTreeMap<usize, Vec<&FreeElement>> = BTreeMap::new();
    for r in rels {
        if !same_braiding(r.braiding_arc(), b) {
            return Err(Error::BraidingMismatch);
        }
        if r.is_zero() {
            continue;
        }
        match r.homogeneous_degree() {
            Some(n) if n >= 1 => by_degree.entry(n).or_default().push(r),
            _ => return Err(Error::InvalidArgument("relations must be homogeneous of positive degree".into())),
        }
    }
    let mut degrees = vec![DegreeData { basis: vec![Word::empty()], right_mult: vec![], derivation: None }];
    let mut series = SeriesBuilder::default();
    series.push(1);
    for n in 1..=d {
        let pd = degrees[n - 1].basis.len();
        let count = pd * t;
        if count > CANDIDATE_BUDGET {
            return Err(Error::BudgetExceeded {
                degree: n,
                what: format!("quotient candidates in degree {n}"),
                needed: count as u64,
                limit: CANDIDATE_BUDGET as u64,
            });
        }
        let mut gens: Vec<SparseVec> = Vec::new();
        for r in by_degree.range(..=n).flat_map(|(_, rs)| rs) {
            let k = n - r.homogeneous_degree().expect("checked");
            for a in 0..degrees[k].basis.len() {
                gens.push(candidate_image(&degrees, k, a, r, t, m));
            }
        }
        let mut elim = Eliminator::new();
        for g in &gens {
            elim.insert(g);
        }
        let free: Vec<u32> = (0..count as u32).filter(|c| !elim.is_pivot(*c)).collect();
        let position: BTreeMap<u32, u32> = free.iter().enumerate().map(|(k, &c)| (c, k as u32)).collect();
        let reduced: Vec<SparseVec> = (0..count as u32)
            .into_par_iter()
            .map(|c| elim.reduce(&SparseVec::unit(c, m)).map_indices(|x| position[&x]))
            .collect();
        let dim = free.len();
        let right_mult = (0..t)
            .map(|i| SparseMatrix::from_columns(dim, (0..pd).map(|bi| reduced[bi * t + i].clone()).collect()))
            .collect();
        let basis = free.iter().map(|&c| degrees[n - 1].basis[c as usize / t].push((c as usize % t) as u8)).collect();
        degrees.push(DegreeData { basis, right_mult, derivation: None });
        if series.push(dim) {
            break;
        }
    }
    Ok(GradedAlgebraModel::new(b.clone(), degrees, series.finish()))
}

/// a·r in candidate coordinates (b, l) -> b * theta + l, with a = basis element `a` of degree k.
fn candidate_image(degrees: &[DegreeData], k: usize, a: usize, r: &FreeElement, t: usize, m: u32) -> SparseVec {
    let mut acc: BTreeMap<u32, CycNumber> = BTreeMap::new();
    for (w, c) in r.terms() {
        let (head, last) = w.0.split_at(w.len() - 1);
        let mut v = SparseVec::unit(a as u32, m);
        for (s, &l) in head.iter().enumerate() {
            v = degrees[k + s + 1].right_mult[l as usize].apply(&v);
        }
        for (bi, x) in v.iter() {
            accumulate(&mut acc, bi * t as u32 + last[0] as u32, c * x);
        }
    }
    SparseVec::from_map(acc)
}
