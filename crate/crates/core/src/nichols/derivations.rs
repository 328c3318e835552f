use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::model::{DegreeData, GradedAlgebraModel};
use super::{SeriesBuilder, CANDIDATE_BUDGET};
use crate::braiding::Braiding;
use crate::error::{Error, Result};
use crate::freealg::Word;
use crate::linalg::{accumulate, Eliminator, Insertion, SparseMatrix, SparseVec};
use crate::scalar::CycNumber;

/// Builds the Nichols algebra up to degree `d` (or until it terminates) with the
/// skew-derivations D_j(b x_i) = δ_ij b + D_j(b) σ_j(x_i): a candidate b·x_i is zero
/// exactly when every D_j kills it.
pub fn build_nichols_by_derivations(b: &Arc<Braiding>, d: usize) -> Result<GradedAlgebraModel> {
    let sigma = b.skew_automorphisms().ok_or_else(|| {
        Error::Unsupported(format!("the derivation engine needs diagonal or group type, got {}", b.kind_name()))
    })?;
    let t = b.theta();
    let m = b.modulus();
    let mut degrees = vec![DegreeData { basis: vec![Word::empty()], right_mult: vec![], derivation: Some(vec![]) }];
    let mut series = SeriesBuilder::default();
    series.push(1);
    for n in 1..=d {
        let prev = &degrees[n - 1];
        let pd = prev.basis.len();
        let count = pd * t;
        if count > CANDIDATE_BUDGET {
            return Err(Error::BudgetExceeded {
                degree: n,
                what: format!("derivation candidates in degree {n}"),
                needed: count as u64,
                limit: CANDIDATE_BUDGET as u64,
            });
        }
        let prev_derivs = prev.derivation.as_ref().expect("derivation engine records D_i");
        let phis: Vec<SparseVec> = (0..count)
            .into_par_iter()
            .map(|c| {
                let (bi, i) = (c / t, c % t);
                let mut acc: BTreeMap<u32, CycNumber> = BTreeMap::new();
                for (j, sigma_j) in sigma.iter().enumerate() {
                    let off = (j * pd) as u32;
                    if i == j {
                        accumulate(&mut acc, off + bi as u32, CycNumber::one(m));
                    }
                    if n >= 2 {
                        let (k, coef) = &sigma_j[i];
                        let db = prev_derivs[j].column(bi);
                        for (r, x) in prev.right_mult[*k as usize].apply(db).iter() {
                            accumulate(&mut acc, off + r, coef * x);
                        }
                    }
                }
                SparseVec::from_map(acc)
            })
            .collect();
        let mut elim = Eliminator::tracking();
        let mut chosen = Vec::new();
        let mut coords = Vec::with_capacity(count);
        for (c, v) in phis.iter().enumerate() {
            match elim.insert(v) {
                Insertion::Independent(k) => {
                    chosen.push(c);
                    coords.push(SparseVec::unit(k as u32, m));
                }
                Insertion::Dependent(combo) => coords.push(combo),
            }
        }
        let dim = chosen.len();
        let right_mult = (0..t)
            .map(|i| SparseMatrix::from_columns(dim, (0..pd).map(|bi| coords[bi * t + i].clone()).collect()))
            .collect();
        let derivation = (0..t)
            .map(|j| {
                let lo = (j * pd) as u32;
                let hi = lo + pd as u32;
                let cols = chosen
                    .iter()
                    .map(|&c| {
                        SparseVec::from_entries(
                            phis[c].iter().filter(|(r, _)| (lo..hi).contains(r)).map(|(r, x)| (r - lo, x.clone())),
                        )
                    })
                    .collect();
                SparseMatrix::from_columns(pd, cols)
            })
            .collect();
        let basis = chosen.iter().map(|&c| prev.basis[c / t].push((c % t) as u8)).collect();
        degrees.push(DegreeData { basis, right_mult, derivation: Some(derivation) });
        if series.push(dim) {
            break;
        }
    }
    Ok(GradedAlgebraModel::new(b.clone(), degrees, series.finish()))
}
