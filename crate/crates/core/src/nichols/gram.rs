use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;

use super::{HilbertSeries, SeriesBuilder, CANDIDATE_BUDGET};
use crate::braiding::DiagonalBraiding;
use crate::error::{Error, Result};
use crate::freealg::{FreeElement, Word};
use crate::linalg::{Eliminator, Insertion, SparseVec};
use crate::scalar::CycNumber;

/// The form on T(V) with (x_i | x_j) = δ_ij B_i and (x | y y') = (x_(1) | y)(x_(2) | y'),
/// for a symmetric diagonal braiding. Pairings of words are memoized.
#[derive(Debug)]
pub struct BilinearForm {
    q: Vec<Vec<CycNumber>>,
    weights: Vec<CycNumber>,
    modulus: u32,
    memo: Mutex<HashMap<(Word, Word), CycNumber>>,
}

impl BilinearForm {
    pub fn new(d: &DiagonalBraiding, weights: &[CycNumber]) -> Result<Self> {
        if !d.is_symmetric() {
            return Err(Error::InvalidArgument("the bilinear form needs q_ij = q_ji; symmetrize first".into()));
        }
        if weights.len() != d.theta() {
            return Err(Error::InvalidArgument(format!("expected {} weights", d.theta())));
        }
        if weights.iter().any(CycNumber::is_zero) {
            return Err(Error::InvalidArgument("weights must be nonzero".into()));
        }
        let modulus = weights.iter().map(CycNumber::modulus).fold(d.modulus(), num_integer::lcm);
        let t = d.theta();
        let q = (0..t)
            .map(|i| (0..t).map(|j| d.q(i, j).embed(modulus)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let weights = weights.iter().map(|w| w.embed(modulus)).collect::<Result<Vec<_>>>()?;
        Ok(BilinearForm { q, weights, modulus, memo: Mutex::new(HashMap::new()) })
    }

    /// The form with all weights 1.
    pub fn unit_weights(d: &DiagonalBraiding) -> Result<Self> {
        Self::new(d, &vec![CycNumber::one(d.modulus()); d.theta()])
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// (u | v) for words.
    pub fn pair_words(&self, u: &Word, v: &Word) -> CycNumber {
        let t = self.q.len();
        if u.len() != v.len() || u.multidegree(t) != v.multidegree(t) {
            return CycNumber::zero(self.modulus);
        }
        if u.is_empty() {
            return CycNumber::one(self.modulus);
        }
        let key = (u.clone(), v.clone());
        if let Some(x) = self.memo.lock().expect("memo lock").get(&key) {
            return x.clone();
        }
        // (u | v' x_j): the (n-1, 1) part of Δ(u) moves one letter x_j of u to the end
        let (head, j) = (Word::from(&v.0[..v.len() - 1]), *v.0.last().expect("nonempty") as usize);
        let mut total = CycNumber::zero(self.modulus);
        for k in (0..u.len()).filter(|&k| u.0[k] as usize == j) {
            let mut c = self.weights[j].clone();
            for &l in &u.0[k + 1..] {
                c = &c * &self.q[j][l as usize];
            }
            let mut rest = u.0.clone();
            rest.remove(k);
            total = &total + &(&c * &self.pair_words(&Word(rest), &head));
        }
        self.memo.lock().expect("memo lock").insert(key, total.clone());
        total
    }

    pub fn pair(&self, x: &FreeElement, y: &FreeElement) -> Result<CycNumber> {
        let mut total = CycNumber::zero(self.modulus);
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                let p = self.pair_words(u, v);
                if !p.is_zero() {
                    total = total.checked_add(&a.checked_mul(&b.checked_mul(&p)?)?)?;
                }
            }
        }
        Ok(total)
    }
}

/// (x | y) for the form with the given weights; `x` and `y` must live over a symmetric diagonal braiding.
pub fn bilinear_form(x: &FreeElement, y: &FreeElement, weights: &[CycNumber]) -> Result<CycNumber> {
    let d = x
        .braiding()
        .as_diagonal()
        .ok_or_else(|| Error::Unsupported("the bilinear form is defined for diagonal braidings".into()))?;
    if x.braiding() != y.braiding() {
        return Err(Error::BraidingMismatch);
    }
    BilinearForm::new(d, weights)?.pair(x, y)
}

/// dim 𝔅(n) as the rank of the Gram matrix on the candidates b·x_i, with b running over
/// a basis of the previous degree.
pub fn dims_by_gram(d: &DiagonalBraiding, max_degree: usize, weights: &[CycNumber]) -> Result<HilbertSeries> {
    let form = BilinearForm::new(d, weights)?;
    let t = d.theta();
    let mut basis = vec![Word::empty()];
    let mut series = SeriesBuilder::default();
    series.push(1);
    for n in 1..=max_degree {
        let cands: Vec<Word> = basis.iter().flat_map(|b| (0..t as u8).map(move |i| b.push(i))).collect();
        if cands.len() > CANDIDATE_BUDGET {
            return Err(Error::BudgetExceeded {
                degree: n,
                what: format!("Gram candidates in degree {n}"),
                needed: cands.len() as u64,
                limit: CANDIDATE_BUDGET as u64,
            });
        }
        let rows: Vec<SparseVec> = cands
            .par_iter()
            .map(|u| {
                SparseVec::from_entries(
                    cands.iter().enumerate().map(|(k, v)| (k as u32, form.pair_words(u, v))).filter(|(_, x)| !x.is_zero()),
                )
            })
            .collect();
        let mut elim = Eliminator::new();
        let mut next = Vec::new();
        for (k, r) in rows.iter().enumerate() {
            if let Insertion::Independent(_) = elim.insert(r) {
                next.push(cands[k].clone());
            }
        }
        basis = next;
        if series.push(basis.len()) {
            break;
        }
    }
    Ok(series.finish())
}
