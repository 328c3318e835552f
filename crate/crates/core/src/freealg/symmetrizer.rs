use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::word::Word;
use crate::braiding::{Braiding, Terms};
use crate::error::{Error, Result};
use crate::linalg::{accumulate, SparseMatrix, SparseVec};
use crate::scalar::CycNumber;

/// Largest number of basis words θⁿ a symmetrizer matrix may have.
pub const SYMMETRIZER_BUDGET: u64 = 200_000;

/// Word-times-permutation work allowed for the sum over all of 𝕊ₙ.
const BRUTE_WORK_BUDGET: u64 = 50_000_000;

/// A permutation in one-line notation with zero-based values: `0[i]` is the image of i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Smallest zero-based i with s_i * self shorter than self.
    fn first_left_descent(&self) -> Option<usize> {
        let mut pos = vec![0usize; self.0.len()];
        for (k, &v) in self.0.iter().enumerate() {
            pos[v as usize] = k;
        }
        (0..self.0.len().saturating_sub(1)).find(|&i| pos[i + 1] < pos[i])
    }

    /// s_i * self: swaps the values i and i+1.
    fn left_mul_simple(&self, i: usize) -> Self {
        Permutation(
            self.0
                .iter()
                .map(|&v| match v as usize {
                    x if x == i => (i + 1) as u8,
                    x if x == i + 1 => i as u8,
                    _ => v,
                })
                .collect(),
        )
    }
}

/// Number of inversions.
pub fn permutation_length(p: &Permutation) -> usize {
    let v = &p.0;
    (0..v.len()).map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count()).sum()
}

/// All permutations of n letters in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if cur.len() == n {
            out.push(Permutation(cur.clone()));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// The lexicographically smallest reduced word of `p`, as one-based generator indices.
pub fn matsumoto_section(p: &Permutation) -> Vec<usize> {
    let mut word = Vec::new();
    let mut cur = p.clone();
    while let Some(i) = cur.first_left_descent() {
        word.push(i + 1);
        cur = cur.left_mul_simple(i);
    }
    word
}

fn check_budget(theta: usize, n: usize) -> Result<usize> {
    let size = (theta as u64).checked_pow(n as u32).filter(|&s| s <= SYMMETRIZER_BUDGET);
    size.map(|s| s as usize).ok_or(Error::BudgetExceeded {
        degree: n,
        what: format!("symmetrizer on V^{n} with theta = {theta}"),
        needed: (theta as u64).saturating_pow(n as u32),
        limit: SYMMETRIZER_BUDGET,
    })
}

fn terms_to_column(terms: Terms, theta: usize) -> SparseVec {
    SparseVec::from_entries(terms.into_iter().map(|(w, c)| (w.rank(theta) as u32, c)))
}

/// The matrix of rho(sigma_{i1} ... sigma_{ik}) on V^{⊗n}, indices one-based.
pub fn word_operator(b: &Braiding, braid_word: &[usize], n: usize) -> Result<SparseMatrix> {
    let t = b.theta();
    let size = check_budget(t, n)?;
    if braid_word.iter().any(|&i| i == 0 || i >= n) {
        return Err(Error::IndexOutOfRange(format!("braid generator outside 1..{}", n.saturating_sub(1))));
    }
    let cols = (0..size)
        .into_par_iter()
        .map(|r| {
            let mut terms = Terms::new();
            terms.insert(Word::unrank(r, n, t), CycNumber::one(b.modulus()));
            for &i in braid_word.iter().rev() {
                terms = b.apply_at(&terms, i - 1);
            }
            terms_to_column(terms, t)
        })
        .collect();
    Ok(SparseMatrix::from_columns(size, cols))
}

/// 𝔖ₙ = Σ_σ rho(s(σ)), summed over all of 𝕊ₙ through the Matsumoto section.
pub fn quantum_symmetrizer(b: &Braiding, n: usize) -> Result<SparseMatrix> {
    let t = b.theta();
    let size = check_budget(t, n)?;
    let perms = {
        let mut p = all_permutations(n);
        p.sort_by_key(permutation_length);
        p
    };
    let work = (perms.len() as u64).saturating_mul(size as u64);
    if work > BRUTE_WORK_BUDGET {
        return Err(Error::BudgetExceeded {
            degree: n,
            what: format!("sum over all permutations of {n} letters"),
            needed: work,
            limit: BRUTE_WORK_BUDGET,
        });
    }
    let cols = (0..size)
        .into_par_iter()
        .map(|r| {
            let mut start = Terms::new();
            start.insert(Word::unrank(r, n, t), CycNumber::one(b.modulus()));
            // s(σ) = σ_i s(s_i σ) for the first letter i of the canonical word
            let mut images: HashMap<&Permutation, Terms> = HashMap::with_capacity(perms.len());
            let mut total: BTreeMap<u32, CycNumber> = BTreeMap::new();
            for p in &perms {
                let img = match p.first_left_descent() {
                    None => start.clone(),
                    Some(i) => b.apply_at(&images[&p.left_mul_simple(i)], i),
                };
                for (w, c) in &img {
                    accumulate(&mut total, w.rank(t) as u32, c.clone());
                }
                images.insert(p, img);
            }
            SparseVec::from_map(total)
        })
        .collect();
    Ok(SparseMatrix::from_columns(size, cols))
}

/// The (i, j)-shuffle element 𝔖_{i,j}: the sum of the positive lifts of the
/// permutations that send some i letters to the front while keeping relative order.
pub fn quantum_shuffle(b: &Braiding, i: usize, j: usize) -> Result<SparseMatrix> {
    let t = b.theta();
    let n = i + j;
    let size = check_budget(t, n)?;
    let subsets = subsets_of_size(n, i);
    let cols = (0..size)
        .into_par_iter()
        .map(|r| {
            let w = Word::unrank(r, n, t);
            let mut total: BTreeMap<u32, CycNumber> = BTreeMap::new();
            for s in &subsets {
                let mut terms = Terms::new();
                terms.insert(w.clone(), CycNumber::one(b.modulus()));
                for (k, &pos) in s.iter().enumerate() {
                    for p in (k..pos).rev() {
                        terms = b.apply_at(&terms, p);
                    }
                }
                for (u, c) in terms {
                    accumulate(&mut total, u.rank(t) as u32, c);
                }
            }
            SparseVec::from_map(total)
        })
        .collect();
    Ok(SparseMatrix::from_columns(size, cols))
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// One step of 𝔖ₙ = (𝔖ₙ₋₁ ⊗ id) 𝔖ₙ₋₁,₁, given the matrix of 𝔖ₙ₋₁.
pub(crate) fn symmetrizer_step(b: &Braiding, prev: &SparseMatrix, n: usize) -> Result<SparseMatrix> {
    let t = b.theta();
    let size = check_budget(t, n)?;
    let cols = (0..size)
        .into_par_iter()
        .map(|r| {
            let w = Word::unrank(r, n, t);
            let mut total: BTreeMap<u32, CycNumber> = BTreeMap::new();
            for k in 0..n {
                // move the letter at position k to the end
                let mut terms = Terms::new();
                terms.insert(w.clone(), CycNumber::one(b.modulus()));
                for p in k..n - 1 {
                    terms = b.apply_at(&terms, p);
                }
                for (u, c) in terms {
                    let last = *u.0.last().expect("n >= 1") as u32;
                    let head = Word::from(&u.0[..n - 1]).rank(t);
                    for (row, x) in prev.column(head).iter() {
                        accumulate(&mut total, row * t as u32 + last, &c * x);
                    }
                }
            }
            SparseVec::from_map(total)
        })
        .collect();
    Ok(SparseMatrix::from_columns(size, cols))
}

/// 𝔖ₙ built recursively from 𝔖ₙ₋₁ and the shuffle moving one letter to the end.
pub fn symmetrizer_by_factorization(b: &Braiding, n: usize) -> Result<SparseMatrix> {
    check_budget(b.theta(), n)?;
    let mut cur = SparseMatrix::identity(1, b.modulus());
    for k in 1..=n {
        cur = symmetrizer_step(b, &cur, k)?;
    }
    Ok(cur)
}
