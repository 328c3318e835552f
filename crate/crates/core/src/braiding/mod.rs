//! Braided vector spaces: diagonal, group type and explicit matrices.

mod cartan;
mod diagonal;
mod group;
mod matrix;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::freealg::{FreeElement, Word};
use crate::linalg::{Eliminator, SparseVec};
use crate::scalar::CycNumber;

pub use cartan::{
    detect_cartan, match_rank_two_table, predicted_dimension, CartanDatum, CartanDetection, DynkinType,
    PredictedDimension, RankTwoMatch,
};
pub use diagonal::DiagonalBraiding;
pub use group::{make_group_braiding, FiniteGroup, GroupBraiding, PhiKind};
pub use matrix::MatrixBraiding;

/// Largest supported dimension of V; letters of words are stored as bytes.
pub const MAX_RANK: usize = 256;

pub(crate) fn check_rank(theta: usize) -> Result<()> {
    if theta > MAX_RANK {
        return Err(Error::Validation(format!("dimension {theta} exceeds the supported maximum {MAX_RANK}")));
    }
    Ok(())
}

/// Coefficient maps indexed by words, as used by every tensor computation.
pub type Terms = BTreeMap<Word, CycNumber>;

pub(crate) fn add_term(terms: &mut Terms, w: Word, c: CycNumber) {
    if c.is_zero() {
        return;
    }
    match terms.entry(w) {
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

#[derive(Debug, Clone, PartialEq)]
pub enum BraidingKind {
    Diagonal(DiagonalBraiding),
    Group(GroupBraiding),
    Matrix(MatrixBraiding),
}

/// One term of c(x_a ⊗ x_b): `coef * x_left ⊗ x_right`.
#[derive(Debug, Clone, PartialEq)]
pub struct BraidTerm {
    pub left: u8,
    pub right: u8,
    pub coef: CycNumber,
}

/// A braided vector space with its operator c tabulated on pairs of generators.
#[derive(Debug, Clone)]
pub struct Braiding {
    kind: BraidingKind,
    theta: usize,
    modulus: u32,
    table: Vec<Vec<BraidTerm>>,
    monomial: Option<Vec<(u8, u8, u32)>>,
    labels: Vec<String>,
}

impl PartialEq for Braiding {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Braiding {
    fn build(kind: BraidingKind, theta: usize, modulus: u32, table: Vec<Vec<BraidTerm>>, labels: Vec<String>) -> Self {
        let monomial = table
            .iter()
            .map(|terms| match terms.as_slice() {
                [t] => t.coef.embed(modulus).ok()?.to_root_of_unity().map(|r| (t.left, t.right, r.exponent())),
                _ => None,
            })
            .collect();
        Braiding { kind, theta, modulus, table, monomial, labels }
    }

    pub fn kind(&self) -> &BraidingKind {
        &self.kind
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    /// Cyclotomic modulus of the scalar field.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn as_diagonal(&self) -> Option<&DiagonalBraiding> {
        match &self.kind {
            BraidingKind::Diagonal(d) => Some(d),
            _ => None,
        }
    }

    pub fn as_group(&self) -> Option<&GroupBraiding> {
        match &self.kind {
            BraidingKind::Group(g) => Some(g),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            BraidingKind::Diagonal(_) => "diagonal",
            BraidingKind::Group(_) => "group",
            BraidingKind::Matrix(_) => "matrix",
        }
    }

    /// Display name of generator `i` (zero-based).
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// c(x_a ⊗ x_b) as a list of terms.
    pub fn c_terms(&self, a: usize, b: usize) -> &[BraidTerm] {
        &self.table[a * self.theta + b]
    }

    /// For monomial braidings: c(x_a ⊗ x_b) = zeta_M^e x_l ⊗ x_r, returned as (l, r, e).
    pub fn monomial(&self, a: usize, b: usize) -> Option<(u8, u8, u32)> {
        self.monomial.as_ref().map(|m| m[a * self.theta + b])
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial.is_some()
    }

    /// The automorphisms sigma_j with c(x_j ⊗ x_i) = sigma_j(x_i) ⊗ x_j, available when
    /// every c(x_j ⊗ x_i) has this shape. Entry `[j][i]` is (k, s) with sigma_j(x_i) = s x_k.
    pub fn skew_automorphisms(&self) -> Option<Vec<Vec<(u8, CycNumber)>>> {
        (0..self.theta)
            .map(|j| {
                (0..self.theta)
                    .map(|i| match self.c_terms(j, i) {
                        [t] if t.right as usize == j => Some((t.left, t.coef.clone())),
                        _ => None,
                    })
                    .collect()
            })
            .collect()
    }

    /// Applies c at tensor slots (p, p+1), zero-based, to every word in `terms`.
    pub fn apply_at(&self, terms: &Terms, p: usize) -> Terms {
        let mut out = Terms::new();
        for (w, c) in terms {
            let (a, b) = (w.0[p] as usize, w.0[p + 1] as usize);
            for t in self.c_terms(a, b) {
                let mut v = w.0.clone();
                v[p] = t.left;
                v[p + 1] = t.right;
                add_term(&mut out, Word(v), c * &t.coef);
            }
        }
        out
    }

    /// c(u ⊗ v) for words: moves each letter of v leftwards across u. The result
    /// lives on words of length |u| + |v|, split after |v| letters.
    pub fn braid_words(&self, u: &Word, v: &Word) -> Terms {
        let m = u.len();
        let mut terms = Terms::new();
        terms.insert(u.concat(v), CycNumber::one(self.modulus));
        for k in 0..v.len() {
            for p in (k..m + k).rev() {
                terms = self.apply_at(&terms, p);
            }
        }
        terms
    }

    /// Dense matrix of c on V ⊗ V, indexed `[row][col]` by a*theta + b.
    pub fn c_matrix(&self) -> Vec<Vec<CycNumber>> {
        let n = self.theta * self.theta;
        let mut m = vec![vec![CycNumber::zero(self.modulus); n]; n];
        for a in 0..self.theta {
            for b in 0..self.theta {
                for t in self.c_terms(a, b) {
                    let row = t.left as usize * self.theta + t.right as usize;
                    m[row][a * self.theta + b] = &m[row][a * self.theta + b] + &t.coef;
                }
            }
        }
        m
    }
}

impl From<DiagonalBraiding> for Braiding {
    fn from(d: DiagonalBraiding) -> Self {
        let theta = d.theta();
        let modulus = d.modulus();
        let mut table = Vec::with_capacity(theta * theta);
        for a in 0..theta {
            for b in 0..theta {
                table.push(vec![BraidTerm { left: b as u8, right: a as u8, coef: d.q(a, b) }]);
            }
        }
        let labels = (1..=theta).map(|i| format!("x{i}")).collect();
        Braiding::build(BraidingKind::Diagonal(d), theta, modulus, table, labels)
    }
}

impl From<GroupBraiding> for Braiding {
    fn from(g: GroupBraiding) -> Self {
        let theta = g.support().len();
        let modulus = g.modulus();
        let mut table = Vec::with_capacity(theta * theta);
        for s in 0..theta {
            for t in 0..theta {
                let (k, coef) = g.braid_pair(s, t);
                table.push(vec![BraidTerm { left: k as u8, right: s as u8, coef }]);
            }
        }
        let labels = g.support().iter().map(|&e| format!("x{}", g.group().label(e))).collect();
        Braiding::build(BraidingKind::Group(g), theta, modulus, table, labels)
    }
}

impl From<MatrixBraiding> for Braiding {
    fn from(mb: MatrixBraiding) -> Self {
        let theta = mb.theta();
        let modulus = mb.modulus();
        let table = mb.table();
        let labels = (1..=theta).map(|i| format!("x{i}")).collect();
        Braiding::build(BraidingKind::Matrix(mb), theta, modulus, table, labels)
    }
}

/// c applied at slots (p, p+1), one-based p in 1..n-1, of a homogeneous element of degree n.
pub fn apply_braiding(w: &FreeElement, p: usize) -> Result<FreeElement> {
    let n = w.homogeneous_degree().ok_or_else(|| Error::InvalidArgument("element is not homogeneous".into()))?;
    if n < 2 || p == 0 || p >= n {
        return Err(Error::IndexOutOfRange(format!("position {p} for degree {n}")));
    }
    let terms = w.braiding().apply_at(w.terms(), p - 1);
    Ok(FreeElement::from_terms(w.braiding_arc().clone(), terms))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BraidCheck {
    Pass,
    Counterexample(Word),
}

/// Checks (c⊗id)(id⊗c)(c⊗id) = (id⊗c)(c⊗id)(id⊗c) on every word of length three.
pub fn verify_braid_equation(b: &Braiding) -> BraidCheck {
    verify_braid_table(b.theta, b.modulus, |terms, p| b.apply_at(terms, p))
}

pub(crate) fn verify_braid_table(theta: usize, modulus: u32, apply: impl Fn(&Terms, usize) -> Terms) -> BraidCheck {
    for w in Word::all(3, theta) {
        let mut start = Terms::new();
        start.insert(w.clone(), CycNumber::one(modulus));
        let lhs = apply(&apply(&apply(&start, 0), 1), 0);
        let rhs = apply(&apply(&apply(&start, 1), 0), 1);
        if lhs != rhs {
            return BraidCheck::Counterexample(w);
        }
    }
    BraidCheck::Pass
}

/// Result of the Hecke test (c - q)(c + 1) = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct HeckeLabel {
    pub q: CycNumber,
    /// dim ker(c + 1); distinguishes c from -c when both carry the same label.
    pub minus_one_multiplicity: usize,
}

fn mat_mul(a: &[Vec<CycNumber>], b: &[Vec<CycNumber>]) -> Vec<Vec<CycNumber>> {
    let n = a.len();
    let m = a[0][0].modulus();
    let mut out = vec![vec![CycNumber::zero(m); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

/// The label q with (c - q)(c + 1) = 0, if c is of Hecke type.
pub fn hecke_label(b: &Braiding) -> Option<HeckeLabel> {
    let c = b.c_matrix();
    let n = c.len();
    let m = b.modulus();
    let c2 = mat_mul(&c, &c);
    let diag_values: Vec<&CycNumber> = (0..n).map(|i| &c[i][i]).collect();
    let off = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| i != j && !c[i][j].is_zero());
    let scalar = off.is_none() && diag_values.iter().all(|d| *d == diag_values[0]);
    let q = if scalar {
        diag_values[0].clone()
    } else {
        // solve c^2 = alpha c + beta; Hecke means beta = q and alpha = q - 1
        let (alpha, beta) = match off {
            Some((i, j)) => {
                let alpha = c2[i][j].checked_div(&c[i][j]).ok()?;
                let beta = &c2[i][i] - &(&alpha * &c[i][i]);
                (alpha, beta)
            }
            None => {
                let d1 = diag_values[0].clone();
                let d2 = diag_values.iter().find(|d| ***d != d1)?.to_owned().clone();
                let alpha = &d1 + &d2;
                let beta = -(&d1 * &d2);
                (alpha, beta)
            }
        };
        for i in 0..n {
            for j in 0..n {
                let mut rhs = &alpha * &c[i][j];
                if i == j {
                    rhs = &rhs + &beta;
                }
                if c2[i][j] != rhs {
                    return None;
                }
            }
        }
        if beta != &alpha + &CycNumber::one(m) {
            return None;
        }
        beta
    };
    let mut e = Eliminator::new();
    for j in 0..n {
        let col = SparseVec::from_entries((0..n).map(|i| {
            let mut x = c[i][j].clone();
            if i == j {
                x = &x + &CycNumber::one(m);
            }
            (i as u32, x)
        }));
        e.insert(&col);
    }
    Some(HeckeLabel { q, minus_one_multiplicity: n - e.rank() })
}
