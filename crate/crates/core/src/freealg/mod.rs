//! The braided tensor algebra T(V).

mod symmetrizer;
mod word;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use crate::braiding::{add_term, Braiding, Terms};
use crate::error::{Error, Result};
use crate::scalar::CycNumber;

pub use symmetrizer::{
    all_permutations, matsumoto_section, permutation_length, quantum_shuffle, quantum_symmetrizer,
    symmetrizer_by_factorization, word_operator, Permutation, SYMMETRIZER_BUDGET,
};
pub use word::Word;

pub(crate) use symmetrizer::symmetrizer_step;

pub(crate) fn same_braiding(a: &Arc<Braiding>, b: &Arc<Braiding>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An element of T(V): a finite combination of words.
#[derive(Clone)]
pub struct FreeElement {
    braiding: Arc<Braiding>,
    terms: Terms,
}

impl PartialEq for FreeElement {
    fn eq(&self, other: &Self) -> bool {
        same_braiding(&self.braiding, &other.braiding) && self.terms == other.terms
    }
}

impl FreeElement {
    pub fn zero(braiding: Arc<Braiding>) -> Self {
        FreeElement { braiding, terms: Terms::new() }
    }

    pub fn one(braiding: Arc<Braiding>) -> Self {
        let m = braiding.modulus();
        Self::word(braiding, Word::empty(), CycNumber::one(m))
    }

    /// The generator x_i, zero-based.
    pub fn generator(braiding: Arc<Braiding>, i: usize) -> Self {
        let m = braiding.modulus();
        Self::word(braiding, Word::letter(i), CycNumber::one(m))
    }

    pub fn word(braiding: Arc<Braiding>, w: Word, c: CycNumber) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, w, c);
        FreeElement { braiding, terms }
    }

    pub fn from_terms(braiding: Arc<Braiding>, terms: Terms) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        FreeElement { braiding, terms }
    }

    pub fn braiding(&self) -> &Braiding {
        &self.braiding
    }

    pub fn braiding_arc(&self) -> &Arc<Braiding> {
        &self.braiding
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> CycNumber {
        self.terms.get(w).cloned().unwrap_or_else(|| CycNumber::zero(self.braiding.modulus()))
    }

    /// The degree if all terms share one length; `None` for zero or mixed elements.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Word::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// The degree-n component.
    pub fn component(&self, n: usize) -> FreeElement {
        let terms = self.terms.iter().filter(|(w, _)| w.len() == n).map(|(w, c)| (w.clone(), c.clone())).collect();
        FreeElement { braiding: self.braiding.clone(), terms }
    }

    fn check(&self, other: &FreeElement) -> Result<()> {
        if same_braiding(&self.braiding, &other.braiding) {
            Ok(())
        } else {
            Err(Error::BraidingMismatch)
        }
    }

    pub fn checked_add(&self, other: &FreeElement) -> Result<FreeElement> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            add_term(&mut terms, w.clone(), c.clone());
        }
        Ok(FreeElement { braiding: self.braiding.clone(), terms })
    }

    pub fn checked_sub(&self, other: &FreeElement) -> Result<FreeElement> {
        self.checked_add(&other.scale(&CycNumber::from_int(self.braiding.modulus(), -1)))
    }

    pub fn scale(&self, c: &CycNumber) -> FreeElement {
        let terms = self
            .terms
            .iter()
            .map(|(w, x)| (w.clone(), x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        FreeElement { braiding: self.braiding.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> FreeElement {
        let mut acc = FreeElement::one(self.braiding.clone());
        for _ in 0..e {
            acc = free_multiply(&acc, self).expect("same braiding");
        }
        acc
    }

    /// Degree in the grading group for group-type braidings: the ordered product of
    /// the support elements of each word.
    fn group_degrees(&self) -> Option<Vec<usize>> {
        let g = self.braiding.as_group()?;
        let grp = g.group();
        let mut degs: Vec<usize> = self
            .terms
            .keys()
            .map(|w| w.0.iter().fold(grp.identity(), |acc, &l| grp.mul(acc, g.support()[l as usize])))
            .collect();
        degs.sort();
        degs.dedup();
        Some(degs)
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeElement({self})")
    }
}

/// Renders as `x1*x2 - (z)*x2*x1`; the empty word prints as `1`.
impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let minus_one = CycNumber::from_int(self.braiding.modulus(), -1);
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let body = if w.is_empty() {
                "1".to_string()
            } else {
                w.0.iter().map(|&l| self.braiding.label(l as usize).to_string()).collect::<Vec<_>>().join("*")
            };
            let (negative, text) = if c.is_one() {
                (false, body)
            } else if *c == minus_one {
                (true, body)
            } else if w.is_empty() {
                (false, format!("({c})"))
            } else {
                (false, format!("({c})*{body}"))
            };
            match (k, negative) {
                (0, true) => write!(f, "-{text}")?,
                (0, false) => write!(f, "{text}")?,
                (_, true) => write!(f, " - {text}")?,
                (_, false) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

/// Concatenation product.
pub fn free_multiply(a: &FreeElement, b: &FreeElement) -> Result<FreeElement> {
    a.check(b)?;
    let mut terms = Terms::new();
    for (u, x) in &a.terms {
        for (v, y) in &b.terms {
            add_term(&mut terms, u.concat(v), x * y);
        }
    }
    Ok(FreeElement { braiding: a.braiding.clone(), terms })
}

impl Add for &FreeElement {
    type Output = FreeElement;
    fn add(self, rhs: &FreeElement) -> FreeElement {
        self.checked_add(rhs).expect("elements over different braidings")
    }
}

impl Sub for &FreeElement {
    type Output = FreeElement;
    fn sub(self, rhs: &FreeElement) -> FreeElement {
        self.checked_sub(rhs).expect("elements over different braidings")
    }
}

impl Mul for &FreeElement {
    type Output = FreeElement;
    fn mul(self, rhs: &FreeElement) -> FreeElement {
        free_multiply(self, rhs).expect("elements over different braidings")
    }
}

/// mu(c(a ⊗ b)): braid every pair of words and concatenate.
pub fn braided_product(a: &FreeElement, b: &FreeElement) -> Result<FreeElement> {
    a.check(b)?;
    let br = &a.braiding;
    let mut terms = Terms::new();
    for (u, x) in &a.terms {
        for (v, y) in &b.terms {
            let xy = x * y;
            for (w, c) in br.braid_words(u, v) {
                add_term(&mut terms, w, &c * &xy);
            }
        }
    }
    Ok(FreeElement { braiding: a.braiding.clone(), terms })
}

/// [a, b]_c = ab - mu(c(a ⊗ b)).
pub fn braided_commutator(a: &FreeElement, b: &FreeElement) -> Result<FreeElement> {
    if let Some(degs) = a.group_degrees() {
        if degs.len() > 1 {
            return Err(Error::InvalidArgument(
                "left argument of a group-type braided commutator must be homogeneous".into(),
            ));
        }
    }
    free_multiply(a, b)?.checked_sub(&braided_product(a, b)?)
}

/// (ad_c x_i)^r (x_j), zero-based indices.
pub fn adjoint_power(braiding: &Arc<Braiding>, i: usize, r: u32, j: usize) -> Result<FreeElement> {
    let t = braiding.theta();
    if i >= t || j >= t {
        return Err(Error::IndexOutOfRange(format!("generator index beyond theta = {t}")));
    }
    if i == j {
        return Err(Error::InvalidArgument("adjoint power needs i != j".into()));
    }
    let xi = FreeElement::generator(braiding.clone(), i);
    let mut acc = FreeElement::generator(braiding.clone(), j);
    for _ in 0..r {
        acc = braided_commutator(&xi, &acc)?;
    }
    Ok(acc)
}

/// An element of T(V) ⊗ T(V).
#[derive(Clone)]
pub struct TensorSquareElement {
    braiding: Arc<Braiding>,
    terms: BTreeMap<(Word, Word), CycNumber>,
}

impl PartialEq for TensorSquareElement {
    fn eq(&self, other: &Self) -> bool {
        same_braiding(&self.braiding, &other.braiding) && self.terms == other.terms
    }
}

impl fmt::Debug for TensorSquareElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &self.braiding;
        let show = |w: &Word| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.0.iter().map(|&l| b.label(l as usize).to_string()).collect::<Vec<_>>().join("*")
            }
        };
        let parts: Vec<String> =
            self.terms.iter().map(|((u, v), c)| format!("({c}) {} ⊗ {}", show(u), show(v))).collect();
        write!(f, "TensorSquareElement[{}]", parts.join(" + "))
    }
}

fn add_pair(terms: &mut BTreeMap<(Word, Word), CycNumber>, key: (Word, Word), c: CycNumber) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
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

impl TensorSquareElement {
    pub fn zero(braiding: Arc<Braiding>) -> Self {
        TensorSquareElement { braiding, terms: BTreeMap::new() }
    }

    pub fn pure(braiding: Arc<Braiding>, u: Word, v: Word, c: CycNumber) -> Self {
        let mut terms = BTreeMap::new();
        add_pair(&mut terms, (u, v), c);
        TensorSquareElement { braiding, terms }
    }

    /// a ⊗ b for free elements.
    pub fn tensor(a: &FreeElement, b: &FreeElement) -> Result<Self> {
        a.check(b)?;
        let mut terms = BTreeMap::new();
        for (u, x) in &a.terms {
            for (v, y) in &b.terms {
                add_pair(&mut terms, (u.clone(), v.clone()), x * y);
            }
        }
        Ok(TensorSquareElement { braiding: a.braiding.clone(), terms })
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), CycNumber> {
        &self.terms
    }

    pub fn braiding_arc(&self) -> &Arc<Braiding> {
        &self.braiding
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, u: &Word, v: &Word) -> CycNumber {
        self.terms
            .get(&(u.clone(), v.clone()))
            .cloned()
            .unwrap_or_else(|| CycNumber::zero(self.braiding.modulus()))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !same_braiding(&self.braiding, &other.braiding) {
            return Err(Error::BraidingMismatch);
        }
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_pair(&mut terms, k.clone(), c.clone());
        }
        Ok(TensorSquareElement { braiding: self.braiding.clone(), terms })
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        let mut terms = BTreeMap::new();
        for (k, x) in &self.terms {
            add_pair(&mut terms, k.clone(), x * c);
        }
        TensorSquareElement { braiding: self.braiding.clone(), terms }
    }

    /// The part of bidegree (i, j).
    pub fn bidegree(&self, i: usize, j: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|((u, v), _)| u.len() == i && v.len() == j)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        TensorSquareElement { braiding: self.braiding.clone(), terms }
    }

    /// Applies a linear map to each tensor factor.
    pub fn map_factors(
        &self,
        left: impl Fn(&Word) -> FreeElement,
        right: impl Fn(&Word) -> FreeElement,
    ) -> Result<Self> {
        let mut out = TensorSquareElement::zero(self.braiding.clone());
        for ((u, v), c) in &self.terms {
            out = out.checked_add(&TensorSquareElement::tensor(&left(u), &right(v))?.scale(c))?;
        }
        Ok(out)
    }
}

/// (a ⊗ b)(a' ⊗ b') = a c(b ⊗ a') b'.
pub fn twisted_square_multiply(x: &TensorSquareElement, y: &TensorSquareElement) -> Result<TensorSquareElement> {
    if !same_braiding(&x.braiding, &y.braiding) {
        return Err(Error::BraidingMismatch);
    }
    let br = &x.braiding;
    let mut terms = BTreeMap::new();
    for ((a, b), c1) in &x.terms {
        for ((a2, b2), c2) in &y.terms {
            let c12 = c1 * c2;
            for (w, c) in br.braid_words(b, a2) {
                let (l, r) = w.0.split_at(a2.len());
                add_pair(&mut terms, (a.concat(&Word::from(l)), Word::from(r).concat(b2)), &c * &c12);
            }
        }
    }
    Ok(TensorSquareElement { braiding: x.braiding.clone(), terms })
}

/// The braided coproduct, multiplicative with Delta(x_i) = x_i ⊗ 1 + 1 ⊗ x_i.
pub fn coproduct(a: &FreeElement) -> TensorSquareElement {
    let br = a.braiding.clone();
    let m = br.modulus();
    let prim: Vec<TensorSquareElement> = (0..br.theta())
        .map(|i| {
            let one = CycNumber::one(m);
            let mut t = TensorSquareElement::pure(br.clone(), Word::letter(i), Word::empty(), one.clone());
            add_pair(&mut t.terms, (Word::empty(), Word::letter(i)), one);
            t
        })
        .collect();
    let mut cache: BTreeMap<Word, TensorSquareElement> = BTreeMap::new();
    let mut out = TensorSquareElement::zero(br.clone());
    for (w, c) in &a.terms {
        let mut acc = TensorSquareElement::pure(br.clone(), Word::empty(), Word::empty(), CycNumber::one(m));
        for k in 0..w.len() {
            let prefix = Word::from(&w.0[..=k]);
            acc = match cache.get(&prefix) {
                Some(d) => d.clone(),
                None => {
                    let d = twisted_square_multiply(&acc, &prim[w.0[k] as usize]).expect("same braiding");
                    cache.insert(prefix, d.clone());
                    d
                }
            };
        }
        out = out.checked_add(&acc.scale(c)).expect("same braiding");
    }
    out
}

/// epsilon(a): the coefficient of the empty word.
pub fn counit(a: &FreeElement) -> CycNumber {
    a.coefficient(&Word::empty())
}

/// (Delta ⊗ id) and (id ⊗ Delta) as maps into triple tensors, for coassociativity checks.
pub fn coassociativity_sides(a: &FreeElement) -> (BTreeMap<(Word, Word, Word), CycNumber>, BTreeMap<(Word, Word, Word), CycNumber>) {
    let br = a.braiding.clone();
    let d = coproduct(a);
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    let acc = |map: &mut BTreeMap<(Word, Word, Word), CycNumber>, k: (Word, Word, Word), c: CycNumber| {
        let e = map.entry(k).or_insert_with(|| CycNumber::zero(c.modulus()));
        *e = &*e + &c;
    };
    for ((u, v), c) in d.terms() {
        let du = coproduct(&FreeElement::word(br.clone(), u.clone(), CycNumber::one(br.modulus())));
        for ((u1, u2), c2) in du.terms() {
            acc(&mut left, (u1.clone(), u2.clone(), v.clone()), c * c2);
        }
        let dv = coproduct(&FreeElement::word(br.clone(), v.clone(), CycNumber::one(br.modulus())));
        for ((v1, v2), c2) in dv.terms() {
            acc(&mut right, (u.clone(), v1.clone(), v2.clone()), c * c2);
        }
    }
    left.retain(|_, c| !c.is_zero());
    right.retain(|_, c| !c.is_zero());
    (left, right)
}
