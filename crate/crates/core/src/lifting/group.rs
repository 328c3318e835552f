use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{CycNumber, RootOfUnity};

/// A finite abelian group Z/M_1 + ... + Z/M_s given by its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

/// Exponent tuple (a_1, ..., a_s) standing for y_1^a_1 ... y_s^a_s, each a_l reduced mod M_l.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(Vec<u32>);

/// chi(y_l) = zeta_{M_l}^{k_l}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character(Vec<u32>);

impl GroupElement {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(l, &a)| if a == 1 { format!("y{}", l + 1) } else { format!("y{}^{a}", l + 1) })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl Character {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi{:?}", self.0)
    }
}

fn reduce(factors: &[u32], exps: &[i64]) -> Vec<u32> {
    factors.iter().zip(exps).map(|(&m, &a)| a.rem_euclid(m as i64) as u32).collect()
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidArgument("invariant factors must be positive".into()));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn cyclic(m: u32) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&m| m as u64).product()
    }

    /// lcm of the invariant factors; every character value is a power of zeta of this order.
    pub fn exponent(&self) -> u32 {
        self.factors.iter().copied().fold(1, num_integer::lcm)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.factors.len() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("expected {} exponents, got {len}", self.factors.len())))
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    pub fn element(&self, exps: &[i64]) -> Result<GroupElement> {
        self.check_len(exps.len())?;
        Ok(GroupElement(reduce(&self.factors, exps)))
    }

    /// The generator y_l, zero-based.
    pub fn generator(&self, l: usize) -> GroupElement {
        let mut e = vec![0; self.factors.len()];
        e[l] = 1 % self.factors[l];
        GroupElement(e)
    }

    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            self.factors.iter().zip(a.0.iter().zip(&b.0)).map(|(&m, (&x, &y))| (x + y) % m).collect(),
        )
    }

    pub fn pow(&self, a: &GroupElement, k: i64) -> GroupElement {
        GroupElement(
            self.factors
                .iter()
                .zip(&a.0)
                .map(|(&m, &x)| (x as i128 * k as i128).rem_euclid(m as i128) as u32)
                .collect(),
        )
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        self.pow(a, -1)
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        self.factors
            .iter()
            .zip(&a.0)
            .map(|(&m, &x)| (m / num_integer::gcd(m, x)) as u64)
            .fold(1, num_integer::lcm)
    }

    /// All elements in lexicographic order of exponents.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let total = self.order();
        (0..total).map(move |mut idx| {
            let mut e = vec![0u32; self.factors.len()];
            for l in (0..self.factors.len()).rev() {
                let m = self.factors[l] as u64;
                e[l] = (idx % m) as u32;
                idx /= m;
            }
            GroupElement(e)
        })
    }

    pub fn character(&self, exps: &[i64]) -> Result<Character> {
        self.check_len(exps.len())?;
        Ok(Character(reduce(&self.factors, exps)))
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.factors.len()])
    }

    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        Character(self.op(&GroupElement(a.0.clone()), &GroupElement(b.0.clone())).0)
    }

    pub fn char_pow(&self, a: &Character, k: i64) -> Character {
        Character(self.pow(&GroupElement(a.0.clone()), k).0)
    }

    /// chi(g) as a root of unity of modulus `exponent()`.
    pub fn evaluate(&self, chi: &Character, g: &GroupElement) -> RootOfUnity {
        let l = self.exponent();
        let k: u64 = self
            .factors
            .iter()
            .zip(chi.0.iter().zip(&g.0))
            .map(|(&m, (&c, &a))| c as u64 * a as u64 * (l / m) as u64 % l as u64)
            .sum();
        RootOfUnity::new(l, (k % l as u64) as i64)
    }
}

/// An element of the group algebra kΓ with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    terms: BTreeMap<GroupElement, CycNumber>,
}

fn add_term<K: Ord>(terms: &mut BTreeMap<K, CycNumber>, key: K, c: CycNumber) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(g: GroupElement, c: CycNumber) -> Self {
        Self::from_terms([(g, c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GroupElement, CycNumber)>) -> Self {
        let mut out = BTreeMap::new();
        for (g, c) in terms {
            add_term(&mut out, g, c);
        }
        GroupAlgebraElement { terms: out }
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, CycNumber> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &GroupElement) -> Option<&CycNumber> {
        self.terms.get(g)
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.keys()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.terms.clone();
        for (g, c) in &other.terms {
            add_term(&mut out, g.clone(), c.clone());
        }
        GroupAlgebraElement { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&CycNumber::from_int(1, -1)))
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, x)| (g.clone(), x * c)))
    }

    pub fn mul(&self, group: &AbelianGroup, other: &Self) -> Self {
        let mut out = BTreeMap::new();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                add_term(&mut out, group.op(g, h), a * b);
            }
        }
        GroupAlgebraElement { terms: out }
    }

    /// Δ(g) = g ⊗ g extended linearly.
    pub fn coproduct(&self) -> GroupAlgebraTensor {
        GroupAlgebraTensor::from_terms(self.terms.iter().map(|(g, c)| ((g.clone(), g.clone()), c.clone())))
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| match (g.is_identity(), c.is_one()) {
                (true, _) => format!("({c})"),
                (false, true) => g.to_string(),
                (false, false) => format!("({c}) {g}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An element of kΓ ⊗ kΓ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupAlgebraTensor {
    terms: BTreeMap<(GroupElement, GroupElement), CycNumber>,
}

impl GroupAlgebraTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((GroupElement, GroupElement), CycNumber)>) -> Self {
        let mut out = BTreeMap::new();
        for (k, c) in terms {
            add_term(&mut out, k, c);
        }
        GroupAlgebraTensor { terms: out }
    }

    pub fn tensor(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> Self {
        Self::from_terms(a.terms.iter().flat_map(|(g, x)| {
            b.terms.iter().map(move |(h, y)| ((g.clone(), h.clone()), x * y))
        }))
    }

    pub fn terms(&self) -> &BTreeMap<(GroupElement, GroupElement), CycNumber> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.terms.clone();
        for (k, c) in &other.terms {
            add_term(&mut out, k.clone(), c.clone());
        }
        GroupAlgebraTensor { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let neg = CycNumber::from_int(1, -1);
        self.add(&Self::from_terms(other.terms.iter().map(|(k, c)| (k.clone(), c * &neg))))
    }
}
