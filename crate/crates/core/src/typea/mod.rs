//! Root vectors of type A_n and the verification of their relations, coproducts and
//! PBW basis inside the graded models of the `nichols` module.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::braiding::{Braiding, DiagonalBraiding};
use crate::error::{Error, Result};
use crate::freealg::{braided_commutator, free_multiply, FreeElement};
use crate::scalar::{CycNumber, RootOfUnity};

mod suite;

pub use suite::{
    identity_2_2_7, pre_nichols_identities, nichols_identities, serre_relations, tensor_coordinates, verify_coproducts,
    verify_identities, verify_pbw, verify_presentation, verify_relation_suite, Identity, IdentityBody,
    IdentityCheck, Setting, TypeAModels, VerificationReport,
};

/// A diagonal braiding of type A_n with its root vectors e_{i,j}, 1 <= i < j <= n + 1.
///
/// Indices of root vectors and B-coefficients are one-based throughout this module.
#[derive(Clone, Debug)]
pub struct TypeAContext {
    n: usize,
    order: u32,
    q: RootOfUnity,
    diagonal: DiagonalBraiding,
    braiding: Arc<Braiding>,
    roots: BTreeMap<(usize, usize), FreeElement>,
}

impl TypeAContext {
    /// Fails unless q_ii = q for all i, with q of order N > 2, and
    /// q_ij q_ji is q^-1 for neighbours and 1 otherwise.
    pub fn new(diagonal: DiagonalBraiding) -> Result<Self> {
        let n = diagonal.theta();
        let q = diagonal.q_root(0, 0);
        let order = q.order();
        if order <= 2 {
            return Err(Error::Unsupported(format!("type A root vectors need q of order N > 2, got N = {order}")));
        }
        for i in 0..n {
            if diagonal.q_root(i, i) != q {
                return Err(Error::Validation(format!("q_{0}{0} differs from q_11", i + 1)));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let prod = diagonal.q_root(i, j).mul(diagonal.q_root(j, i));
                let want = if i.abs_diff(j) == 1 { q.inverse() } else { RootOfUnity::one(q.modulus()) };
                if prod != want {
                    return Err(Error::Validation(format!(
                        "q_{a}{b} q_{b}{a} = {prod} but type A_{n} needs {want}",
                        a = i + 1,
                        b = j + 1
                    )));
                }
            }
        }
        let braiding = Arc::new(Braiding::from(diagonal.clone()));
        let mut roots = BTreeMap::new();
        for len in 1..=n {
            for i in 1..=n + 1 - len {
                let j = i + len;
                let e = if len == 1 {
                    FreeElement::generator(braiding.clone(), i - 1)
                } else {
                    braided_commutator(&roots[&(i, j - 1)], &roots[&(j - 1, j)])?
                };
                roots.insert((i, j), e);
            }
        }
        Ok(TypeAContext { n, order, q, diagonal, braiding, roots })
    }

    /// The standard matrix q_ii = q, q_{i,i+1} = 1, q_{i+1,i} = q^-1 with q = zeta_N.
    pub fn standard(n: usize, order: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("rank must be positive".into()));
        }
        Self::new(DiagonalBraiding::type_a(n, order))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// N, the order of q.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn q(&self) -> CycNumber {
        self.q.to_cyc()
    }

    pub fn diagonal(&self) -> &DiagonalBraiding {
        &self.diagonal
    }

    pub fn braiding(&self) -> &Arc<Braiding> {
        &self.braiding
    }

    /// All (i, j) with 1 <= i < j <= n + 1 in lexicographic order.
    pub fn root_pairs(&self) -> Vec<(usize, usize)> {
        self.roots.keys().copied().collect()
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if 1 <= i && i < j && j <= self.n + 1 {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("({i},{j}) needs 1 <= i < j <= {}", self.n + 1)))
        }
    }

    pub fn root_vector(&self, i: usize, j: usize) -> Result<&FreeElement> {
        self.check_pair(i, j)?;
        Ok(&self.roots[&(i, j)])
    }

    /// B^{i,j}_{p,r} as a root of unity.
    pub fn b_root(&self, i: usize, j: usize, p: usize, r: usize) -> Result<RootOfUnity> {
        self.check_pair(i, j)?;
        self.check_pair(p, r)?;
        let mut acc = RootOfUnity::one(self.diagonal.modulus());
        for l in i..j {
            for h in p..r {
                acc = acc.mul(self.diagonal.q_root(l - 1, h - 1));
            }
        }
        Ok(acc)
    }

    /// B^{i,j}_{p,r}: the product of q_{l,h} over i <= l < j, p <= h < r.
    pub fn b_coefficient(&self, i: usize, j: usize, p: usize, r: usize) -> Result<CycNumber> {
        Ok(self.b_root(i, j, p, r)?.to_cyc())
    }

    /// Degree of the top PBW monomial: (N - 1) times the sum of all root lengths.
    pub fn top_degree(&self) -> usize {
        (self.order as usize - 1) * self.roots.keys().map(|(i, j)| j - i).sum::<usize>()
    }

    /// N^{n(n+1)/2}.
    pub fn pbw_dimension(&self) -> u64 {
        (self.order as u64).pow(self.roots.len() as u32)
    }

    /// Cases that run but sit outside the hypotheses N odd and N > 3 used for liftings.
    pub fn hypothesis_flags(&self) -> Vec<String> {
        let mut flags = Vec::new();
        if self.order == 3 {
            flags.push("hypothesis violated: N = 3 (liftings assume N > 3)".to_string());
        }
        if self.order % 2 == 0 {
            flags.push(format!("hypothesis violated: N = {} is even (exploratory run)", self.order));
        }
        flags
    }
}

pub fn b_coefficient(ctx: &TypeAContext, i: usize, j: usize, p: usize, r: usize) -> Result<CycNumber> {
    ctx.b_coefficient(i, j, p, r)
}

pub fn root_vector(ctx: &TypeAContext, i: usize, j: usize) -> Result<FreeElement> {
    ctx.root_vector(i, j).cloned()
}

/// e_{1,2}^{a_12} e_{1,3}^{a_13} ... e_{n,n+1}^{a_n,n+1}, exponents indexed like `root_pairs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PbwMonomial {
    exponents: Vec<u32>,
}

impl PbwMonomial {
    pub fn new(ctx: &TypeAContext, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != ctx.roots.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} exponents, got {}",
                ctx.roots.len(),
                exponents.len()
            )));
        }
        Ok(PbwMonomial { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self, ctx: &TypeAContext) -> usize {
        ctx.roots.keys().zip(&self.exponents).map(|((i, j), &a)| (j - i) * a as usize).sum()
    }

    /// The product in T(V).
    pub fn element(&self, ctx: &TypeAContext) -> Result<FreeElement> {
        let mut acc = FreeElement::one(ctx.braiding.clone());
        for (e, &a) in ctx.roots.values().zip(&self.exponents) {
            if a > 0 {
                acc = free_multiply(&acc, &e.pow(a))?;
            }
        }
        Ok(acc)
    }

    pub fn display(&self, ctx: &TypeAContext) -> String {
        let parts: Vec<String> = ctx
            .roots
            .keys()
            .zip(&self.exponents)
            .filter(|(_, &a)| a > 0)
            .map(|((i, j), &a)| if a == 1 { format!("e{i}{j}") } else { format!("e{i}{j}^{a}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents)
    }
}

/// All monomials with every exponent below `bound`, in lexicographic order of exponents.
pub fn pbw_monomials(ctx: &TypeAContext, bound: u32) -> Vec<PbwMonomial> {
    let p = ctx.roots.len();
    let mut out = Vec::new();
    let mut cur = vec![0u32; p];
    if bound == 0 {
        return out;
    }
    loop {
        out.push(PbwMonomial { exponents: cur.clone() });
        let mut k = p;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < bound {
                break;
            }
            cur[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_type_a() {
        let d = DiagonalBraiding::new(3, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(matches!(TypeAContext::new(d), Err(Error::Validation(_))));
        let d = DiagonalBraiding::new(3, vec![vec![1, 0], vec![2, 2]]).unwrap();
        assert!(matches!(TypeAContext::new(d), Err(Error::Validation(_))));
        assert!(matches!(TypeAContext::standard(2, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn monomial_enumeration() {
        let ctx = TypeAContext::standard(2, 3).unwrap();
        let all = pbw_monomials(&ctx, 3);
        assert_eq!(all.len(), 27);
        assert_eq!(all[1].exponents(), &[0, 0, 1]);
        assert_eq!(all.iter().map(|m| m.degree(&ctx)).max(), Some(ctx.top_degree()));
        assert_eq!(all[26].display(&ctx), "e12^2 e13^2 e23^2");
    }
}
