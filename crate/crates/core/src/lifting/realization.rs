use serde::Serialize;

use super::group::{AbelianGroup, Character, GroupElement};
use crate::braiding::CartanDatum;
use crate::braiding::DiagonalBraiding;
use crate::error::{Error, Result};
use crate::scalar::RootOfUnity;

/// Group data (Γ, g_1..g_n, χ_1..χ_n) together with the diagonal braiding it is meant to realize,
/// under the convention q_ij = χ_j(g_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    group: AbelianGroup,
    g: Vec<GroupElement>,
    chi: Vec<Character>,
    braiding: DiagonalBraiding,
}

impl Realization {
    /// Checks shapes only; use [`validate_realization`] for the braiding condition.
    pub fn new(
        group: AbelianGroup,
        g: Vec<GroupElement>,
        chi: Vec<Character>,
        braiding: DiagonalBraiding,
    ) -> Result<Self> {
        let n = braiding.theta();
        if g.len() != n || chi.len() != n {
            return Err(Error::InvalidArgument(format!(
                "braiding has rank {n} but got {} group elements and {} characters",
                g.len(),
                chi.len()
            )));
        }
        let s = group.factors().len();
        let bad = |v: &[u32]| v.len() != s || v.iter().zip(group.factors()).any(|(&a, &m)| a >= m);
        if g.iter().any(|x| bad(x.exponents())) || chi.iter().any(|x| bad(x.exponents())) {
            return Err(Error::InvalidArgument("exponent tuple does not match the invariant factors".into()));
        }
        Ok(Realization { group, g, chi, braiding })
    }

    /// Realizes the braiding q_ij = χ_j(g_i) read off from the data.
    pub fn from_group_data(group: AbelianGroup, g: Vec<GroupElement>, chi: Vec<Character>) -> Result<Self> {
        if g.len() != chi.len() || g.is_empty() {
            return Err(Error::InvalidArgument("need equally many group elements and characters".into()));
        }
        let q: Vec<Vec<RootOfUnity>> =
            g.iter().map(|gi| chi.iter().map(|cj| group.evaluate(cj, gi)).collect()).collect();
        let braiding = DiagonalBraiding::from_roots(&q);
        Self::new(group, g, chi, braiding)
    }

    /// Γ = (Z/P)^n with P the modulus of the braiding, g_i = y_i and χ_j(y_i) = q_ij.
    pub fn canonical(braiding: &DiagonalBraiding) -> Self {
        let n = braiding.theta();
        let p = braiding.modulus();
        let group = AbelianGroup::new(vec![p; n]).expect("positive modulus");
        let g = (0..n).map(|i| group.generator(i)).collect();
        let chi = (0..n)
            .map(|j| {
                let e: Vec<i64> = (0..n).map(|i| braiding.exponent(i, j) as i64).collect();
                group.character(&e).expect("length n")
            })
            .collect();
        Realization { group, g, chi, braiding: braiding.clone() }
    }

    /// Γ = Z/(N m_1) + ... + Z/(N m_n), g_i = y_i, χ_j(g_i) = q^{a_ij} with (a_ij) the Cartan
    /// matrix of type A_n and q = zeta_N.
    pub fn final_example(order: u32, m: &[u32]) -> Result<Self> {
        let n = m.len();
        if n == 0 || m.contains(&0) || order == 0 {
            return Err(Error::InvalidArgument("need n >= 1, N >= 1 and every m_i >= 1".into()));
        }
        let group = AbelianGroup::new(m.iter().map(|&mi| order * mi).collect())?;
        let a = |i: usize, j: usize| -> i64 {
            match i.abs_diff(j) {
                0 => 2,
                1 => -1,
                _ => 0,
            }
        };
        let g = (0..n).map(|i| group.generator(i)).collect();
        let chi = (0..n)
            .map(|j| {
                let e: Vec<i64> = (0..n).map(|i| a(i, j) * m[i] as i64).collect();
                group.character(&e)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_group_data(group, g, chi)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.g.len()
    }

    /// g_i, one-based.
    pub fn g(&self, i: usize) -> &GroupElement {
        &self.g[i - 1]
    }

    /// χ_i, one-based.
    pub fn chi(&self, i: usize) -> &Character {
        &self.chi[i - 1]
    }

    pub fn braiding(&self) -> &DiagonalBraiding {
        &self.braiding
    }

    /// g_{i,j} = g_i ... g_{j-1}.
    pub fn g_ij(&self, i: usize, j: usize) -> GroupElement {
        (i..j).fold(self.group.identity(), |acc, l| self.group.op(&acc, self.g(l)))
    }

    /// χ_{i,j} = χ_i ... χ_{j-1}.
    pub fn chi_ij(&self, i: usize, j: usize) -> Character {
        (i..j).fold(self.group.trivial_character(), |acc, l| self.group.char_mul(&acc, self.chi(l)))
    }

    /// g_v for a word in zero-based letters.
    pub fn word_degree(&self, letters: &[u8]) -> GroupElement {
        letters.iter().fold(self.group.identity(), |acc, &a| self.group.op(&acc, &self.g[a as usize]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RealizationCheck {
    Pass,
    /// One-based pair with χ_j(g_i) = found while q_ij = expected.
    Fail { i: usize, j: usize, expected: RootOfUnity, found: RootOfUnity },
}

impl RealizationCheck {
    pub fn passed(&self) -> bool {
        matches!(self, RealizationCheck::Pass)
    }
}

pub fn validate_realization(r: &Realization) -> RealizationCheck {
    let n = r.rank();
    for i in 1..=n {
        for j in 1..=n {
            let found = r.group.evaluate(r.chi(j), r.g(i)).reduced();
            let expected = r.braiding.q_root(i - 1, j - 1).reduced();
            if found != expected {
                return RealizationCheck::Fail { i, j, expected, found };
            }
        }
    }
    RealizationCheck::Pass
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LinkCondition {
    /// i and j lie in the same connected component.
    Link0,
    /// g_i g_j = 1.
    Link1,
    /// χ_i χ_j ≠ ε.
    Link2,
}

impl LinkCondition {
    pub fn tag(&self) -> &'static str {
        match self {
            LinkCondition::Link0 => "link0",
            LinkCondition::Link1 => "link1",
            LinkCondition::Link2 => "link2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairLinking {
    pub i: usize,
    pub j: usize,
    pub linkable: bool,
    /// The first violated condition when not linkable.
    pub violated: Option<LinkCondition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub tag: String,
    pub instance: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LinkingReport {
    pub pairs: Vec<PairLinking>,
    pub properties: Vec<PropertyCheck>,
}

impl LinkingReport {
    pub fn linkable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().filter(|p| p.linkable).map(|p| (p.i, p.j))
    }

    pub fn properties_hold(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }
}

/// Linkability of every pair i < j (one-based) and the elementary properties of linkable pairs.
pub fn validate_linking(r: &Realization, cartan: &CartanDatum) -> Result<LinkingReport> {
    let n = r.rank();
    if cartan.cartan_matrix.len() != n {
        return Err(Error::InvalidArgument(format!(
            "Cartan datum has rank {} but the realization has rank {n}",
            cartan.cartan_matrix.len()
        )));
    }
    let mut component = vec![0usize; n];
    for (c, verts) in cartan.components.iter().enumerate() {
        for &v in verts {
            component[v] = c;
        }
    }
    let grp = r.group();
    let mut report = LinkingReport::default();
    let mut linkable = vec![vec![false; n + 1]; n + 1];
    for i in 1..=n {
        for j in i + 1..=n {
            let violated = if component[i - 1] == component[j - 1] {
                Some(LinkCondition::Link0)
            } else if grp.op(r.g(i), r.g(j)).is_identity() {
                Some(LinkCondition::Link1)
            } else if !grp.char_mul(r.chi(i), r.chi(j)).is_trivial() {
                Some(LinkCondition::Link2)
            } else {
                None
            };
            let ok = violated.is_none();
            linkable[i][j] = ok;
            linkable[j][i] = ok;
            report.pairs.push(PairLinking { i, j, linkable: ok, violated });
        }
    }
    let val = |a: usize, b: usize| grp.evaluate(r.chi(b), r.g(a)).reduced();
    for i in 1..=n {
        for j in 1..=n {
            if i == j || !linkable[i][j] {
                continue;
            }
            let first = val(j, i).mul(val(i, j)).is_one();
            let second = val(j, j) == val(i, i).inverse();
            report.properties.push(PropertyCheck {
                tag: "link20".into(),
                instance: format!("i={i}, j={j}"),
                passed: first && second,
            });
        }
    }
    let partners: Vec<Option<usize>> = (1..=n).map(|i| (1..=n).find(|&k| linkable[i][k])).collect();
    for i in 1..=n {
        for j in 1..=n {
            if let (Some(k), Some(l)) = (partners[i - 1], partners[j - 1]) {
                let a = &cartan.cartan_matrix;
                report.properties.push(PropertyCheck {
                    tag: "sndproplink".into(),
                    instance: format!("i={i}, k={k}, j={j}, l={l}"),
                    passed: a[i - 1][j - 1] == a[k - 1][l - 1] && a[j - 1][i - 1] == a[l - 1][k - 1],
                });
            }
        }
    }
    for i in 1..=n {
        let count = (1..=n).filter(|&k| linkable[i][k]).count();
        report.properties.push(PropertyCheck {
            tag: "sndproplink2".into(),
            instance: format!("i={i}, partners={count}"),
            passed: count <= 1,
        });
    }
    Ok(report)
}
