use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::CycNumber;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
    /// Zero-based images, for symmetric groups.
    perms: Option<Vec<Vec<u8>>>,
    /// Coxeter generators S, when the group comes with a Coxeter system.
    coxeter_generators: Vec<usize>,
}

fn cycle_label(p: &[u8]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    let sep = if n > 9 { "," } else { "" };
    for start in 0..n {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            cyc.push((k + 1).to_string());
            k = p[k] as usize;
        }
        out.push('(');
        out.push_str(&cyc.join(sep));
        out.push(')');
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl FiniteGroup {
    /// Validates the group axioms on an explicit table; element 0 need not be the identity.
    pub fn from_table(labels: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Validation("multiplication table must be n x n over 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| Error::Validation("no identity element".into()))?;
        let mut inv = vec![0; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or_else(|| Error::Validation(format!("{} has no inverse", labels[g])))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::Validation(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { labels, mul, inv, identity, perms: None, coxeter_generators: Vec::new() })
    }

    /// S_n with product (gh)(k) = g(h(k)), Coxeter generators the adjacent transpositions.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=7).contains(&n), "symmetric groups are supported for 1 <= n <= 7");
        let mut perms = Vec::new();
        let mut p: Vec<u8> = (0..n as u8).collect();
        loop {
            perms.push(p.clone());
            if !next_permutation(&mut p) {
                break;
            }
        }
        let index: HashMap<Vec<u8>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let compose = |g: &[u8], h: &[u8]| -> Vec<u8> { h.iter().map(|&k| g[k as usize]).collect() };
        let mul: Vec<Vec<usize>> = perms
            .iter()
            .map(|g| perms.iter().map(|h| index[&compose(g, h)]).collect())
            .collect();
        let inv = perms
            .iter()
            .map(|g| {
                let mut ginv = vec![0u8; n];
                for (k, &gk) in g.iter().enumerate() {
                    ginv[gk as usize] = k as u8;
                }
                index[&ginv]
            })
            .collect();
        let labels = perms.iter().map(|p| cycle_label(p)).collect();
        let coxeter_generators = (0..n.saturating_sub(1))
            .map(|i| {
                let mut t: Vec<u8> = (0..n as u8).collect();
                t.swap(i, i + 1);
                index[&t]
            })
            .collect();
        FiniteGroup { labels, mul, inv, identity: 0, perms: Some(perms), coxeter_generators }
    }

    /// Dihedral group of order 2m, elements r^k s^e, Coxeter generators s and rs.
    pub fn dihedral(m: usize) -> Self {
        assert!(m >= 2, "dihedral groups need m >= 2");
        let idx = |k: usize, e: usize| e * m + k;
        let mut mul = vec![vec![0; 2 * m]; 2 * m];
        for e in 0..2 {
            for a in 0..m {
                for f in 0..2 {
                    for b in 0..m {
                        let k = if e == 0 { (a + b) % m } else { (a + m - b) % m };
                        mul[idx(a, e)][idx(b, f)] = idx(k, (e + f) % 2);
                    }
                }
            }
        }
        let labels = (0..2 * m)
            .map(|i| {
                let (k, e) = (i % m, i / m);
                let r = match k {
                    0 => String::new(),
                    1 => "r".to_string(),
                    _ => format!("r^{k}"),
                };
                match (r.is_empty(), e) {
                    (true, 0) => "1".to_string(),
                    (true, _) => "s".to_string(),
                    (false, 0) => r,
                    (false, _) => format!("{r}s"),
                }
            })
            .collect();
        let mut g = FiniteGroup::from_table(labels, mul).expect("dihedral table is a group");
        g.coxeter_generators = vec![idx(0, 1), idx(1, 1)];
        g
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn conjugate(&self, g: usize, t: usize) -> usize {
        self.mul[self.mul[g][t]][self.inv[g]]
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn permutation(&self, g: usize) -> Option<&[u8]> {
        self.perms.as_ref().map(|p| p[g].as_slice())
    }

    pub fn coxeter_generators(&self) -> &[usize] {
        &self.coxeter_generators
    }

    /// Word length with respect to the Coxeter generators.
    pub fn coxeter_lengths(&self) -> Option<Vec<usize>> {
        if self.coxeter_generators.is_empty() {
            return None;
        }
        let mut len = vec![usize::MAX; self.order()];
        len[self.identity] = 0;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(g) = queue.pop_front() {
            for &s in &self.coxeter_generators {
                let h = self.mul[g][s];
                if len[h] == usize::MAX {
                    len[h] = len[g] + 1;
                    queue.push_back(h);
                }
            }
        }
        len.iter().all(|&l| l != usize::MAX).then_some(len)
    }

    /// All conjugates of the given elements, in the canonical support order.
    fn conjugacy_closure(&self, seeds: &[usize]) -> Vec<usize> {
        let mut set: Vec<usize> = Vec::new();
        for &s in seeds {
            for g in 0..self.order() {
                let c = self.conjugate(g, s);
                if !set.contains(&c) {
                    set.push(c);
                }
            }
        }
        self.sort_support(&mut set);
        set
    }

    fn sort_support(&self, set: &mut [usize]) {
        match &self.perms {
            Some(perms) => set.sort_by_key(|&g| {
                let moved: Vec<usize> = (0..perms[g].len()).filter(|&k| perms[g][k] as usize != k).collect();
                (moved, g)
            }),
            None => set.sort(),
        }
    }
}

/// The built-in cocycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiKind {
    /// phi(g, t) = (-1)^length(g), T = all reflections.
    Coxeter,
    /// On S_n with T the transpositions: phi(g, (ij)) = 1 if g(i) < g(j), else -1.
    Flag,
}

/// V(G, T, phi): basis x_t (t in T), c(x_s ⊗ x_t) = phi(s, t) x_{sts^-1} ⊗ x_s.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupBraiding {
    group: Arc<FiniteGroup>,
    support: Vec<usize>,
    phi: Vec<Vec<CycNumber>>,
    modulus: u32,
}

impl GroupBraiding {
    /// `phi[g][k]` is phi(g, support[k]). Validates conjugation closure, (phi1) and (phi2).
    pub fn new(group: FiniteGroup, support: Vec<usize>, phi: Vec<Vec<CycNumber>>) -> Result<Self> {
        let n = group.order();
        if support.is_empty() || support.iter().any(|&t| t >= n) {
            return Err(Error::Validation("support must be a nonempty list of group elements".into()));
        }
        super::check_rank(support.len())?;
        let pos: HashMap<usize, usize> = support.iter().enumerate().map(|(k, &t)| (t, k)).collect();
        if pos.len() != support.len() {
            return Err(Error::Validation("support has repeated elements".into()));
        }
        for &t in &support {
            for g in 0..n {
                if !pos.contains_key(&group.conjugate(g, t)) {
                    return Err(Error::Validation(format!(
                        "support not closed under conjugation: {} {} {}^-1",
                        group.label(g),
                        group.label(t),
                        group.label(g)
                    )));
                }
            }
        }
        if phi.len() != n || phi.iter().any(|r| r.len() != support.len()) {
            return Err(Error::Validation("phi must be a |G| x |T| table".into()));
        }
        let modulus = phi.iter().flatten().map(|c| c.modulus()).fold(1u32, num_integer::lcm);
        let phi: Vec<Vec<CycNumber>> = phi
            .into_iter()
            .map(|r| r.into_iter().map(|c| c.embed(modulus)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let b = GroupBraiding { group: Arc::new(group), support, phi, modulus };
        b.validate()?;
        Ok(b)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        for (k, &t) in self.support.iter().enumerate() {
            if !self.phi[g.identity()][k].is_one() {
                return Err(Error::Validation(format!("phi1 fails: phi(1, {}) != 1", g.label(t))));
            }
            for a in 0..g.order() {
                if self.phi[a][k].is_zero() {
                    return Err(Error::Validation(format!("phi({}, {}) = 0", g.label(a), g.label(t))));
                }
            }
        }
        for a in 0..g.order() {
            for h in 0..g.order() {
                let ah = g.mul(a, h);
                for (k, &t) in self.support.iter().enumerate() {
                    let ht = self.index_of(g.conjugate(h, t)).expect("closed support");
                    if self.phi[ah][k] != &self.phi[a][ht] * &self.phi[h][k] {
                        return Err(Error::Validation(format!(
                            "phi2 fails at g={}, h={}, t={}",
                            g.label(a),
                            g.label(h),
                            g.label(t)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn index_of(&self, element: usize) -> Option<usize> {
        self.support.iter().position(|&t| t == element)
    }

    /// phi(g, t_k).
    pub fn phi(&self, g: usize, k: usize) -> &CycNumber {
        &self.phi[g][k]
    }

    /// c(x_s ⊗ x_t) = coef x_k ⊗ x_s for support indices s, t; returns (k, coef).
    pub fn braid_pair(&self, s: usize, t: usize) -> (usize, CycNumber) {
        let (gs, gt) = (self.support[s], self.support[t]);
        let k = self.index_of(self.group.conjugate(gs, gt)).expect("closed support");
        (k, self.phi[gs][t].clone())
    }
}

/// The Coxeter or flag braiding on a group with its reflections as support.
pub fn make_group_braiding(kind: PhiKind, group: FiniteGroup) -> Result<GroupBraiding> {
    let n = group.order();
    match kind {
        PhiKind::Coxeter => {
            let lengths = group
                .coxeter_lengths()
                .ok_or_else(|| Error::InvalidArgument("group has no Coxeter generators".into()))?;
            let support = group.conjugacy_closure(group.coxeter_generators());
            let phi = (0..n)
                .map(|g| {
                    let sign = if lengths[g] % 2 == 0 { 1 } else { -1 };
                    vec![CycNumber::from_int(2, sign); support.len()]
                })
                .collect();
            GroupBraiding::new(group, support, phi)
        }
        PhiKind::Flag => {
            if group.perms.is_none() {
                return Err(Error::InvalidArgument("the flag cocycle needs a symmetric group".into()));
            }
            let support = group.conjugacy_closure(group.coxeter_generators());
            let pairs: Vec<(usize, usize)> = support
                .iter()
                .map(|&t| {
                    let p = group.permutation(t).expect("permutation group");
                    let moved: Vec<usize> = (0..p.len()).filter(|&k| p[k] as usize != k).collect();
                    (moved[0], moved[1])
                })
                .collect();
            let phi = (0..n)
                .map(|g| {
                    let p = group.permutation(g).expect("permutation group");
                    pairs
                        .iter()
                        .map(|&(i, j)| CycNumber::from_int(2, if p[i] < p[j] { 1 } else { -1 }))
                        .collect()
                })
                .collect();
            GroupBraiding::new(group, support, phi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_basics() {
        let g = FiniteGroup::symmetric(3);
        assert_eq!(g.order(), 6);
        let t12 = g.find("(12)").unwrap();
        let t23 = g.find("(23)").unwrap();
        let t13 = g.find("(13)").unwrap();
        assert_eq!(g.conjugate(t12, t23), t13);
        let lengths = g.coxeter_lengths().unwrap();
        assert_eq!(lengths[g.find("(13)").unwrap()], 3);
        assert_eq!(lengths[g.find("(123)").unwrap()], 2);
    }

    #[test]
    fn coxeter_s3() {
        let b = make_group_braiding(PhiKind::Coxeter, FiniteGroup::symmetric(3)).unwrap();
        assert_eq!(b.support().len(), 3);
        let t12 = b.group().find("(12)").unwrap();
        let k = b.index_of(t12).unwrap();
        assert_eq!(b.phi(t12, k), &CycNumber::from_int(2, -1));
    }

    #[test]
    fn flag_s3() {
        let b = make_group_braiding(PhiKind::Flag, FiniteGroup::symmetric(3)).unwrap();
        let g = b.group();
        let t12 = g.find("(12)").unwrap();
        let t13 = b.index_of(g.find("(13)").unwrap()).unwrap();
        // g = (12): g(1) = 2 < g(3) = 3
        assert!(b.phi(t12, t13).is_one());
        let own = b.index_of(t12).unwrap();
        assert_eq!(b.phi(t12, own), &CycNumber::from_int(2, -1));
    }

    #[test]
    fn dihedral_coxeter() {
        let g = FiniteGroup::dihedral(4);
        assert_eq!(g.order(), 8);
        let b = make_group_braiding(PhiKind::Coxeter, g).unwrap();
        assert_eq!(b.support().len(), 4);
    }

    #[test]
    fn broken_phi2_is_rejected() {
        let g = FiniteGroup::symmetric(3);
        let support = vec![g.find("(12)").unwrap(), g.find("(13)").unwrap(), g.find("(23)").unwrap()];
        let mut phi = vec![vec![CycNumber::one(2); 3]; 6];
        phi[g.find("(12)").unwrap()][0] = CycNumber::from_int(2, -1);
        match GroupBraiding::new(g, support, phi) {
            Err(Error::Validation(msg)) => assert!(msg.starts_with("phi2 fails at g="), "{msg}"),
            other => panic!("expected phi2 failure, got {other:?}"),
        }
    }

    #[test]
    fn table_validation() {
        let bad = FiniteGroup::from_table(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 1]]);
        assert!(bad.is_err());
        let z2 = FiniteGroup::from_table(vec!["1".into(), "g".into()], vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.inverse(1), 1);
    }
}
