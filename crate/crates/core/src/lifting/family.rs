use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::group::{GroupAlgebraElement, GroupAlgebraTensor, GroupElement};
use super::realization::{validate_realization, PropertyCheck, Realization, RealizationCheck};
use crate::error::{Error, Result};
use crate::scalar::{CycNumber, RootOfUnity};
use crate::typea::TypeAContext;

/// Scalars γ_{i,j}, 1 <= i < j <= n + 1; absent entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GammaFamily {
    values: BTreeMap<(usize, usize), CycNumber>,
}

impl GammaFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, usize), CycNumber)>) -> Self {
        let mut g = Self::new();
        for ((i, j), c) in entries {
            g.set(i, j, c);
        }
        g
    }

    pub fn set(&mut self, i: usize, j: usize, c: CycNumber) {
        if c.is_zero() {
            self.values.remove(&(i, j));
        } else {
            self.values.insert((i, j), c);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&CycNumber> {
        self.values.get(&(i, j))
    }

    pub fn value(&self, i: usize, j: usize) -> CycNumber {
        self.values.get(&(i, j)).cloned().unwrap_or_else(|| CycNumber::zero(1))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &CycNumber)> {
        self.values.iter()
    }
}

impl fmt::Display for GammaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|((i, j), c)| format!("g{i}{j} = {c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The elements u_{i,j} of kΓ; absent entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UFamily {
    values: BTreeMap<(usize, usize), GroupAlgebraElement>,
}

impl UFamily {
    pub fn get(&self, i: usize, j: usize) -> GroupAlgebraElement {
        self.values.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, u: GroupAlgebraElement) {
        self.values.insert((i, j), u);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &GroupAlgebraElement)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|u| u.is_zero())
    }
}

/// Validated type A data shared by the operations below.
struct Prepared<'a> {
    r: &'a Realization,
    ctx: TypeAContext,
    order: u32,
    modulus: u32,
}

impl<'a> Prepared<'a> {
    fn new(r: &'a Realization) -> Result<Self> {
        if let RealizationCheck::Fail { i, j, expected, found } = validate_realization(r) {
            return Err(Error::Validation(format!("chi_{j}(g_{i}) = {found} but q_{i}{j} = {expected}")));
        }
        let ctx = TypeAContext::new(r.braiding().clone())?;
        let order = ctx.order();
        let modulus = num_integer::lcm(r.group().exponent(), r.braiding().modulus());
        Ok(Prepared { r, ctx, order, modulus })
    }

    fn n(&self) -> usize {
        self.ctx.rank()
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        self.ctx.root_pairs()
    }

    fn h(&self, i: usize, j: usize) -> GroupElement {
        self.r.group().pow(&self.r.g_ij(i, j), self.order as i64)
    }

    fn one_minus_h(&self, i: usize, j: usize, m: u32) -> GroupAlgebraElement {
        let e = GroupAlgebraElement::basis(self.r.group().identity(), CycNumber::one(m));
        e.sub(&GroupAlgebraElement::basis(self.h(i, j), CycNumber::one(m)))
    }

    fn eta_trivial(&self, i: usize, j: usize) -> bool {
        let grp = self.r.group();
        grp.char_pow(&self.r.chi_ij(i, j), self.order as i64).is_trivial()
    }

    fn c(&self, i: usize, p: usize, j: usize) -> Result<CycNumber> {
        if !(1 <= i && i < p && p < j && j <= self.n() + 1) {
            return Err(Error::IndexOutOfRange(format!("C^{j}_{{{i},{p}}} needs 1 <= i < p < j <= {}", self.n() + 1)));
        }
        let m = self.r.braiding().modulus();
        let n = self.order as u64;
        let factor = &CycNumber::one(m) - &self.ctx.q().inv()?;
        let b = self.ctx.b_root(p, j, i, p)?.pow((n * (n - 1) / 2) as i64);
        Ok(&factor.pow(n) * &b.to_cyc())
    }

    /// Working modulus for the family, with every γ embedded into it.
    fn embed_gamma(&self, gamma: &GammaFamily) -> Result<(u32, BTreeMap<(usize, usize), CycNumber>)> {
        let m = gamma.iter().map(|(_, c)| c.modulus()).fold(self.modulus, num_integer::lcm);
        let mut out = BTreeMap::new();
        for (&(i, j), c) in gamma.iter() {
            if !(1 <= i && i < j && j <= self.n() + 1) {
                return Err(Error::IndexOutOfRange(format!("gamma_{i},{j} needs 1 <= i < j <= {}", self.n() + 1)));
            }
            out.insert((i, j), c.embed(m)?);
        }
        Ok((m, out))
    }
}

/// C^j_{i,p} = (1 - q^-1)^N (B^{p,j}_{i,p})^{N(N-1)/2} for 1 <= i < p < j <= n + 1.
pub fn c_coefficient(r: &Realization, i: usize, p: usize, j: usize) -> Result<CycNumber> {
    Prepared::new(r)?.c(i, p, j)
}

/// u_{i,j} = γ_{i,j}(1 - h_{i,j}) + Σ_{i<p<j} C^j_{i,p} γ_{i,p} u_{p,j}, by induction on j - i.
pub fn compute_u_family(r: &Realization, gamma: &GammaFamily) -> Result<UFamily> {
    let prep = Prepared::new(r)?;
    let (m, gam) = prep.embed_gamma(gamma)?;
    let zero = CycNumber::zero(m);
    let mut u = UFamily::default();
    let n = prep.n();
    for len in 1..=n {
        for i in 1..=n + 1 - len {
            let j = i + len;
            let g_ij = gam.get(&(i, j)).unwrap_or(&zero);
            let mut acc = prep.one_minus_h(i, j, m).scale(g_ij);
            for p in i + 1..j {
                if let Some(g_ip) = gam.get(&(i, p)) {
                    let c = &prep.c(i, p, j)? * g_ip;
                    acc = acc.add(&u.get(p, j).scale(&c));
                }
            }
            u.set(i, j, acc);
        }
    }
    Ok(u)
}

/// The closed form u_{i,j} = Σ_{i<=p<j} φ^j_{i,p}(γ)(1 - h_{p,j}), with φ^j_{i,p} summed over
/// chains i = i_1 < ... < i_k = p.
pub fn u_family_explicit(r: &Realization, gamma: &GammaFamily) -> Result<UFamily> {
    let prep = Prepared::new(r)?;
    let (m, gam) = prep.embed_gamma(gamma)?;
    let val = |a: usize, b: usize| gam.get(&(a, b)).cloned().unwrap_or_else(|| CycNumber::zero(m));
    let mut u = UFamily::default();
    for (i, j) in prep.pairs() {
        let mut acc = GroupAlgebraElement::zero();
        for p in i..j {
            let gamma_pj = val(p, j);
            if gamma_pj.is_zero() {
                continue;
            }
            let interior: Vec<usize> = (i + 1..p).collect();
            let mut phi = CycNumber::zero(m);
            for mask in 0u64..(1 << interior.len()) {
                let mut chain = vec![i];
                chain.extend(interior.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &x)| x));
                if p > i {
                    chain.push(p);
                }
                let mut term = gamma_pj.clone();
                for w in chain.windows(2) {
                    term = &(&term * &prep.c(w[0], w[1], j)?) * &val(w[0], w[1]);
                }
                phi = &phi + &term;
            }
            acc = acc.add(&prep.one_minus_h(p, j, m).scale(&phi));
        }
        u.set(i, j, acc);
    }
    Ok(u)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CoproductCheck {
    Pass,
    Fail { i: usize, j: usize },
}

impl CoproductCheck {
    pub fn passed(&self) -> bool {
        matches!(self, CoproductCheck::Pass)
    }
}

/// Δ(u_{i,j}) = u_{i,j} ⊗ 1 + h_{i,j} ⊗ u_{i,j} + Σ_{i<p<j} C^j_{i,p} u_{i,p} h_{p,j} ⊗ u_{p,j},
/// evaluated in kΓ ⊗ kΓ for every i < j. Reports the first failing pair in lexicographic order.
pub fn verify_coproduct_identity(r: &Realization, u: &UFamily) -> Result<CoproductCheck> {
    let prep = Prepared::new(r)?;
    let grp = r.group();
    let one = GroupAlgebraElement::basis(grp.identity(), CycNumber::one(1));
    let results: Vec<((usize, usize), bool)> = prep
        .pairs()
        .par_iter()
        .map(|&(i, j)| {
            let u_ij = u.get(i, j);
            let h = GroupAlgebraElement::basis(prep.h(i, j), CycNumber::one(1));
            let mut rhs = GroupAlgebraTensor::tensor(&u_ij, &one).add(&GroupAlgebraTensor::tensor(&h, &u_ij));
            for p in i + 1..j {
                let h_pj = GroupAlgebraElement::basis(prep.h(p, j), prep.c(i, p, j)?);
                let left = u.get(i, p).mul(grp, &h_pj);
                rhs = rhs.add(&GroupAlgebraTensor::tensor(&left, &u.get(p, j)));
            }
            Ok(((i, j), u_ij.coproduct().sub(&rhs).is_zero()))
        })
        .collect::<Result<_>>()?;
    Ok(results
        .into_iter()
        .find(|(_, ok)| !ok)
        .map_or(CoproductCheck::Pass, |((i, j), _)| CoproductCheck::Fail { i, j }))
}

/// Inverts the recursion: γ_{i,j} is read off from the residue u_{i,j} - Σ C^j_{i,p} γ_{i,p} u_{p,j},
/// which must be a multiple of 1 - h_{i,j}. When h_{i,j} = 1 the residue must vanish and γ_{i,j} = 0.
pub fn recover_gamma(r: &Realization, u: &UFamily) -> Result<GammaFamily> {
    let prep = Prepared::new(r)?;
    let n = prep.n();
    let mut gamma = GammaFamily::new();
    for len in 1..=n {
        for i in 1..=n + 1 - len {
            let j = i + len;
            let mut residue = u.get(i, j);
            for p in i + 1..j {
                if let Some(g_ip) = gamma.get(i, p) {
                    let c = &prep.c(i, p, j)? * g_ip;
                    residue = residue.sub(&u.get(p, j).scale(&c));
                }
            }
            if residue.is_zero() {
                continue;
            }
            let h = prep.h(i, j);
            let inconsistent = || Error::Validation(format!("inconsistent residue at ({i},{j}): {residue}"));
            if h.is_identity() || residue.terms().len() != 2 {
                return Err(inconsistent());
            }
            let id = r.group().identity();
            match (residue.coefficient(&id), residue.coefficient(&h)) {
                (Some(a), Some(b)) if (a + b).is_zero() => gamma.set(i, j, a.clone()),
                _ => return Err(inconsistent()),
            }
        }
    }
    Ok(gamma)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AdmissibilityMode {
    /// γ_{i,j} = 0 whenever g_{i,j}^N = 1 or χ_{i,j}^N ≠ ε.
    Classification,
    /// Only γ_{i,j} = 0 whenever g_{i,j}^N = 1.
    Combinatorial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LiftCondition {
    GroupTrivial,
    CharacterNontrivial,
    CoproductIdentity,
    NotCentral,
    UNonzero,
}

impl LiftCondition {
    pub fn tag(&self) -> &'static str {
        match self {
            LiftCondition::GroupTrivial => "gamma_ij = 0 if g_ij^N = 1",
            LiftCondition::CharacterNontrivial => "gamma_ij = 0 if chi_ij^N != eps",
            LiftCondition::CoproductIdentity => "coproduct identity for u_ij",
            LiftCondition::NotCentral => "u_ij central",
            LiftCondition::UNonzero => "u_ij = 0 if chi_ij^N != eps",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub condition: LiftCondition,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at ({},{})", self.condition.tag(), self.i, self.j)
    }
}

/// The first pair (lexicographic) with γ_{i,j} ≠ 0 although the mode requires it to vanish.
pub fn check_admissibility(r: &Realization, gamma: &GammaFamily, mode: AdmissibilityMode) -> Result<Option<Violation>> {
    let prep = Prepared::new(r)?;
    prep.embed_gamma(gamma)?;
    Ok(first_violation(&prep, gamma, mode))
}

fn first_violation(prep: &Prepared, gamma: &GammaFamily, mode: AdmissibilityMode) -> Option<Violation> {
    gamma.iter().find_map(|(&(i, j), _)| {
        let condition = if prep.h(i, j).is_identity() {
            LiftCondition::GroupTrivial
        } else if mode == AdmissibilityMode::Classification && !prep.eta_trivial(i, j) {
            LiftCondition::CharacterNontrivial
        } else {
            return None;
        };
        Some(Violation { i, j, condition })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralityReport {
    /// u_{i,j} = 0 whenever χ_{i,j}^N(g_l) ≠ 1 for some l.
    pub condition_a: bool,
    /// γ_{i,j} = 0 whenever χ_{i,j}^N(g_l) ≠ 1 for some l.
    pub condition_b: bool,
    /// Every u_{i,j} commutes with every x_l in the smash product.
    pub central: bool,
    /// (i, j, l) with u_{i,j} x_l ≠ x_l u_{i,j}.
    pub witness: Option<(usize, usize, usize)>,
}

impl CentralityReport {
    pub fn consistent(&self) -> bool {
        self.condition_a == self.condition_b && self.condition_b == self.central
    }
}

/// Evaluates both conditions of the centrality criterion and checks centrality directly:
/// since g x_l = χ_l(g) x_l g, the element u commutes with x_l iff Σ c_g χ_l(g) g = Σ c_g g.
pub fn centrality_check(r: &Realization, gamma: &GammaFamily) -> Result<CentralityReport> {
    let prep = Prepared::new(r)?;
    let u = compute_u_family(r, gamma)?;
    centrality_of(&prep, gamma, &u)
}

fn centrality_of(prep: &Prepared, gamma: &GammaFamily, u: &UFamily) -> Result<CentralityReport> {
    let grp = prep.r.group();
    let n = prep.n();
    let bad_eta = |i: usize, j: usize| {
        let eta = grp.char_pow(&prep.r.chi_ij(i, j), prep.order as i64);
        (1..=n).any(|l| !grp.evaluate(&eta, prep.r.g(l)).is_one())
    };
    let mut report = CentralityReport { condition_a: true, condition_b: true, central: true, witness: None };
    for (i, j) in prep.pairs() {
        let u_ij = u.get(i, j);
        if bad_eta(i, j) {
            report.condition_a &= u_ij.is_zero();
            report.condition_b &= gamma.get(i, j).is_none();
        }
        for l in 1..=n {
            let chi = prep.r.chi(l);
            let twisted = GroupAlgebraElement::from_terms(u_ij.terms().iter().map(|(g, c)| {
                let v: RootOfUnity = grp.evaluate(chi, g);
                (g.clone(), c * &v.to_cyc())
            }));
            if report.central && !twisted.sub(&u_ij).is_zero() {
                report.central = false;
                report.witness = Some((i, j, l));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LiftOutcome {
    /// N^{n(n+1)/2} |Γ|, certified by the basis criterion.
    Certified { dimension: u64 },
    /// γ solves the combinatorial problem but is outside the classification range.
    CombinatorialOnly,
    Failed(Violation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub outcome: LiftOutcome,
    pub checks: Vec<PropertyCheck>,
    pub notes: Vec<String>,
    /// Rendered u_{i,j} for every pair, in lexicographic order.
    pub u: Vec<((usize, usize), String)>,
}

impl LiftReport {
    pub fn dimension(&self) -> Option<u64> {
        match self.outcome {
            LiftOutcome::Certified { dimension } => Some(dimension),
            _ => None,
        }
    }

    pub fn passed(&self) -> bool {
        self.dimension().is_some() && self.checks.iter().all(|c| c.passed)
    }
}

pub fn lift_dimension(r: &Realization, gamma: &GammaFamily) -> Result<LiftReport> {
    lift_dimension_with_mode(r, gamma, AdmissibilityMode::Classification)
}

/// Checks that {e_{i,j}^N - u_{i,j}} meets the basis criterion (u_{i,j} central, and zero
/// whenever χ_{i,j}^N ≠ ε) and returns the certified dimension of A_γ.
pub fn lift_dimension_with_mode(r: &Realization, gamma: &GammaFamily, mode: AdmissibilityMode) -> Result<LiftReport> {
    let prep = Prepared::new(r)?;
    prep.embed_gamma(gamma)?;
    let mut report =
        LiftReport { outcome: LiftOutcome::CombinatorialOnly, checks: vec![], notes: prep.ctx.hypothesis_flags(), u: vec![] };
    let check = |report: &mut LiftReport, tag: &str, instance: String, passed: bool| {
        report.checks.push(PropertyCheck { tag: tag.into(), instance, passed });
        passed
    };

    let weak = first_violation(&prep, gamma, AdmissibilityMode::Combinatorial);
    let strong = first_violation(&prep, gamma, AdmissibilityMode::Classification);
    let chosen = if mode == AdmissibilityMode::Classification { &strong } else { &weak };
    if let Some(v) = chosen {
        check(&mut report, "admissibility", format!("({},{})", v.i, v.j), false);
        report.outcome = LiftOutcome::Failed(v.clone());
        return Ok(report);
    }
    check(&mut report, "admissibility", "all pairs".into(), true);

    let u = compute_u_family(r, gamma)?;
    report.u = u.iter().map(|(&k, v)| (k, v.to_string())).collect();
    let explicit = u_family_explicit(r, gamma)?;
    check(&mut report, "explicit-form", "all pairs".into(), explicit == u);

    if let CoproductCheck::Fail { i, j } = verify_coproduct_identity(r, &u)? {
        check(&mut report, "coproduct", format!("({i},{j})"), false);
        report.outcome = LiftOutcome::Failed(Violation { i, j, condition: LiftCondition::CoproductIdentity });
        return Ok(report);
    }
    check(&mut report, "coproduct", "all pairs".into(), true);

    if let Some(v) = strong {
        report.notes.push(format!(
            "combinatorial solution only, Hopf-dimension not certified ({v})"
        ));
        return Ok(report);
    }

    let cent = centrality_of(&prep, gamma, &u)?;
    check(&mut report, "centrality-conditions-agree", "a, b, central".into(), cent.consistent());
    if let Some((i, j, l)) = cent.witness {
        check(&mut report, "central", format!("u_{i}{j} and x_{l}"), false);
        report.outcome = LiftOutcome::Failed(Violation { i, j, condition: LiftCondition::NotCentral });
        return Ok(report);
    }
    check(&mut report, "central", "all pairs".into(), true);

    for (i, j) in prep.pairs() {
        if !prep.eta_trivial(i, j) && !u.get(i, j).is_zero() {
            check(&mut report, "u-vanishing", format!("({i},{j})"), false);
            report.outcome = LiftOutcome::Failed(Violation { i, j, condition: LiftCondition::UNonzero });
            return Ok(report);
        }
    }
    check(&mut report, "u-vanishing", "all pairs".into(), true);

    let dimension = prep
        .ctx
        .pbw_dimension()
        .checked_mul(r.group().order())
        .ok_or_else(|| Error::InvalidArgument("dimension overflows u64".into()))?;
    report.outcome = LiftOutcome::Certified { dimension };
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Distinction {
    Equal,
    Distinct,
}

/// Compares A_γ and A_γ̃ for data of the shape Γ = ⊕ Z/(N m_i) with the orders N m_i pairwise
/// distinct and γ_{i,i+1} = 1. There A_γ ≅ A_γ̃ forces u(γ) = u(γ̃), hence γ = γ̃.
pub fn distinguish_liftings(r: &Realization, gamma: &GammaFamily, other: &GammaFamily) -> Result<Distinction> {
    let prep = Prepared::new(r)?;
    let refuse = |why: String| Err(Error::Validation(format!("hypothesis-shape violation: {why}")));
    let grp = r.group();
    let n = prep.n();
    let orders: Vec<u64> = (1..=n).map(|i| grp.element_order(r.g(i))).collect();
    for a in 0..n {
        if orders[a] % prep.order as u64 != 0 {
            return refuse(format!("ord(g_{}) = {} is not a multiple of N = {}", a + 1, orders[a], prep.order));
        }
        for b in a + 1..n {
            if orders[a] == orders[b] {
                return refuse(format!("g_{} and g_{} both have order {}", a + 1, b + 1, orders[a]));
            }
        }
    }
    for (name, g) in [("gamma", gamma), ("other", other)] {
        prep.embed_gamma(g)?;
        for i in 1..=n {
            if !g.get(i, i + 1).is_some_and(|c| c.is_one()) {
                return refuse(format!("{name}_{i},{} is not 1", i + 1));
            }
        }
        if let Some(v) = first_violation(&prep, g, AdmissibilityMode::Classification) {
            return refuse(format!("{name} is not admissible: {v}"));
        }
    }
    let same_u = compute_u_family(r, gamma)? == compute_u_family(r, other)?;
    if same_u != (gamma == other) {
        return Err(Error::Validation("u-families and gamma families disagree on equality".into()));
    }
    Ok(if same_u { Distinction::Equal } else { Distinction::Distinct })
}
