use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{pbw_monomials, TypeAContext};
use crate::error::{Error, Result};
use crate::freealg::{braided_commutator, coproduct, free_multiply, FreeElement, TensorSquareElement, Word};
use crate::linalg::{block_rank, SparseVec};
use crate::nichols::{build_nichols_by_derivations, build_quotient, GradedAlgebraModel};
use crate::scalar::CycNumber;

/// Where an identity is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Setting {
    /// Literally, in T(V) or T(V) ⊗ T(V).
    TensorAlgebra,
    /// In T(V) modulo the quantum Serre relations 2.2.40, 2.2.400, 2.2.401.
    PreNichols,
    /// In the Nichols algebra.
    Nichols,
}

#[derive(Clone, Debug)]
pub enum IdentityBody {
    Algebra(FreeElement),
    Tensor(TensorSquareElement),
}

/// An element that should vanish in its setting.
#[derive(Clone, Debug)]
pub struct Identity {
    pub tag: String,
    pub instance: String,
    pub setting: Setting,
    pub body: IdentityBody,
}

impl Identity {
    pub fn new(tag: &str, instance: String, setting: Setting, body: IdentityBody) -> Self {
        Identity { tag: tag.to_string(), instance, setting, body }
    }

    /// The largest degree of a word (or tensor factor) involved.
    pub fn degree(&self) -> usize {
        match &self.body {
            IdentityBody::Algebra(x) => x.max_degree().unwrap_or(0),
            IdentityBody::Tensor(t) => t.terms().keys().map(|(u, v)| u.len().max(v.len())).max().unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub tag: String,
    pub instance: String,
    pub setting: Setting,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<IdentityCheck>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn with_tag<'a>(&'a self, tag: &'a str) -> impl Iterator<Item = &'a IdentityCheck> {
        self.checks.iter().filter(move |c| c.tag == tag)
    }

    pub fn tags(&self) -> Vec<&str> {
        let mut t: Vec<&str> = self.checks.iter().map(|c| c.tag.as_str()).collect();
        t.dedup();
        t
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    fn push(&mut self, tag: &str, instance: String, setting: Setting, witness: Option<String>) {
        self.checks.push(IdentityCheck { tag: tag.into(), instance, setting, passed: witness.is_none(), witness });
    }
}

/// The Nichols algebra (built until complete) and the pre-Nichols quotient by the
/// quantum Serre relations (built far enough for N-th powers of root vectors).
#[derive(Clone, Debug)]
pub struct TypeAModels {
    pub nichols: GradedAlgebraModel,
    pub pre_nichols: GradedAlgebraModel,
}

impl TypeAModels {
    /// Degrees above `ceiling` are not built; identities needing them are skipped.
    pub fn build(ctx: &TypeAContext, ceiling: usize) -> Result<Self> {
        let nichols = build_nichols_by_derivations(ctx.braiding(), (ctx.top_degree() + 2).min(ceiling))?;
        let depth = (ctx.rank() * (ctx.order() as usize + 1)).min(ceiling);
        let pre_nichols = build_quotient(ctx.braiding(), &serre_relations(ctx)?, depth)?;
        Ok(TypeAModels { nichols, pre_nichols })
    }

    fn for_setting(&self, s: Setting) -> Option<&GradedAlgebraModel> {
        match s {
            Setting::TensorAlgebra => None,
            Setting::PreNichols => Some(&self.pre_nichols),
            Setting::Nichols => Some(&self.nichols),
        }
    }
}

fn commutator(a: &FreeElement, b: &FreeElement) -> Result<FreeElement> {
    braided_commutator(a, b)
}

fn x(ctx: &TypeAContext, i: usize) -> &FreeElement {
    &ctx.roots[&(i, i + 1)]
}

/// The relations 2.2.40, 2.2.400 and 2.2.401 as elements of T(V).
pub fn serre_relations(ctx: &TypeAContext) -> Result<Vec<FreeElement>> {
    Ok(serre_identities(ctx)?
        .into_iter()
        .filter_map(|id| match id.body {
            IdentityBody::Algebra(e) => Some(e),
            IdentityBody::Tensor(_) => None,
        })
        .collect())
}

fn serre_identities(ctx: &TypeAContext) -> Result<Vec<Identity>> {
    let n = ctx.rank();
    let mut out = Vec::new();
    for i in 1..=n {
        for p in i + 2..=n {
            let body = commutator(x(ctx, i), x(ctx, p))?;
            out.push(Identity::new("2.2.40", format!("i={i}, p={p}"), Setting::Nichols, IdentityBody::Algebra(body)));
        }
    }
    for i in 1..n {
        let inner = commutator(x(ctx, i), x(ctx, i + 1))?;
        let body = commutator(x(ctx, i), &inner)?;
        out.push(Identity::new("2.2.400", format!("i={i}"), Setting::Nichols, IdentityBody::Algebra(body)));
        let inner = commutator(x(ctx, i + 1), x(ctx, i))?;
        let body = commutator(x(ctx, i + 1), &inner)?;
        out.push(Identity::new("2.2.401", format!("i={i}"), Setting::Nichols, IdentityBody::Algebra(body)));
    }
    Ok(out)
}

/// Identities claimed for the Nichols algebra itself: nilpotency and the Serre relations.
pub fn nichols_identities(ctx: &TypeAContext) -> Result<Vec<Identity>> {
    let n = ctx.rank();
    let big_n = ctx.order();
    let mut out = Vec::new();
    for i in 1..=n {
        let body = x(ctx, i).pow(big_n);
        out.push(Identity::new("2.1.7", format!("i={i}"), Setting::Nichols, IdentityBody::Algebra(body)));
    }
    out.extend(serre_identities(ctx)?);
    for (i, j) in ctx.root_pairs() {
        let body = ctx.roots[&(i, j)].pow(big_n);
        out.push(Identity::new("2.2.501", format!("i={i}, j={j}"), Setting::Nichols, IdentityBody::Algebra(body)));
    }
    Ok(out)
}

/// Identities that follow from the Serre relations alone, checked in the pre-Nichols quotient.
pub fn pre_nichols_identities(ctx: &TypeAContext) -> Result<Vec<Identity>> {
    let m = ctx.n + 1;
    let e = |i: usize, j: usize| &ctx.roots[&(i, j)];
    let alg = |tag: &str, inst: String, body: FreeElement| {
        Identity::new(tag, inst, Setting::PreNichols, IdentityBody::Algebra(body))
    };
    let mut out = Vec::new();
    let q_minus_one = &ctx.q() - &CycNumber::one(ctx.diagonal().modulus());
    for i in 1..=m {
        for j in i + 1..=m {
            for p in j + 1..=m {
                for r in p + 1..=m {
                    let inst = format!("i={i}, j={j}, p={p}, r={r}");
                    out.push(alg("2.2.4", inst.clone(), commutator(e(i, j), e(p, r))?));
                    out.push(alg("2.2.4bis", inst, commutator(e(p, r), e(i, j))?));
                }
            }
        }
    }
    for i in 1..=m {
        for p in i + 1..=m {
            for j in p + 1..=m {
                let inst = format!("i={i}, p={p}, j={j}");
                let lhs = commutator(e(i, p), e(p, j))?;
                out.push(alg("2.2.6", inst, lhs.checked_sub(e(i, j))?));
            }
        }
    }
    for i in 1..=m {
        for p in i + 1..=m {
            for r in p + 1..=m {
                for j in r + 1..=m {
                    out.push(alg("2.2.41", format!("i={i}, p={p}, r={r}, j={j}"), commutator(e(i, j), e(p, r))?));
                }
            }
        }
    }
    for i in 1..=m {
        for j in i + 1..=m {
            for r in j + 1..=m {
                out.push(alg("2.2.42", format!("i={i}, j={j}, r={r}"), commutator(e(i, j), e(i, r))?));
            }
        }
    }
    for i in 1..=m {
        for p in i + 1..=m {
            for j in p + 1..=m {
                out.push(alg("2.2.43", format!("i={i}, p={p}, j={j}"), commutator(e(i, j), e(p, j))?));
            }
        }
    }
    for i in 1..=m {
        for p in i + 1..=m {
            for j in p + 1..=m {
                for r in j + 1..=m {
                    out.push(identity_2_2_7(ctx, i, p, j, r, &(&ctx.b_coefficient(p, j, j, r)? * &q_minus_one))?);
                }
            }
        }
    }
    for (i, j) in ctx.root_pairs() {
        for (s, t) in ctx.root_pairs() {
            let body = commutator(e(i, j), &e(s, t).pow(ctx.order()))?;
            out.push(alg("commutationN", format!("(i,j)=({i},{j}), (s,t)=({s},{t})"), body));
        }
    }
    for i in 1..=ctx.n.saturating_sub(2) {
        let (a1, a2, a3) = (x(ctx, i), x(ctx, i + 1), x(ctx, i + 2));
        let body = commutator(&commutator(&commutator(a1, a2)?, a3)?, a2)?;
        out.push(alg("brcomm3", format!("a1=x{i}, a2=x{}, a3=x{}", i + 1, i + 2), body));
    }
    Ok(out)
}

/// [e_ij, e_pr]_c - coefficient · e_ir e_pj; vanishes for coefficient B^{pj}_{jr}(q - 1).
pub fn identity_2_2_7(
    ctx: &TypeAContext,
    i: usize,
    p: usize,
    j: usize,
    r: usize,
    coefficient: &CycNumber,
) -> Result<Identity> {
    let e = |a: usize, b: usize| ctx.root_vector(a, b);
    let lhs = commutator(e(i, j)?, e(p, r)?)?;
    let rhs = free_multiply(e(i, r)?, e(p, j)?)?.scale(coefficient);
    Ok(Identity::new(
        "2.2.7",
        format!("i={i}, p={p}, j={j}, r={r}"),
        Setting::PreNichols,
        IdentityBody::Algebra(lhs.checked_sub(&rhs)?),
    ))
}

/// c(e_ij ⊗ e_pr) - B^{ij}_{pr} e_pr ⊗ e_ij in T(V) ⊗ T(V).
fn covariance_identity(ctx: &TypeAContext, a: (usize, usize), b: (usize, usize)) -> Result<Identity> {
    let br = ctx.braiding();
    let (u, v) = (&ctx.roots[&a], &ctx.roots[&b]);
    let mut acc = TensorSquareElement::zero(br.clone());
    for (wu, cu) in u.terms() {
        for (wv, cv) in v.terms() {
            let c = cu * cv;
            for (w, k) in br.braid_words(wu, wv) {
                let (l, r) = w.0.split_at(wv.len());
                acc = acc.checked_add(&TensorSquareElement::pure(br.clone(), Word::from(l), Word::from(r), &k * &c))?;
            }
        }
    }
    let expected = TensorSquareElement::tensor(v, u)?.scale(&ctx.b_coefficient(a.0, a.1, b.0, b.1)?);
    let body = acc.checked_add(&expected.scale(&-CycNumber::one(br.modulus())))?;
    Ok(Identity::new(
        "2.2.3",
        format!("(i,j)=({},{}), (p,r)=({},{})", a.0, a.1, b.0, b.1),
        Setting::TensorAlgebra,
        IdentityBody::Tensor(body),
    ))
}

/// Coordinates of an element of T(V) ⊗ T(V) in (basis ⊗ basis) of the model, keyed by
/// (left degree, left index, right degree, right index).
pub fn tensor_coordinates(
    model: &GradedAlgebraModel,
    t: &TensorSquareElement,
) -> Result<BTreeMap<(usize, u32, usize, u32), CycNumber>> {
    let mut cache: BTreeMap<&Word, SparseVec> = BTreeMap::new();
    for (u, v) in t.terms().keys() {
        for w in [u, v] {
            if !cache.contains_key(w) {
                cache.insert(w, model.word_coordinates(w)?);
            }
        }
    }
    let mut out: BTreeMap<(usize, u32, usize, u32), CycNumber> = BTreeMap::new();
    for ((u, v), c) in t.terms() {
        for (a, x) in cache[u].iter() {
            for (b, y) in cache[v].iter() {
                let val = &(c * x) * y;
                let slot = out.entry((u.len(), *a, v.len(), *b)).or_insert_with(|| CycNumber::zero(val.modulus()));
                *slot = &*slot + &val;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn render_word(model: &GradedAlgebraModel, w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let b = model.braiding();
    w.0.iter().map(|&l| b.label(l as usize).to_string()).collect::<Vec<_>>().join("*")
}

/// None when the identity holds, otherwise a description of what survives.
fn evaluate(identity: &Identity, model: Option<&GradedAlgebraModel>) -> Result<Option<String>> {
    match (&identity.body, model) {
        (IdentityBody::Algebra(x), None) => Ok((!x.is_zero()).then(|| format!("{x}"))),
        (IdentityBody::Tensor(t), None) => Ok((!t.is_zero()).then(|| format!("{t:?}"))),
        (IdentityBody::Algebra(x), Some(m)) => {
            let coords = m.coordinates(x)?;
            Ok(coords.iter().next().map(|(n, v)| format!("degree {n} remainder {}", m.element(*n, v))))
        }
        (IdentityBody::Tensor(t), Some(m)) => {
            let coords = tensor_coordinates(m, t)?;
            Ok(coords.iter().next().map(|((dl, a, dr, b), c)| {
                format!(
                    "{} surviving terms, first ({c}) {} ⊗ {}",
                    coords.len(),
                    render_word(m, &m.basis(*dl)[*a as usize]),
                    render_word(m, &m.basis(*dr)[*b as usize])
                )
            }))
        }
    }
}

/// Checks identities in parallel; those needing degrees beyond an incomplete model are
/// skipped with a note.
pub fn verify_identities(models: &TypeAModels, identities: &[Identity]) -> Result<VerificationReport> {
    let results: Vec<Result<Option<IdentityCheck>>> = identities
        .par_iter()
        .map(|id| {
            let model = models.for_setting(id.setting);
            if let Some(m) = model {
                if !m.is_complete() && id.degree() > m.built_degree() {
                    return Ok(None);
                }
            }
            let witness = evaluate(id, model)?;
            Ok(Some(IdentityCheck {
                tag: id.tag.clone(),
                instance: id.instance.clone(),
                setting: id.setting,
                passed: witness.is_none(),
                witness,
            }))
        })
        .collect();
    let mut report = VerificationReport::default();
    for (id, r) in identities.iter().zip(results) {
        match r? {
            Some(c) => report.checks.push(c),
            None => report.notes.push(format!(
                "skipped {} [{}]: needs degree {}, above the configured ceiling",
                id.tag,
                id.instance,
                id.degree()
            )),
        }
    }
    Ok(report)
}

/// The relation lemmas: nilpotency, Serre relations, 2.2.4–2.2.7, vanishing of N-th powers,
/// the commutation of N-th powers, braiding covariance and the iterated commutator lemma.
pub fn verify_relation_suite(ctx: &TypeAContext, models: &TypeAModels) -> Result<VerificationReport> {
    let mut report = VerificationReport { checks: vec![], notes: ctx.hypothesis_flags() };
    let mut ids = nichols_identities(ctx)?;
    ids.extend(pre_nichols_identities(ctx)?);
    let pairs = ctx.root_pairs();
    for &a in &pairs {
        for &b in &pairs {
            ids.push(covariance_identity(ctx, a, b)?);
        }
    }
    report.merge(verify_identities(models, &ids)?);
    // scalar hypotheses of the iterated commutator lemma for a1, a2, a3 = x_i, x_{i+1}, x_{i+2}
    let d = ctx.diagonal();
    for i in 0..ctx.n.saturating_sub(2) {
        let q = |a: usize, b: usize| d.q_root(i + a - 1, i + b - 1);
        let t2 = q(2, 1).mul(q(1, 2)).mul(q(2, 2));
        let t3 = q(2, 3).mul(q(3, 2)).mul(q(2, 2));
        let q22_ok = q(2, 2).order() != 2;
        let witness = if !t2.is_one() {
            Some(format!("techni2 product is {t2}"))
        } else if !t3.is_one() {
            Some(format!("techni3 product is {t3}"))
        } else if !q22_ok {
            Some("chi_2(g_2) = -1".to_string())
        } else {
            None
        };
        report.push("brcomm3-hypotheses", format!("i={}", i + 1), Setting::TensorAlgebra, witness);
    }
    Ok(report)
}

/// Δ(e_ij) and Δ(e_ij^N) against their closed forms, modulo the Serre relations in
/// both tensor factors.
pub fn verify_coproducts(ctx: &TypeAContext, models: &TypeAModels) -> Result<VerificationReport> {
    let br = ctx.braiding();
    let modulus = br.modulus();
    let one = FreeElement::one(br.clone());
    let minus = -CycNumber::one(modulus);
    let big_n = ctx.order();
    let factor = &CycNumber::one(modulus) - &ctx.q().inv()?;
    let factor_n = factor.pow(big_n as u64);
    let mut ids = Vec::new();
    for (i, j) in ctx.root_pairs() {
        let e = &ctx.roots[&(i, j)];
        let mut closed = TensorSquareElement::tensor(e, &one)?.checked_add(&TensorSquareElement::tensor(&one, e)?)?;
        for p in i + 1..j {
            closed = closed
                .checked_add(&TensorSquareElement::tensor(&ctx.roots[&(i, p)], &ctx.roots[&(p, j)])?.scale(&factor))?;
        }
        let body = coproduct(e).checked_add(&closed.scale(&minus))?;
        ids.push(Identity::new("2.2.5", format!("i={i}, j={j}"), Setting::PreNichols, IdentityBody::Tensor(body)));

        let en = e.pow(big_n);
        let mut closed = TensorSquareElement::tensor(&en, &one)?.checked_add(&TensorSquareElement::tensor(&one, &en)?)?;
        for p in i + 1..j {
            let c = c_coefficient_value(ctx, i, p, j, &factor_n)?;
            let t = TensorSquareElement::tensor(&ctx.roots[&(i, p)].pow(big_n), &ctx.roots[&(p, j)].pow(big_n))?;
            closed = closed.checked_add(&t.scale(&c))?;
        }
        let body = coproduct(&en).checked_add(&closed.scale(&minus))?;
        ids.push(Identity::new("2.2.500", format!("i={i}, j={j}"), Setting::PreNichols, IdentityBody::Tensor(body)));
    }
    let mut report = VerificationReport { checks: vec![], notes: ctx.hypothesis_flags() };
    report.merge(verify_identities(models, &ids)?);
    Ok(report)
}

/// (1 - q^-1)^N (B^{p,j}_{i,p})^{N(N-1)/2}, given (1 - q^-1)^N.
fn c_coefficient_value(ctx: &TypeAContext, i: usize, p: usize, j: usize, factor_n: &CycNumber) -> Result<CycNumber> {
    let n = ctx.order() as i64;
    let b = ctx.b_root(p, j, i, p)?.pow(n * (n - 1) / 2);
    Ok(factor_n * &b.to_cyc())
}

/// The PBW theorem in the completed Nichols model: per-degree monomial counts, the total
/// N^{n(n+1)/2}, and linear independence of the monomials degree by degree.
pub fn verify_pbw(ctx: &TypeAContext, model: &GradedAlgebraModel) -> Result<VerificationReport> {
    if !model.is_complete() {
        return Err(Error::DepthInsufficient { needed: ctx.top_degree() + 1, built: model.built_degree() });
    }
    let mut report = VerificationReport { checks: vec![], notes: ctx.hypothesis_flags() };
    let monomials = pbw_monomials(ctx, ctx.order());
    let top = ctx.top_degree();
    let dims = model.dims();
    let coords: Vec<(usize, SparseVec)> = monomials
        .par_iter()
        .map(|m| {
            let d = m.degree(ctx);
            let c = model.coordinates(&m.element(ctx)?)?;
            Ok((d, c.get(&d).cloned().unwrap_or_default()))
        })
        .collect::<Result<_>>()?;
    let mut by_degree: BTreeMap<usize, Vec<SparseVec>> = BTreeMap::new();
    for (d, v) in coords {
        by_degree.entry(d).or_default().push(v);
    }
    for d in 0..=top.max(dims.len().saturating_sub(1)) {
        let vecs = by_degree.remove(&d).unwrap_or_default();
        let dim = dims.get(d).copied().unwrap_or(0);
        let count = vecs.len();
        let w = (count != dim).then(|| format!("{count} monomials, model dimension {dim}"));
        report.push("pbw-count", format!("degree {d}"), Setting::Nichols, w);
        let rank = block_rank(&vecs);
        let w = (rank != count).then(|| format!("monomials span rank {rank} of {count}"));
        report.push("pbw-independence", format!("degree {d}"), Setting::Nichols, w);
    }
    let total = model.hilbert_series().total_dimension().unwrap_or(0);
    let expected = ctx.pbw_dimension();
    let w = (total != expected || monomials.len() as u64 != expected)
        .then(|| format!("model total {total}, monomials {}, expected {expected}", monomials.len()));
    report.push("pbw-total", format!("N^{} = {expected}", ctx.root_pairs().len()), Setting::Nichols, w);
    Ok(report)
}

/// The quotient of T(V) by 2.2.40, 2.2.400, 2.2.401 and 2.2.501 has the Hilbert series of
/// the Nichols algebra, so the four families present it.
pub fn verify_presentation(ctx: &TypeAContext, model: &GradedAlgebraModel) -> Result<VerificationReport> {
    if !model.is_complete() {
        return Err(Error::DepthInsufficient { needed: ctx.top_degree() + 1, built: model.built_degree() });
    }
    let mut report = VerificationReport { checks: vec![], notes: ctx.hypothesis_flags() };
    let mut rels = serre_relations(ctx)?;
    for (i, j) in ctx.root_pairs() {
        rels.push(ctx.roots[&(i, j)].pow(ctx.order()));
    }
    let quotient = build_quotient(ctx.braiding(), &rels, ctx.top_degree() + 2)?;
    let (qd, md) = (quotient.dims(), model.hilbert_series().coefficients().to_vec());
    for d in 0..qd.len().max(md.len()) {
        let (a, b) = (qd.get(d).copied().unwrap_or(0), md.get(d).copied().unwrap_or(0));
        let w = (a != b).then(|| format!("quotient spans {a}, Nichols algebra has {b}"));
        report.push("presentation", format!("degree {d}"), Setting::Nichols, w);
    }
    let qt = quotient.hilbert_series().total_dimension();
    let w = (!quotient.is_complete() || qt != model.hilbert_series().total_dimension())
        .then(|| format!("quotient total {qt:?}, complete {}", quotient.is_complete()));
    report.push("presentation-total", format!("total {}", ctx.pbw_dimension()), Setting::Nichols, w);
    Ok(report)
}
