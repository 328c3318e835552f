use std::collections::BTreeMap;

use super::family::c_coefficient;
use super::group::GroupElement;
use super::realization::Realization;
use crate::error::{Error, Result};
use crate::freealg::{coproduct, FreeElement, Word};
use crate::nichols::GradedAlgebraModel;
use crate::scalar::CycNumber;
use crate::typea::{IdentityCheck, Setting, TypeAContext, TypeAModels, VerificationReport};

/// A sum of (u # g) ⊗ v with u, v words; the right group slot is always 1 here.
type SmashTensor = Vec<(Word, GroupElement, Word, CycNumber)>;

type Coordinates = BTreeMap<(usize, u32, GroupElement, usize, u32), CycNumber>;

fn push_tensor(out: &mut SmashTensor, left: &FreeElement, g: &GroupElement, right: &FreeElement, c: &CycNumber) {
    for (u, a) in left.terms() {
        for (v, b) in right.terms() {
            out.push((u.clone(), g.clone(), v.clone(), &(a * b) * c));
        }
    }
}

fn coordinates(model: &GradedAlgebraModel, t: &SmashTensor) -> Result<Coordinates> {
    let mut cache: BTreeMap<&Word, _> = BTreeMap::new();
    for (u, _, v, _) in t {
        for w in [u, v] {
            if !cache.contains_key(w) {
                cache.insert(w, model.word_coordinates(w)?);
            }
        }
    }
    let mut out = Coordinates::new();
    for (u, g, v, c) in t {
        for (a, x) in cache[u].iter() {
            for (b, y) in cache[v].iter() {
                let val = &(c * x) * y;
                let key = (u.len(), *a, g.clone(), v.len(), *b);
                let slot = out.entry(key).or_insert_with(|| CycNumber::zero(1));
                *slot = &*slot + &val;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Bosonized coproduct: each braided term u ⊗ v becomes (u # g_v) ⊗ v, g_v the degree of v.
fn bosonize(r: &Realization, x: &FreeElement) -> SmashTensor {
    coproduct(x)
        .terms()
        .iter()
        .map(|((u, v), c)| (u.clone(), r.word_degree(v.letters()), v.clone(), c.clone()))
        .collect()
}

/// Bosonized coproducts of e_{i,j} and e_{i,j}^N in the pre-Nichols model, compared with
///   e ⊗ 1 + g_{i,j} ⊗ e + (1 - q^-1) Σ e_{i,p} g_{p,j} ⊗ e_{p,j}   and
///   e^N ⊗ 1 + g_{i,j}^N ⊗ e^N + Σ C^j_{i,p} e_{i,p}^N g_{p,j}^N ⊗ e_{p,j}^N.
pub fn smash_coproduct_check(r: &Realization, ctx: &TypeAContext, models: &TypeAModels) -> Result<VerificationReport> {
    if r.braiding() != ctx.diagonal() {
        return Err(Error::BraidingMismatch);
    }
    let model = &models.pre_nichols;
    let n = ctx.rank();
    let big_n = ctx.order();
    let needed = big_n as usize * n;
    if model.built_degree() < needed && !model.is_complete() {
        return Err(Error::DepthInsufficient { needed, built: model.built_degree() });
    }
    let grp = r.group();
    let m = ctx.diagonal().modulus();
    let one_el = FreeElement::one(ctx.braiding().clone());
    let one = CycNumber::one(m);
    let id = grp.identity();
    let factor = &one - &ctx.q().inv()?;
    let mut report = VerificationReport { checks: vec![], notes: ctx.hypothesis_flags() };
    for (i, j) in ctx.root_pairs() {
        let e = ctx.root_vector(i, j)?;
        let g_ij = r.g_ij(i, j);
        let mut closed = SmashTensor::new();
        push_tensor(&mut closed, e, &id, &one_el, &one);
        push_tensor(&mut closed, &one_el, &g_ij, e, &one);
        for p in i + 1..j {
            push_tensor(&mut closed, ctx.root_vector(i, p)?, &r.g_ij(p, j), ctx.root_vector(p, j)?, &factor);
        }
        report.checks.push(compare(model, "boson-delta", i, j, &bosonize(r, e), &closed)?);

        let en = e.pow(big_n);
        let mut closed = SmashTensor::new();
        push_tensor(&mut closed, &en, &id, &one_el, &one);
        push_tensor(&mut closed, &one_el, &grp.pow(&g_ij, big_n as i64), &en, &one);
        for p in i + 1..j {
            let c = c_coefficient(r, i, p, j)?;
            let left = ctx.root_vector(i, p)?.pow(big_n);
            let right = ctx.root_vector(p, j)?.pow(big_n);
            push_tensor(&mut closed, &left, &grp.pow(&r.g_ij(p, j), big_n as i64), &right, &c);
        }
        report.checks.push(compare(model, "boson-deltapow", i, j, &bosonize(r, &en), &closed)?);
    }
    Ok(report)
}

fn compare(
    model: &GradedAlgebraModel,
    tag: &str,
    i: usize,
    j: usize,
    lhs: &SmashTensor,
    rhs: &SmashTensor,
) -> Result<IdentityCheck> {
    let a = coordinates(model, lhs)?;
    let b = coordinates(model, rhs)?;
    let diff: Vec<_> = a
        .keys()
        .chain(b.keys())
        .filter(|k| a.get(*k) != b.get(*k))
        .collect();
    let witness = diff.first().map(|(du, x, g, dv, y)| {
        format!("{} differing coefficients, first at degrees ({du},{dv}) basis ({x},{y}) group {g}", diff.len())
    });
    Ok(IdentityCheck {
        tag: tag.into(),
        instance: format!("i={i}, j={j}"),
        setting: Setting::PreNichols,
        passed: witness.is_none(),
        witness,
    })
}
