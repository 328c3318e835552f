//! Job execution: every command fills sections of a [`Report`] and records verdicts.

use std::collections::BTreeMap;
use std::sync::Arc;

use clap::ValueEnum;
use nichols_core::braiding::{
    detect_cartan, match_rank_two_table, predicted_dimension, Braiding, CartanDetection, DiagonalBraiding,
    PredictedDimension,
};
use nichols_core::lifting::{
    centrality_check, lift_dimension_with_mode, smash_coproduct_check, validate_linking, validate_realization,
    AdmissibilityMode, LiftOutcome, Realization, RealizationCheck,
};
use nichols_core::nichols::{
    build_nichols_by_derivations, dims_by_gram, dims_by_symmetrizer, poincare_check, relations, HilbertSeries,
    PoincareOutcome,
};
use nichols_core::typea::{
    verify_coproducts, verify_pbw, verify_presentation, verify_relation_suite, TypeAContext, TypeAModels,
    VerificationReport,
};
use nichols_core::{CycNumber, Error};
use serde_json::{json, Value};

use crate::spec::{LiftSpec, Spec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Hilbert,
    Relations,
    Cartan,
    TypeaVerify,
    Lift,
    ReportAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Symmetrizer,
    Derivation,
    Gram,
    CrossCheck,
}

impl Engine {
    fn name(self) -> &'static str {
        match self {
            Engine::Symmetrizer => "symmetrizer",
            Engine::Derivation => "derivation",
            Engine::Gram => "gram",
            Engine::CrossCheck => "cross-check",
        }
    }
}

pub struct Job {
    pub command: Command,
    pub input: String,
    pub max_degree: usize,
    pub engine: Option<Engine>,
}

#[derive(Default)]
pub struct Report {
    sections: BTreeMap<String, Value>,
    verdicts: Vec<Value>,
    notes: Vec<String>,
    truncated: Option<usize>,
}

impl Report {
    fn verdict(&mut self, section: &str, name: &str, instance: impl Into<String>, passed: bool, detail: Option<String>) {
        let mut v = json!({ "section": section, "name": name, "instance": instance.into(), "passed": passed });
        if let Some(d) = detail {
            v["detail"] = Value::String(d);
        }
        self.verdicts.push(v);
    }

    fn note(&mut self, n: impl Into<String>) {
        let n = n.into();
        if !self.notes.contains(&n) {
            self.notes.push(n);
        }
    }

    fn truncate(&mut self, degree: usize) {
        self.truncated = Some(self.truncated.map_or(degree, |d| d.min(degree)));
    }

    pub fn passed(&self) -> bool {
        self.truncated.is_none() && self.verdicts.iter().all(|v| v["passed"] == Value::Bool(true))
    }

    pub fn document(&self, job: &Job, engine: Option<Engine>) -> Value {
        json!({
            "schema": 1,
            "command": command_name(job.command),
            "input": job.input,
            "max_degree": job.max_degree,
            "engine": engine.map(Engine::name),
            "sections": self.sections,
            "verdicts": self.verdicts,
            "notes": self.notes,
            "truncated": self.truncated.map(|d| format!("truncated at degree {d}")),
            "passed": self.passed(),
        })
    }
}

pub fn command_name(c: Command) -> &'static str {
    match c {
        Command::Hilbert => "hilbert",
        Command::Relations => "relations",
        Command::Cartan => "cartan",
        Command::TypeaVerify => "typea-verify",
        Command::Lift => "lift",
        Command::ReportAll => "report-all",
    }
}

/// The engine used when none is requested: derivations where they apply, the symmetrizer otherwise.
pub fn default_engine(b: &Braiding) -> Engine {
    if b.as_diagonal().is_some() || b.as_group().is_some() {
        Engine::Derivation
    } else {
        Engine::Symmetrizer
    }
}

pub fn run(job: &Job, spec: &Spec) -> anyhow::Result<(Report, Option<Engine>)> {
    let mut report = Report::default();
    match spec {
        Spec::Braiding(b) => {
            let engine = job.engine.unwrap_or_else(|| default_engine(b));
            if matches!(engine, Engine::Gram) && b.as_diagonal().is_none() {
                anyhow::bail!("engine gram requires a diagonal braiding, got {}", b.kind_name());
            }
            match job.command {
                Command::Hilbert => {
                    hilbert(&mut report, b, engine, job.max_degree)?;
                }
                Command::Relations => {
                    // A complete series bounds the degrees where new relations can appear.
                    let (h, _) = with_budget(job.max_degree, |k| series_by(default_engine(b), b, k))?;
                    let top = if h.is_complete() { h.top_degree() } else { None };
                    relations_section(&mut report, b, job.max_degree, top)?
                }
                Command::Cartan => cartan(&mut report, b, engine, job.max_degree)?,
                Command::TypeaVerify => typea(&mut report, diagonal(b)?, job.max_degree)?,
                Command::Lift => anyhow::bail!("the lift command needs a lifting spec (\"kind\": \"lift\")"),
                Command::ReportAll => {
                    let h = hilbert(&mut report, b, engine, job.max_degree)?;
                    let top = if h.is_complete() { h.top_degree() } else { None };
                    relations_section(&mut report, b, job.max_degree, top)?;
                    if let Some(d) = b.as_diagonal() {
                        cartan_with(&mut report, d, &h)?;
                        if TypeAContext::new(d.clone()).is_ok() {
                            typea(&mut report, d, job.max_degree)?;
                        }
                    }
                }
            }
            Ok((report, Some(engine)))
        }
        Spec::Lift(l) => {
            match job.command {
                Command::Lift | Command::ReportAll => lift(&mut report, l)?,
                other => anyhow::bail!("command {} needs a braiding spec, got a lifting spec", command_name(other)),
            }
            Ok((report, None))
        }
    }
}

fn diagonal(b: &Braiding) -> anyhow::Result<&DiagonalBraiding> {
    b.as_diagonal()
        .ok_or_else(|| anyhow::anyhow!("this command needs a diagonal braiding, got {}", b.kind_name()))
}

/// Runs `f` up to degree `d`; on a budget error reruns just below the failing degree.
fn with_budget<T>(d: usize, f: impl Fn(usize) -> nichols_core::Result<T>) -> nichols_core::Result<(T, Option<usize>)> {
    let mut d = d;
    let mut truncated = None;
    loop {
        match f(d) {
            Ok(v) => return Ok((v, truncated)),
            Err(Error::BudgetExceeded { degree, .. }) if degree >= 1 && degree <= d => {
                truncated = Some(degree);
                d = degree - 1;
            }
            Err(e) => return Err(e),
        }
    }
}

fn series_by(engine: Engine, b: &Arc<Braiding>, d: usize) -> nichols_core::Result<HilbertSeries> {
    match engine {
        Engine::Symmetrizer => dims_by_symmetrizer(b, d),
        Engine::Derivation => Ok(build_nichols_by_derivations(b, d)?.hilbert_series().clone()),
        Engine::Gram => {
            let diag = b.as_diagonal().ok_or_else(|| Error::Unsupported("gram needs diagonal input".into()))?;
            let s = diag.symmetrize();
            let weights = vec![CycNumber::one(s.modulus()); s.theta()];
            dims_by_gram(&s, d, &weights)
        }
        Engine::CrossCheck => unreachable!("cross-check is expanded by the caller"),
    }
}

fn series_json(h: &HilbertSeries) -> Value {
    let mut v = json!({
        "coefficients": h.coefficients(),
        "complete": h.is_complete(),
        "total": h.total_dimension(),
    });
    if !h.is_complete() {
        v["lower_bound"] = json!(format!(">= {} (cutoff reached)", h.partial_sum()));
    }
    v
}

fn hilbert(report: &mut Report, b: &Arc<Braiding>, engine: Engine, d: usize) -> anyhow::Result<HilbertSeries> {
    let engines: Vec<Engine> = match engine {
        Engine::CrossCheck => {
            let mut e = vec![Engine::Symmetrizer];
            if b.as_diagonal().is_some() || b.as_group().is_some() {
                e.push(Engine::Derivation);
            }
            if b.as_diagonal().is_some() {
                e.push(Engine::Gram);
            }
            e
        }
        e => vec![e],
    };
    let mut results = Vec::new();
    for e in &engines {
        let (h, t) = with_budget(d, |k| series_by(*e, b, k))?;
        if let Some(t) = t {
            report.truncate(t);
            report.note(format!("{} engine stopped by its budget in degree {t}", e.name()));
        }
        results.push((*e, h));
    }
    let (_, main) = results.first().cloned().expect("at least one engine");
    let mut section = series_json(&main);
    if results.len() > 1 {
        let per: BTreeMap<&str, Value> = results.iter().map(|(e, h)| (e.name(), series_json(h))).collect();
        section["per_engine"] = json!(per);
        let len = results.iter().map(|(_, h)| h.coefficients().len()).min().unwrap_or(0);
        let prefix = |h: &HilbertSeries| h.coefficients()[..len].to_vec();
        let agree = results.iter().all(|(_, h)| prefix(h) == prefix(&main))
            && results.iter().all(|(_, h)| !h.is_complete() || !main.is_complete() || h == &main);
        let names: Vec<&str> = results.iter().map(|(e, _)| e.name()).collect();
        report.verdict("hilbert", "engines-agree", names.join(", "), agree, None);
    }
    if main.is_complete() {
        let outcome = poincare_check(&main)?;
        let detail = match outcome {
            PoincareOutcome::Pass => None,
            PoincareOutcome::Fail { position } => Some(format!("dim R({position}) differs from its mirror")),
        };
        report.verdict("hilbert", "poincare-duality", "", detail.is_none(), detail);
    } else {
        report.note(format!("series not complete up to degree {}; total dimension unknown", main.coefficients().len() - 1));
    }
    report.sections.insert("hilbert".into(), section);
    Ok(main)
}

fn relations_section(report: &mut Report, b: &Arc<Braiding>, d: usize, top: Option<usize>) -> anyhow::Result<()> {
    let depth = top.map_or(d, |t| d.min(t + 1));
    let (rels, t) = with_budget(depth, |k| relations(b, k))?;
    if let Some(t) = t {
        report.truncate(t);
    }
    let by_degree: Vec<Value> = rels
        .iter()
        .filter(|(_, r)| !r.is_empty())
        .map(|(n, r)| {
            json!({
                "degree": n,
                "count": r.len(),
                "relations": r.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let searched = rels.last().map_or(1, |(n, _)| *n);
    report.sections.insert("relations".into(), json!({ "searched_to_degree": searched, "by_degree": by_degree }));
    Ok(())
}

fn cartan(report: &mut Report, b: &Arc<Braiding>, engine: Engine, d: usize) -> anyhow::Result<()> {
    let diag = diagonal(b)?;
    let h = hilbert(report, b, engine, d)?;
    cartan_with(report, diag, &h)
}

fn power_string(n: u32, roots: u64) -> String {
    format!("{n}^{roots}")
}

fn cartan_with(report: &mut Report, diag: &DiagonalBraiding, h: &HilbertSeries) -> anyhow::Result<()> {
    let computed = h.total_dimension();
    let (section, predicted) = match detect_cartan(diag) {
        CartanDetection::Cartan(cd) => {
            let labels: Vec<String> = cd.type_labels.iter().map(|t| t.to_string()).collect();
            let orders: Vec<String> =
                cd.orders.iter().map(|o| o.map_or_else(|| "mixed".to_string(), |n| n.to_string())).collect();
            let predicted = predicted_dimension(&cd);
            let (pred_text, pred_value) = match &predicted {
                PredictedDimension::Finite(v) => {
                    let factors: Vec<String> = cd
                        .orders
                        .iter()
                        .zip(&cd.positive_root_counts)
                        .map(|(o, r)| power_string(o.unwrap_or(0), r.unwrap_or(0)))
                        .collect();
                    (format!("{} = {v}", factors.join(" * ")), v.to_string().parse::<u64>().ok())
                }
                PredictedDimension::Infinite => ("infinite".to_string(), None),
                PredictedDimension::Unsupported(why) => (format!("unsupported ({why})"), None),
            };
            let orders_text = if orders.iter().all(|o| o == &orders[0]) { orders[0].clone() } else { orders.join(",") };
            let summary = format!("{}, N={}, predicted dim {}", labels.join(" x "), orders_text, pred_text);
            let section = json!({
                "cartan_type": true,
                "cartan_matrix": cd.cartan_matrix,
                "components": cd.components.iter().map(|c| c.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "types": labels,
                "orders": cd.orders,
                "predicted_dimension": pred_text,
                "computed_dimension": computed,
                "summary": summary,
            });
            (section, pred_value)
        }
        CartanDetection::NotCartan { i, j } => {
            let row = match_rank_two_table(diag);
            let summary = match &row {
                Some(m) => format!("not of Cartan type; matches row {} of the rank-two table, dim {}", m.row, m.dimension),
                None => format!("not of Cartan type (witness pair ({}, {}))", i + 1, j + 1),
            };
            let section = json!({
                "cartan_type": false,
                "witness": [i + 1, j + 1],
                "rank_two_row": row.as_ref().map(|m| m.row),
                "predicted_dimension": row.as_ref().map(|m| m.dimension),
                "computed_dimension": computed,
                "summary": summary,
            });
            (section, row.map(|m| m.dimension))
        }
    };
    match (predicted, computed) {
        (Some(p), Some(c)) => {
            let detail = (p != c).then(|| format!("predicted {p}, computed {c}"));
            report.verdict("cartan", "predicted-vs-computed", "", p == c, detail);
        }
        (Some(_), None) => report.note("computed series incomplete; predicted dimension not compared"),
        _ => {}
    }
    report.sections.insert("cartan".into(), section);
    Ok(())
}

fn push_checks(report: &mut Report, section: &str, r: &VerificationReport) {
    for c in &r.checks {
        report.verdict(section, &c.tag, c.instance.clone(), c.passed, c.witness.clone());
    }
    for n in &r.notes {
        report.note(n.clone());
    }
}

fn typea(report: &mut Report, diag: &DiagonalBraiding, d: usize) -> anyhow::Result<()> {
    let ctx = TypeAContext::new(diag.clone())?;
    let ceiling = d.max(ctx.top_degree() + 2);
    let (models, t) = with_budget(ceiling, |k| TypeAModels::build(&ctx, k))?;
    if let Some(t) = t {
        report.truncate(t);
    }
    push_checks(report, "typea", &verify_relation_suite(&ctx, &models)?);
    push_checks(report, "typea", &verify_coproducts(&ctx, &models)?);
    let depth_checks: [(&str, nichols_core::Result<VerificationReport>); 3] = [
        ("pbw", verify_pbw(&ctx, &models.nichols)),
        ("presentation", verify_presentation(&ctx, &models.nichols)),
        ("smash-coproduct", smash_coproduct_check(&Realization::canonical(diag), &ctx, &models)),
    ];
    for (name, r) in depth_checks {
        match r {
            Ok(r) => push_checks(report, "typea", &r),
            Err(e @ Error::DepthInsufficient { .. }) => report.verdict("typea", name, "", false, Some(e.to_string())),
            Err(e) => return Err(e.into()),
        }
    }
    let total = models.nichols.hilbert_series().total_dimension();
    let checks: Vec<&Value> = report.verdicts.iter().filter(|v| v["section"] == "typea").collect();
    let passed = checks.iter().filter(|v| v["passed"] == Value::Bool(true)).count();
    let mut tags: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for v in &checks {
        let e = tags.entry(v["name"].as_str().unwrap_or_default().to_string()).or_default();
        e.0 += 1;
        if v["passed"] == Value::Bool(true) {
            e.1 += 1;
        }
    }
    let summary = format!("A{}, N={}: {passed}/{} checks pass", ctx.rank(), ctx.order(), checks.len());
    let tags: BTreeMap<String, Value> =
        tags.into_iter().map(|(k, (n, p))| (k, json!({ "instances": n, "passed": p }))).collect();
    report.sections.insert(
        "typea".into(),
        json!({
            "rank": ctx.rank(),
            "order": ctx.order(),
            "pbw_dimension": ctx.pbw_dimension(),
            "nichols_total_dimension": total,
            "tags": tags,
            "summary": summary,
        }),
    );
    Ok(())
}

fn lift(report: &mut Report, spec: &LiftSpec) -> anyhow::Result<()> {
    let r = &spec.realization;
    let grp = r.group();
    let realization = match validate_realization(r) {
        RealizationCheck::Pass => {
            report.verdict("lift", "realization", "", true, None);
            json!("pass")
        }
        RealizationCheck::Fail { i, j, expected, found } => {
            let detail = format!("chi_{j}(g_{i}) = {found}, q_{i}{j} = {expected}");
            report.verdict("lift", "realization", format!("({i},{j})"), false, Some(detail.clone()));
            report.sections.insert("lift".into(), json!({ "realization": detail }));
            return Ok(());
        }
    };
    let mut section = json!({
        "group": { "factors": grp.factors(), "order": grp.order() },
        "g": (1..=r.rank()).map(|i| r.g(i).exponents().to_vec()).collect::<Vec<_>>(),
        "chi": (1..=r.rank()).map(|i| r.chi(i).exponents().to_vec()).collect::<Vec<_>>(),
        "realization": realization,
        "gamma": spec.gamma.iter().map(|((i, j), c)| (format!("{i},{j}"), c.to_string())).collect::<BTreeMap<_, _>>(),
        "mode": match spec.mode {
            AdmissibilityMode::Classification => "classification",
            AdmissibilityMode::Combinatorial => "combinatorial",
        },
    });
    if let CartanDetection::Cartan(cd) = detect_cartan(r.braiding()) {
        let link = validate_linking(r, &cd)?;
        for p in &link.properties {
            report.verdict("linking", &p.tag, p.instance.clone(), p.passed, None);
        }
        section["linking"] = json!(link
            .pairs
            .iter()
            .map(|p| json!({
                "pair": [p.i, p.j],
                "linkable": p.linkable,
                "violated": p.violated.map(|c| c.tag()),
            }))
            .collect::<Vec<_>>());
    }
    let lr = lift_dimension_with_mode(r, &spec.gamma, spec.mode)?;
    for n in &lr.notes {
        report.note(n.clone());
    }
    for c in &lr.checks {
        report.verdict("lift", &c.tag, c.instance.clone(), c.passed, None);
    }
    section["u"] = json!(lr.u.iter().map(|((i, j), s)| (format!("{i},{j}"), s.clone())).collect::<BTreeMap<_, _>>());
    let cent = centrality_check(r, &spec.gamma)?;
    section["centrality"] = json!({
        "condition_a": cent.condition_a,
        "condition_b": cent.condition_b,
        "central": cent.central,
        "witness": cent.witness.map(|(i, j, l)| json!({ "i": i, "j": j, "l": l })),
    });
    let summary = match &lr.outcome {
        LiftOutcome::Certified { dimension } => {
            section["dimension"] = json!(dimension);
            report.verdict("lift", "dimension-certified", "", true, None);
            let all = report.verdicts.iter().all(|v| v["passed"] == Value::Bool(true));
            format!("dim {dimension}, {}", if all { "all checks pass" } else { "some checks fail" })
        }
        LiftOutcome::CombinatorialOnly => {
            report.verdict("lift", "dimension-certified", "", false, Some("combinatorial solution only".into()));
            "combinatorial solution only, Hopf-dimension not certified".to_string()
        }
        LiftOutcome::Failed(v) => {
            section["violation"] = json!({ "i": v.i, "j": v.j, "condition": v.condition.tag() });
            report.verdict("lift", "dimension-certified", format!("({},{})", v.i, v.j), false, Some(v.to_string()));
            format!("not certified: {v}")
        }
    };
    section["summary"] = json!(summary);
    report.sections.insert("lift".into(), section);
    Ok(())
}
