//! Input files: braiding specs and lifting specs, both JSON.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use nichols_core::braiding::{make_group_braiding, Braiding, DiagonalBraiding, FiniteGroup, GroupBraiding, MatrixBraiding, PhiKind};
use nichols_core::lifting::{AbelianGroup, AdmissibilityMode, GammaFamily, Realization};
use nichols_core::CycNumber;
use serde::Deserialize;

#[derive(Debug)]
pub enum Spec {
    Braiding(Arc<Braiding>),
    Lift(LiftSpec),
}

#[derive(Debug)]
pub struct LiftSpec {
    pub realization: Realization,
    pub gamma: GammaFamily,
    pub mode: AdmissibilityMode,
}

/// A parse or validation failure, with the line of the offending input when known.
#[derive(Debug)]
pub struct SpecError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for SpecError {}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawSpec {
    Diagonal {
        theta: usize,
        modulus: u32,
        exponents: Vec<Vec<i64>>,
    },
    Group {
        group: RawGroup,
        phi: RawPhi,
        #[serde(default)]
        support: Option<Vec<String>>,
        #[serde(default)]
        modulus: Option<u32>,
    },
    Matrix {
        theta: usize,
        modulus: u32,
        matrix: Vec<Vec<String>>,
    },
    Lift {
        realization: RawRealization,
        #[serde(default)]
        gamma: BTreeMap<String, String>,
        #[serde(default)]
        modulus: Option<u32>,
        #[serde(default)]
        mode: Option<RawMode>,
    },
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawGroup {
    Symmetric(usize),
    Dihedral(usize),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawPhi {
    Named(String),
    /// Rows keyed by group element label, one literal per support element.
    Table(BTreeMap<String, Vec<String>>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRealization {
    FinalExample { final_example: RawFinalExample },
    Explicit {
        factors: Vec<u32>,
        g: Vec<Vec<i64>>,
        chi: Vec<Vec<i64>>,
        #[serde(default)]
        braiding: Option<RawDiagonal>,
    },
}

#[derive(Deserialize)]
struct RawFinalExample {
    order: u32,
    m: Vec<u32>,
}

#[derive(Deserialize)]
struct RawDiagonal {
    modulus: u32,
    exponents: Vec<Vec<i64>>,
}

#[derive(Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum RawMode {
    Classification,
    Combinatorial,
}

fn line_of(text: &str, needle: &str) -> Option<usize> {
    text.lines().position(|l| l.contains(needle)).map(|k| k + 1)
}

fn err_at(text: &str, needle: &str, message: impl Into<String>) -> SpecError {
    SpecError { line: line_of(text, needle), message: message.into() }
}

fn literal(text: &str, modulus: u32, s: &str) -> Result<CycNumber, SpecError> {
    CycNumber::parse(modulus, s).map_err(|e| err_at(text, &format!("\"{s}\""), e.to_string()))
}

pub fn parse_spec(text: &str) -> Result<Spec, SpecError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let msg = full.strip_suffix(&suffix).unwrap_or(&full);
        SpecError { line: Some(e.line()), message: format!("column {}: {msg}", e.column()) }
    })?;
    match raw {
        RawSpec::Diagonal { theta, modulus, exponents } => {
            if exponents.len() != theta {
                return Err(err_at(text, "exponents", format!("theta = {theta} but {} exponent rows", exponents.len())));
            }
            let d = DiagonalBraiding::new(modulus, exponents).map_err(|e| err_at(text, "exponents", e.to_string()))?;
            Ok(Spec::Braiding(Arc::new(Braiding::from(d))))
        }
        RawSpec::Group { group, phi, support, modulus } => {
            let (g, needle) = match group {
                RawGroup::Symmetric(n) if (1..=7).contains(&n) => (FiniteGroup::symmetric(n), "symmetric"),
                RawGroup::Symmetric(n) => return Err(err_at(text, "symmetric", format!("symmetric group S_{n} unsupported, need 1 <= n <= 7"))),
                RawGroup::Dihedral(m) if m >= 2 => (FiniteGroup::dihedral(m), "dihedral"),
                RawGroup::Dihedral(m) => return Err(err_at(text, "dihedral", format!("dihedral group with m = {m} unsupported"))),
            };
            let gb = match phi {
                RawPhi::Named(name) => {
                    let kind = match name.as_str() {
                        "coxeter" => PhiKind::Coxeter,
                        "flag" => PhiKind::Flag,
                        other => return Err(err_at(text, "phi", format!("unknown cocycle `{other}`, expected coxeter or flag"))),
                    };
                    make_group_braiding(kind, g).map_err(|e| err_at(text, needle, e.to_string()))?
                }
                RawPhi::Table(rows) => group_from_table(text, g, support, modulus.unwrap_or(2), rows)?,
            };
            Ok(Spec::Braiding(Arc::new(Braiding::from(gb))))
        }
        RawSpec::Matrix { theta, modulus, matrix } => {
            let rows = matrix
                .iter()
                .map(|r| r.iter().map(|s| literal(text, modulus, s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let m = MatrixBraiding::new(theta, rows).map_err(|e| err_at(text, "matrix", e.to_string()))?;
            Ok(Spec::Braiding(Arc::new(Braiding::from(m))))
        }
        RawSpec::Lift { realization, gamma, modulus, mode } => {
            let r = match realization {
                RawRealization::FinalExample { final_example } => {
                    Realization::final_example(final_example.order, &final_example.m)
                        .map_err(|e| err_at(text, "final_example", e.to_string()))?
                }
                RawRealization::Explicit { factors, g, chi, braiding } => {
                    let grp = AbelianGroup::new(factors).map_err(|e| err_at(text, "factors", e.to_string()))?;
                    let g = g
                        .iter()
                        .map(|x| grp.element(x))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| err_at(text, "\"g\"", e.to_string()))?;
                    let chi = chi
                        .iter()
                        .map(|x| grp.character(x))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| err_at(text, "chi", e.to_string()))?;
                    match braiding {
                        None => Realization::from_group_data(grp, g, chi),
                        Some(b) => DiagonalBraiding::new(b.modulus, b.exponents)
                            .and_then(|d| Realization::new(grp, g, chi, d)),
                    }
                    .map_err(|e| err_at(text, "realization", e.to_string()))?
                }
            };
            let m = modulus.unwrap_or_else(|| r.group().exponent());
            let mut fam = GammaFamily::new();
            for (key, value) in &gamma {
                let parsed: Option<(usize, usize)> = key
                    .split_once(',')
                    .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
                let Some((i, j)) = parsed else {
                    return Err(err_at(text, &format!("\"{key}\""), format!("gamma key `{key}` is not of the form \"i,j\"")));
                };
                let n = r.rank();
                if !(1 <= i && i < j && j <= n + 1) {
                    return Err(err_at(text, &format!("\"{key}\""), format!("gamma key ({i},{j}) needs 1 <= i < j <= {}", n + 1)));
                }
                fam.set(i, j, literal(text, m, value)?);
            }
            let mode = match mode.unwrap_or(RawMode::Classification) {
                RawMode::Classification => AdmissibilityMode::Classification,
                RawMode::Combinatorial => AdmissibilityMode::Combinatorial,
            };
            Ok(Spec::Lift(LiftSpec { realization: r, gamma: fam, mode }))
        }
    }
}

fn group_from_table(
    text: &str,
    g: FiniteGroup,
    support: Option<Vec<String>>,
    modulus: u32,
    rows: BTreeMap<String, Vec<String>>,
) -> Result<GroupBraiding, SpecError> {
    let Some(support) = support else {
        return Err(err_at(text, "phi", "an explicit phi table needs a `support` list"));
    };
    let find = |label: &str| g.find(label).ok_or_else(|| err_at(text, &format!("\"{label}\""), format!("no group element `{label}`")));
    let support_idx = support.iter().map(|s| find(s)).collect::<Result<Vec<_>, _>>()?;
    let mut table: Vec<Option<Vec<CycNumber>>> = vec![None; g.order()];
    for (label, row) in &rows {
        let k = find(label)?;
        if row.len() != support.len() {
            return Err(err_at(text, &format!("\"{label}\""), format!("phi row for {label} has {} entries, support has {}", row.len(), support.len())));
        }
        table[k] = Some(row.iter().map(|s| literal(text, modulus, s)).collect::<Result<_, _>>()?);
    }
    let phi = table
        .into_iter()
        .enumerate()
        .map(|(k, r)| r.ok_or_else(|| err_at(text, "phi", format!("phi has no row for {}", g.label(k)))))
        .collect::<Result<Vec<_>, _>>()?;
    GroupBraiding::new(g, support_idx, phi).map_err(|e| err_at(text, "phi", e.to_string()))
}
