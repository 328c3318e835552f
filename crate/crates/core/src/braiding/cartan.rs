use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use super::DiagonalBraiding;
use crate::scalar::RootOfUnity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DynkinType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
    NonFinite,
}

impl DynkinType {
    pub fn positive_roots(&self) -> Option<u64> {
        Some(match *self {
            DynkinType::A(n) => (n * (n + 1) / 2) as u64,
            DynkinType::B(n) | DynkinType::C(n) => (n * n) as u64,
            DynkinType::D(n) => (n * (n - 1)) as u64,
            DynkinType::E6 => 36,
            DynkinType::E7 => 63,
            DynkinType::E8 => 120,
            DynkinType::F4 => 24,
            DynkinType::G2 => 6,
            DynkinType::NonFinite => return None,
        })
    }

    pub fn is_finite(&self) -> bool {
        *self != DynkinType::NonFinite
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::B(n) => write!(f, "B{n}"),
            DynkinType::C(n) => write!(f, "C{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E6 => write!(f, "E6"),
            DynkinType::E7 => write!(f, "E7"),
            DynkinType::E8 => write!(f, "E8"),
            DynkinType::F4 => write!(f, "F4"),
            DynkinType::G2 => write!(f, "G2"),
            DynkinType::NonFinite => write!(f, "non-finite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanDatum {
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Connected components, zero-based vertices in increasing order.
    pub components: Vec<Vec<usize>>,
    pub type_labels: Vec<DynkinType>,
    /// Common order of the q_ii in each component, if they agree.
    pub orders: Vec<Option<u32>>,
    pub positive_root_counts: Vec<Option<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CartanDetection {
    Cartan(CartanDatum),
    /// Zero-based witness pair; (i, i) when q_ii = 1.
    NotCartan { i: usize, j: usize },
}

/// Finds a_ij with q_ij q_ji = q_ii^a_ij and 0 <= -a_ij < ord(q_ii).
pub fn detect_cartan(b: &DiagonalBraiding) -> CartanDetection {
    let t = b.theta();
    let mut a = vec![vec![0i64; t]; t];
    for i in 0..t {
        let qii = b.q_root(i, i);
        if qii.is_one() {
            return CartanDetection::NotCartan { i, j: i };
        }
        a[i][i] = 2;
        let ord = qii.order() as i64;
        for j in 0..t {
            if i == j {
                continue;
            }
            let prod = b.q_root(i, j).mul(b.q_root(j, i));
            match (0..ord).find(|&k| qii.pow(-k) == prod) {
                Some(k) => a[i][j] = -k,
                None => return CartanDetection::NotCartan { i, j },
            }
        }
    }
    let components = connected_components(&a);
    let mut type_labels = Vec::new();
    let mut orders = Vec::new();
    let mut counts = Vec::new();
    for comp in &components {
        let label = classify(&a, comp);
        let ords: Vec<u32> = comp.iter().map(|&i| b.q_root(i, i).order()).collect();
        orders.push(ords.iter().all(|&o| o == ords[0]).then_some(ords[0]));
        counts.push(label.positive_roots());
        type_labels.push(label);
    }
    CartanDetection::Cartan(CartanDatum {
        cartan_matrix: a,
        components,
        type_labels,
        orders,
        positive_root_counts: counts,
    })
}

fn connected_components(a: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let t = a.len();
    let mut comp = vec![usize::MAX; t];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..t {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        comp[s] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for w in 0..t {
                if w != v && a[v][w] != 0 && comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        members.sort();
        out.push(members);
    }
    out
}

/// Dynkin type of a connected generalized Cartan matrix restricted to `comp`.
fn classify(a: &[Vec<i64>], comp: &[usize]) -> DynkinType {
    let r = comp.len();
    if r == 1 {
        return DynkinType::A(1);
    }
    let mut edges = Vec::new();
    for x in 0..r {
        for y in x + 1..r {
            let (i, j) = (comp[x], comp[y]);
            if a[i][j] != 0 {
                let m = a[i][j] * a[j][i];
                if !(1..=3).contains(&m) {
                    return DynkinType::NonFinite;
                }
                edges.push((x, y, m));
            }
        }
    }
    if edges.len() != r - 1 {
        return DynkinType::NonFinite;
    }
    let mut degree = vec![0usize; r];
    for &(x, y, _) in &edges {
        degree[x] += 1;
        degree[y] += 1;
    }
    let multiple: Vec<&(usize, usize, i64)> = edges.iter().filter(|e| e.2 > 1).collect();
    if multiple.iter().any(|e| e.2 == 3) {
        return if r == 2 { DynkinType::G2 } else { DynkinType::NonFinite };
    }
    if multiple.len() > 1 {
        return DynkinType::NonFinite;
    }
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    if let Some(&&(x, y, _)) = multiple.first() {
        if max_degree > 2 {
            return DynkinType::NonFinite;
        }
        if r == 2 {
            return DynkinType::B(2);
        }
        let (end, other) = if degree[x] == 1 {
            (x, y)
        } else if degree[y] == 1 {
            (y, x)
        } else {
            return if r == 4 { DynkinType::F4 } else { DynkinType::NonFinite };
        };
        // the short simple root sits at the end whose row carries the -2
        return if a[comp[end]][comp[other]] == -2 { DynkinType::B(r) } else { DynkinType::C(r) };
    }
    if max_degree <= 2 {
        return DynkinType::A(r);
    }
    let branch: Vec<usize> = (0..r).filter(|&v| degree[v] >= 3).collect();
    if branch.len() != 1 || degree[branch[0]] != 3 {
        return DynkinType::NonFinite;
    }
    let center = branch[0];
    let mut arms: Vec<usize> = edges
        .iter()
        .filter_map(|&(x, y, _)| {
            if x == center {
                Some(y)
            } else if y == center {
                Some(x)
            } else {
                None
            }
        })
        .map(|start| {
            let (mut prev, mut cur, mut len) = (center, start, 1);
            loop {
                let next = edges.iter().find_map(|&(x, y, _)| {
                    if x == cur && y != prev {
                        Some(y)
                    } else if y == cur && x != prev {
                        Some(x)
                    } else {
                        None
                    }
                });
                match next {
                    Some(n) => {
                        prev = cur;
                        cur = n;
                        len += 1;
                    }
                    None => break len,
                }
            }
        })
        .collect();
    arms.sort();
    match arms.as_slice() {
        [1, 1, _] => DynkinType::D(r),
        [1, 2, 2] => DynkinType::E6,
        [1, 2, 3] => DynkinType::E7,
        [1, 2, 4] => DynkinType::E8,
        _ => DynkinType::NonFinite,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredictedDimension {
    Finite(BigUint),
    Infinite,
    /// The formula does not apply, e.g. orders differ inside a component.
    Unsupported(String),
}

/// prod over components of N_I^|positive roots|, or infinite if a component is not of finite type.
pub fn predicted_dimension(cd: &CartanDatum) -> PredictedDimension {
    if cd.type_labels.iter().any(|t| !t.is_finite()) {
        return PredictedDimension::Infinite;
    }
    let mut total = BigUint::from(1u32);
    for (k, label) in cd.type_labels.iter().enumerate() {
        let Some(n) = cd.orders[k] else {
            return PredictedDimension::Unsupported(format!("orders of q_ii differ in the {label} component"));
        };
        let roots = cd.positive_root_counts[k].expect("finite type");
        total *= BigUint::from(n).pow(roots as u32);
    }
    PredictedDimension::Finite(total)
}

/// A literal match against the rank-two non-Cartan table with known dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTwoMatch {
    /// "mg1" .. "mg6".
    pub row: &'static str,
    /// Whether the vertices were swapped to match.
    pub swapped: bool,
    pub dimension: u64,
}

/// Matches a rank-two diagonal braiding against the six known non-Cartan patterns.
pub fn match_rank_two_table(b: &DiagonalBraiding) -> Option<RankTwoMatch> {
    if b.theta() != 2 {
        return None;
    }
    for swapped in [false, true] {
        let (i, j) = if swapped { (1, 0) } else { (0, 1) };
        let q11 = b.q_root(i, i);
        let q22 = b.q_root(j, j);
        let p = b.q_root(i, j).mul(b.q_root(j, i));
        let minus_one = RootOfUnity::new(2, 1);
        let eq = |x: RootOfUnity, y: RootOfUnity| x.mul(y.inverse()).is_one();
        let ord3 = |x: RootOfUnity| x.order() == 3;
        let hit = |row, dimension: u64| Some(RankTwoMatch { row, swapped, dimension });
        if eq(q22, minus_one) && eq(q11.inverse(), p) && !p.is_one() {
            return hit("mg1", 4 * p.order() as u64);
        }
        if ord3(q22) && eq(q11.inverse(), p) && !p.is_one() && !eq(p, minus_one) && !eq(p, q22.inverse()) {
            return hit("mg2", 9 * q11.order() as u64 * p.mul(q22).order() as u64);
        }
        if eq(q11, minus_one) && ord3(q22) {
            if eq(p, minus_one) {
                return hit("mg3", 108);
            }
            if eq(p, q22) {
                return hit("mg4", 72);
            }
            if eq(p, q22.mul(minus_one)) {
                return hit("mg5", 36);
            }
        }
        if eq(q11, minus_one) && !q22.is_one() && eq(p, q22.pow(-2)) {
            let minus_inv = q22.inverse().mul(minus_one);
            return hit("mg6", 4 * q22.order() as u64 * minus_inv.order() as u64);
        }
    }
    None
}
