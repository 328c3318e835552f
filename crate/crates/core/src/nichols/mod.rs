//! Nichols algebras computed degree by degree.

mod derivations;
mod gram;
mod model;
mod quotient;
mod relations;

use serde::{Deserialize, Serialize};

use crate::braiding::DiagonalBraiding;
use crate::error::{Error, Result};
use crate::scalar::{q_factorial, CycNumber};

pub use derivations::build_nichols_by_derivations;
pub use gram::{bilinear_form, dims_by_gram, BilinearForm};
pub use model::{DegreeData, GradedAlgebraModel};
pub use quotient::build_quotient;
pub use relations::{dims_by_symmetrizer, relations, symmetrizer_kernel};

/// Largest candidate set an engine processes in one degree.
pub const CANDIDATE_BUDGET: usize = 200_000;

/// Dimensions of the homogeneous components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    coefficients: Vec<usize>,
    complete: bool,
}

impl HilbertSeries {
    /// A finished series from known dimensions; trailing zeros are dropped.
    pub fn finite(mut coefficients: Vec<usize>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        HilbertSeries { coefficients, complete: true }
    }

    pub fn coefficients(&self) -> &[usize] {
        &self.coefficients
    }

    /// Set once two consecutive degrees vanished; the algebra is then finite-dimensional.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn total_dimension(&self) -> Option<u64> {
        self.complete.then(|| self.coefficients.iter().map(|&c| c as u64).sum())
    }

    /// Sum of the computed coefficients, a lower bound when incomplete.
    pub fn partial_sum(&self) -> u64 {
        self.coefficients.iter().map(|&c| c as u64).sum()
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.complete.then(|| self.coefficients.len().saturating_sub(1))
    }
}

/// Collects dimensions degree by degree and applies the stopping rule.
#[derive(Debug, Default)]
pub(crate) struct SeriesBuilder {
    dims: Vec<usize>,
}

impl SeriesBuilder {
    /// Records the next degree; true once two consecutive zeros were seen.
    pub(crate) fn push(&mut self, dim: usize) -> bool {
        self.dims.push(dim);
        self.is_done()
    }

    pub(crate) fn is_done(&self) -> bool {
        let n = self.dims.len();
        n >= 2 && self.dims[n - 1] == 0 && self.dims[n - 2] == 0
    }

    pub(crate) fn finish(self) -> HilbertSeries {
        if self.is_done() {
            HilbertSeries::finite(self.dims)
        } else {
            HilbertSeries { coefficients: self.dims, complete: false }
        }
    }
}

/// Outcome of the palindrome test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PoincareOutcome {
    Pass,
    /// The first degree i with dim R(i) != dim R(N - i).
    Fail { position: usize },
}

pub fn poincare_check(h: &HilbertSeries) -> Result<PoincareOutcome> {
    if !h.is_complete() {
        return Err(Error::InvalidArgument("Poincaré duality needs a complete series".into()));
    }
    let c = h.coefficients();
    let n = c.len();
    Ok(match (0..n).find(|&i| c[i] != c[n - 1 - i]) {
        None => PoincareOutcome::Pass,
        Some(position) => PoincareOutcome::Fail { position },
    })
}

/// Whether (r)!_{q_ii} prod_{0<=k<r} (1 - q_ii^k q_ij q_ji) vanishes, i.e. (ad_c x_i)^r(x_j) = 0 in the Nichols algebra.
pub fn adjoint_vanishes(d: &DiagonalBraiding, i: usize, j: usize, r: u32) -> Result<bool> {
    let t = d.theta();
    if i >= t || j >= t {
        return Err(Error::IndexOutOfRange(format!("generator index beyond theta = {t}")));
    }
    if i == j {
        return Err(Error::InvalidArgument("adjoint vanishing needs i != j".into()));
    }
    let m = d.modulus();
    let qii = d.q(i, i);
    let mixed = &d.q(i, j) * &d.q(j, i);
    let one = CycNumber::one(m);
    let mut s = q_factorial(r as u64, &qii);
    for k in 0..r {
        s = &s * &(&one - &(&qii.pow(k as u64) * &mixed));
    }
    Ok(s.is_zero())
}
