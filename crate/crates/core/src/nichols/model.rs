use std::collections::BTreeMap;
use std::sync::Arc;

use crate::braiding::Braiding;
use crate::error::{Error, Result};
use crate::freealg::{FreeElement, Word};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::scalar::CycNumber;

use super::HilbertSeries;

/// One homogeneous component of a graded quotient of T(V).
#[derive(Clone, Debug)]
pub struct DegreeData {
    /// Words whose images form a basis.
    pub basis: Vec<Word>,
    /// For each generator i, the matrix of (· x_i) from the previous degree into this one.
    /// Empty in degree 0.
    pub right_mult: Vec<SparseMatrix>,
    /// For each i, the matrix of D_i from this degree into the previous one, when known.
    pub derivation: Option<Vec<SparseMatrix>>,
}

/// A graded quotient of T(V) generated in degree one, known up to some degree.
#[derive(Clone, Debug)]
pub struct GradedAlgebraModel {
    braiding: Arc<Braiding>,
    degrees: Vec<DegreeData>,
    series: HilbertSeries,
}

impl GradedAlgebraModel {
    pub(crate) fn new(braiding: Arc<Braiding>, degrees: Vec<DegreeData>, series: HilbertSeries) -> Self {
        GradedAlgebraModel { braiding, degrees, series }
    }

    pub fn braiding(&self) -> &Arc<Braiding> {
        &self.braiding
    }

    /// Highest degree held in the model.
    pub fn built_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn is_complete(&self) -> bool {
        self.series.is_complete()
    }

    pub fn hilbert_series(&self) -> &HilbertSeries {
        &self.series
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.basis.len()).collect()
    }

    pub fn degree(&self, n: usize) -> Option<&DegreeData> {
        self.degrees.get(n)
    }

    pub fn basis(&self, n: usize) -> &[Word] {
        self.degrees.get(n).map(|d| d.basis.as_slice()).unwrap_or(&[])
    }

    /// The matrix of (· x_i): degree n -> degree n + 1.
    pub fn right_mult(&self, n: usize, i: usize) -> Option<&SparseMatrix> {
        self.degrees.get(n + 1).map(|d| &d.right_mult[i])
    }

    /// The matrix of D_i: degree n -> degree n - 1.
    pub fn derivation(&self, n: usize, i: usize) -> Option<&SparseMatrix> {
        self.degrees.get(n)?.derivation.as_ref()?.get(i)
    }

    fn check_degree(&self, n: usize) -> Result<bool> {
        if n <= self.built_degree() {
            Ok(true)
        } else if self.is_complete() {
            Ok(false)
        } else {
            Err(Error::DepthInsufficient { needed: n, built: self.built_degree() })
        }
    }

    /// Coordinates of the image of a word in the basis of its degree.
    pub fn word_coordinates(&self, w: &Word) -> Result<SparseVec> {
        if !self.check_degree(w.len())? {
            return Ok(SparseVec::new());
        }
        let mut v = SparseVec::unit(0, self.braiding.modulus());
        for (k, &l) in w.0.iter().enumerate() {
            v = self.degrees[k + 1].right_mult[l as usize].apply(&v);
            if v.is_zero() {
                break;
            }
        }
        Ok(v)
    }

    /// Coordinates of an element, per degree; zero components are omitted.
    pub fn coordinates(&self, x: &FreeElement) -> Result<BTreeMap<usize, SparseVec>> {
        let mut by_degree: BTreeMap<usize, BTreeMap<u32, CycNumber>> = BTreeMap::new();
        for (w, c) in x.terms() {
            let v = self.word_coordinates(w)?;
            let slot = by_degree.entry(w.len()).or_default();
            for (i, y) in v.iter() {
                crate::linalg::accumulate(slot, *i, c * y);
            }
        }
        Ok(by_degree
            .into_iter()
            .map(|(n, m)| (n, SparseVec::from_map(m)))
            .filter(|(_, v)| !v.is_zero())
            .collect())
    }

    /// Whether the element maps to zero in the quotient.
    pub fn reduces_to_zero(&self, x: &FreeElement) -> Result<bool> {
        Ok(self.coordinates(x)?.is_empty())
    }

    /// The element of T(V) given by basis coordinates in degree n.
    pub fn element(&self, n: usize, coords: &SparseVec) -> FreeElement {
        let terms = coords.iter().map(|(i, c)| (self.degrees[n].basis[*i as usize].clone(), c.clone())).collect();
        FreeElement::from_terms(self.braiding.clone(), terms)
    }
}
