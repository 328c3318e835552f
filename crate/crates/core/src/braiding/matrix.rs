use super::{add_term, verify_braid_table, BraidCheck, BraidTerm, Terms};
use crate::error::{Error, Result};
use crate::freealg::Word;
use crate::linalg::{Eliminator, SparseVec};
use crate::scalar::CycNumber;

/// An explicit operator on V ⊗ V; `matrix[row][col]` with index a*theta + b,
/// columns being inputs x_a ⊗ x_b.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixBraiding {
    theta: usize,
    modulus: u32,
    matrix: Vec<Vec<CycNumber>>,
}

impl MatrixBraiding {
    /// Fails unless the matrix is invertible and solves the braid equation;
    /// a braid failure names the first offending word of length three.
    pub fn new(theta: usize, matrix: Vec<Vec<CycNumber>>) -> Result<Self> {
        let n = theta * theta;
        if theta == 0 || matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Validation(format!("braiding matrix must be {n} x {n}")));
        }
        super::check_rank(theta)?;
        let modulus = matrix.iter().flatten().map(|c| c.modulus()).fold(1u32, num_integer::lcm);
        let matrix: Vec<Vec<CycNumber>> = matrix
            .into_iter()
            .map(|r| r.into_iter().map(|c| c.embed(modulus)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mb = MatrixBraiding { theta, modulus, matrix };
        let mut e = Eliminator::new();
        for col in 0..n {
            e.insert(&SparseVec::from_entries((0..n).map(|row| (row as u32, mb.matrix[row][col].clone()))));
        }
        if e.rank() < n {
            return Err(Error::Validation("braiding matrix is not invertible".into()));
        }
        let table = mb.table();
        let check = verify_braid_table(theta, modulus, |terms, p| apply_table(&table, theta, terms, p));
        if let BraidCheck::Counterexample(w) = check {
            let shown: Vec<String> = w.0.iter().map(|&l| format!("x{}", l + 1)).collect();
            return Err(Error::Validation(format!(
                "braid equation fails on {}",
                shown.join(" ⊗ ")
            )));
        }
        Ok(mb)
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn matrix(&self) -> &[Vec<CycNumber>] {
        &self.matrix
    }

    pub(crate) fn table(&self) -> Vec<Vec<BraidTerm>> {
        let t = self.theta;
        let mut table = Vec::with_capacity(t * t);
        for a in 0..t {
            for b in 0..t {
                let col = a * t + b;
                table.push(
                    (0..t * t)
                        .filter(|&row| !self.matrix[row][col].is_zero())
                        .map(|row| BraidTerm {
                            left: (row / t) as u8,
                            right: (row % t) as u8,
                            coef: self.matrix[row][col].clone(),
                        })
                        .collect(),
                );
            }
        }
        table
    }
}

fn apply_table(table: &[Vec<BraidTerm>], theta: usize, terms: &Terms, p: usize) -> Terms {
    let mut out = Terms::new();
    for (w, c) in terms {
        let (a, b) = (w.0[p] as usize, w.0[p + 1] as usize);
        for t in &table[a * theta + b] {
            let mut v = w.0.clone();
            v[p] = t.left;
            v[p + 1] = t.right;
            add_term(&mut out, Word(v), c * &t.coef);
        }
    }
    out
}
