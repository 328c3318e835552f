use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{CycNumber, RootOfUnity};

/// c(x_i ⊗ x_j) = q_ij x_j ⊗ x_i with q_ij = zeta_M^exponents[i][j].
///
/// The modulus is normalized to the lcm of the orders of the entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagonalBraiding {
    modulus: u32,
    exponents: Vec<Vec<u32>>,
}

impl DiagonalBraiding {
    pub fn new(modulus: u32, exponents: Vec<Vec<i64>>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let theta = exponents.len();
        if theta == 0 || exponents.iter().any(|r| r.len() != theta) {
            return Err(Error::InvalidArgument("exponent matrix must be square and nonempty".into()));
        }
        super::check_rank(theta)?;
        let roots = exponents
            .iter()
            .map(|r| r.iter().map(|&e| RootOfUnity::new(modulus, e)).collect())
            .collect::<Vec<Vec<_>>>();
        Ok(Self::from_roots(&roots))
    }

    /// From a matrix of roots of unity with possibly different moduli. Panics above [`super::MAX_RANK`].
    pub fn from_roots(q: &[Vec<RootOfUnity>]) -> Self {
        assert!(q.len() <= super::MAX_RANK, "dimension {} exceeds {}", q.len(), super::MAX_RANK);
        let m = q
            .iter()
            .flatten()
            .map(|r| r.order())
            .fold(1u32, num_integer::lcm);
        let exponents = q
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        let red = x.reduced();
                        red.lift(m).expect("order divides the lcm").exponent()
                    })
                    .collect()
            })
            .collect();
        DiagonalBraiding { modulus: m, exponents }
    }

    /// q_ii = q, q_{i,i+1} = 1, q_{i+1,i} = q^-1 and q_ij = 1 otherwise, q = zeta_N.
    pub fn type_a(n: usize, order: u32) -> Self {
        let mut e = vec![vec![0i64; n]; n];
        for i in 0..n {
            e[i][i] = 1;
            if i + 1 < n {
                e[i + 1][i] = -1;
            }
        }
        Self::new(order, e).expect("valid type A data")
    }

    pub fn quantum_line(order: u32) -> Self {
        Self::new(order, vec![vec![1]]).expect("valid quantum line")
    }

    /// Diagonal entries of the given orders, q_ij = 1 off the diagonal.
    pub fn quantum_linear_space(orders: &[u32]) -> Self {
        let q: Vec<Vec<RootOfUnity>> = (0..orders.len())
            .map(|i| {
                (0..orders.len())
                    .map(|j| if i == j { RootOfUnity::new(orders[i], 1) } else { RootOfUnity::one(1) })
                    .collect()
            })
            .collect();
        Self::from_roots(&q)
    }

    pub fn theta(&self) -> usize {
        self.exponents.len()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exponent(&self, i: usize, j: usize) -> u32 {
        self.exponents[i][j]
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn q_root(&self, i: usize, j: usize) -> RootOfUnity {
        RootOfUnity::new(self.modulus, self.exponents[i][j] as i64)
    }

    pub fn q(&self, i: usize, j: usize) -> CycNumber {
        CycNumber::root_of_unity(self.modulus, self.exponents[i][j] as i64)
    }

    pub fn is_symmetric(&self) -> bool {
        let t = self.theta();
        (0..t).all(|i| (0..t).all(|j| self.exponents[i][j] == self.exponents[j][i]))
    }

    /// Twist by a bicharacter given on generators: q'_ij = sigma_ij sigma_ji^-1 q_ij.
    pub fn twist(&self, sigma: &[Vec<RootOfUnity>]) -> Result<Self> {
        let t = self.theta();
        if sigma.len() != t || sigma.iter().any(|r| r.len() != t) {
            return Err(Error::InvalidArgument("bicharacter table must be theta x theta".into()));
        }
        let q: Vec<Vec<RootOfUnity>> = (0..t)
            .map(|i| {
                (0..t)
                    .map(|j| self.q_root(i, j).mul(sigma[i][j]).mul(sigma[j][i].inverse()))
                    .collect()
            })
            .collect();
        Ok(Self::from_roots(&q))
    }

    /// A symmetric braiding with the same q_ii and the same products q_ij q_ji.
    /// The modulus doubles when some product has no square root in mu_M.
    pub fn symmetrize(&self) -> Self {
        let t = self.theta();
        let m = self.modulus as i64;
        let needs_double = m % 2 == 0
            && (0..t).any(|i| (0..t).any(|j| i != j && (self.exponents[i][j] + self.exponents[j][i]) % 2 == 1));
        let q: Vec<Vec<RootOfUnity>> = (0..t)
            .map(|i| {
                (0..t)
                    .map(|j| {
                        let s = (self.exponents[i][j] + self.exponents[j][i]) as i64;
                        if i == j {
                            self.q_root(i, i)
                        } else if needs_double {
                            // square root of zeta_M^s is zeta_2M^s
                            RootOfUnity::new(2 * self.modulus, s)
                        } else if m % 2 == 1 {
                            RootOfUnity::new(self.modulus, s * (m + 1) / 2)
                        } else {
                            RootOfUnity::new(self.modulus, s / 2)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_roots(&q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_is_normalized() {
        let d = DiagonalBraiding::new(12, vec![vec![4, 0], vec![0, 8]]).unwrap();
        assert_eq!(d.modulus(), 3);
        assert_eq!(d.exponents(), &[vec![1, 0], vec![0, 2]]);
        let tau = DiagonalBraiding::new(4, vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(tau.modulus(), 1);
    }

    #[test]
    fn twist_trivial_and_invariants() {
        let d = DiagonalBraiding::type_a(3, 5);
        let one = vec![vec![RootOfUnity::one(5); 3]; 3];
        assert_eq!(d.twist(&one).unwrap(), d);
        let sigma = vec![
            vec![RootOfUnity::new(7, 3), RootOfUnity::new(4, 1), RootOfUnity::new(5, 2)],
            vec![RootOfUnity::new(5, 1), RootOfUnity::new(7, 2), RootOfUnity::new(2, 1)],
            vec![RootOfUnity::new(3, 1), RootOfUnity::new(5, 4), RootOfUnity::new(5, 1)],
        ];
        let t = d.twist(&sigma).unwrap();
        for i in 0..3 {
            assert_eq!(t.q(i, i), d.q(i, i).embed(t.modulus()).unwrap());
            for j in 0..3 {
                let a = &t.q(i, j) * &t.q(j, i);
                let b = (&d.q(i, j) * &d.q(j, i)).embed(t.modulus()).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn symmetrize_a2() {
        // q12 = 1, q21 = q^-1 with q of order 3: the product q^-1 = zeta_3^2 has square root zeta_3
        let d = DiagonalBraiding::type_a(2, 3);
        let s = d.symmetrize();
        assert!(s.is_symmetric());
        assert_eq!(&s.q(0, 1) * &s.q(0, 1), d.q(1, 0));
        // even modulus with odd product exponent doubles M
        let e = DiagonalBraiding::new(4, vec![vec![2, 1], vec![0, 1]]).unwrap();
        let se = e.symmetrize();
        assert_eq!(se.modulus(), 8);
        assert!(se.is_symmetric());
        assert_eq!(&se.q(0, 1) * &se.q(1, 0), (&e.q(0, 1) * &e.q(1, 0)).embed(8).unwrap());
        assert_eq!(se.q(1, 1), e.q(1, 1).embed(8).unwrap());
        let already = DiagonalBraiding::new(5, vec![vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(already.symmetrize(), already);
    }
}
