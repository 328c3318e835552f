//! Cyclotomic polynomials and the per-modulus reduction tables.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Reduction data for Q(zeta_M) = Q[x]/(Phi_M).
#[derive(Debug)]
pub(crate) struct CycField {
    pub modulus: u32,
    pub degree: usize,
    /// Monic Phi_M, lowest coefficient first.
    pub phi: Vec<i64>,
    /// `powers[k]` is x^k reduced modulo Phi_M, for k < max(M, 2*degree - 1).
    pub powers: Vec<Vec<i64>>,
}

impl CycField {
    fn build(modulus: u32, phi: Vec<i64>) -> Self {
        let degree = phi.len() - 1;
        let count = (modulus as usize).max(2 * degree - 1).max(1);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        if degree == 0 {
            unreachable!("cyclotomic polynomials have positive degree");
        }
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x, then fold the overflow coefficient back with Phi
            let top = cur[degree - 1];
            for k in (1..degree).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for k in 0..degree {
                    cur[k] = cur[k]
                        .checked_sub(top.checked_mul(phi[k]).expect("reduction overflow"))
                        .expect("reduction overflow");
                }
            }
        }
        CycField { modulus, degree, phi, powers }
    }

    /// x^k modulo Phi_M for any k >= 0, using x^M = 1.
    pub fn zeta_power(&self, k: u64) -> &[i64] {
        &self.powers[(k % self.modulus as u64) as usize]
    }
}

fn poly_divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (t, &d) in den.iter().enumerate() {
                rem[k + t] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn cyclotomic_poly(m: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_poly(d, cache);
            p = poly_divide_exact(&p, &phi_d);
        }
    }
    cache.insert(m, p.clone());
    p
}

/// Coefficients of the M-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic modulus must be positive");
    field(m).phi.clone()
}

static FIELDS: OnceLock<Mutex<(HashMap<u32, Arc<CycField>>, HashMap<u32, Vec<i64>>)>> =
    OnceLock::new();

pub(crate) fn field(m: u32) -> Arc<CycField> {
    assert!(m >= 1, "cyclotomic modulus must be positive");
    let lock = FIELDS.get_or_init(|| Mutex::new((HashMap::new(), HashMap::new())));
    let mut guard = lock.lock().expect("field cache poisoned");
    if let Some(f) = guard.0.get(&m) {
        return f.clone();
    }
    let phi = cyclotomic_poly(m, &mut guard.1);
    let f = Arc::new(CycField::build(m, phi));
    guard.0.insert(m, f.clone());
    f
}

pub fn euler_phi(m: u32) -> usize {
    let mut n = m;
    let mut result = m as usize;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p as usize;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n as usize;
    }
    result
}
