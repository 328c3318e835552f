use std::fmt;

use serde::{Deserialize, Serialize};

use super::CycNumber;

/// zeta_M^k, kept as an exponent so products are additions mod M.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    modulus: u32,
    exponent: u32,
}

impl RootOfUnity {
    pub fn new(modulus: u32, k: i64) -> Self {
        assert!(modulus >= 1, "root of unity modulus must be positive");
        RootOfUnity { modulus, exponent: k.rem_euclid(modulus as i64) as u32 }
    }

    pub fn one(modulus: u32) -> Self {
        Self::new(modulus, 0)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    pub fn mul(self, other: Self) -> Self {
        let (a, b) = self.common(other);
        RootOfUnity::new(a.modulus, a.exponent as i64 + b.exponent as i64)
    }

    pub fn inverse(self) -> Self {
        RootOfUnity::new(self.modulus, -(self.exponent as i64))
    }

    pub fn pow(self, e: i64) -> Self {
        let k = (self.exponent as i128 * e as i128).rem_euclid(self.modulus as i128);
        RootOfUnity::new(self.modulus, k as i64)
    }

    pub fn order(&self) -> u32 {
        self.modulus / num_integer::gcd(self.modulus, self.exponent)
    }

    /// Same value written over the modulus `target`, which must be a multiple of M.
    pub fn lift(self, target: u32) -> Option<Self> {
        (target % self.modulus == 0)
            .then(|| RootOfUnity::new(target, (self.exponent * (target / self.modulus)) as i64))
    }

    /// Same value over the smallest modulus, namely its order.
    pub fn reduced(self) -> Self {
        let o = self.order();
        RootOfUnity::new(o, (self.exponent / (self.modulus / o)) as i64)
    }

    fn common(self, other: Self) -> (Self, Self) {
        let l = num_integer::lcm(self.modulus, other.modulus);
        (self.lift(l).expect("lcm is a multiple"), other.lift(l).expect("lcm is a multiple"))
    }

    pub fn to_cyc(&self) -> CycNumber {
        CycNumber::root_of_unity(self.modulus, self.exponent as i64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta_{}^{}", self.modulus, self.exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_through_cyc() {
        for m in 1..=30u32 {
            for k in 0..m {
                let r = RootOfUnity::new(m, k as i64);
                assert_eq!(r.to_cyc().to_root_of_unity(), Some(r));
            }
        }
    }

    #[test]
    fn arithmetic() {
        let a = RootOfUnity::new(6, 5);
        assert_eq!(a.mul(RootOfUnity::new(6, 3)), RootOfUnity::new(6, 2));
        assert_eq!(a.inverse(), RootOfUnity::new(6, 1));
        assert_eq!(a.order(), 6);
        assert_eq!(RootOfUnity::new(6, 4).reduced(), RootOfUnity::new(3, 2));
        assert_eq!(RootOfUnity::new(2, 1).mul(RootOfUnity::new(3, 1)), RootOfUnity::new(6, 5));
    }
}
