use core::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A prime field F_q with q in {2, 3, 5, 7}. Elements are residues `0..q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Fq(u8);

impl Fq {
    pub const F2: Fq = Fq(2);
    pub const F3: Fq = Fq(3);
    pub const F5: Fq = Fq(5);
    pub const F7: Fq = Fq(7);

    pub fn new(q: u32) -> Result<Self> {
        match q {
            2 | 3 | 5 | 7 => Ok(Fq(q as u8)),
            _ => Err(Error::UnsupportedField(q)),
        }
    }

    #[inline]
    pub fn q(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        (self.0 - a) % self.0
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        (a * b) % self.0
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(self, a: u8) -> u8 {
        // a^(q-2) by table: q is at most 7 so the products stay below 256.
        match (self.0, a % self.0) {
            (_, 0) => 0,
            (_, 1) => 1,
            (3, 2) => 2,
            (5, 2) => 3,
            (5, 3) => 2,
            (5, 4) => 4,
            (7, 2) => 4,
            (7, 3) => 5,
            (7, 4) => 2,
            (7, 5) => 3,
            (7, 6) => 6,
            _ => unreachable!("residue out of range"),
        }
    }

    #[inline]
    pub fn pow(self, a: u8, mut e: u64) -> u8 {
        let mut base = a % self.0;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn elements(self) -> core::ops::Range<u8> {
        0..self.0
    }

    pub fn nonzero(self) -> core::ops::Range<u8> {
        1..self.0
    }
}

impl TryFrom<u8> for Fq {
    type Error = Error;
    fn try_from(q: u8) -> Result<Self> {
        Fq::new(q as u32)
    }
}

impl From<Fq> for u8 {
    fn from(f: Fq) -> u8 {
        f.0
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_are_inverses() {
        for q in [2u32, 3, 5, 7] {
            let f = Fq::new(q).unwrap();
            for a in f.nonzero() {
                assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                assert_eq!(f.pow(a, q as u64 - 1), 1);
            }
        }
    }

    #[test]
    fn rejects_non_prime_or_large() {
        assert_eq!(Fq::new(4), Err(Error::UnsupportedField(4)));
        assert!(Fq::new(11).is_err());
    }
}
