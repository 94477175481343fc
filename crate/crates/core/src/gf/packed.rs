use core::fmt;

use serde::{Deserialize, Serialize};

use super::Fq;

/// Maximum number of entries in a [`PVec`].
pub const MAX_LEN: usize = 64;

/// A vector of up to 64 residues stored as bit-planes: bit `i` of plane `j`
/// is bit `j` of entry `i`. F_2 uses one plane and F_3 two; F_5 and F_7 use
/// three and fall back to per-entry arithmetic.
///
/// Entries beyond the logical length are always zero.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PVec {
    planes: [u64; 3],
}

#[inline]
fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl PVec {
    pub const ZERO: PVec = PVec { planes: [0; 3] };

    /// The raw bit-planes.
    #[inline]
    pub fn planes(&self) -> [u64; 3] {
        self.planes
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        let p = &self.planes;
        (((p[0] >> i) & 1) | (((p[1] >> i) & 1) << 1) | (((p[2] >> i) & 1) << 2)) as u8
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: u8) {
        let bit = 1u64 << i;
        for j in 0..3 {
            if (v >> j) & 1 == 1 {
                self.planes[j] |= bit;
            } else {
                self.planes[j] &= !bit;
            }
        }
    }

    pub fn from_digits(digits: &[u8]) -> PVec {
        debug_assert!(digits.len() <= MAX_LEN);
        let mut v = PVec::ZERO;
        for (i, &d) in digits.iter().enumerate() {
            v.set(i, d);
        }
        v
    }

    pub fn to_digits(&self, len: usize) -> alloc::vec::Vec<u8> {
        (0..len).map(|i| self.get(i)).collect()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.support() == 0
    }

    /// Bitmask of nonzero positions.
    #[inline]
    pub fn support(&self) -> u64 {
        self.planes[0] | self.planes[1] | self.planes[2]
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> u32 {
        self.support().count_ones()
    }

    /// Position of the first nonzero entry.
    #[inline]
    pub fn leading(&self) -> Option<usize> {
        let s = self.support();
        if s == 0 {
            None
        } else {
            Some(s.trailing_zeros() as usize)
        }
    }

    #[inline]
    pub fn shr(self, k: usize) -> PVec {
        PVec { planes: self.planes.map(|p| p >> k) }
    }

    #[inline]
    pub fn shl(self, k: usize) -> PVec {
        PVec { planes: self.planes.map(|p| p << k) }
    }

    /// Keeps entries `0..len`.
    #[inline]
    pub fn truncate(self, len: usize) -> PVec {
        let m = low_mask(len);
        PVec { planes: self.planes.map(|p| p & m) }
    }

    /// Entries `start..start+len`, moved down to position 0.
    #[inline]
    pub fn slice(self, start: usize, len: usize) -> PVec {
        self.shr(start).truncate(len)
    }

    /// Union of two vectors with disjoint supports.
    #[inline]
    pub fn merge(self, other: PVec) -> PVec {
        PVec {
            planes: [
                self.planes[0] | other.planes[0],
                self.planes[1] | other.planes[1],
                self.planes[2] | other.planes[2],
            ],
        }
    }

    #[inline]
    pub fn add(self, o: PVec, f: Fq) -> PVec {
        match f.q() {
            2 => PVec { planes: [self.planes[0] ^ o.planes[0], 0, 0] },
            3 => {
                let (a1, a2) = (self.planes[0], self.planes[1]);
                let (b1, b2) = (o.planes[0], o.planes[1]);
                let az = !(a1 | a2);
                let bz = !(b1 | b2);
                let r1 = (a1 & bz) | (az & b1) | (a2 & b2);
                let r2 = (a2 & bz) | (az & b2) | (a1 & b1);
                PVec { planes: [r1, r2, 0] }
            }
            _ => self.slow_zip(o, |x, y| f.add(x, y)),
        }
    }

    #[inline]
    pub fn neg(self, f: Fq) -> PVec {
        match f.q() {
            2 => self,
            3 => PVec { planes: [self.planes[1], self.planes[0], 0] },
            _ => self.slow_map(|x| f.neg(x)),
        }
    }

    #[inline]
    pub fn sub(self, o: PVec, f: Fq) -> PVec {
        self.add(o.neg(f), f)
    }

    #[inline]
    pub fn scale(self, c: u8, f: Fq) -> PVec {
        match (f.q(), c) {
            (_, 0) => PVec::ZERO,
            (_, 1) => self,
            (3, 2) => self.neg(f),
            _ => self.slow_map(|x| f.mul(x, c)),
        }
    }

    /// `self + c * o`.
    #[inline]
    pub fn axpy(self, c: u8, o: PVec, f: Fq) -> PVec {
        match (f.q(), c) {
            (_, 0) => self,
            (_, 1) => self.add(o, f),
            (3, 2) => self.add(o.neg(f), f),
            _ => self.add(o.scale(c, f), f),
        }
    }

    /// Dot product of the first `len` entries.
    pub fn dot(&self, o: &PVec, f: Fq) -> u8 {
        let mut s = self.support() & o.support();
        let mut acc = 0u8;
        while s != 0 {
            let i = s.trailing_zeros() as usize;
            acc = f.add(acc, f.mul(self.get(i), o.get(i)));
            s &= s - 1;
        }
        acc
    }

    /// Scales so that the leading entry is 1. Returns the scale applied.
    #[inline]
    pub fn normalize(self, f: Fq) -> (PVec, u8) {
        match self.leading() {
            None => (self, 1),
            Some(p) => {
                let c = f.inv(self.get(p));
                (self.scale(c, f), c)
            }
        }
    }

    fn slow_map(self, g: impl Fn(u8) -> u8) -> PVec {
        let mut out = PVec::ZERO;
        let mut s = self.support();
        while s != 0 {
            let i = s.trailing_zeros() as usize;
            out.set(i, g(self.get(i)));
            s &= s - 1;
        }
        out
    }

    fn slow_zip(self, o: PVec, g: impl Fn(u8, u8) -> u8) -> PVec {
        let mut out = PVec::ZERO;
        let mut s = self.support() | o.support();
        while s != 0 {
            let i = s.trailing_zeros() as usize;
            out.set(i, g(self.get(i), o.get(i)));
            s &= s - 1;
        }
        out
    }
}

impl fmt::Debug for PVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = 64 - self.support().leading_zeros() as usize;
        write!(f, "[")?;
        for i in 0..len {
            write!(f, "{}", self.get(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn digits(q: u8) -> impl Strategy<Value = Vec<u8>> {
        proptest::collection::vec(0..q, 0..=MAX_LEN)
    }

    fn check_binary(q: u8, a: Vec<u8>, b: Vec<u8>, c: u8) {
        let f = Fq::new(q as u32).unwrap();
        let (va, vb) = (PVec::from_digits(&a), PVec::from_digits(&b));
        let sum = va.axpy(c, vb, f);
        for i in 0..MAX_LEN {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            assert_eq!(sum.get(i), f.add(x, f.mul(c, y)));
        }
        assert_eq!(va.sub(va, f), PVec::ZERO);
    }

    proptest! {
        #[test]
        fn axpy_matches_scalar_arithmetic(q in prop::sample::select(vec![2u8, 3, 5, 7]), seed in any::<u64>()) {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            use rand::Rng;
            let a: Vec<u8> = (0..MAX_LEN).map(|_| rng.gen_range(0..q)).collect();
            let b: Vec<u8> = (0..MAX_LEN).map(|_| rng.gen_range(0..q)).collect();
            let c = rng.gen_range(0..q);
            check_binary(q, a, b, c);
        }

        #[test]
        fn digits_round_trip(d in digits(7)) {
            let v = PVec::from_digits(&d);
            prop_assert_eq!(v.to_digits(d.len()), d);
        }
    }

    #[test]
    fn leading_and_weight() {
        let v = PVec::from_digits(&[0, 0, 2, 0, 1]);
        assert_eq!(v.leading(), Some(2));
        assert_eq!(v.weight(), 2);
        let (n, c) = v.normalize(Fq::F3);
        assert_eq!(c, 2);
        assert_eq!(n.get(2), 1);
        assert_eq!(n.get(4), 2);
    }
}
