//! The compact integer encoding of matrices: entry (i, j) (zero-based) is the
//! base-q digit at position `i * n + j`.

use alloc::vec::Vec;

use crate::gf::{Fq, Mat, PVec, MAX_N};
use crate::{Error, Result};

/// `q^(n^2)`, or `None` when it does not fit in a `u64`.
pub fn capacity(f: Fq, n: usize) -> Option<u64> {
    (f.q() as u64).checked_pow((n * n) as u32)
}

/// Whether matrices of size n over F_q can be encoded in 64 bits.
pub fn supported(f: Fq, n: usize) -> bool {
    (1..=MAX_N).contains(&n) && capacity(f, n).is_some()
}

pub fn check_supported(f: Fq, n: usize) -> Result<()> {
    if supported(f, n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension { q: f.q(), n })
    }
}

pub fn decode(value: u64, f: Fq, n: usize) -> Result<Mat> {
    check_supported(f, n)?;
    let cap = capacity(f, n).expect("checked above");
    if value >= cap {
        return Err(Error::EncodingOverflow { value, q: f.q(), n });
    }
    let q = f.q() as u64;
    let mut v = PVec::ZERO;
    let mut rest = value;
    let mut pos = 0;
    while rest > 0 {
        v.set(pos, (rest % q) as u8);
        rest /= q;
        pos += 1;
    }
    Ok(Mat::from_packed(f, n, v))
}

pub fn encode(m: &Mat) -> u64 {
    let q = m.field().q() as u64;
    let n = m.n();
    let v = m.packed();
    let mut acc = 0u64;
    for pos in (0..n * n).rev() {
        acc = acc * q + v.get(pos) as u64;
    }
    acc
}

pub fn decode_all(values: &[u64], f: Fq, n: usize) -> Result<Vec<Mat>> {
    values.iter().map(|&v| decode(v, f, n)).collect()
}

pub fn encode_all(ms: &[Mat]) -> Vec<u64> {
    ms.iter().map(encode).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_goldens() {
        assert_eq!(decode(33825, Fq::F2, 4).unwrap(), Mat::identity(Fq::F2, 4));
        assert_eq!(decode(14408200, Fq::F3, 4).unwrap(), Mat::identity(Fq::F3, 4));
        assert_eq!(encode(&Mat::identity(Fq::F2, 4)), 33825);
        assert_eq!(decode(1, Fq::F3, 4).unwrap(), Mat::unit(Fq::F3, 4, 0, 0));
        assert_eq!(encode(&Mat::unit(Fq::F3, 4, 3, 3)), 14348907);
        assert_eq!(encode(&Mat::zero(Fq::F5, 3)), 0);
    }

    #[test]
    fn overflow_and_unsupported() {
        assert_eq!(decode(65536, Fq::F2, 4), Err(Error::EncodingOverflow { value: 65536, q: 2, n: 4 }));
        assert!(decode(0, Fq::F2, 8).is_err());
        assert!(decode(0, Fq::F7, 5).is_err());
        assert!(supported(Fq::F2, 7) && supported(Fq::F3, 5) && supported(Fq::F5, 5) && supported(Fq::F7, 4));
    }

    #[test]
    fn exhaustive_round_trip_n2() {
        for q in [2u32, 3, 5, 7] {
            let f = Fq::new(q).unwrap();
            for v in 0..capacity(f, 2).unwrap() {
                assert_eq!(encode(&decode(v, f, 2).unwrap()), v);
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip_n4(q in prop::sample::select(vec![2u32, 3, 5, 7]), raw in any::<u64>()) {
            let f = Fq::new(q).unwrap();
            let v = raw % capacity(f, 4).unwrap();
            let m = decode(v, f, 4).unwrap();
            prop_assert_eq!(encode(&m), v);
            prop_assert_eq!(decode(encode(&m), f, 4).unwrap(), m);
        }
    }
}
