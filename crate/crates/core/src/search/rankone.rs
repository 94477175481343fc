use alloc::vec::Vec;

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use crate::codec;
use crate::equivalence::Isotopism;
use crate::gf::{Fq, Mat, Span};
use crate::space::MatSpace;

/// Every nonzero rank-one matrix, sorted by encoding.
pub fn rank_one_elements(f: Fq, n: usize) -> Vec<Mat> {
    let mut out: Vec<Mat> = crate::equivalence::rank_one_points(f, n)
        .into_iter()
        .flat_map(|m| f.nonzero().map(move |c| m.scale(c)))
        .collect();
    out.sort_by_key(codec::encode);
    out
}

/// Why a list of matrices fails to be a rank-one decomposition of a space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verification {
    Verified,
    /// The matrix at this index does not have rank one.
    NotRankOne { index: usize, rank: usize },
    /// This basis element of the space lies outside the span.
    NotContained { encoding: u64 },
    /// Field or size of the matrices differs from the space.
    Mismatch,
}

impl Verification {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verification::Verified)
    }
}

/// Checks that every matrix has rank one and that their span contains `c`.
pub fn verify_decomposition(c: &MatSpace, a: &[Mat]) -> Verification {
    let (f, n) = (c.field(), c.n());
    if a.iter().any(|m| m.field() != f || m.n() != n) {
        return Verification::Mismatch;
    }
    for (index, m) in a.iter().enumerate() {
        let rank = m.rank();
        if rank != 1 {
            return Verification::NotRankOne { index, rank };
        }
    }
    let span = Span::from_vectors(f, n * n, a.iter().map(Mat::packed));
    for b in c.basis() {
        if !span.contains(b.packed()) {
            return Verification::NotContained { encoding: codec::encode(&b) };
        }
    }
    Verification::Verified
}

/// A fixed scrambling of encodings used to pick orbit representatives.
/// Least-encoded members share many zero entries and make different
/// representatives span common spaces far more often than typical members.
#[inline]
pub(crate) fn scramble(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Orbits of the group generated by `gens` on a closed set of projective
/// points. Each orbit is given by its member with the least scrambled
/// encoding; orbits are listed in order of their least point index.
pub(crate) fn orbit_representatives(gens: &[Isotopism], points: &[Mat]) -> Vec<Mat> {
    let index: HashMap<Mat, usize> = points.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut seen = alloc::vec![false; points.len()];
    let mut out = Vec::new();
    for start in 0..points.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = alloc::vec![start];
        let mut best = (scramble(codec::encode(&points[start])), start);
        while let Some(i) = stack.pop() {
            for g in gens {
                let j = index[&g.apply_point(&points[i])];
                if !seen[j] {
                    seen[j] = true;
                    best = best.min((scramble(codec::encode(&points[j])), j));
                    stack.push(j);
                }
            }
        }
        out.push(points[best.1]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(rank_one_elements(Fq::F2, 2).len(), 9);
        assert_eq!(rank_one_elements(Fq::F2, 4).len(), 225);
        assert_eq!(rank_one_elements(Fq::F3, 4).len(), 3200);
        assert!(rank_one_elements(Fq::F5, 2).iter().all(|m| m.rank() == 1));
    }

    #[test]
    fn verification_reasons() {
        let c = MatSpace::from_encodings(Fq::F2, 2, &[9, 6 + 8]).unwrap();
        let a = codec::decode_all(&[1, 8, 2, 4 + 2], Fq::F2, 2).unwrap();
        assert_eq!(verify_decomposition(&c, &a), Verification::NotRankOne { index: 3, rank: 2 });
        let a = codec::decode_all(&[1, 8, 2, 4], Fq::F2, 2).unwrap();
        assert!(verify_decomposition(&c, &a).is_verified());
        assert!(matches!(verify_decomposition(&c, &a[..3]), Verification::NotContained { .. }));
    }
}
