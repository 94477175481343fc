use alloc::vec::Vec;

use super::PureDecomposition;
use crate::algebra::GeneralTensor;
use crate::gf::{Fq, PVec, Span, MAX_LEN};
use crate::{Error, Result};

const MAX_PURE: usize = 20_000;
const NODE_BUDGET: u64 = 200_000_000;

/// Projective pure tensors with the given factor lengths, flattened.
fn pure_points(f: Fq, dims: &[usize]) -> Result<Vec<PVec>> {
    let q = f.q() as usize;
    let mut count: usize = 1;
    for &d in dims {
        count = count.saturating_mul((q.saturating_pow(d as u32) - 1) / (q - 1));
    }
    if count > MAX_PURE {
        return Err(Error::TooLarge("too many pure tensors"));
    }
    let factor_points: Vec<Vec<Vec<u8>>> = dims
        .iter()
        .map(|&d| {
            let s = Span::from_vectors(f, d, (0..d).map(|i| {
                let mut v = PVec::ZERO;
                v.set(i, 1);
                v
            }));
            s.projective_points().into_iter().map(|p| p.to_digits(d)).collect()
        })
        .collect();
    let mut out = alloc::vec![alloc::vec![1u8]];
    for pts in &factor_points {
        let mut next = Vec::new();
        for acc in &out {
            for p in pts {
                next.push(acc.iter().flat_map(|&a| p.iter().map(move |&b| f.mul(a, b))).collect::<Vec<u8>>());
            }
        }
        out = next;
    }
    Ok(out.iter().map(|v| PVec::from_digits(v)).collect())
}

/// Exact tensor rank by exhaustive search, or `None` if it exceeds `cap`.
///
/// Uses that T has rank at most r iff its first contraction space lies in
/// the span of r pure tensors of one order less. Sets of such pure tensors
/// are tried in increasing size; a partial set S of a size-r candidate is
/// abandoned once dim(C + span S) exceeds r.
pub fn brute_force_tensor_rank(t: &GeneralTensor, cap: usize) -> Result<Option<usize>> {
    let f = t.field();
    if t.order() <= 1 {
        let r = usize::from(!t.is_zero());
        return Ok((r <= cap).then_some(r));
    }
    let rest: Vec<usize> = t.dims()[1..].to_vec();
    let width: usize = rest.iter().product();
    if width > MAX_LEN {
        return Err(Error::TooLarge("contractions longer than 64 entries"));
    }
    let c = Span::from_vectors(f, width, t.contraction_space(0)?.iter().map(|x| PVec::from_digits(x.data())));
    let pure = pure_points(f, &rest)?;
    let mut budget = NODE_BUDGET;
    for r in c.dim()..=cap {
        let mut s = Span::new(f, width);
        if subset_search(&c, &pure, 0, r, &mut s, 0, &mut budget)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

fn subset_search(c: &Span, pure: &[PVec], from: usize, r: usize, s: &mut Span, used: usize, budget: &mut u64) -> Result<bool> {
    if s.contains_span(c) {
        return Ok(true);
    }
    if used == r {
        return Ok(false);
    }
    for i in from..pure.len() {
        if *budget == 0 {
            return Err(Error::TooLarge("search budget exhausted"));
        }
        *budget -= 1;
        if s.contains(pure[i]) {
            continue;
        }
        let mut next = s.with(pure[i]);
        if c.sum_dim(&next) > r {
            continue;
        }
        if subset_search(c, pure, i + 1, r, &mut next, used + 1, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The codeword of a covector, the matching contraction, and (when the
/// brute-force oracle is feasible) whether the contraction's rank is at most
/// the codeword weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportCheck {
    pub codeword: Vec<u8>,
    pub weight: usize,
    pub contraction: GeneralTensor,
    /// The contraction's rank when the oracle found it within the weight.
    pub contraction_rank: Option<usize>,
    pub rank_within_weight: Option<bool>,
}

pub fn codeword_support_check(d: &PureDecomposition, cov: &[u8], slot: usize) -> Result<SupportCheck> {
    let f = d.field();
    if slot >= d.order() {
        return Err(Error::BadSlot { slot, order: d.order() });
    }
    if cov.len() != d.dims()[slot] {
        return Err(Error::DimensionMismatch { expected: d.dims()[slot], got: cov.len() });
    }
    let codeword: Vec<u8> = d
        .summands()
        .iter()
        .map(|s| s[slot].iter().zip(cov).fold(0u8, |acc, (&a, &b)| f.add(acc, f.mul(a, b % f.q()))))
        .collect();
    let weight = codeword.iter().filter(|&&x| x != 0).count();
    let contraction = d.to_tensor().contract(slot, cov)?;
    let oracle = brute_force_tensor_rank(&contraction, weight).ok();
    let contraction_rank = oracle.flatten();
    let rank_within_weight = oracle.map(|r| r.is_some());
    Ok(SupportCheck { codeword, weight, contraction, contraction_rank, rank_within_weight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{field_construct, Hypercube};
    use crate::gf::Poly;

    #[test]
    fn field_of_order_4_has_rank_three() {
        let c = field_construct(Fq::F2, 2, &Poly::new(Fq::F2, &[1, 1, 1])).unwrap();
        let t = Hypercube::from_spread_set(&c).to_tensor();
        assert_eq!(brute_force_tensor_rank(&t, 4).unwrap(), Some(3));
        assert_eq!(brute_force_tensor_rank(&t, 2).unwrap(), None);
    }

    #[test]
    fn trivial_ranks() {
        let z = GeneralTensor::zero(Fq::F3, &[2, 2, 2]);
        assert_eq!(brute_force_tensor_rank(&z, 3).unwrap(), Some(0));
        let p = GeneralTensor::pure(Fq::F3, &[alloc::vec![1, 2], alloc::vec![0, 1], alloc::vec![2, 2]]);
        assert_eq!(brute_force_tensor_rank(&p, 3).unwrap(), Some(1));
        let m = GeneralTensor::from_data(Fq::F2, &[2, 2], alloc::vec![1, 0, 0, 1]).unwrap();
        assert_eq!(brute_force_tensor_rank(&m, 3).unwrap(), Some(2));
    }
}
