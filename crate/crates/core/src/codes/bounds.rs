use alloc::vec::Vec;

use crate::algebra::GeneralTensor;
use crate::gf::{Fq, Mat, PVec, SpanElements};
use crate::space::MatSpace;
use crate::{Error, Result};

/// Whether a code with given parameters exists, as far as can be decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Existence {
    Exists,
    DoesNotExist,
    Unknown,
}

/// Tabulated code facts. Every entry is also decidable by the exhaustive
/// search in [`code_exists`]; the tests check the two agree.
pub struct BoundTable;

impl BoundTable {
    /// Known values of N_q(k, d), the least length of a linear [N, k, d]_q code.
    pub const LENGTHS: &'static [(u8, usize, usize, usize)] = &[(2, 4, 4, 8), (3, 4, 4, 8)];

    /// Parameters (q, length, k, d) known to admit no linear code.
    pub const NONEXISTENT: &'static [(u8, usize, usize, usize)] = &[(3, 8, 4, 5)];

    pub fn length(q: u8, k: usize, d: usize) -> Option<usize> {
        Self::LENGTHS.iter().find(|e| (e.0, e.1, e.2) == (q, k, d)).map(|e| e.3)
    }

    pub fn existence(q: u8, length: usize, k: usize, d: usize) -> Existence {
        if Self::NONEXISTENT.contains(&(q, length, k, d)) {
            return Existence::DoesNotExist;
        }
        match Self::length(q, k, d) {
            Some(n) if length >= n => Existence::Exists,
            Some(_) => Existence::DoesNotExist,
            None => Existence::Unknown,
        }
    }
}

/// Node budget for the exhaustive existence search.
const SEARCH_BUDGET: u64 = 20_000_000;

/// Whether an [length, k, d]_q linear code exists: the table first, then an
/// exhaustive search over systematic generator matrices [I | P] with the
/// rows of P in nondecreasing order. `Unknown` if the search budget runs out.
pub fn code_exists(f: Fq, length: usize, k: usize, d: usize) -> Existence {
    let known = BoundTable::existence(f.q(), length, k, d);
    if known != Existence::Unknown {
        return known;
    }
    search_exists(f, length, k, d)
}

/// The exhaustive search alone, without consulting the table.
pub fn search_exists(f: Fq, length: usize, k: usize, d: usize) -> Existence {
    if k == 0 || d == 0 {
        return Existence::Exists;
    }
    if length < k || d > length - k + 1 || length > 64 {
        return if length >= k && d <= length - k + 1 { Existence::Unknown } else { Existence::DoesNotExist };
    }
    let r = length - k;
    let q = f.q() as u64;
    let Some(count) = q.checked_pow(r as u32).filter(|&c| c <= 1 << 20) else {
        return Existence::Unknown;
    };
    // Parity parts allowed for a single row: weight at least d - 1.
    let candidates: Vec<PVec> = (0..count)
        .map(|mut i| {
            let mut v = PVec::ZERO;
            for pos in 0..r {
                v.set(pos, (i % q) as u8);
                i /= q;
            }
            v
        })
        .filter(|v| v.weight() as usize + 1 >= d)
        .collect();
    let mut search = Exist { f, k, d, candidates: &candidates, budget: SEARCH_BUDGET };
    // Codewords of the span so far: (parity part, number of nonzero coefficients).
    let words = alloc::vec![(PVec::ZERO, 0usize)];
    match search.dfs(0, 0, &words) {
        Some(true) => Existence::Exists,
        Some(false) => Existence::DoesNotExist,
        None => Existence::Unknown,
    }
}

struct Exist<'a> {
    f: Fq,
    k: usize,
    d: usize,
    candidates: &'a [PVec],
    budget: u64,
}

impl Exist<'_> {
    /// `Some(found)`, or `None` when the budget is exhausted.
    fn dfs(&mut self, row: usize, from: usize, words: &[(PVec, usize)]) -> Option<bool> {
        if row == self.k {
            return Some(true);
        }
        for ci in from..self.candidates.len() {
            if self.budget == 0 {
                return None;
            }
            self.budget -= 1;
            let p = self.candidates[ci];
            let mut next = Vec::with_capacity(words.len() * self.f.q() as usize);
            let mut ok = true;
            'outer: for lam in self.f.elements() {
                let lp = p.scale(lam, self.f);
                for &(w, info) in words {
                    let v = w.add(lp, self.f);
                    let info = info + usize::from(lam != 0);
                    if lam != 0 && (v.weight() as usize + info) < self.d {
                        ok = false;
                        break 'outer;
                    }
                    next.push((v, info));
                }
            }
            if ok {
                match self.dfs(row + 1, ci, &next) {
                    Some(false) => {}
                    other => return other,
                }
            }
        }
        Some(false)
    }
}

/// N_q(k, d): the table when it has the entry, otherwise the least length
/// found by exhaustive search starting from the Singleton bound k + d - 1.
pub fn nq_lookup(f: Fq, k: usize, d: usize) -> Result<usize> {
    if let Some(n) = BoundTable::length(f.q(), k, d) {
        return Ok(n);
    }
    let mut len = k + d - 1;
    loop {
        match search_exists(f, len, k, d) {
            Existence::Exists => return Ok(len),
            Existence::DoesNotExist => len += 1,
            Existence::Unknown => return Err(Error::Unknown { q: f.q(), k, d }),
        }
    }
}

/// Least rank of a nonzero element.
pub fn min_rank_in_space(s: &MatSpace) -> Option<usize> {
    s.min_rank()
}

/// The code-length lower bound on tensor rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenBound {
    /// The best bound over slots with a known N_q entry.
    pub bound: usize,
    /// (dim C_i, d_i, N_q(dim C_i, d_i) if known) for every slot.
    pub slots: Vec<(usize, usize, Option<usize>)>,
    /// Some slot had no known N_q value.
    pub partial: bool,
}

/// Max over slots i of N_q(dim C_i(T), d_i), where d_i is the least rank of
/// a nonzero slot-i contraction. Supports order-3 tensors.
pub fn genbound(t: &GeneralTensor) -> Result<GenBound> {
    if t.order() != 3 {
        return Err(Error::Unsupported("bounds are computed for order-3 tensors"));
    }
    let f = t.field();
    let mut slots = Vec::new();
    for slot in 0..3 {
        let space = t.contraction_space(slot)?;
        let dims: Vec<usize> = t.dims().iter().enumerate().filter(|(i, _)| *i != slot).map(|(_, &d)| d).collect();
        let k = space.len();
        let d = min_contraction_rank(f, dims[0], dims[1], &space);
        let nq = if k == 0 { Some(0) } else { nq_lookup(f, k, d).ok() };
        slots.push((k, d, nq));
    }
    let bound = slots.iter().filter_map(|s| s.2).max().unwrap_or(0);
    let partial = slots.iter().any(|s| s.2.is_none());
    Ok(GenBound { bound, slots, partial })
}

fn min_contraction_rank(f: Fq, rows: usize, cols: usize, space: &[GeneralTensor]) -> usize {
    if space.is_empty() {
        return 0;
    }
    let gens: Vec<Vec<u8>> = space.iter().map(|t| t.data().to_vec()).collect();
    let side = rows.max(cols);
    // Pad rectangular slices into square matrices; rank is unchanged.
    let mats: Vec<PVec> = gens
        .iter()
        .map(|g| {
            let mut m = Mat::zero(f, side);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, g[i * cols + j]);
                }
            }
            m.packed()
        })
        .collect();
    SpanElements::new(f, &mats)
        .skip(1)
        .map(|v| Mat::from_packed(f, side, v).rank())
        .min()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_agrees_with_search() {
        for &(q, k, d, n) in BoundTable::LENGTHS {
            let f = Fq::new(q as u32).unwrap();
            assert_eq!(search_exists(f, n, k, d), Existence::Exists);
            assert_eq!(search_exists(f, n - 1, k, d), Existence::DoesNotExist);
        }
        for &(q, len, k, d) in BoundTable::NONEXISTENT {
            let f = Fq::new(q as u32).unwrap();
            assert_eq!(search_exists(f, len, k, d), Existence::DoesNotExist);
        }
        assert_eq!(code_exists(Fq::F3, 8, 4, 5), Existence::DoesNotExist);
    }

    #[test]
    fn small_values() {
        assert_eq!(nq_lookup(Fq::F2, 4, 4).unwrap(), 8);
        assert_eq!(nq_lookup(Fq::F3, 4, 4).unwrap(), 8);
        assert_eq!(nq_lookup(Fq::F2, 3, 3).unwrap(), 6);
        assert_eq!(nq_lookup(Fq::F5, 2, 2).unwrap(), 3);
        // The Hamming code [7,4,3]_2 and the tetracode [4,2,3]_3.
        assert_eq!(nq_lookup(Fq::F2, 4, 3).unwrap(), 7);
        assert_eq!(nq_lookup(Fq::F3, 2, 3).unwrap(), 4);
        for q in [2u32, 3, 5] {
            let f = Fq::new(q).unwrap();
            for k in 1..=3 {
                for d in 1..=4 {
                    let n = nq_lookup(f, k, d).unwrap();
                    assert!(n >= k + d - 1);
                    assert!(nq_lookup(f, k, d + 1).unwrap() >= n);
                }
            }
        }
    }
}
