use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::gf::{Fq, Mat, PVec, MAX_N};

/// Characteristic polynomial det(tI - M), coefficients from the constant
/// term up (monic, length n + 1), via reduction to Hessenberg form.
pub fn char_poly(m: &Mat) -> Vec<u8> {
    let f = m.field();
    let n = m.n();
    let mut h = [[0u8; MAX_N]; MAX_N];
    for (i, row) in h.iter_mut().enumerate().take(n) {
        for (j, x) in row.iter_mut().enumerate().take(n) {
            *x = m.get(i, j);
        }
    }
    // Similarity transforms to upper Hessenberg form.
    for c in 0..n.saturating_sub(2) {
        let Some(p) = (c + 1..n).find(|&r| h[r][c] != 0) else { continue };
        if p != c + 1 {
            h.swap(p, c + 1);
            for row in h.iter_mut().take(n) {
                row.swap(p, c + 1);
            }
        }
        let inv = f.inv(h[c + 1][c]);
        for r in c + 2..n {
            let u = f.mul(h[r][c], inv);
            if u == 0 {
                continue;
            }
            for k in 0..n {
                h[r][k] = f.sub(h[r][k], f.mul(u, h[c + 1][k]));
            }
            for row in h.iter_mut().take(n) {
                row[c + 1] = f.add(row[c + 1], f.mul(u, row[r]));
            }
        }
    }
    // p_0 = 1, p_m = (t - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Vec<u8>> = alloc::vec![alloc::vec![1]];
    for mm in 0..n {
        let prev = &polys[mm];
        let mut next = alloc::vec![0u8; mm + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[mm][mm], c));
        }
        let mut prod = 1u8;
        for i in (0..mm).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            let coef = f.mul(h[i][mm], prod);
            if coef != 0 {
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = f.sub(next[d], f.mul(coef, c));
                }
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n + 1 polynomials")
}

fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hash of a sequence of small integers; never zero.
pub(crate) fn hash_seq(items: impl IntoIterator<Item = u64>) -> u64 {
    let h = items.into_iter().fold(0x243f_6a88_85a3_08d3, mix);
    if h == 0 {
        1
    } else {
        h
    }
}

/// A similarity invariant: the characteristic polynomial together with the
/// ranks of (M - lambda I)^j for every eigenvalue lambda in F_q. Equal
/// values for similar matrices; unequal values prove non-similarity.
pub fn conjugacy_invariant(m: &Mat) -> u64 {
    let f = m.field();
    let n = m.n();
    let cp = char_poly(m);
    let mut items: Vec<u64> = cp.iter().map(|&c| c as u64).collect();
    for lam in f.elements() {
        let val = cp.iter().rev().fold(0u8, |acc, &c| f.add(f.mul(acc, lam), c));
        if val != 0 {
            continue;
        }
        let shifted = m.sub(&Mat::identity(f, n).scale(lam));
        let mut p = shifted;
        let mut last = n + 1;
        items.push(100 + lam as u64);
        for _ in 0..n {
            let r = p.rank();
            items.push(r as u64);
            if r == last {
                break;
            }
            last = r;
            p = p.mul(&shifted);
        }
    }
    hash_seq(items)
}

/// Memoized [`conjugacy_invariant`]. Uses a dense table when every matrix
/// of the size can be indexed by its raw bits.
pub struct InvariantCache {
    dense: Vec<u64>,
    sparse: HashMap<PVec, u64>,
}

impl InvariantCache {
    pub fn new(f: Fq, n: usize) -> InvariantCache {
        let dense = if f.q() == 2 && n * n <= 16 { alloc::vec![0u64; 1 << (n * n)] } else { Vec::new() };
        InvariantCache { dense, sparse: HashMap::new() }
    }

    pub fn get(&mut self, m: &Mat) -> u64 {
        if !self.dense.is_empty() {
            let idx = m.packed().planes()[0] as usize;
            let slot = &mut self.dense[idx];
            if *slot == 0 {
                *slot = conjugacy_invariant(m);
            }
            return *slot;
        }
        *self.sparse.entry(m.packed()).or_insert_with(|| conjugacy_invariant(m))
    }
}
