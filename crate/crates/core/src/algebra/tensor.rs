use alloc::vec::Vec;

use crate::gf::Fq;
use crate::{Error, Result};

/// A dense tensor in F_q^{d_1} x ... x F_q^{d_t}, stored row-major (the last
/// index varies fastest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralTensor {
    f: Fq,
    dims: Vec<usize>,
    data: Vec<u8>,
}

impl GeneralTensor {
    pub fn zero(f: Fq, dims: &[usize]) -> GeneralTensor {
        let len = dims.iter().product();
        GeneralTensor { f, dims: dims.to_vec(), data: alloc::vec![0; len] }
    }

    pub fn from_data(f: Fq, dims: &[usize], data: Vec<u8>) -> Result<GeneralTensor> {
        let len: usize = dims.iter().product();
        if data.len() != len {
            return Err(Error::DimensionMismatch { expected: len, got: data.len() });
        }
        let data = data.into_iter().map(|x| x % f.q()).collect();
        Ok(GeneralTensor { f, dims: dims.to_vec(), data })
    }

    /// The pure tensor v_1 (x) ... (x) v_t.
    pub fn pure(f: Fq, factors: &[Vec<u8>]) -> GeneralTensor {
        let dims: Vec<usize> = factors.iter().map(Vec::len).collect();
        let mut data = alloc::vec![1u8];
        for v in factors {
            let mut next = Vec::with_capacity(data.len() * v.len());
            for &a in &data {
                for &b in v {
                    next.push(f.mul(a, b % f.q()));
                }
            }
            data = next;
        }
        GeneralTensor { f, dims, data }
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.f
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.dims.len()
    }

    #[inline]
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    #[inline]
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn get(&self, idx: &[usize]) -> u8 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: u8) {
        let o = self.offset(idx);
        self.data[o] = v % self.f.q();
    }

    pub fn add(&self, o: &GeneralTensor) -> GeneralTensor {
        assert_eq!(self.dims, o.dims, "tensor shapes differ");
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| self.f.add(a, b)).collect();
        GeneralTensor { f: self.f, dims: self.dims.clone(), data }
    }

    pub fn scale(&self, c: u8) -> GeneralTensor {
        let data = self.data.iter().map(|&a| self.f.mul(a, c)).collect();
        GeneralTensor { f: self.f, dims: self.dims.clone(), data }
    }

    /// Pairs slot `slot` (zero-based) with the covector `cov`, giving a
    /// tensor of order t - 1.
    pub fn contract(&self, slot: usize, cov: &[u8]) -> Result<GeneralTensor> {
        let t = self.order();
        if slot >= t {
            return Err(Error::BadSlot { slot, order: t });
        }
        if cov.len() != self.dims[slot] {
            return Err(Error::DimensionMismatch { expected: self.dims[slot], got: cov.len() });
        }
        let f = self.f;
        let outer: usize = self.dims[..slot].iter().product();
        let inner: usize = self.dims[slot + 1..].iter().product();
        let d = self.dims[slot];
        let mut data = alloc::vec![0u8; outer * inner];
        for a in 0..outer {
            for (s, &c) in cov.iter().enumerate() {
                let c = c % f.q();
                if c == 0 {
                    continue;
                }
                let base = (a * d + s) * inner;
                for b in 0..inner {
                    let o = &mut data[a * inner + b];
                    *o = f.add(*o, f.mul(c, self.data[base + b]));
                }
            }
        }
        let mut dims = self.dims.clone();
        dims.remove(slot);
        Ok(GeneralTensor { f, dims, data })
    }

    /// Reduced basis of the contraction space in slot `slot`, each element
    /// a tensor of order t - 1.
    pub fn contraction_space(&self, slot: usize) -> Result<Vec<GeneralTensor>> {
        let d = *self.dims.get(slot).ok_or(Error::BadSlot { slot, order: self.order() })?;
        let slices: Vec<Vec<u8>> = (0..d)
            .map(|s| {
                let mut e = alloc::vec![0u8; d];
                e[s] = 1;
                self.contract(slot, &e).map(|t| t.data)
            })
            .collect::<Result<_>>()?;
        let mut dims = self.dims.clone();
        dims.remove(slot);
        Ok(reduced_basis(self.f, &slices)
            .into_iter()
            .map(|data| GeneralTensor { f: self.f, dims: dims.clone(), data })
            .collect())
    }

    pub fn contraction_dim(&self, slot: usize) -> Result<usize> {
        Ok(self.contraction_space(slot)?.len())
    }

    /// Every contraction space has full dimension d_i.
    pub fn is_concise(&self) -> bool {
        (0..self.order()).all(|s| self.contraction_dim(s).ok() == Some(self.dims[s]))
    }
}

/// Reduced row-echelon basis of the span of arbitrary-length vectors.
pub fn reduced_basis(f: Fq, vecs: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut rows: Vec<Vec<u8>> = vecs.iter().map(|v| v.iter().map(|&x| x % f.q()).collect()).collect();
    let Some(width) = rows.first().map(Vec::len) else {
        return rows;
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, p);
        let inv = f.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_tensor_contractions() {
        let f = Fq::F3;
        let (u, v, w) = (alloc::vec![1, 2, 0], alloc::vec![0, 1, 1], alloc::vec![2, 2]);
        let t = GeneralTensor::pure(f, &[u.clone(), v.clone(), w.clone()]);
        for s in 0..3 {
            assert_eq!(t.contraction_dim(s).unwrap(), 1);
        }
        let cov = [2u8, 0, 1];
        let fv = (0..3).fold(0u8, |a, i| f.add(a, f.mul(cov[i], v[i])));
        let expect = GeneralTensor::pure(f, &[u, w]).scale(fv);
        assert_eq!(t.contract(1, &cov).unwrap(), expect);
        assert!(!t.is_concise());
    }

    #[test]
    fn zero_tensor() {
        let t = GeneralTensor::zero(Fq::F2, &[2, 3, 2]);
        assert_eq!(t.contraction_dim(0).unwrap(), 0);
        assert!(!t.is_concise());
        assert!(t.contract(2, &[1, 1]).unwrap().is_zero());
        assert_eq!(t.contract(3, &[1]), Err(Error::BadSlot { slot: 3, order: 3 }));
    }
}
