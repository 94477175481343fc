use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::{Fq, PVec};
use crate::{Error, Result};

/// Largest supported matrix dimension (n^2 entries must fit a [`PVec`]).
pub const MAX_N: usize = 8;

/// A length-n vector over F_q.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vector {
    f: Fq,
    n: u8,
    v: PVec,
}

impl Vector {
    pub fn zero(f: Fq, n: usize) -> Vector {
        Vector { f, n: n as u8, v: PVec::ZERO }
    }

    pub fn from_packed(f: Fq, n: usize, v: PVec) -> Vector {
        Vector { f, n: n as u8, v: v.truncate(n) }
    }

    pub fn from_entries(f: Fq, entries: &[u8]) -> Vector {
        let q = f.q();
        let d: Vec<u8> = entries.iter().map(|&e| e % q).collect();
        Vector { f, n: entries.len() as u8, v: PVec::from_digits(&d) }
    }

    /// The i-th standard basis vector.
    pub fn unit(f: Fq, n: usize, i: usize) -> Vector {
        let mut v = PVec::ZERO;
        v.set(i, 1);
        Vector { f, n: n as u8, v }
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.f
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn packed(&self) -> PVec {
        self.v
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        self.v.get(i)
    }

    pub fn entries(&self) -> Vec<u8> {
        self.v.to_digits(self.len())
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn add(&self, o: &Vector) -> Vector {
        Vector { v: self.v.add(o.v, self.f), ..*self }
    }

    pub fn scale(&self, c: u8) -> Vector {
        Vector { v: self.v.scale(c, self.f), ..*self }
    }

    pub fn dot(&self, o: &Vector) -> u8 {
        self.v.dot(&o.v, self.f)
    }

    /// All q^n vectors of length n, in odometer order.
    pub fn all(f: Fq, n: usize) -> impl Iterator<Item = Vector> {
        let gens: Vec<PVec> = (0..n).map(|i| Vector::unit(f, n, i).v).collect();
        let items: Vec<PVec> = super::SpanElements::new(f, &gens).collect();
        items.into_iter().map(move |v| Vector { f, n: n as u8, v })
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        write!(f, ")")
    }
}

/// An n x n matrix over F_q, row-major: entry (i, j) sits at position
/// `i * n + j` of the packed vector. This is also the digit order of the
/// integer encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    f: Fq,
    n: u8,
    v: PVec,
}

impl Mat {
    pub fn zero(f: Fq, n: usize) -> Mat {
        assert!((1..=MAX_N).contains(&n), "matrix dimension out of range");
        Mat { f, n: n as u8, v: PVec::ZERO }
    }

    pub fn identity(f: Fq, n: usize) -> Mat {
        let mut m = Mat::zero(f, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Matrix unit E_{ij}.
    pub fn unit(f: Fq, n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zero(f, n);
        m.set(i, j, 1);
        m
    }

    pub fn from_packed(f: Fq, n: usize, v: PVec) -> Mat {
        Mat { f, n: n as u8, v: v.truncate(n * n) }
    }

    /// Builds from row-major entries; values are reduced mod q.
    pub fn from_entries(f: Fq, n: usize, entries: &[u8]) -> Result<Mat> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: entries.len() });
        }
        let mut m = Mat::zero(f, n);
        for (p, &e) in entries.iter().enumerate() {
            m.v.set(p, e % f.q());
        }
        Ok(m)
    }

    pub fn from_rows(f: Fq, rows: &[&[u8]]) -> Result<Mat> {
        let n = rows.len();
        let flat: Vec<u8> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Mat::from_entries(f, n, &flat)
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.f
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn packed(&self) -> PVec {
        self.v
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.v.get(i * self.n() + j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        let n = self.n();
        self.v.set(i * n + j, x % self.f.q());
    }

    pub fn entries(&self) -> Vec<u8> {
        self.v.to_digits(self.n() * self.n())
    }

    #[inline]
    pub fn row(&self, i: usize) -> PVec {
        let n = self.n();
        self.v.slice(i * n, n)
    }

    pub fn col(&self, j: usize) -> PVec {
        let mut c = PVec::ZERO;
        for i in 0..self.n() {
            c.set(i, self.get(i, j));
        }
        c
    }

    pub fn row_vector(&self, i: usize) -> Vector {
        Vector::from_packed(self.f, self.n(), self.row(i))
    }

    pub fn col_vector(&self, j: usize) -> Vector {
        Vector::from_packed(self.f, self.n(), self.col(j))
    }

    fn from_row_array(f: Fq, n: usize, rows: &[PVec]) -> Mat {
        let mut v = PVec::ZERO;
        for (i, r) in rows.iter().enumerate() {
            v = v.merge(r.truncate(n).shl(i * n));
        }
        Mat { f, n: n as u8, v }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    #[inline]
    pub fn add(&self, o: &Mat) -> Mat {
        Mat { v: self.v.add(o.v, self.f), ..*self }
    }

    #[inline]
    pub fn sub(&self, o: &Mat) -> Mat {
        Mat { v: self.v.sub(o.v, self.f), ..*self }
    }

    #[inline]
    pub fn scale(&self, c: u8) -> Mat {
        Mat { v: self.v.scale(c, self.f), ..*self }
    }

    /// Matrix product `self * o`.
    pub fn mul(&self, o: &Mat) -> Mat {
        let n = self.n();
        let f = self.f;
        let mut orows = [PVec::ZERO; MAX_N];
        for (j, r) in orows.iter_mut().enumerate().take(n) {
            *r = o.row(j);
        }
        let mut out = PVec::ZERO;
        for i in 0..n {
            let a = self.row(i);
            let mut acc = PVec::ZERO;
            let mut s = a.support();
            while s != 0 {
                let j = s.trailing_zeros() as usize;
                acc = acc.axpy(a.get(j), orows[j], f);
                s &= s - 1;
            }
            out = out.merge(acc.shl(i * n));
        }
        Mat { f, n: self.n, v: out }
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n();
        let mut m = Mat::zero(self.f, n);
        for i in 0..n {
            for j in 0..n {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    /// Row vector times matrix: `x^T M`.
    pub fn vec_mul(&self, x: &Vector) -> Vector {
        let f = self.f;
        let mut acc = PVec::ZERO;
        let xs = x.packed();
        let mut s = xs.support();
        while s != 0 {
            let j = s.trailing_zeros() as usize;
            acc = acc.axpy(xs.get(j), self.row(j), f);
            s &= s - 1;
        }
        Vector::from_packed(f, self.n(), acc)
    }

    /// Matrix times column vector: `M x`.
    pub fn mul_vec(&self, x: &Vector) -> Vector {
        let mut out = PVec::ZERO;
        for i in 0..self.n() {
            out.set(i, self.row(i).dot(&x.packed(), self.f));
        }
        Vector::from_packed(self.f, self.n(), out)
    }

    /// The rank-one matrix `u w^T`.
    pub fn outer(u: &Vector, w: &Vector) -> Mat {
        let f = u.field();
        let n = u.len();
        let mut rows = [PVec::ZERO; MAX_N];
        for (i, r) in rows.iter_mut().enumerate().take(n) {
            *r = w.packed().scale(u.get(i), f);
        }
        Mat::from_row_array(f, n, &rows[..n])
    }

    pub fn rank(&self) -> usize {
        let n = self.n();
        let mut rows = [PVec::ZERO; MAX_N];
        for (i, r) in rows.iter_mut().enumerate().take(n) {
            *r = self.row(i);
        }
        row_rank(&mut rows[..n], self.f)
    }

    pub fn det(&self) -> u8 {
        let n = self.n();
        let f = self.f;
        let mut rows = [PVec::ZERO; MAX_N];
        for (i, r) in rows.iter_mut().enumerate().take(n) {
            *r = self.row(i);
        }
        let mut det = 1u8;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| rows[r].get(col) != 0) else {
                return 0;
            };
            if p != col {
                rows.swap(p, col);
                det = f.neg(det);
            }
            let pv = rows[col].get(col);
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for r in col + 1..n {
                let c = rows[r].get(col);
                if c != 0 {
                    rows[r] = rows[r].axpy(f.neg(f.mul(c, inv)), rows[col], f);
                }
            }
        }
        det
    }

    #[inline]
    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n()
    }

    pub fn inverse(&self) -> Result<Mat> {
        let n = self.n();
        let f = self.f;
        let mut rows = [PVec::ZERO; MAX_N];
        for (i, r) in rows.iter_mut().enumerate().take(n) {
            let mut e = PVec::ZERO;
            e.set(n + i, 1);
            *r = self.row(i).merge(e);
        }
        for col in 0..n {
            let p = (col..n).find(|&r| rows[r].get(col) != 0).ok_or(Error::SingularMatrix)?;
            rows.swap(p, col);
            let inv = f.inv(rows[col].get(col));
            rows[col] = rows[col].scale(inv, f);
            for r in 0..n {
                if r != col {
                    let c = rows[r].get(col);
                    if c != 0 {
                        rows[r] = rows[r].axpy(f.neg(c), rows[col], f);
                    }
                }
            }
        }
        let inv_rows: Vec<PVec> = rows[..n].iter().map(|r| r.shr(n)).collect();
        Ok(Mat::from_row_array(f, n, &inv_rows))
    }

    /// Factors a rank-one matrix as `u w^T` with the first nonzero entry of
    /// `w` equal to 1.
    pub fn rank_one_factor(&self) -> Result<(Vector, Vector)> {
        let r = self.rank();
        if r != 1 {
            return Err(Error::NotRankOne(r));
        }
        let n = self.n();
        let f = self.f;
        let i0 = (0..n).find(|&i| !self.row(i).is_zero()).expect("rank one has a nonzero row");
        let (w, _) = self.row(i0).normalize(f);
        let lead = w.leading().expect("nonzero");
        let mut u = PVec::ZERO;
        for i in 0..n {
            u.set(i, self.get(i, lead));
        }
        Ok((Vector::from_packed(f, n, u), Vector::from_packed(f, n, w)))
    }
}

/// Rank of a list of packed rows, destroying them.
pub(crate) fn row_rank(rows: &mut [PVec], f: Fq) -> usize {
    let mut rank = 0;
    let len = rows.len();
    for i in 0..len {
        let Some(p) = rows[i].leading() else { continue };
        let inv = f.inv(rows[i].get(p));
        for j in i + 1..len {
            let c = rows[j].get(p);
            if c != 0 {
                rows[j] = rows[j].axpy(f.neg(f.mul(c, inv)), rows[i], f);
            }
        }
        rank += 1;
    }
    rank
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n() {
            if i > 0 {
                write!(f, "/")?;
            }
            for j in 0..self.n() {
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
