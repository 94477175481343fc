//! Subspaces of the n x n matrices and the spread sets among them.

use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::codec;
use crate::gf::{Fq, Mat, PVec, Span, SpanElements};
use crate::{Error, Result};

/// A subspace of M_n(F_q), stored as a canonical reduced basis of
/// n^2-vectors (row-major matrix entries).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatSpace {
    n: u8,
    span: Span,
}

impl MatSpace {
    pub fn zero(f: Fq, n: usize) -> MatSpace {
        MatSpace { n: n as u8, span: Span::new(f, n * n) }
    }

    pub fn from_mats(f: Fq, n: usize, mats: &[Mat]) -> MatSpace {
        MatSpace { n: n as u8, span: Span::from_vectors(f, n * n, mats.iter().map(Mat::packed)) }
    }

    pub fn from_span(n: usize, span: Span) -> MatSpace {
        debug_assert_eq!(span.len(), n * n);
        MatSpace { n: n as u8, span }
    }

    pub fn from_encodings(f: Fq, n: usize, values: &[u64]) -> Result<MatSpace> {
        Ok(MatSpace::from_mats(f, n, &codec::decode_all(values, f, n)?))
    }

    /// The diagonal matrices.
    pub fn diag(f: Fq, n: usize) -> MatSpace {
        let d: Vec<Mat> = (0..n).map(|i| Mat::unit(f, n, i, i)).collect();
        MatSpace::from_mats(f, n, &d)
    }

    /// All of M_n(F_q).
    pub fn full(f: Fq, n: usize) -> MatSpace {
        let d: Vec<Mat> = (0..n * n).map(|p| Mat::unit(f, n, p / n, p % n)).collect();
        MatSpace::from_mats(f, n, &d)
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.span.field()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    #[inline]
    pub fn span(&self) -> &Span {
        &self.span
    }

    #[inline]
    pub fn mat(&self, v: PVec) -> Mat {
        Mat::from_packed(self.field(), self.n(), v)
    }

    /// The canonical reduced basis.
    pub fn basis(&self) -> Vec<Mat> {
        self.span.rows().iter().map(|&r| self.mat(r)).collect()
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.span.contains(m.packed())
    }

    pub fn contains_space(&self, other: &MatSpace) -> bool {
        self.span.contains_span(&other.span)
    }

    /// Adds a matrix; returns whether the dimension grew.
    pub fn insert(&mut self, m: &Mat) -> bool {
        self.span.insert(m.packed())
    }

    pub fn with(&self, m: &Mat) -> MatSpace {
        MatSpace { n: self.n, span: self.span.with(m.packed()) }
    }

    pub fn reduce(&self, m: &Mat) -> Mat {
        self.mat(self.span.reduce(m.packed()))
    }

    /// Coordinates of `m` in the canonical basis, if it lies in the space.
    pub fn coordinates(&self, m: &Mat) -> Option<Vec<u8>> {
        self.span.coordinates(m.packed())
    }

    pub fn elements(&self) -> impl Iterator<Item = Mat> + '_ {
        let (f, n) = (self.field(), self.n());
        SpanElements::new(f, self.span.rows()).map(move |v| Mat::from_packed(f, n, v))
    }

    /// One matrix per 1-dimensional subspace.
    pub fn projective_points(&self) -> Vec<Mat> {
        self.span.projective_points().into_iter().map(|v| self.mat(v)).collect()
    }

    /// Every nonzero element is invertible (checked on projective points).
    pub fn is_nonsingular(&self) -> bool {
        self.span.projective_points().into_iter().all(|v| self.mat(v).is_invertible())
    }

    /// Least rank of a nonzero element, `None` for the zero space.
    pub fn min_rank(&self) -> Option<usize> {
        self.span.projective_points().into_iter().map(|v| self.mat(v).rank()).min()
    }

    /// Number of projective points of each rank 0..=n.
    pub fn rank_distribution(&self) -> Vec<u64> {
        let mut out = alloc::vec![0u64; self.n() + 1];
        for v in self.span.projective_points() {
            out[self.mat(v).rank()] += 1;
        }
        out
    }

    /// The rank-one projective points contained in the space.
    pub fn rank_one_points(&self) -> Vec<Mat> {
        self.projective_points().into_iter().filter(|m| m.rank() == 1).collect()
    }

    /// Dimension of the span of the rank-one elements.
    pub fn rank_one_span_dim(&self) -> usize {
        Span::from_vectors(self.field(), self.n() * self.n(), self.rank_one_points().iter().map(Mat::packed)).dim()
    }

    /// Whether the space is spanned by its rank-one elements.
    pub fn is_spanned_by_rank_ones(&self) -> bool {
        self.rank_one_span_dim() == self.dim()
    }

    /// Contains an invertible element.
    pub fn has_invertible(&self) -> bool {
        self.span.projective_points().into_iter().any(|v| self.mat(v).is_invertible())
    }

    /// Sorted encodings of the canonical basis, a compact total-order key.
    pub fn key(&self) -> Vec<u64> {
        let mut k: Vec<u64> = self.basis().iter().map(codec::encode).collect();
        k.sort_unstable();
        k
    }

    pub fn intersection_dim(&self, other: &MatSpace) -> usize {
        self.span.intersection_dim(&other.span)
    }
}

impl fmt::Debug for MatSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatSpace(q={}, n={}, basis={:?})", self.field().q(), self.n, self.basis())
    }
}

/// Coefficients expressing `target` as a combination of `basis`, or `None`
/// when it is not in their span. With a dependent basis some valid
/// combination is returned.
pub fn solve_membership(basis: &[Mat], target: &Mat) -> Option<Vec<u8>> {
    let Some(first) = basis.first() else {
        return if target.is_zero() { Some(Vec::new()) } else { None };
    };
    let f = first.field();
    let k = basis.len();
    // Each reduced row carries its combination of the inputs.
    let mut rows: Vec<(PVec, Vec<u8>)> = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let mut v = b.packed();
        let mut c = alloc::vec![0u8; k];
        c[i] = 1;
        for (r, rc) in &rows {
            let p = r.leading().expect("stored rows are nonzero");
            let a = v.get(p);
            if a != 0 {
                let s = f.neg(a);
                v = v.axpy(s, *r, f);
                for (ci, &ri) in c.iter_mut().zip(rc) {
                    *ci = f.add(*ci, f.mul(s, ri));
                }
            }
        }
        if let Some(p) = v.leading() {
            let inv = f.inv(v.get(p));
            v = v.scale(inv, f);
            for ci in c.iter_mut() {
                *ci = f.mul(*ci, inv);
            }
            rows.push((v, c));
        }
    }
    let mut v = target.packed();
    let mut out = alloc::vec![0u8; k];
    for (r, rc) in &rows {
        let p = r.leading().expect("nonzero");
        let a = v.get(p);
        if a != 0 {
            v = v.axpy(f.neg(a), *r, f);
            for (o, &ri) in out.iter_mut().zip(rc) {
                *o = f.add(*o, f.mul(a, ri));
            }
        }
    }
    if v.is_zero() {
        Some(out)
    } else {
        None
    }
}

/// An n-dimensional subspace of M_n(F_q) all of whose nonzero elements are
/// invertible.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpreadSet {
    space: MatSpace,
}

impl SpreadSet {
    pub fn new(space: MatSpace) -> Result<SpreadSet> {
        if space.dim() != space.n() {
            return Err(Error::DimensionMismatch { expected: space.n(), got: space.dim() });
        }
        if !space.is_nonsingular() {
            return Err(Error::NotNonsingular);
        }
        Ok(SpreadSet { space })
    }

    pub fn from_mats(f: Fq, n: usize, mats: &[Mat]) -> Result<SpreadSet> {
        if mats.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: mats.len() });
        }
        SpreadSet::new(MatSpace::from_mats(f, n, mats))
    }

    pub fn from_encodings(f: Fq, n: usize, values: &[u64]) -> Result<SpreadSet> {
        SpreadSet::from_mats(f, n, &codec::decode_all(values, f, n)?)
    }

    #[inline]
    pub fn space(&self) -> &MatSpace {
        &self.space
    }

    pub fn into_space(self) -> MatSpace {
        self.space
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.space.field()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.space.n()
    }

    /// The basis B_1..B_n where B_i is the unique element whose first row
    /// is e_i. Row j of B_i is then the j-th row of the multiplication by
    /// the i-th basis vector in the associated algebra.
    pub fn standard_basis(&self) -> Vec<Mat> {
        let f = self.field();
        let n = self.n();
        // The first-row map is a bijection from a spread set onto F_q^n.
        let basis = self.space.basis();
        let first_rows: Vec<Mat> = basis
            .iter()
            .map(|b| {
                let mut m = Mat::zero(f, n);
                for j in 0..n {
                    m.set(0, j, b.get(0, j));
                }
                m
            })
            .collect();
        (0..n)
            .map(|i| {
                let c = solve_membership(&first_rows, &Mat::unit(f, n, 0, i)).expect("first rows span F_q^n");
                basis.iter().zip(&c).fold(Mat::zero(f, n), |acc, (b, &ci)| acc.add(&b.scale(ci)))
            })
            .collect()
    }

    pub fn contains_identity(&self) -> bool {
        self.space.contains(&Mat::identity(self.field(), self.n()))
    }
}

impl fmt::Debug for SpreadSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpreadSet({:?})", self.space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f16() -> MatSpace {
        MatSpace::from_encodings(Fq::F2, 4, &[33825, 14402, 25476, 50744]).unwrap()
    }

    #[test]
    fn field_of_order_16_is_nonsingular() {
        let s = f16();
        assert_eq!(s.dim(), 4);
        assert!(s.is_nonsingular());
        assert_eq!(s.min_rank(), Some(4));
        assert!(!MatSpace::diag(Fq::F2, 4).is_nonsingular());
        assert_eq!(MatSpace::diag(Fq::F2, 4).min_rank(), Some(1));
    }

    #[test]
    fn min_rank_of_small_spaces() {
        let f = Fq::F2;
        let s = MatSpace::from_mats(f, 2, &[Mat::identity(f, 2), Mat::unit(f, 2, 0, 1)]);
        assert_eq!(s.min_rank(), Some(1));
    }

    #[test]
    fn membership() {
        let f = Fq::F3;
        let i = Mat::identity(f, 3);
        assert_eq!(solve_membership(&[i], &i), Some(alloc::vec![1]));
        assert_eq!(solve_membership(&[i], &Mat::unit(f, 3, 0, 0)), None);
        let b = [Mat::unit(f, 3, 0, 0), Mat::unit(f, 3, 1, 1), Mat::unit(f, 3, 0, 0).scale(2)];
        let t = Mat::unit(f, 3, 0, 0).add(&Mat::unit(f, 3, 1, 1).scale(2));
        let c = solve_membership(&b, &t).unwrap();
        let back = b.iter().zip(&c).fold(Mat::zero(f, 3), |a, (m, &x)| a.add(&m.scale(x)));
        assert_eq!(back, t);
    }

    #[test]
    fn standard_basis_has_unit_first_rows() {
        let s = SpreadSet::new(f16()).unwrap();
        let b = s.standard_basis();
        assert_eq!(b[0], Mat::identity(Fq::F2, 4));
        for (i, m) in b.iter().enumerate() {
            assert_eq!(m.row(0), Mat::unit(Fq::F2, 4, 0, i).row(0));
        }
    }

    #[test]
    fn rank_one_counts() {
        // (q^n - 1)^2 / (q - 1) rank-one matrices, i.e. (q^n-1)^2/(q-1)^2 points.
        for (q, n, expected) in [(2u32, 2usize, 9u64), (2, 3, 49), (3, 2, 32), (2, 4, 225), (3, 3, 338)] {
            let f = Fq::new(q).unwrap();
            let all = MatSpace::full(f, n);
            let pts = all.rank_distribution()[1];
            assert_eq!(pts * (q as u64 - 1), expected);
        }
    }
}
