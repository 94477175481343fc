use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{Fq, PVec, MAX_LEN};

/// A subspace of F_q^len held as a fully reduced row-echelon basis.
///
/// Pivots are the lowest nonzero position of each row, strictly increasing,
/// every pivot entry is 1 and every other row is zero in that column. The
/// basis is therefore canonical and two spans are equal as subspaces iff
/// they compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    f: Fq,
    len: u8,
    rows: Vec<PVec>,
    pivots: Vec<u8>,
}

impl Span {
    pub fn new(f: Fq, len: usize) -> Span {
        assert!(len <= MAX_LEN);
        Span { f, len: len as u8, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<I: IntoIterator<Item = PVec>>(f: Fq, len: usize, it: I) -> Span {
        let mut s = Span::new(f, len);
        for v in it {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.f
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn rows(&self) -> &[PVec] {
        &self.rows
    }

    #[inline]
    pub fn pivots(&self) -> &[u8] {
        &self.pivots
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    #[inline]
    pub fn reduce(&self, mut v: PVec) -> PVec {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(p as usize);
            if c != 0 {
                v = v.axpy(self.f.neg(c), *r, self.f);
            }
        }
        v
    }

    #[inline]
    pub fn contains(&self, v: PVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns false if it was already contained.
    pub fn insert(&mut self, v: PVec) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.leading() else {
            return false;
        };
        let (r, _) = r.normalize(self.f);
        for row in self.rows.iter_mut() {
            let c = row.get(p);
            if c != 0 {
                *row = row.axpy(self.f.neg(c), r, self.f);
            }
        }
        let at = self.pivots.partition_point(|&x| (x as usize) < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p as u8);
        true
    }

    /// A copy extended by `v`.
    pub fn with(&self, v: PVec) -> Span {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    /// Coordinates of `v` in the reduced basis, or `None` if outside the span.
    pub fn coordinates(&self, v: PVec) -> Option<Vec<u8>> {
        let coords: Vec<u8> = self.pivots.iter().map(|&p| v.get(p as usize)).collect();
        if self.reduce(v).is_zero() {
            Some(coords)
        } else {
            None
        }
    }

    /// The vector with the given coordinates in the reduced basis.
    pub fn combine(&self, coords: &[u8]) -> PVec {
        let mut v = PVec::ZERO;
        for (r, &c) in self.rows.iter().zip(coords) {
            v = v.axpy(c, *r, self.f);
        }
        v
    }

    pub fn contains_span(&self, other: &Span) -> bool {
        other.rows.iter().all(|r| self.contains(*r))
    }

    /// Dimension of the sum of two subspaces.
    pub fn sum_dim(&self, other: &Span) -> usize {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(*r);
        }
        s.dim()
    }

    /// Dimension of the intersection of two subspaces.
    pub fn intersection_dim(&self, other: &Span) -> usize {
        self.dim() + other.dim() - self.sum_dim(other)
    }

    /// Basis of the solutions `x` with `row . x = 0` for every row.
    pub fn nullspace(&self) -> Vec<PVec> {
        let f = self.f;
        let mut pivot_mask = 0u64;
        for &p in &self.pivots {
            pivot_mask |= 1 << p;
        }
        let mut out = Vec::new();
        for free in 0..self.len() {
            if pivot_mask >> free & 1 == 1 {
                continue;
            }
            let mut v = PVec::ZERO;
            v.set(free, 1);
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                let c = r.get(free);
                if c != 0 {
                    v.set(p as usize, f.neg(c));
                }
            }
            out.push(v);
        }
        out
    }

    /// The orthogonal complement under the standard dot product.
    pub fn complement(&self) -> Span {
        Span::from_vectors(self.f, self.len(), self.nullspace())
    }

    /// Every element of the span, zero first.
    pub fn elements(&self) -> SpanElements<'_> {
        SpanElements::new(self.f, &self.rows)
    }

    /// One representative per 1-dimensional subspace: the elements whose
    /// leading coordinate (in the reduced basis) equals 1.
    pub fn projective_points(&self) -> Vec<PVec> {
        let k = self.dim();
        let mut out = Vec::new();
        for lead in 0..k {
            let tail = &self.rows[lead + 1..];
            for v in SpanElements::new(self.f, tail) {
                out.push(v.add(self.rows[lead], self.f));
            }
        }
        out
    }

    /// Number of elements, `q^dim`, saturating at `u64::MAX`.
    pub fn size(&self) -> u64 {
        (self.f.q() as u64).checked_pow(self.dim() as u32).unwrap_or(u64::MAX)
    }
}

impl PartialOrd for Span {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Span {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.f, self.len, self.rows.len(), &self.pivots, &self.rows).cmp(&(
            other.f,
            other.len,
            other.rows.len(),
            &other.pivots,
            &other.rows,
        ))
    }
}

impl core::fmt::Debug for Span {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Span").field("f", &self.f).field("len", &self.len).field("rows", &self.rows).finish()
    }
}

/// Odometer over all `q^k` combinations of a list of vectors. Each step adds
/// one generator; after `q` additions a digit wraps and carries.
pub struct SpanElements<'a> {
    f: Fq,
    gens: &'a [PVec],
    digits: Vec<u8>,
    current: PVec,
    done: bool,
}

impl<'a> SpanElements<'a> {
    pub fn new(f: Fq, gens: &'a [PVec]) -> Self {
        SpanElements { f, gens, digits: alloc::vec![0; gens.len()], current: PVec::ZERO, done: false }
    }
}

impl Iterator for SpanElements<'_> {
    type Item = PVec;

    fn next(&mut self) -> Option<PVec> {
        if self.done {
            return None;
        }
        let out = self.current;
        let q = self.f.q();
        let mut i = 0;
        loop {
            if i == self.gens.len() {
                self.done = true;
                break;
            }
            self.current = self.current.add(self.gens[i], self.f);
            self.digits[i] += 1;
            if self.digits[i] < q {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hashbrown::HashSet;

    fn v(d: &[u8]) -> PVec {
        PVec::from_digits(d)
    }

    #[test]
    fn insert_keeps_reduced_form() {
        let f = Fq::F3;
        let mut s = Span::new(f, 4);
        assert!(s.insert(v(&[0, 2, 1, 0])));
        assert!(s.insert(v(&[1, 1, 0, 2])));
        assert!(!s.insert(v(&[1, 0, 1, 2])));
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 1]);
        for (r, &p) in s.rows().iter().zip(s.pivots()) {
            assert_eq!(r.get(p as usize), 1);
        }
        assert_eq!(s.rows()[0].get(1), 0);
    }

    #[test]
    fn canonical_regardless_of_generators() {
        let f = Fq::F2;
        let a = Span::from_vectors(f, 5, [v(&[1, 1, 0, 0, 1]), v(&[0, 1, 1, 0, 0])]);
        let b = Span::from_vectors(f, 5, [v(&[1, 0, 1, 0, 1]), v(&[1, 1, 0, 0, 1])]);
        assert_eq!(a, b);
    }

    #[test]
    fn elements_and_points_count() {
        let f = Fq::F3;
        let s = Span::from_vectors(f, 6, [v(&[1, 0, 2]), v(&[0, 1, 1, 1]), v(&[0, 0, 0, 0, 2, 1])]);
        let all: HashSet<PVec> = s.elements().collect();
        assert_eq!(all.len(), 27);
        assert!(all.iter().all(|x| s.contains(*x)));
        let pts = s.projective_points();
        assert_eq!(pts.len(), 13);
        let normalized: HashSet<PVec> = pts.iter().map(|p| p.normalize(f).0).collect();
        assert_eq!(normalized.len(), 13);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let f = Fq::F5;
        let s = Span::from_vectors(f, 5, [v(&[1, 2, 3, 4, 0]), v(&[0, 0, 1, 1, 1])]);
        let ns = s.nullspace();
        assert_eq!(ns.len(), 3);
        for n in &ns {
            for r in s.rows() {
                assert_eq!(r.dot(n, f), 0);
            }
        }
        assert_eq!(s.complement().complement(), s);
    }

    #[test]
    fn coordinates_round_trip() {
        let f = Fq::F7;
        let s = Span::from_vectors(f, 4, [v(&[3, 1, 0, 5]), v(&[0, 6, 2, 1])]);
        for x in s.elements() {
            let c = s.coordinates(x).unwrap();
            assert_eq!(s.combine(&c), x);
        }
        assert_eq!(s.coordinates(v(&[0, 0, 0, 1])), None);
    }

    #[test]
    fn intersection_dimension() {
        let f = Fq::F2;
        let a = Span::from_vectors(f, 4, [v(&[1]), v(&[0, 1])]);
        let b = Span::from_vectors(f, 4, [v(&[0, 1]), v(&[0, 0, 1])]);
        assert_eq!(a.intersection_dim(&b), 1);
    }
}
