use alloc::vec::Vec;

use super::quotient::Quotient;
use crate::equivalence::rank_one_points;
use crate::gf::{Mat, PVec, Span};
use crate::space::MatSpace;

/// Rank-one extension of spaces containing a fixed base, done in the
/// quotient by the base.
pub(crate) struct Extender {
    pub quotient: Quotient,
    /// Projective rank-one points, sorted by encoding.
    pub points: Vec<Mat>,
    /// Their images in the quotient.
    pub images: Vec<PVec>,
}

/// The children of one space: every distinct space obtained by adding one
/// rank-one point.
pub(crate) struct Children {
    /// Indices of the rank-one points already inside the parent.
    pub inside: Vec<u32>,
    /// One entry per child, sorted by the normalized residue that spans
    /// child / parent; lists the rank-one points added.
    pub groups: Vec<(PVec, Vec<u32>)>,
}

impl Extender {
    pub fn new(base: &MatSpace) -> Extender {
        let quotient = Quotient::new(base);
        let points = rank_one_points(base.field(), base.n());
        let images = points.iter().map(|x| quotient.project(x)).collect();
        Extender { quotient, points, images }
    }

    pub fn children(&self, w: &Span) -> Children {
        let f = self.quotient.field();
        let mut inside = Vec::new();
        let mut keyed: Vec<(PVec, u32)> = Vec::with_capacity(self.images.len());
        for (i, img) in self.images.iter().enumerate() {
            let r = w.reduce(*img);
            if r.is_zero() {
                inside.push(i as u32);
            } else {
                keyed.push((r.normalize(f).0, i as u32));
            }
        }
        keyed.sort_unstable();
        let mut groups: Vec<(PVec, Vec<u32>)> = Vec::new();
        for (k, i) in keyed {
            match groups.last_mut() {
                Some((last, members)) if *last == k => members.push(i),
                _ => groups.push((k, alloc::vec![i])),
            }
        }
        Children { inside, groups }
    }

    /// Dimension of the span of the given rank-one points in M_n(F_q).
    pub fn span_of(&self, idx: impl IntoIterator<Item = u32>) -> Span {
        let n = self.quotient.base().n();
        Span::from_vectors(self.quotient.field(), n * n, idx.into_iter().map(|i| self.points[i as usize].packed()))
    }

    /// A basis of rank-one points for the span of the given ones.
    pub fn independent(&self, idx: impl IntoIterator<Item = u32>) -> Vec<Mat> {
        let n = self.quotient.base().n();
        let mut s = Span::new(self.quotient.field(), n * n);
        let mut out = Vec::new();
        for i in idx {
            let m = self.points[i as usize];
            if s.insert(m.packed()) {
                out.push(m);
            }
        }
        out
    }
}
