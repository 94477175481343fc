//! Arithmetic in M_n(F_q) / C for a fixed subspace C, used by the searches
//! that grow spaces containing C.

use alloc::vec::Vec;

use crate::equivalence::Isotopism;
use crate::gf::{Fq, Mat, PVec, Span};
use crate::space::MatSpace;

/// The quotient of M_n(F_q) by a subspace. Coordinates are the entries at
/// the non-pivot positions of the reduced form modulo the subspace.
#[derive(Clone, Debug)]
pub struct Quotient {
    n: usize,
    base: Span,
    free: Vec<u8>,
}

impl Quotient {
    pub fn new(base: &MatSpace) -> Quotient {
        let span = base.span().clone();
        let free: Vec<u8> = (0..span.len()).filter(|p| !span.pivots().contains(&(*p as u8))).map(|p| p as u8).collect();
        Quotient { n: base.n(), base: span, free }
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.base.field()
    }

    /// Dimension of the quotient.
    #[inline]
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn base(&self) -> MatSpace {
        MatSpace::from_span(self.n, self.base.clone())
    }

    pub fn project(&self, m: &Mat) -> PVec {
        self.project_packed(m.packed())
    }

    pub fn project_packed(&self, v: PVec) -> PVec {
        let r = self.base.reduce(v);
        let mut out = PVec::ZERO;
        for (j, &p) in self.free.iter().enumerate() {
            let c = r.get(p as usize);
            if c != 0 {
                out.set(j, c);
            }
        }
        out
    }

    /// A matrix with the given quotient coordinates.
    pub fn lift(&self, w: PVec) -> PVec {
        let mut out = PVec::ZERO;
        for (j, &p) in self.free.iter().enumerate() {
            let c = w.get(j);
            if c != 0 {
                out.set(p as usize, c);
            }
        }
        out
    }

    /// The full space C + W for a quotient subspace W.
    pub fn lift_space(&self, w: &Span) -> MatSpace {
        let mut s = self.base.clone();
        for r in w.rows() {
            s.insert(self.lift(*r));
        }
        MatSpace::from_span(self.n, s)
    }

    /// The image W of a space containing the base.
    pub fn quotient_of(&self, v: &MatSpace) -> Span {
        Span::from_vectors(self.field(), self.dim(), v.span().rows().iter().map(|r| self.project_packed(*r)))
    }

    /// The map induced on the quotient by an isotopism fixing the base.
    pub fn induced(&self, g: &Isotopism) -> QuotientMap {
        let f = self.field();
        let rows = (0..self.dim())
            .map(|j| {
                let e = Mat::from_packed(f, self.n, self.lift(unit(j)));
                self.project(&g.apply(&e))
            })
            .collect();
        QuotientMap { rows }
    }
}

#[inline]
fn unit(j: usize) -> PVec {
    let mut v = PVec::ZERO;
    v.set(j, 1);
    v
}

/// A linear map on quotient coordinates, stored by the images of the unit
/// vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientMap {
    rows: Vec<PVec>,
}

impl QuotientMap {
    #[inline]
    pub fn apply(&self, w: PVec, f: Fq) -> PVec {
        let mut out = PVec::ZERO;
        let mut s = w.support();
        while s != 0 {
            let j = s.trailing_zeros() as usize;
            out = out.axpy(w.get(j), self.rows[j], f);
            s &= s - 1;
        }
        out
    }

    pub fn apply_span(&self, w: &Span) -> Span {
        let f = w.field();
        Span::from_vectors(f, w.len(), w.rows().iter().map(|r| self.apply(*r, f)))
    }
}

/// The distinct maps induced on the quotient by a group fixing the base,
/// sorted.
pub fn induced_maps(q: &Quotient, group: &[Isotopism]) -> Vec<QuotientMap> {
    let mut maps: Vec<QuotientMap> = group.iter().map(|g| q.induced(g)).collect();
    maps.sort();
    maps.dedup();
    maps
}

/// The least image of `w` under the maps.
pub fn canonical(maps: &[QuotientMap], w: &Span) -> Span {
    maps.iter().map(|m| m.apply_span(w)).min().unwrap_or_else(|| w.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::automorphism_group;

    #[test]
    fn projection_is_linear_and_kills_the_base() {
        let c = MatSpace::from_encodings(Fq::F3, 3, &[1 + 81 + 6561, 3 + 2 * 27, 9 + 243]).unwrap();
        let q = Quotient::new(&c);
        assert_eq!(q.dim(), 6);
        for b in c.basis() {
            assert!(q.project(&b).is_zero());
        }
        let x = Mat::unit(Fq::F3, 3, 1, 2);
        let y = Mat::unit(Fq::F3, 3, 2, 0).scale(2);
        assert_eq!(q.project(&x.add(&y)), q.project(&x).add(q.project(&y), Fq::F3));
        let w = Span::from_vectors(Fq::F3, 6, [q.project(&x)]);
        assert_eq!(q.lift_space(&w), c.with(&x));
        assert_eq!(q.quotient_of(&c.with(&x)), w);
    }

    #[test]
    fn induced_maps_commute_with_projection() {
        let c = MatSpace::from_encodings(Fq::F2, 4, &[33825, 14402, 25476, 50744]).unwrap();
        let g = automorphism_group(&c).unwrap();
        let q = Quotient::new(&c);
        let x = Mat::from_rows(Fq::F2, &[&[1, 0, 1, 0], &[1, 0, 1, 0], &[0; 4], &[0; 4]]).unwrap();
        for h in g.elements().iter().step_by(37) {
            let m = q.induced(h);
            assert_eq!(m.apply(q.project(&x), Fq::F2), q.project(&h.apply(&x)));
        }
    }
}
