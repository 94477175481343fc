use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::gf::{Mat, PVec};
use crate::space::MatSpace;
use crate::{Error, Result};

/// A pair of invertible matrices acting on matrix spaces by X -> A X B.
/// Applying `g` and then `h` equals applying `g.then(&h)`, whose
/// components are `(A_h A_g, B_g B_h)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Isotopism {
    pub a: Mat,
    pub b: Mat,
}

impl Isotopism {
    pub fn new(a: Mat, b: Mat) -> Result<Isotopism> {
        if !a.is_invertible() || !b.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Ok(Isotopism { a, b })
    }

    pub fn identity(f: crate::Fq, n: usize) -> Isotopism {
        Isotopism { a: Mat::identity(f, n), b: Mat::identity(f, n) }
    }

    #[inline]
    pub fn apply(&self, m: &Mat) -> Mat {
        self.a.mul(m).mul(&self.b)
    }

    /// Image of a projective point, scaled so its leading entry is 1.
    #[inline]
    pub fn apply_point(&self, m: &Mat) -> Mat {
        let img = self.apply(m);
        Mat::from_packed(m.field(), m.n(), img.packed().normalize(m.field()).0)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Isotopism) -> Isotopism {
        Isotopism { a: next.a.mul(&self.a), b: self.b.mul(&next.b) }
    }

    pub fn inverse(&self) -> Isotopism {
        Isotopism {
            a: self.a.inverse().expect("isotopisms are invertible"),
            b: self.b.inverse().expect("isotopisms are invertible"),
        }
    }

    /// The image space {A X B : X in s}.
    pub fn act(&self, s: &MatSpace) -> MatSpace {
        let imgs: Vec<PVec> = s.basis().iter().map(|x| self.apply(x).packed()).collect();
        MatSpace::from_span(s.n(), crate::gf::Span::from_vectors(s.field(), s.n() * s.n(), imgs))
    }
}

/// The image of `s` under `g`, checking that `g` is invertible.
pub fn act(g: &Isotopism, s: &MatSpace) -> Result<MatSpace> {
    if !g.a.is_invertible() || !g.b.is_invertible() {
        return Err(Error::NotInvertible);
    }
    Ok(g.act(s))
}
