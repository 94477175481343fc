use alloc::vec::Vec;

use super::{Hypercube, S3};
use crate::equivalence::are_equivalent;
use crate::gf::{ExtField, Fq, Mat, Poly, Vector};
use crate::space::{MatSpace, SpreadSet};
use crate::{Error, Result};

/// The spread set of F_q[x]/(modulus): multiplication matrices of the power
/// basis 1, x, ..., x^(n-1).
pub fn field_construct(f: Fq, n: usize, modulus: &Poly) -> Result<SpreadSet> {
    if modulus.field() != f || modulus.degree() != Some(n) {
        return Err(Error::BadParameters("modulus must have degree n over F_q"));
    }
    let e = ExtField::new(modulus.clone())?;
    let basis: Vec<Mat> = (0..n).map(|m| e.mul_matrix(&e.pow(&e.generator(), m as u64))).collect();
    SpreadSet::from_mats(f, n, &basis)
}

/// The generalized twisted field `x o y = xy - c x^(q^i) y^(q^j)` over the
/// given extension, as the span of the matrices `L_{x^m}`.
pub fn gtf_construct(e: &ExtField, i: usize, j: usize, c: &Vector) -> Result<MatSpace> {
    let n = e.degree();
    if i == j || i == 0 || j == 0 || i >= n || j >= n {
        return Err(Error::BadParameters("need distinct i, j in 1..n"));
    }
    if e.norm(c) == e.one() {
        return Err(Error::NotNonsingular);
    }
    let f = e.base();
    let mul = |x: &Vector, y: &Vector| {
        let twisted = e.mul(c, &e.mul(&e.frobenius(x, i), &e.frobenius(y, j)));
        e.mul(x, y).add(&twisted.scale(f.neg(1)))
    };
    let basis: Vec<Mat> = (0..n)
        .map(|m| {
            let x = e.pow(&e.generator(), m as u64);
            e.linear_matrix(|y| mul(&x, y))
        })
        .collect();
    let s = MatSpace::from_mats(f, n, &basis);
    if s.dim() != n || !s.is_nonsingular() {
        return Err(Error::NotNonsingular);
    }
    Ok(s)
}

/// An equivalent spread set containing the identity. If `p` already
/// contains it, `p` is returned unchanged; otherwise the result is
/// `X^-1 * p` for the first element X of the canonical basis.
///
/// In the returned spread set the element with first row e_1 is the
/// identity, so the algebra read off its standard basis has e_1 as a
/// two-sided identity.
pub fn kaplansky_normalize(p: &MatSpace) -> Result<SpreadSet> {
    let s = SpreadSet::new(p.clone())?;
    if s.contains_identity() {
        return Ok(s);
    }
    let x = p.basis()[0];
    let xi = x.inverse().map_err(|_| Error::NotNonsingular)?;
    let moved: Vec<Mat> = p.basis().iter().map(|b| xi.mul(b)).collect();
    SpreadSet::from_mats(p.field(), p.n(), &moved)
}

/// Spread sets of the six slot permutations of the tensor of `c`, each
/// normalized to contain the identity, keeping one per equivalence class.
pub fn knuth_orbit(c: &SpreadSet) -> Result<Vec<SpreadSet>> {
    let h = Hypercube::from_spread_set(c);
    let mut out: Vec<SpreadSet> = Vec::new();
    for perm in S3 {
        let image = kaplansky_normalize(&h.knuth_act(perm).to_space())?;
        let mut seen = false;
        for kept in &out {
            if are_equivalent(kept.space(), image.space())?.is_some() {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(image);
        }
    }
    Ok(out)
}
