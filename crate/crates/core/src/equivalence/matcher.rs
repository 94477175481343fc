//! Isotopism search between two matrix spaces.
//!
//! Fix an invertible anchor X in S1. Any isotopism (A, B) with A S1 B = S2
//! sends X to a multiple of some invertible Y in S2, and then
//! A (S1 X^-1) A^-1 = S2 Y^-1 with B = X^-1 A^-1 Y (up to that multiple).
//! The problem becomes simultaneous conjugacy of two spaces containing the
//! identity, solved by choosing images for a basis one element at a time
//! and intersecting the linear conditions A t = s A.

use alloc::vec::Vec;

use hashbrown::HashMap;

use super::invariant::{hash_seq, InvariantCache};
use super::Isotopism;
use crate::gf::{Fq, Mat, PVec, Span, SpanElements};
use crate::space::MatSpace;
use crate::{Error, Result};

/// Above this many candidate solutions a linear system is split further
/// instead of enumerated.
const ENUM_LIMIT: u64 = 81;
/// Largest q^(n^2) for which the anchor-free fallback enumerates GL_n(q).
const BRUTE_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub(crate) struct Anchor {
    pub x: Mat,
    pub x_inv: Mat,
    pub alpha: u64,
}

/// A space with its invertible projective points and their profiles.
#[derive(Clone, Debug)]
pub(crate) struct Prepared {
    pub space: MatSpace,
    pub anchors: Vec<Anchor>,
    /// Hash of the sorted anchor profiles, an isotopism invariant.
    pub profile: u64,
}

impl Prepared {
    pub fn new(space: &MatSpace, cache: &mut InvariantCache) -> Prepared {
        let elements: Vec<Mat> = space.elements().skip(1).collect();
        let mut anchors: Vec<Anchor> = space
            .projective_points()
            .into_iter()
            .filter_map(|x| x.inverse().ok().map(|x_inv| (x, x_inv)))
            .map(|(x, x_inv)| {
                let mut invs: Vec<u64> = elements.iter().map(|y| cache.get(&y.mul(&x_inv))).collect();
                invs.sort_unstable();
                Anchor { x, x_inv, alpha: hash_seq(invs) }
            })
            .collect();
        anchors.sort_by_key(|a| (a.alpha, a.x.packed()));
        let profile = hash_seq(anchors.iter().map(|a| a.alpha));
        Prepared { space: space.clone(), anchors, profile }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    First,
    All,
}

/// Isotopisms from `p1.space` onto `p2.space`: one (or none) in
/// [`Mode::First`], every one in [`Mode::All`].
pub(crate) fn isotopisms(p1: &Prepared, p2: &Prepared, mode: Mode, cache: &mut InvariantCache) -> Result<Vec<Isotopism>> {
    let (s1, s2) = (&p1.space, &p2.space);
    if s1.dim() != s2.dim() || p1.anchors.len() != p2.anchors.len() || p1.profile != p2.profile {
        return Ok(Vec::new());
    }
    if p1.anchors.is_empty() {
        return brute_force(s1, s2, mode);
    }
    let f = s1.field();
    let mut counts: HashMap<u64, usize> = HashMap::new();
    for a in &p2.anchors {
        *counts.entry(a.alpha).or_default() += 1;
    }
    let x = p1
        .anchors
        .iter()
        .min_by_key(|a| (counts.get(&a.alpha).copied().unwrap_or(0), a.alpha, a.x.packed()))
        .expect("nonempty");
    let t1 = right_multiply(s1, &x.x_inv);
    let mut out = Vec::new();
    for y in p2.anchors.iter().filter(|a| a.alpha == x.alpha) {
        let t2 = right_multiply(s2, &y.x_inv);
        for a in conjugators(&t1, &t2, mode, cache)? {
            let b = x.x_inv.mul(&a.inverse().expect("conjugators are invertible")).mul(&y.x);
            match mode {
                Mode::First => return Ok(alloc::vec![Isotopism { a, b }]),
                Mode::All => {
                    for mu in f.nonzero() {
                        out.push(Isotopism { a, b: b.scale(mu) });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn right_multiply(s: &MatSpace, m: &Mat) -> MatSpace {
    let imgs: Vec<Mat> = s.basis().iter().map(|b| b.mul(m)).collect();
    MatSpace::from_mats(s.field(), s.n(), &imgs)
}

/// Linear conditions on the n^2 entries of A (row-major) expressing A t = s A.
fn commute_equations(t: &Mat, s: &Mat, out: &mut Span) {
    let f = t.field();
    let n = t.n();
    for j in 0..n {
        for k in 0..n {
            let mut row = PVec::ZERO;
            for l in 0..n {
                let a = j * n + l;
                row.set(a, f.add(row.get(a), t.get(l, k)));
                let b = l * n + k;
                row.set(b, f.sub(row.get(b), s.get(j, l)));
            }
            out.insert(row);
        }
    }
}

/// All invertible A with A t1 A^-1 = t2 (or the first found), where both
/// spaces contain the identity.
pub(crate) fn conjugators(t1: &MatSpace, t2: &MatSpace, mode: Mode, cache: &mut InvariantCache) -> Result<Vec<Mat>> {
    let f = t1.field();
    let n = t1.n();
    let id = Mat::identity(f, n);
    let mut classes: HashMap<u64, Vec<Mat>> = HashMap::new();
    let mut inv2: Vec<u64> = Vec::new();
    for s in t2.elements().skip(1) {
        let h = cache.get(&s);
        inv2.push(h);
        classes.entry(h).or_default().push(s);
    }
    let mut cand: Vec<(usize, u64, Mat)> = Vec::new();
    let mut inv1: Vec<u64> = Vec::new();
    let scalars = MatSpace::from_mats(f, n, &[id]);
    for t in t1.elements().skip(1) {
        let h = cache.get(&t);
        inv1.push(h);
        if !scalars.contains(&t) {
            let c = classes.get(&h).map_or(0, Vec::len);
            cand.push((c, h, t));
        }
    }
    inv1.sort_unstable();
    inv2.sort_unstable();
    if inv1 != inv2 {
        return Ok(Vec::new());
    }
    cand.sort_by_key(|(c, h, t)| (*c, *h, t.packed()));
    let mut basis_span = scalars;
    let mut basis: Vec<(Mat, u64)> = Vec::new();
    for (_, h, t) in cand {
        if basis_span.insert(&t) {
            basis.push((t, h));
        }
    }
    if basis.is_empty() {
        // t1 = t2 = scalars: every invertible matrix conjugates.
        return match mode {
            Mode::First => Ok(alloc::vec![id]),
            Mode::All => general_linear(f, n),
        };
    }
    let mut search = Search { f, n, t1, t2, basis: &basis, classes: &classes, mode, out: Vec::new() };
    search.dfs(0, Span::new(f, n * n));
    Ok(search.out)
}

struct Search<'a> {
    f: Fq,
    n: usize,
    t1: &'a MatSpace,
    t2: &'a MatSpace,
    basis: &'a [(Mat, u64)],
    classes: &'a HashMap<u64, Vec<Mat>>,
    mode: Mode,
    out: Vec<Mat>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.mode == Mode::First && !self.out.is_empty()
    }

    fn dfs(&mut self, level: usize, eqs: Span) {
        let nullity = self.n * self.n - eqs.dim();
        if nullity == 0 {
            return;
        }
        let small = (self.f.q() as u64).checked_pow(nullity as u32).is_some_and(|s| s <= ENUM_LIMIT);
        if level == self.basis.len() || (level > 0 && small) {
            self.enumerate(&eqs, level);
            return;
        }
        let (t, h) = self.basis[level];
        let Some(cands) = self.classes.get(&h) else { return };
        for s in cands {
            let mut next = eqs.clone();
            commute_equations(&t, s, &mut next);
            self.dfs(level + 1, next);
            if self.done() {
                return;
            }
        }
    }

    fn enumerate(&mut self, eqs: &Span, level: usize) {
        let gens = eqs.nullspace();
        for v in SpanElements::new(self.f, &gens) {
            let a = Mat::from_packed(self.f, self.n, v);
            let Ok(ai) = a.inverse() else { continue };
            let ok = self.basis[level..].iter().all(|(t, _)| self.t2.contains(&a.mul(t).mul(&ai)));
            if ok {
                debug_assert!(self.t1.basis().iter().all(|t| self.t2.contains(&a.mul(t).mul(&ai))));
                self.out.push(a);
                if self.done() {
                    return;
                }
            }
        }
    }
}

/// Every invertible n x n matrix, for small q^(n^2).
pub(crate) fn general_linear(f: Fq, n: usize) -> Result<Vec<Mat>> {
    let total = (f.q() as u64).checked_pow((n * n) as u32).unwrap_or(u64::MAX);
    if total > BRUTE_LIMIT {
        return Err(Error::TooLarge("enumerating GL_n(q)"));
    }
    Ok(MatSpace::full(f, n).elements().filter(Mat::is_invertible).collect())
}

/// Isotopisms between spaces with no invertible element: try every A and
/// solve the linear conditions A X_i B in S2 for B.
fn brute_force(s1: &MatSpace, s2: &MatSpace, mode: Mode) -> Result<Vec<Isotopism>> {
    let f = s1.field();
    let n = s1.n();
    let comp = s2.span().complement();
    let mut out = Vec::new();
    for a in general_linear(f, n)? {
        let mut eqs = Span::new(f, n * n);
        for x in s1.basis() {
            let p = a.mul(&x);
            for w in comp.rows() {
                let wm = Mat::from_packed(f, n, *w);
                eqs.insert(p.transpose().mul(&wm).packed());
            }
        }
        let gens = eqs.nullspace();
        for v in SpanElements::new(f, &gens) {
            let b = Mat::from_packed(f, n, v);
            if b.is_invertible() {
                out.push(Isotopism { a, b });
                if mode == Mode::First {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}
