use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::equivalence::equivalence_classes;
use crate::gf::{Fq, Mat, PVec, Span, SpanElements};
use crate::space::MatSpace;
use crate::Result;

/// The elements of `s` with first row equal to a given vector, as a
/// particular solution plus the subspace with zero first row.
struct FirstRows<'a> {
    s: &'a MatSpace,
    /// Rows of the reduced basis with a pivot in the first matrix row.
    top: Vec<(usize, PVec)>,
    kernel: Vec<PVec>,
}

impl<'a> FirstRows<'a> {
    fn new(s: &'a MatSpace) -> Self {
        let n = s.n();
        let span = s.span();
        let mut top = Vec::new();
        let mut kernel = Vec::new();
        for (r, &p) in span.rows().iter().zip(span.pivots()) {
            if (p as usize) < n {
                top.push((p as usize, *r));
            } else {
                kernel.push(*r);
            }
        }
        FirstRows { s, top, kernel }
    }

    /// The span of the first rows of elements of `s`.
    fn image(&self) -> Span {
        let n = self.s.n();
        Span::from_vectors(self.s.field(), n, self.top.iter().map(|(_, r)| r.truncate(n)))
    }

    /// Invertible elements with first row `r`.
    fn invertible_with(&self, r: PVec) -> Vec<Mat> {
        let (f, n) = (self.s.field(), self.s.n());
        let mut base = PVec::ZERO;
        for &(p, row) in &self.top {
            base = base.axpy(r.get(p), row, f);
        }
        if base.truncate(n) != r {
            return Vec::new();
        }
        SpanElements::new(f, &self.kernel)
            .map(|k| Mat::from_packed(f, n, base.add(k, f)))
            .filter(Mat::is_invertible)
            .collect()
    }
}

/// All k-dimensional subspaces of `s`.
fn subspaces(s: &Span, k: usize) -> Vec<Span> {
    let f = s.field();
    let points = s.projective_points();
    let mut level: HashSet<Span> = HashSet::new();
    level.insert(Span::new(f, s.len()));
    for _ in 0..k {
        let mut next = HashSet::new();
        for w in &level {
            for p in &points {
                if !w.contains(*p) {
                    next.insert(w.with(*p));
                }
            }
        }
        level = next;
    }
    let mut out: Vec<Span> = level.into_iter().collect();
    out.sort();
    out
}

/// Visits every k-dimensional subspace of `s` whose nonzero elements are all
/// invertible, once each, until `visit` returns false.
///
/// Such a subspace maps injectively onto its space U of first rows, so it
/// has a unique basis a_1..a_k whose first rows are the reduced basis
/// u_1..u_k of U. For k = n this is u_i = e_i. Bases are built one vector
/// at a time from the invertible elements with the prescribed first row.
fn visit_partial_spreads(s: &MatSpace, k: usize, visit: &mut dyn FnMut(&[Mat]) -> bool) {
    let (f, n) = (s.field(), s.n());
    if k == 0 || k > n {
        if k == 0 {
            visit(&[]);
        }
        return;
    }
    let fr = FirstRows::new(s);
    for u in subspaces(&fr.image(), k) {
        let candidates: Vec<Vec<Mat>> = u.rows().iter().map(|r| fr.invertible_with(*r)).collect();
        if candidates.iter().any(Vec::is_empty) {
            continue;
        }
        let mut chosen: Vec<Mat> = Vec::with_capacity(k);
        if !extend(f, &candidates, &mut chosen, &mut Vec::new(), visit) {
            return;
        }
    }
}

/// Returns false once the visitor asks to stop.
fn extend(f: Fq, candidates: &[Vec<Mat>], chosen: &mut Vec<Mat>, elements: &mut [Mat], visit: &mut dyn FnMut(&[Mat]) -> bool) -> bool {
    let m = chosen.len();
    if m == candidates.len() {
        return visit(chosen);
    }
    if m == 0 {
        for a in &candidates[0] {
            chosen.push(*a);
            let mut els: Vec<Mat> = (0..f.q()).map(|c| a.scale(c)).collect();
            let keep_going = extend(f, candidates, chosen, &mut els, visit);
            chosen.pop();
            if !keep_going {
                return false;
            }
        }
        return true;
    }
    for b in &candidates[m] {
        // Each new projective point is x + b for some x in the current span.
        if !elements.iter().all(|x| x.add(b).is_invertible()) {
            continue;
        }
        let mut grown: Vec<Mat> = Vec::with_capacity(elements.len() * f.q() as usize);
        for c in 0..f.q() {
            let cb = b.scale(c);
            grown.extend(elements.iter().map(|x| x.add(&cb)));
        }
        chosen.push(*b);
        let keep_going = extend(f, candidates, chosen, &mut grown, visit);
        chosen.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Representatives of the equivalence classes of k-dimensional subspaces of
/// `s` all of whose nonzero elements are invertible.
pub fn find_spread_sets(s: &MatSpace, k: usize) -> Result<Vec<MatSpace>> {
    let mut found = Vec::new();
    visit_partial_spreads(s, k, &mut |basis| {
        found.push(MatSpace::from_mats(s.field(), s.n(), basis));
        true
    });
    equivalence_classes(&found, None)
}

/// Whether `s` contains a k-dimensional partial spread set.
pub fn contains_partial_spread(s: &MatSpace, k: usize) -> bool {
    let mut hit = false;
    visit_partial_spreads(s, k, &mut |_| {
        hit = true;
        false
    });
    hit
}

/// Every k-dimensional partial spread set inside `s`, without reduction.
pub fn all_partial_spreads(s: &MatSpace, k: usize) -> Vec<MatSpace> {
    let mut found = Vec::new();
    visit_partial_spreads(s, k, &mut |basis| {
        found.push(MatSpace::from_mats(s.field(), s.n(), basis));
        true
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All k-dim subspaces of `s` whose nonzero elements are invertible, by
    /// direct enumeration of subspaces.
    fn brute(s: &MatSpace, k: usize) -> Vec<MatSpace> {
        let mut out: Vec<MatSpace> = subspaces(s.span(), k)
            .into_iter()
            .map(|w| MatSpace::from_span(s.n(), w))
            .filter(MatSpace::is_nonsingular)
            .collect();
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force_in_small_spaces() {
        let f8 = crate::algebra::field_construct(Fq::F2, 3, &crate::gf::Poly::new(Fq::F2, &[1, 1, 0, 1])).unwrap();
        let mut around_f8 = f8.space().clone();
        around_f8.insert(&Mat::unit(Fq::F2, 3, 0, 2));
        around_f8.insert(&Mat::unit(Fq::F2, 3, 2, 1));
        let cases = [
            MatSpace::full(Fq::F2, 2),
            MatSpace::full(Fq::F3, 2),
            MatSpace::full(Fq::F5, 2),
            around_f8,
        ];
        for s in &cases {
            for k in 1..=s.n() {
                let mut fast = all_partial_spreads(s, k);
                fast.sort();
                let before = fast.len();
                fast.dedup();
                assert_eq!(before, fast.len(), "each subspace visited once");
                let slow = brute(s, k);
                assert!(!slow.is_empty());
                assert_eq!(fast, slow, "{s:?} k={k}");
            }
        }
    }

    #[test]
    fn two_by_two_binary_has_one_class() {
        let full = MatSpace::full(Fq::F2, 2);
        let classes = find_spread_sets(&full, 2).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(classes[0].is_nonsingular());
        assert!(brute(&full, 2).len() > 1);
    }

    #[test]
    fn diagonal_spaces() {
        for n in 2..=4 {
            let d = MatSpace::diag(Fq::F2, n);
            assert!(find_spread_sets(&d, 2).unwrap().is_empty());
            assert!(!contains_partial_spread(&d, 2));
            assert!(contains_partial_spread(&d, 1));
        }
        // A plane of diagonal matrices always meets the hyperplane d_11 = 0.
        assert!(!contains_partial_spread(&MatSpace::diag(Fq::F5, 3), 2));
    }
}
