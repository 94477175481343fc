use alloc::collections::VecDeque;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use super::invariant::InvariantCache;
use super::matcher::{isotopisms, Mode, Prepared};
use super::Isotopism;
use crate::codec;
use crate::gf::{Fq, Mat};
use crate::space::MatSpace;
use crate::Result;

/// A finite group of isotopisms stabilizing a space, held both as an
/// explicit element list and as a generating set.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    space: MatSpace,
    elements: Vec<Isotopism>,
    generators: Vec<Isotopism>,
}

impl StabilizerGroup {
    /// Builds the group from a complete list of its elements.
    pub fn from_elements(space: MatSpace, mut elements: Vec<Isotopism>) -> StabilizerGroup {
        elements.sort_by_key(|g| (g.a.packed(), g.b.packed()));
        elements.dedup();
        let generators = generating_set(&elements);
        StabilizerGroup { space, elements, generators }
    }

    /// The trivial group on `space`.
    pub fn trivial(space: MatSpace) -> StabilizerGroup {
        let id = Isotopism::identity(space.field(), space.n());
        StabilizerGroup { space, elements: alloc::vec![id], generators: Vec::new() }
    }

    pub fn space(&self) -> &MatSpace {
        &self.space
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Isotopism] {
        &self.elements
    }

    pub fn generators(&self) -> &[Isotopism] {
        &self.generators
    }

    pub fn contains(&self, g: &Isotopism) -> bool {
        self.elements.binary_search_by_key(&(g.a.packed(), g.b.packed()), |h| (h.a.packed(), h.b.packed())).is_ok()
    }

    /// The elements that also map `v` onto itself.
    pub fn stabilizer_of(&self, v: &MatSpace) -> StabilizerGroup {
        let els: Vec<Isotopism> = self.elements.iter().filter(|g| &g.act(v) == v).copied().collect();
        StabilizerGroup::from_elements(v.clone(), els)
    }
}

/// A small generating set: scan the elements and keep each one not yet
/// generated by those kept so far.
fn generating_set(elements: &[Isotopism]) -> Vec<Isotopism> {
    let Some(first) = elements.first() else { return Vec::new() };
    let id = Isotopism::identity(first.a.field(), first.a.n());
    let mut gens: Vec<Isotopism> = Vec::new();
    let mut closure: HashSet<Isotopism> = HashSet::new();
    closure.insert(id);
    for g in elements {
        if closure.contains(g) {
            continue;
        }
        gens.push(*g);
        let mut queue: VecDeque<Isotopism> = closure.iter().copied().collect();
        while let Some(h) = queue.pop_front() {
            for s in &gens {
                let p = h.then(s);
                if closure.insert(p) {
                    queue.push_back(p);
                }
            }
        }
    }
    gens
}

/// The setwise stabilizer {(A, B) : A S B = S}.
pub fn automorphism_group(s: &MatSpace) -> Result<StabilizerGroup> {
    let mut cache = InvariantCache::new(s.field(), s.n());
    let p = Prepared::new(s, &mut cache);
    let els = isotopisms(&p, &p, Mode::All, &mut cache)?;
    Ok(StabilizerGroup::from_elements(s.clone(), els))
}

/// Orbits of the group on the projective rank-one points of M_n(F_q):
/// each orbit as (least-encoded member, orbit size), sorted by
/// representative encoding.
pub fn rank_one_orbits(group: &StabilizerGroup, f: Fq, n: usize) -> Vec<(Mat, usize)> {
    let points = rank_one_points(f, n);
    orbits_on_points(group.generators(), &points)
}

/// All projective rank-one matrices u w^T (u, w normalized), sorted by
/// encoding.
pub fn rank_one_points(f: Fq, n: usize) -> Vec<Mat> {
    let vecs: Vec<crate::Vector> = crate::Vector::all(f, n).filter(|v| !v.is_zero()).collect();
    let normalized: Vec<&crate::Vector> = vecs.iter().filter(|v| v.get(v.packed().leading().unwrap()) == 1).collect();
    let mut out: Vec<Mat> = Vec::new();
    for u in &normalized {
        for w in &normalized {
            out.push(Mat::outer(u, w));
        }
    }
    out.sort_by_key(codec::encode);
    out
}

/// Orbits of the group generated by `gens` on a set of projective points
/// (closed under the action), as (least-encoded member, size).
pub fn orbits_on_points(gens: &[Isotopism], points: &[Mat]) -> Vec<(Mat, usize)> {
    let index: HashMap<Mat, usize> = points.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut seen = alloc::vec![false; points.len()];
    let mut out = Vec::new();
    for start in 0..points.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = alloc::vec![start];
        let mut members = alloc::vec![start];
        while let Some(i) = queue.pop() {
            for g in gens {
                let img = g.apply_point(&points[i]);
                let j = *index.get(&img).expect("point set is closed under the group");
                if !seen[j] {
                    seen[j] = true;
                    queue.push(j);
                    members.push(j);
                }
            }
        }
        let rep = members.iter().map(|&i| points[i]).min_by_key(codec::encode).expect("nonempty");
        out.push((rep, members.len()));
    }
    out.sort_by_key(|(m, _)| codec::encode(m));
    out
}
