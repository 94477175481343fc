use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::invariant::InvariantCache;
use super::matcher::{isotopisms, Mode, Prepared};
use super::{Isotopism, StabilizerGroup};
use crate::exec::{Executor, Sequential};
use crate::space::MatSpace;
use crate::{Error, Result};

/// Cheap isotopism invariants of a matrix space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub dim: usize,
    /// Number of nonzero elements of each rank 0..=n.
    pub rank_distribution: Vec<u64>,
    /// Number of rank-one projective points.
    pub rank_one_points: u64,
    /// Dimension of the span of the rank-one elements.
    pub rank_one_span_dim: usize,
}

pub fn fingerprint(s: &MatSpace) -> Fingerprint {
    let q1 = s.field().q() as u64 - 1;
    let dist = s.rank_distribution();
    Fingerprint {
        dim: s.dim(),
        rank_one_points: dist.get(1).copied().unwrap_or(0),
        rank_distribution: dist.into_iter().map(|c| c * q1).collect(),
        rank_one_span_dim: s.rank_one_span_dim(),
    }
}

/// An isotopism g with g(s1) = s2, or `None` if the spaces are not
/// equivalent.
pub fn are_equivalent(s1: &MatSpace, s2: &MatSpace) -> Result<Option<Isotopism>> {
    if s1.field() != s2.field() || s1.n() != s2.n() {
        return Err(Error::DimensionMismatch { expected: s1.n(), got: s2.n() });
    }
    if s1.dim() != s2.dim() || fingerprint(s1) != fingerprint(s2) {
        return Ok(None);
    }
    let mut cache = InvariantCache::new(s1.field(), s1.n());
    let p1 = Prepared::new(s1, &mut cache);
    let p2 = Prepared::new(s2, &mut cache);
    let found = isotopisms(&p1, &p2, Mode::First, &mut cache)?;
    debug_assert!(found.iter().all(|g| &g.act(s1) == s2));
    Ok(found.into_iter().next())
}

/// One representative per orbit of the input spaces, under the full group
/// or under `group` when given. The representative of each class is its
/// member with the least [`MatSpace::key`]; the output is sorted by key and
/// depends only on the set of inputs.
pub fn equivalence_classes(spaces: &[MatSpace], group: Option<&StabilizerGroup>) -> Result<Vec<MatSpace>> {
    equivalence_classes_with(spaces, group, &Sequential)
}

const CHUNK: usize = 32;

pub fn equivalence_classes_with<E: Executor>(
    spaces: &[MatSpace],
    group: Option<&StabilizerGroup>,
    exec: &E,
) -> Result<Vec<MatSpace>> {
    let mut keyed: Vec<(Vec<u64>, &MatSpace)> = spaces.iter().map(|s| (s.key(), s)).collect();
    keyed.sort();
    keyed.dedup_by(|a, b| a.1 == b.1);
    let sorted: Vec<&MatSpace> = keyed.iter().map(|(_, s)| *s).collect();
    match group {
        Some(g) => Ok(classes_under_subgroup(&sorted, g, exec)),
        None => classes_under_full_group(&sorted, exec),
    }
}

fn chunked<E: Executor, T: Send>(exec: &E, len: usize, job: &(dyn Fn(core::ops::Range<usize>) -> T + Sync)) -> Vec<T> {
    let chunks = len.div_ceil(CHUNK);
    exec.map_indexed(chunks, &|c| job(c * CHUNK..((c + 1) * CHUNK).min(len)))
}

fn classes_under_subgroup<E: Executor>(sorted: &[&MatSpace], g: &StabilizerGroup, exec: &E) -> Vec<MatSpace> {
    let canon: Vec<Vec<MatSpace>> = chunked(exec, sorted.len(), &|r| {
        sorted[r].iter().map(|s| g.elements().iter().map(|h| h.act(s)).min().expect("group is nonempty")).collect()
    });
    let mut seen: BTreeMap<MatSpace, usize> = BTreeMap::new();
    for (i, c) in canon.into_iter().flatten().enumerate() {
        seen.entry(c).or_insert(i);
    }
    let mut idx: Vec<usize> = seen.into_values().collect();
    idx.sort_unstable();
    idx.into_iter().map(|i| sorted[i].clone()).collect()
}

fn classes_under_full_group<E: Executor>(sorted: &[&MatSpace], exec: &E) -> Result<Vec<MatSpace>> {
    if sorted.is_empty() {
        return Ok(Vec::new());
    }
    let (f, n) = (sorted[0].field(), sorted[0].n());
    let prints: Vec<Fingerprint> = chunked(exec, sorted.len(), &|r| sorted[r].iter().map(|s| fingerprint(s)).collect::<Vec<_>>())
        .into_iter()
        .flatten()
        .collect();
    let mut buckets: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (i, p) in prints.iter().enumerate() {
        buckets.entry(p).or_default().push(i);
    }
    let crowded: Vec<usize> = buckets.values().filter(|b| b.len() > 1).flatten().copied().collect();
    let prepared: Vec<Prepared> = chunked(exec, crowded.len(), &|r| {
        let mut cache = InvariantCache::new(f, n);
        crowded[r].iter().map(|&i| Prepared::new(sorted[i], &mut cache)).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    let slot: BTreeMap<usize, usize> = crowded.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    // Split each bucket by anchor profile; members stay in key order.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for b in buckets.values() {
        if b.len() == 1 {
            reps.push(b[0]);
            continue;
        }
        let mut by_profile: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for &i in b {
            by_profile.entry(prepared[slot[&i]].profile).or_default().push(i);
        }
        for g in by_profile.into_values() {
            if g.len() == 1 {
                reps.push(g[0]);
            } else {
                groups.push(g);
            }
        }
    }
    let results: Vec<Result<Vec<usize>>> = exec.map_indexed(groups.len(), &|gi| {
        let mut cache = InvariantCache::new(f, n);
        let mut kept: Vec<usize> = Vec::new();
        for &i in &groups[gi] {
            let mut new = true;
            for &k in &kept {
                if !isotopisms(&prepared[slot[&k]], &prepared[slot[&i]], Mode::First, &mut cache)?.is_empty() {
                    new = false;
                    break;
                }
            }
            if new {
                kept.push(i);
            }
        }
        Ok(kept)
    });
    for r in results {
        reps.extend(r?);
    }
    reps.sort_unstable();
    Ok(reps.into_iter().map(|i| sorted[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Fq, Mat};
    use rand::{Rng, SeedableRng};

    fn random_invertible(rng: &mut impl Rng, f: Fq, n: usize) -> Mat {
        loop {
            let e: Vec<u8> = (0..n * n).map(|_| rng.gen_range(0..f.q())).collect();
            let m = Mat::from_entries(f, n, &e).unwrap();
            if m.is_invertible() {
                return m;
            }
        }
    }

    fn random_g(rng: &mut impl Rng, f: Fq, n: usize) -> Isotopism {
        Isotopism { a: random_invertible(rng, f, n), b: random_invertible(rng, f, n) }
    }

    fn random_space(rng: &mut impl Rng, f: Fq, n: usize, k: usize) -> MatSpace {
        let ms: Vec<Mat> = (0..k)
            .map(|_| {
                let e: Vec<u8> = (0..n * n).map(|_| rng.gen_range(0..f.q())).collect();
                Mat::from_entries(f, n, &e).unwrap()
            })
            .collect();
        MatSpace::from_mats(f, n, &ms)
    }

    fn f16() -> MatSpace {
        MatSpace::from_encodings(Fq::F2, 4, &[33825, 14402, 25476, 50744]).unwrap()
    }

    #[test]
    fn finds_witness_for_random_images() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for (q, n, k) in [(2u32, 4usize, 4usize), (3, 3, 4), (2, 3, 5), (3, 4, 4), (5, 2, 2), (2, 4, 6)] {
            let f = Fq::new(q).unwrap();
            for _ in 0..5 {
                let s = random_space(&mut rng, f, n, k);
                let g = random_g(&mut rng, f, n);
                let t = g.act(&s);
                let w = are_equivalent(&s, &t).unwrap().expect("equivalent by construction");
                assert_eq!(w.act(&s), t);
            }
        }
    }

    #[test]
    fn singular_spaces_use_the_fallback() {
        let f = Fq::F2;
        let s = MatSpace::from_mats(f, 3, &[Mat::unit(f, 3, 0, 0), Mat::unit(f, 3, 0, 1)]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let t = random_g(&mut rng, f, 3).act(&s);
        assert!(are_equivalent(&s, &t).unwrap().is_some());
        let u = MatSpace::from_mats(f, 3, &[Mat::unit(f, 3, 0, 0), Mat::unit(f, 3, 1, 1)]);
        assert!(are_equivalent(&s, &u).unwrap().is_none());
    }

    #[test]
    fn fingerprint_is_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        let f = Fq::F3;
        for _ in 0..200 {
            let s = random_space(&mut rng, f, 3, 3);
            let g = random_g(&mut rng, f, 3);
            assert_eq!(fingerprint(&g.act(&s)), fingerprint(&s));
        }
    }

    #[test]
    fn classes_are_order_independent() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let f = Fq::F2;
        let base: Vec<MatSpace> = (0..4).map(|_| random_space(&mut rng, f, 3, 4)).collect();
        let mut all = Vec::new();
        for s in &base {
            all.push(s.clone());
            for _ in 0..3 {
                all.push(random_g(&mut rng, f, 3).act(s));
            }
        }
        let reps = equivalence_classes(&all, None).unwrap();
        let mut distinct = Vec::new();
        for s in &base {
            if !distinct.iter().any(|t: &MatSpace| are_equivalent(s, t).unwrap().is_some()) {
                distinct.push(s.clone());
            }
        }
        assert_eq!(reps.len(), distinct.len());
        all.reverse();
        assert_eq!(equivalence_classes(&all, None).unwrap(), reps);
        assert_eq!(equivalence_classes(&[f16()], None).unwrap(), alloc::vec![f16()]);
    }
}
