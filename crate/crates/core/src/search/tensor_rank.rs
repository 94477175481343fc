use alloc::vec::Vec;

use super::extend::Extender;
use super::quotient::{canonical, induced_maps};
use super::report::LevelCount;
use crate::equivalence::StabilizerGroup;
use crate::exec::{Executor, Sequential};
use crate::gf::{Mat, Span};
use crate::space::SpreadSet;
use crate::{Error, Result};

/// The tensor rank of a spread set and a witnessing set of rank-one
/// matrices. Level counts give, per dimension, the children generated
/// (distinct for each parent, summed over parents) and the number of orbit
/// representatives kept.
#[derive(Clone, Debug)]
pub struct RankResult {
    pub rank: usize,
    pub witness: Vec<Mat>,
    pub levels: Vec<LevelCount>,
}

/// The least m such that some m-dimensional space containing `c` is spanned
/// by its rank-one elements. Spaces are grown one rank-one point at a time
/// and reduced to orbit representatives under `aut` between levels.
pub fn tensor_rank(c: &SpreadSet, aut: &StabilizerGroup, max_r: usize) -> Result<RankResult> {
    tensor_rank_with(c, aut, max_r, &Sequential)
}

const CHUNK: usize = 64;

pub fn tensor_rank_with<E: Executor>(c: &SpreadSet, aut: &StabilizerGroup, max_r: usize, exec: &E) -> Result<RankResult> {
    let base = c.space();
    if aut.generators().iter().any(|g| &g.act(base) != base) {
        return Err(Error::BadParameters("the group does not stabilize the spread set"));
    }
    let ext = Extender::new(base);
    let maps = induced_maps(&ext.quotient, aut.elements());
    let f = base.field();
    let mut m = base.dim();
    let mut reps: Vec<Span> = alloc::vec![Span::new(f, ext.quotient.dim())];
    let mut levels = Vec::new();
    {
        let inside = ext.children(&reps[0]).inside;
        if ext.span_of(inside.iter().copied()).dim() == m {
            return Ok(RankResult { rank: m, witness: ext.independent(inside), levels });
        }
    }
    loop {
        if m >= max_r {
            return Err(Error::RankExceedsCap(max_r));
        }
        m += 1;
        let mut level = LevelCount::new(m);
        let chunks = reps.len().div_ceil(CHUNK);
        let range = |ci: usize| ci * CHUNK..((ci + 1) * CHUNK).min(reps.len());
        // First pass: look for a child spanned by its rank-one points, in
        // chunk order so the witness does not depend on the executor.
        let batch = 4 * exec.parallelism().max(1);
        let mut start = 0;
        while start < chunks {
            let count = batch.min(chunks - start);
            let hits: Vec<(u64, Option<Vec<u32>>)> =
                exec.map_indexed(count, &|k| spanned_child(&ext, &reps[range(start + k)], m));
            for (generated, hit) in hits {
                level.spaces += generated;
                if let Some(idx) = hit {
                    levels.push(level);
                    return Ok(RankResult { rank: m, witness: ext.independent(idx), levels });
                }
            }
            start += count;
        }
        // Second pass: orbit representatives of all children.
        let canon: Vec<Vec<Span>> = exec.map_indexed(chunks, &|ci| {
            let mut out: Vec<Span> = Vec::new();
            for w in &reps[range(ci)] {
                for (key, _) in ext.children(w).groups {
                    out.push(canonical(&maps, &w.with(key)));
                }
            }
            out.sort_unstable();
            out.dedup();
            out
        });
        reps = canon.into_iter().flatten().collect();
        reps.sort_unstable();
        reps.dedup();
        level.classes = Some(reps.len() as u64);
        levels.push(level);
    }
}

/// Number of children of the given spaces, and the rank-one points of the
/// first child spanned by them, if any.
fn spanned_child(ext: &Extender, parents: &[Span], m: usize) -> (u64, Option<Vec<u32>>) {
    let mut generated = 0;
    for w in parents {
        let ch = ext.children(w);
        generated += ch.groups.len() as u64;
        let base_span = ext.span_of(ch.inside.iter().copied());
        for (_, added) in &ch.groups {
            let mut s = base_span.clone();
            for &i in added {
                s.insert(ext.points[i as usize].packed());
            }
            if s.dim() == m {
                let mut all = ch.inside.clone();
                all.extend_from_slice(added);
                return (generated, Some(all));
            }
        }
    }
    (generated, None)
}
