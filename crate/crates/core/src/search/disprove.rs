use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};
use serde::{Deserialize, Serialize};

use super::extend::Extender;
use super::rankone::orbit_representatives;
use super::report::{LevelCount, Outcome, SearchReport};
use crate::codec;
use crate::codes::{code_exists, Existence};
use crate::equivalence::StabilizerGroup;
use crate::exec::{Executor, Sequential};
use crate::gf::{Fq, PVec, Span};
use crate::space::SpreadSet;
use crate::{Error, Result};

/// Options for [`disprove_rank_with`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisproveOptions {
    /// Run without the code-based pruning when its precondition fails
    /// instead of returning [`Error::PruningUnavailable`].
    pub allow_unpruned: bool,
    /// Stop after finishing this dimension; the outcome is then
    /// [`Outcome::Incomplete`] unless a witness was already found.
    pub stop_after: Option<usize>,
    /// Parents extended per job; defaults to 16. A checkpoint is offered
    /// after every batch of jobs.
    pub chunk: Option<usize>,
}

/// Resumable state of a lower-bound search between two chunks of parents.
/// Spaces are stored as subspaces of the quotient by the spread set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchState {
    pub q: u32,
    pub n: usize,
    pub target: usize,
    /// Encodings of the spread-set basis the search was started from.
    pub base: Vec<u64>,
    pub pruned: bool,
    /// Completed levels.
    pub levels: Vec<LevelCount>,
    /// Counts of the level in progress.
    pub current: LevelCount,
    /// Spaces of dimension `current.dim - 1` being extended.
    pub parents: Vec<Span>,
    /// Parents before this index have been fully extended.
    pub next_parent: usize,
    /// Children kept so far for the next level.
    pub kept: Vec<Span>,
}

/// Decides whether `c` has a rank-one decomposition of length `r`, by
/// growing spaces containing `c` one rank-one point at a time.
///
/// The first rank-one point is taken up to the action of `aut` and the
/// second up to the stabilizer of the first space; from then on every
/// extension is made and each distinct space counted once. If no
/// [r, n, n+1] code exists, a decomposition of length r forces every
/// (2n-1)-dimensional space on the way to contain n independent rank-one
/// matrices, and spaces failing this are dropped.
pub fn disprove_rank(c: &SpreadSet, r: usize, aut: &StabilizerGroup) -> Result<SearchReport> {
    disprove_rank_with(c, r, aut, &DisproveOptions::default(), &Sequential, None, &mut |_| {})
}

const CHUNK: usize = 16;

/// As [`disprove_rank`], resuming from `resume` when given. After every
/// batch of parents `checkpoint` receives the current state; passing it
/// back later continues the search with identical results.
pub fn disprove_rank_with<E: Executor>(
    c: &SpreadSet,
    r: usize,
    aut: &StabilizerGroup,
    opts: &DisproveOptions,
    exec: &E,
    resume: Option<SearchState>,
    checkpoint: &mut dyn FnMut(&SearchState),
) -> Result<SearchReport> {
    let base = c.space();
    let (f, n) = (base.field(), base.n());
    if aut.generators().iter().any(|g| &g.act(base) != base) {
        return Err(Error::BadParameters("the group does not stabilize the spread set"));
    }
    if r < n {
        return Err(Error::BadParameters("the target rank must be at least n"));
    }
    let pruned = match code_exists(f, r, n, n + 1) {
        Existence::DoesNotExist => true,
        _ if opts.allow_unpruned => false,
        _ => return Err(Error::PruningUnavailable { length: r, k: n, d: n + 1 }),
    };
    let ext = Extender::new(base);
    let base_codes = codec::encode_all(&base.basis());
    let search = Search { ext: &ext, n, r, prune_dim: if pruned && 2 * n - 1 < r { Some(2 * n - 1) } else { None } };
    let report = |levels: Vec<LevelCount>, outcome| SearchReport { q: f.q() as u32, n, target: r, pruned, levels, outcome };

    let mut state = match resume {
        Some(s) => {
            if s.q != f.q() as u32 || s.n != n || s.target != r || s.base != base_codes || s.pruned != pruned {
                return Err(Error::BadParameters("checkpoint belongs to a different search"));
            }
            s
        }
        None => {
            let mut levels = Vec::new();
            let zero = Span::new(f, ext.quotient.dim());
            if r == n {
                let outcome = search.judge_final(&ext.children(&zero).inside);
                return Ok(report(levels, outcome.unwrap_or(Outcome::Exhausted)));
            }
            // Dimension n+1: one point per orbit of the group.
            let reps = orbit_representatives(aut.generators(), &ext.points);
            let mut first = LevelCount::new(n + 1);
            first.classes = Some(reps.len() as u64);
            let spaces = distinct(reps.iter().map(|a| Span::from_vectors(f, ext.quotient.dim(), [ext.quotient.project(a)])));
            first.spaces = spaces.len() as u64;
            let mut parents: Vec<Span> = Vec::new();
            match search.level_outcome(&mut first, spaces, &mut parents) {
                Some(o) => {
                    levels.push(first);
                    return Ok(report(levels, o));
                }
                None => levels.push(first),
            }
            if opts.stop_after == Some(n + 1) {
                return Ok(report(levels, Outcome::Incomplete));
            }
            // Dimension n+2: for each first space, one point per orbit of
            // its stabilizer among the points outside it.
            let mut second = LevelCount::new(n + 2);
            let found: Vec<Vec<Span>> = exec.map_indexed(parents.len(), &|i| {
                let w = &parents[i];
                let v = ext.quotient.lift_space(w);
                let stab = aut.stabilizer_of(&v);
                let ch = ext.children(w);
                let outside: Vec<_> = ch.groups.iter().flat_map(|(_, m)| m.iter().map(|&j| ext.points[j as usize])).collect();
                orbit_representatives(stab.generators(), &outside).iter().map(|x| w.with(ext.quotient.project(x))).collect()
            });
            let children = distinct(found.into_iter().flatten());
            second.spaces = children.len() as u64;
            let mut next = Vec::new();
            if let Some(o) = search.level_outcome(&mut second, children, &mut next) {
                levels.push(second);
                return Ok(report(levels, o));
            }
            levels.push(second);
            if opts.stop_after == Some(n + 2) {
                return Ok(report(levels, Outcome::Incomplete));
            }
            SearchState {
                q: f.q() as u32,
                n,
                target: r,
                base: base_codes,
                pruned,
                levels,
                current: search.level(n + 3),
                parents: next,
                next_parent: 0,
                kept: Vec::new(),
            }
        }
    };

    // Dimensions n+3 onwards: every extension of every parent.
    loop {
        let m = state.current.dim;
        let index: HashMap<&Span, u32> = state.parents.iter().enumerate().map(|(i, w)| (w, i as u32)).collect();
        let chunk = opts.chunk.unwrap_or(CHUNK).max(1);
        let chunks = state.parents.len().div_ceil(chunk);
        let batch = 4 * exec.parallelism().max(1);
        let mut next_chunk = state.next_parent.div_ceil(chunk);
        while next_chunk < chunks {
            let count = batch.min(chunks - next_chunk);
            let parents = &state.parents;
            let results: Vec<ChunkResult> = exec.map_indexed(count, &|k| {
                let ci = next_chunk + k;
                search.extend_chunk(parents, &index, ci * chunk..((ci + 1) * chunk).min(parents.len()), m)
            });
            for res in results {
                state.current.spaces += res.owned;
                if let Some(s) = state.current.survivors.as_mut() {
                    *s += res.kept.len() as u64;
                }
                if let Some(w) = res.witness {
                    let mut levels = state.levels.clone();
                    levels.push(state.current.clone());
                    return Ok(report(levels, w));
                }
                state.kept.extend(res.kept);
            }
            next_chunk += count;
            state.next_parent = (next_chunk * chunk).min(state.parents.len());
            if next_chunk < chunks {
                checkpoint(&state);
            }
        }
        drop(index);
        let done = core::mem::replace(&mut state.current, search.level(m + 1));
        state.levels.push(done);
        if m == r {
            return Ok(report(state.levels, Outcome::Exhausted));
        }
        if opts.stop_after == Some(m) {
            return Ok(report(state.levels, Outcome::Incomplete));
        }
        let mut kept = core::mem::take(&mut state.kept);
        kept.sort_unstable();
        state.parents = kept;
        state.next_parent = 0;
        checkpoint(&state);
    }
}

struct Search<'a> {
    ext: &'a Extender,
    n: usize,
    r: usize,
    prune_dim: Option<usize>,
}

struct ChunkResult {
    owned: u64,
    kept: Vec<Span>,
    witness: Option<Outcome>,
}

impl Search<'_> {
    fn level(&self, dim: usize) -> LevelCount {
        let mut l = LevelCount::new(dim);
        if self.prune_dim == Some(dim) {
            l.survivors = Some(0);
        }
        l
    }

    /// The witness outcome if the space whose rank-one points are `inside`
    /// is spanned by them.
    fn judge_final(&self, inside: &[u32]) -> Option<Outcome> {
        let s = self.ext.span_of(inside.iter().copied());
        (s.dim() == self.r).then(|| Outcome::Witness(codec::encode_all(&self.ext.independent(inside.iter().copied()))))
    }

    /// Whether a space of dimension `prune_dim` with these rank-one points
    /// survives the pruning rule.
    fn survives(&self, inside: &[u32]) -> bool {
        let mut count = 0;
        let mut s = Span::new(self.ext.quotient.field(), self.n * self.n);
        for &i in inside {
            if s.insert(self.ext.points[i as usize].packed()) {
                count += 1;
                if count >= self.n {
                    return true;
                }
            }
        }
        false
    }

    /// Applies the final check or the pruning rule to a complete list of
    /// distinct spaces of one level, filling `kept` with those to extend.
    fn level_outcome(&self, level: &mut LevelCount, spaces: Vec<Span>, kept: &mut Vec<Span>) -> Option<Outcome> {
        let m = level.dim;
        for w in spaces {
            let inside = self.ext.children(&w).inside;
            if m == self.r {
                if let Some(o) = self.judge_final(&inside) {
                    return Some(o);
                }
            } else if self.prune_dim != Some(m) || self.survives(&inside) {
                kept.push(w);
            }
        }
        if m == self.r {
            return Some(Outcome::Exhausted);
        }
        if self.prune_dim == Some(m) {
            level.survivors = Some(kept.len() as u64);
        }
        None
    }

    /// Extends the parents in `range`, counting each child at the parent of
    /// least index among those it contains.
    fn extend_chunk(&self, parents: &[Span], index: &HashMap<&Span, u32>, range: core::ops::Range<usize>, m: usize) -> ChunkResult {
        let f = self.ext.quotient.field();
        let mut out = ChunkResult { owned: 0, kept: Vec::new(), witness: None };
        for i in range {
            let w = &parents[i];
            let ch = self.ext.children(w);
            let mut inside = ch.inside.clone();
            for (key, added) in &ch.groups {
                let child = w.with(*key);
                if !owned_by(&child, i as u32, index, f) {
                    continue;
                }
                out.owned += 1;
                inside.truncate(ch.inside.len());
                inside.extend_from_slice(added);
                if m == self.r {
                    if let Some(o) = self.judge_final(&inside) {
                        out.witness = Some(o);
                        return out;
                    }
                } else if self.prune_dim != Some(m) || self.survives(&inside) {
                    out.kept.push(child);
                }
            }
        }
        out
    }
}

/// Whether no parent of index below `i` is a hyperplane of `child`.
fn owned_by(child: &Span, i: u32, index: &HashMap<&Span, u32>, f: Fq) -> bool {
    let k = child.dim();
    let rows = child.rows();
    for phi in Span::from_vectors(f, k, (0..k).map(unit)).projective_points() {
        let kernel = Span::from_vectors(f, k, [phi]).nullspace();
        let h = Span::from_vectors(f, child.len(), kernel.iter().map(|c| combine(rows, c, f)));
        if let Some(&j) = index.get(&h) {
            if j < i {
                return false;
            }
        }
    }
    true
}

/// Spaces in first-seen order without repeats.
fn distinct(spaces: impl Iterator<Item = Span>) -> Vec<Span> {
    let mut seen: HashSet<Span> = HashSet::new();
    spaces.filter(|w| seen.insert(w.clone())).collect()
}

fn unit(j: usize) -> PVec {
    let mut v = PVec::ZERO;
    v.set(j, 1);
    v
}

fn combine(rows: &[PVec], c: &PVec, f: Fq) -> PVec {
    let mut v = PVec::ZERO;
    for (j, r) in rows.iter().enumerate() {
        v = v.axpy(c.get(j), *r, f);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field_construct;
    use crate::equivalence::{automorphism_group, rank_one_points};
    use crate::gf::Poly;
    use crate::search::{tensor_rank, verify_decomposition};
    use crate::space::MatSpace;

    fn f8() -> SpreadSet {
        field_construct(Fq::F2, 3, &Poly::new(Fq::F2, &[1, 1, 0, 1])).unwrap()
    }

    fn witness_verified(c: &SpreadSet, o: &Outcome) -> bool {
        match o {
            Outcome::Witness(codes) => {
                let mats = codec::decode_all(codes, c.field(), c.n()).unwrap();
                verify_decomposition(c.space(), &mats).is_verified()
            }
            _ => false,
        }
    }

    #[test]
    fn agrees_with_tensor_rank() {
        for (f, n, modulus) in [(Fq::F2, 2, &[1u8, 1, 1][..]), (Fq::F3, 2, &[1, 0, 1][..]), (Fq::F2, 3, &[1, 1, 0, 1][..])] {
            let c = field_construct(f, n, &Poly::new(f, modulus)).unwrap();
            let aut = automorphism_group(c.space()).unwrap();
            let rank = tensor_rank(&c, &aut, 2 * n + 1).unwrap().rank;
            let below = disprove_rank(&c, rank - 1, &aut).unwrap();
            assert_eq!(below.outcome, Outcome::Exhausted);
            assert!(below.pruned);
            let at = disprove_rank(&c, rank, &aut).unwrap();
            assert!(witness_verified(&c, &at.outcome), "{:?}", at);
        }
    }

    #[test]
    fn needs_code_certificate() {
        let c = f8();
        let aut = automorphism_group(c.space()).unwrap();
        assert_eq!(disprove_rank(&c, 7, &aut), Err(Error::PruningUnavailable { length: 7, k: 3, d: 4 }));
        let opts = DisproveOptions { allow_unpruned: true, ..DisproveOptions::default() };
        let r = disprove_rank_with(&c, 7, &aut, &opts, &Sequential, None, &mut |_| {}).unwrap();
        assert!(!r.pruned);
        assert!(witness_verified(&c, &r.outcome));
    }

    #[test]
    fn counts_each_space_once() {
        // With the trivial group the third level holds every space C + <a, b, x>.
        let c = f8();
        let triv = StabilizerGroup::trivial(c.space().clone());
        let opts = DisproveOptions { allow_unpruned: true, stop_after: Some(6), chunk: Some(5) };
        let r = disprove_rank_with(&c, 7, &triv, &opts, &Sequential, None, &mut |_| {}).unwrap();
        let pts = rank_one_points(Fq::F2, 3);
        let mut all: HashSet<MatSpace> = HashSet::new();
        for (i, a) in pts.iter().enumerate() {
            for (j, b) in pts.iter().enumerate().skip(i + 1) {
                for x in &pts[j + 1..] {
                    let v = c.space().with(a).with(b).with(x);
                    if v.dim() == 6 {
                        all.insert(v);
                    }
                }
            }
        }
        let l = &r.levels[2];
        assert_eq!(l.dim, 6);
        assert_eq!(l.spaces, all.len() as u64);
        assert_eq!(r.outcome, Outcome::Incomplete);
    }

    #[test]
    fn resumes_from_any_checkpoint() {
        let c = field_construct(Fq::F2, 4, &Poly::new(Fq::F2, &[1, 1, 0, 0, 1])).unwrap();
        let aut = automorphism_group(c.space()).unwrap();
        let opts = DisproveOptions { chunk: Some(1), ..DisproveOptions::default() };
        let mut states = Vec::new();
        let full = disprove_rank_with(&c, 8, &aut, &opts, &Sequential, None, &mut |s| states.push(s.clone())).unwrap();
        assert_eq!(full.outcome, Outcome::Exhausted);
        assert!(full.pruned);
        assert!(states.len() > 4);
        for s in states.iter().step_by(3) {
            let resumed = disprove_rank_with(&c, 8, &aut, &opts, &Sequential, Some(s.clone()), &mut |_| {}).unwrap();
            assert_eq!(resumed, full);
        }
        let other = field_construct(Fq::F2, 4, &Poly::new(Fq::F2, &[1, 0, 0, 1, 1])).unwrap();
        let aut2 = automorphism_group(other.space()).unwrap();
        let res = disprove_rank_with(&other, 8, &aut2, &opts, &Sequential, Some(states[0].clone()), &mut |_| {});
        assert!(matches!(res, Err(Error::BadParameters(_))));
    }
}
