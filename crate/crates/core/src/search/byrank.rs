use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::extend::Extender;
use super::report::{LevelCount, Outcome, SearchReport};
use super::spreads::{contains_partial_spread, find_spread_sets};
use crate::equivalence::equivalence_classes_with;
use crate::exec::{Executor, Sequential};
use crate::gf::{Fq, Span};
use crate::space::MatSpace;
use crate::{Error, Result};

/// For each listed dimension m, the partial-spread dimension a space of
/// dimension m must contain to be extended further.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruningSchedule {
    pub rules: BTreeMap<usize, usize>,
}

impl PruningSchedule {
    /// No pruning.
    pub fn none() -> PruningSchedule {
        PruningSchedule::default()
    }

    /// Dimension n+2 must contain a 2-dimensional partial spread and n+3 a
    /// 3-dimensional one. A space of tensor rank at most R containing a
    /// spread set keeps, after removing k rank-one directions, a partial
    /// spread of dimension n-k, so no spread set of rank at most R is lost.
    pub fn standard(n: usize) -> PruningSchedule {
        PruningSchedule::none().with(n + 2, 2).with(n + 3, 3)
    }

    pub fn with(mut self, dim: usize, k: usize) -> PruningSchedule {
        self.rules.insert(dim, k);
        self
    }
}

/// Representatives of the spread sets of tensor rank at most R, with the
/// per-level counts of the search.
#[derive(Clone, Debug)]
pub struct ByRankResult {
    pub report: SearchReport,
    pub spread_sets: Vec<MatSpace>,
}

/// Every isotopism class of n-dimensional spread sets over `f` with tensor
/// rank at most `r`. Starting from the diagonal matrices, each level adds
/// one rank-one matrix to every kept space in all ways, reduces the result
/// to equivalence classes, collects the spread sets inside the classes and
/// applies the pruning rule of that dimension (never at dimension `r`).
///
/// Level counts: `spaces` sums, over the kept representatives, the number
/// of distinct children of each (a class invariant, so it does not depend on
/// which representatives are kept), `classes`
/// their equivalence classes, `survivors` the classes passing the pruning
/// rule, `spread_sets` the spread-set classes found at that level.
pub fn spread_sets_by_rank(f: Fq, n: usize, r: usize, schedule: &PruningSchedule) -> Result<ByRankResult> {
    spread_sets_by_rank_with(f, n, r, schedule, &Sequential)
}

pub fn spread_sets_by_rank_with<E: Executor>(
    f: Fq,
    n: usize,
    r: usize,
    schedule: &PruningSchedule,
    exec: &E,
) -> Result<ByRankResult> {
    if r < n {
        return Err(Error::BadParameters("the rank bound must be at least n"));
    }
    let diag = MatSpace::diag(f, n);
    let mut found = find_spread_sets(&diag, n)?;
    let ext = Extender::new(&MatSpace::zero(f, n));
    let mut reps = alloc::vec![diag];
    let mut levels = Vec::new();
    for m in n + 1..=r {
        let mut level = LevelCount::new(m);
        let spans: Vec<Span> = reps.iter().map(|s| s.span().clone()).collect();
        let per_rep: Vec<Vec<Span>> = exec.map_indexed(spans.len(), &|i| {
            let w = &spans[i];
            ext.children(w).groups.into_iter().map(|(key, _)| w.with(key)).collect()
        });
        level.spaces = per_rep.iter().map(|v| v.len() as u64).sum();
        let mut children: Vec<Span> = per_rep.into_iter().flatten().collect();
        children.sort_unstable();
        children.dedup();
        let children: Vec<MatSpace> = children.into_iter().map(|s| MatSpace::from_span(n, s)).collect();
        let classes = equivalence_classes_with(&children, None, exec)?;
        level.classes = Some(classes.len() as u64);
        reps = match schedule.rules.get(&m) {
            Some(&k) if m < r => {
                let keep: Vec<bool> = exec.map_indexed(classes.len(), &|i| contains_partial_spread(&classes[i], k));
                let kept: Vec<MatSpace> = classes.into_iter().zip(keep).filter(|(_, k)| *k).map(|(s, _)| s).collect();
                level.survivors = Some(kept.len() as u64);
                kept
            }
            _ => classes,
        };
        let per_class: Vec<Result<Vec<MatSpace>>> = exec.map_indexed(reps.len(), &|i| find_spread_sets(&reps[i], n));
        let mut here = Vec::new();
        for s in per_class {
            here.extend(s?);
        }
        let here = equivalence_classes_with(&here, None, exec)?;
        level.spread_sets = Some(here.len() as u64);
        found.extend(here);
        levels.push(level);
    }
    let spread_sets = equivalence_classes_with(&found, None, exec)?;
    let report = SearchReport {
        q: f.q() as u32,
        n,
        target: r,
        pruned: !schedule.rules.is_empty(),
        levels,
        outcome: Outcome::Exhausted,
    };
    Ok(ByRankResult { report, spread_sets })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_four_has_rank_three() {
        let res = spread_sets_by_rank(Fq::F2, 2, 3, &PruningSchedule::none()).unwrap();
        assert_eq!(res.spread_sets.len(), 1);
        assert!(res.spread_sets[0].is_nonsingular());
        let none = spread_sets_by_rank(Fq::F2, 2, 2, &PruningSchedule::none()).unwrap();
        assert!(none.spread_sets.is_empty());
    }

    #[test]
    fn order_eight_needs_rank_six() {
        let five = spread_sets_by_rank(Fq::F2, 3, 5, &PruningSchedule::standard(3)).unwrap();
        assert!(five.spread_sets.is_empty());
        let six = spread_sets_by_rank(Fq::F2, 3, 6, &PruningSchedule::standard(3)).unwrap();
        assert_eq!(six.spread_sets.len(), 1);
    }
}
