use serde::{Deserialize, Serialize};

use super::greedy::{greedy_back_and_forth, GreedyOutcome};
use super::{Scorer, SearchMode, SquareWitness};
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::model::GroupModel;
use crate::par::{first_success, Budget, Counter, Outcome, Step};
use crate::product::ProductGraph;
use crate::set::DenseSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SquareOutcome {
    Found(SquareWitness),
    NotFound { exhaustive: bool },
}

/// Searches for `B`, `C` of size `k` with `B·C ⊆ A`.
///
/// Exact mode grows `B` in increasing order, keeping the pool of admissible
/// `c`s (the intersection of the left quotients of `A` by the chosen `b`s)
/// and only ever considering `b`s adjacent to at least `k` pool members.
/// The result is the lexicographically least witness: least `B`, then the
/// `k` smallest pool members as `C`. Heuristic mode runs the greedy
/// construction with the pool-size scorer.
pub fn find_square_witness(
    a: &DenseSet,
    model: &GroupModel,
    k: usize,
    mode: SearchMode,
    budget: Budget,
) -> Result<SquareOutcome> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    match mode {
        SearchMode::Heuristic => Ok(match greedy_back_and_forth(a, model, k, Scorer::PoolSize)? {
            GreedyOutcome::Square(w) => SquareOutcome::Found(w),
            GreedyOutcome::Stuck { .. } => SquareOutcome::NotFound { exhaustive: false },
        }),
        SearchMode::Exact => {
            let g = ProductGraph::new(a, model)?;
            Ok(match exact(&g, k, budget).0 {
                Outcome::Found(w) => SquareOutcome::Found(w),
                Outcome::NotFound => SquareOutcome::NotFound { exhaustive: true },
                Outcome::Exhausted => SquareOutcome::NotFound { exhaustive: false },
            })
        }
    }
}

fn exact(g: &ProductGraph, k: usize, budget: Budget) -> (Outcome<SquareWitness>, u64) {
    let n = g.operands();
    if n < k {
        return (Outcome::NotFound, 0);
    }
    let firsts: Vec<usize> = (0..=n - k).collect();
    first_success(&firsts, budget, |b1, ctr| {
        if !ctr.tick() {
            return Step::Exhausted;
        }
        let pool = g.c_nbrs(b1);
        let count = pool.count();
        if count < k {
            return Step::Failed;
        }
        let cands = g.b_candidates(&pool, count, k, b1 + 1, |_| true);
        let mut bs = vec![b1];
        match extend(g, k, ctr, &mut bs, &pool, count, &cands) {
            Some(Ok(c)) => Step::Found(SquareWitness { b: bs, c }),
            Some(Err(())) => Step::Exhausted,
            None => Step::Failed,
        }
    })
}

/// `None` when this subtree has no witness, `Some(Err)` on budget exhaustion.
fn extend(
    g: &ProductGraph,
    k: usize,
    ctr: &mut Counter,
    bs: &mut Vec<usize>,
    pool: &Bitset,
    count: usize,
    cands: &[usize],
) -> Option<Result<Vec<usize>, ()>> {
    if bs.len() == k {
        return Some(Ok(pool.first_members(k)));
    }
    let need = k - bs.len();
    if cands.len() < need {
        return None;
    }
    let mut scratch = g.scratch();
    for (idx, &b) in cands.iter().enumerate() {
        if cands.len() - idx < need {
            break;
        }
        if !ctr.tick() {
            return Some(Err(()));
        }
        let next = if count <= 64 {
            Bitset::from_indices(pool.len(), pool.iter().filter(|&c| g.holds(b, c)))
        } else {
            g.c_nbrs_into(b, &mut scratch);
            let mut p = pool.clone();
            p.intersect_with(&scratch);
            p
        };
        let next_count = next.count();
        if next_count < k {
            continue;
        }
        let rest: Vec<usize> = if need == 1 {
            Vec::new()
        } else {
            cands[idx + 1..]
                .iter()
                .copied()
                .filter(|&b2| g.b_overlap(b2, &next, next_count, &mut scratch) >= k)
                .collect()
        };
        bs.push(b);
        match extend(g, k, ctr, bs, &next, next_count, &rest) {
            None => {
                bs.pop();
            }
            found => return found,
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub k: usize,
    pub found: bool,
    /// For rows that were not found: whether absence is proven.
    pub exhaustive: bool,
    pub witness: Option<SquareWitness>,
}

/// One row per `k` in `1..=k_max`. The `found` column is monotone: the first
/// miss ends the search and every larger `k` inherits its status.
pub fn growth_curve(
    a: &DenseSet,
    model: &GroupModel,
    k_max: usize,
    mode: SearchMode,
    budget: Budget,
) -> Result<Vec<GrowthRow>> {
    if k_max == 0 {
        return Err(Error::InvalidInput("k_max must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(k_max);
    let mut miss: Option<bool> = None;
    for k in 1..=k_max {
        if let Some(exhaustive) = miss {
            rows.push(GrowthRow { k, found: false, exhaustive, witness: None });
            continue;
        }
        match find_square_witness(a, model, k, mode, budget)? {
            SquareOutcome::Found(w) => rows.push(GrowthRow { k, found: true, exhaustive: true, witness: Some(w) }),
            SquareOutcome::NotFound { exhaustive } => {
                miss = Some(exhaustive);
                rows.push(GrowthRow { k, found: false, exhaustive, witness: None });
            }
        }
    }
    Ok(rows)
}
