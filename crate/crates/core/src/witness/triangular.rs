use serde::{Deserialize, Serialize};

use super::greedy::{greedy_back_and_forth, GreedyOutcome};
use super::{Scorer, SearchMode, TriangularWitness};
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::model::GroupModel;
use crate::par::{first_success, Budget, Counter, Outcome, Step};
use crate::product::ProductGraph;
use crate::set::DenseSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TriangularOutcome {
    Found(TriangularWitness),
    NotFound { exhaustive: bool },
}

/// Sequences of length `m` with `b_i·c_j ∈ A` for `i <= j`.
///
/// Exact mode picks `b_1, c_1, b_2, c_2, ...` depth first. Each `c_i` comes
/// from the common neighbourhood of `b_1..b_i`; each `b_{i+1}` must keep at
/// least `m - i` unused members of that pool. The first hit is the least
/// witness in interleaved order. Heuristic mode runs the greedy square
/// construction with `scorer` and reads its output as sequences.
pub fn find_triangular_witness(
    a: &DenseSet,
    model: &GroupModel,
    m: usize,
    mode: SearchMode,
    scorer: Scorer,
    budget: Budget,
) -> Result<TriangularOutcome> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    match mode {
        SearchMode::Heuristic => Ok(match greedy_back_and_forth(a, model, m, scorer)? {
            GreedyOutcome::Square(w) => TriangularOutcome::Found(w.as_triangular()),
            GreedyOutcome::Stuck { .. } => TriangularOutcome::NotFound { exhaustive: false },
        }),
        SearchMode::Exact => {
            let g = ProductGraph::new(a, model)?;
            Ok(match exact(&g, m, budget).0 {
                Outcome::Found(w) => TriangularOutcome::Found(w),
                Outcome::NotFound => TriangularOutcome::NotFound { exhaustive: true },
                Outcome::Exhausted => TriangularOutcome::NotFound { exhaustive: false },
            })
        }
    }
}

fn exact(g: &ProductGraph, m: usize, budget: Budget) -> (Outcome<TriangularWitness>, u64) {
    let firsts: Vec<usize> = (0..g.operands()).collect();
    first_success(&firsts, budget, |b1, ctr| {
        if !ctr.tick() {
            return Step::Exhausted;
        }
        let pool = g.c_nbrs(b1);
        let count = pool.count();
        if count < m {
            return Step::Failed;
        }
        let mut s = Search { g, m, ctr, bs: vec![b1], cs: vec![] };
        match s.choose_c(&pool, count) {
            Some(true) => Step::Found(TriangularWitness { b: s.bs, c: s.cs }),
            Some(false) => Step::Exhausted,
            None => Step::Failed,
        }
    })
}

struct Search<'a, 'g> {
    g: &'a ProductGraph<'g>,
    m: usize,
    ctr: &'a mut Counter,
    bs: Vec<usize>,
    cs: Vec<usize>,
}

impl Search<'_, '_> {
    /// `pool` holds the unused common neighbours of `bs`.
    /// `Some(true)` found, `Some(false)` out of budget, `None` dead end.
    fn choose_c(&mut self, pool: &Bitset, count: usize) -> Option<bool> {
        let i = self.bs.len();
        for c in pool.iter() {
            if !self.ctr.tick() {
                return Some(false);
            }
            self.cs.push(c);
            if i == self.m {
                return Some(true);
            }
            let mut rest = pool.clone();
            rest.remove(c);
            let bs = &self.bs;
            let cands = self.g.b_candidates(&rest, count - 1, self.m - i, 0, |b| !bs.contains(&b));
            let mut scratch = self.g.scratch();
            for b in cands {
                if !self.ctr.tick() {
                    return Some(false);
                }
                self.g.c_nbrs_into(b, &mut scratch);
                let mut next = rest.clone();
                next.intersect_with(&scratch);
                let next_count = next.count();
                self.bs.push(b);
                if let Some(r) = self.choose_c(&next, next_count) {
                    return Some(r);
                }
                self.bs.pop();
            }
            self.cs.pop();
        }
        None
    }
}
