//! Order-property ladders for the relation `b·c ∈ A`.
//!
//! A ladder of length `k` is a pair of sequences with `b_i·c_j ∈ A` iff
//! `i <= j`. The search picks `b_1, c_1, b_2, c_2, ...` depth first in
//! ascending order while maintaining two pools: future `c`s must be adjacent
//! to every chosen `b`, future `b`s must be non-adjacent to every chosen `c`.
//! The first ladder found is the lexicographically least in the interleaved
//! order `(b_1, c_1, ..., b_k, c_k)`.
//!
//! Two candidates for the same slot that leave identical pools are
//! interchangeable: if `c` and `c'` cut the `b` pool the same way, neither
//! can appear later in a ladder that uses the other, so swapping them maps
//! solutions onto solutions. Once one of them fails the other is skipped
//! (likewise for `b`s and the `c` pool).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::model::GroupModel;
use crate::par::{first_success, Budget, Counter, Outcome, Step};
use crate::product::ProductGraph;
use crate::set::DenseSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderCertificate {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl LadderCertificate {
    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderResult {
    pub k: usize,
    pub certificate: Option<LadderCertificate>,
    /// The budget ran out before longer ladders were ruled out.
    pub lower_bound_only: bool,
    pub nodes: u64,
}

/// Largest `k <= k_max` admitting a ladder, searching lengths upward.
pub fn max_ladder(a: &DenseSet, model: &GroupModel, k_max: usize, budget: Budget) -> Result<LadderResult> {
    if k_max == 0 {
        return Err(Error::InvalidInput("k_max must be at least 1".into()));
    }
    let g = ProductGraph::new(a, model)?;
    let mut result = LadderResult { k: 0, certificate: None, lower_bound_only: false, nodes: 0 };
    for k in 1..=k_max {
        let remaining = budget.map(|b| b.saturating_sub(result.nodes));
        let (outcome, used) = find_ladder(&g, k, remaining);
        result.nodes += used;
        match outcome {
            Outcome::Found(cert) => {
                result.k = k;
                result.certificate = Some(cert);
            }
            Outcome::NotFound => break,
            Outcome::Exhausted => {
                result.lower_bound_only = true;
                break;
            }
        }
    }
    Ok(result)
}

pub(crate) fn find_ladder(g: &ProductGraph, k: usize, budget: Budget) -> (Outcome<LadderCertificate>, u64) {
    let firsts: Vec<usize> = (0..g.operands()).collect();
    first_success(&firsts, budget, |b1, ctr| {
        let mut s = Search { g, k, ctr, bs: vec![], cs: vec![] };
        s.start(b1)
    })
}

struct Search<'a, 'g> {
    g: &'a ProductGraph<'g>,
    k: usize,
    ctr: &'a mut Counter,
    bs: Vec<usize>,
    cs: Vec<usize>,
}

enum Flow {
    Found,
    Continue,
    Stop,
}

impl Search<'_, '_> {
    fn start(&mut self, b1: usize) -> Step<LadderCertificate> {
        if !self.ctr.tick() {
            return Step::Exhausted;
        }
        let cpool = self.g.c_nbrs(b1);
        let ccount = cpool.count();
        if ccount < self.k {
            return Step::Failed;
        }
        let mut bpool = Bitset::full(self.g.operands());
        bpool.remove(b1);
        self.bs.push(b1);
        match self.choose_c(&cpool, ccount, &bpool, self.g.operands() - 1) {
            Flow::Found => Step::Found(LadderCertificate { b: self.bs.clone(), c: self.cs.clone() }),
            Flow::Continue => Step::Failed,
            Flow::Stop => Step::Exhausted,
        }
    }

    /// Picks `c_i` with `i = bs.len()`. `cpool` already excludes chosen `c`s.
    fn choose_c(&mut self, cpool: &Bitset, ccount: usize, bpool: &Bitset, bcount: usize) -> Flow {
        let i = self.bs.len();
        let need_b = self.k - i;
        let mut scratch = self.g.scratch();
        let mut failed: HashSet<Bitset> = HashSet::new();
        for c in cpool.iter() {
            // b's still to come must avoid c.
            let kept = bcount - self.g.c_overlap(c, bpool, bcount, &mut scratch);
            if kept < need_b {
                continue;
            }
            let next_b = if i == self.k {
                None
            } else {
                self.g.b_nbrs_into(c, &mut scratch);
                let mut next_b = bpool.clone();
                next_b.difference_with(&scratch);
                if failed.contains(&next_b) {
                    continue;
                }
                Some(next_b)
            };
            if !self.ctr.tick() {
                return Flow::Stop;
            }
            self.cs.push(c);
            let Some(next_b) = next_b else { return Flow::Found };
            let mut next_c = cpool.clone();
            next_c.remove(c);
            match self.choose_b(&next_c, ccount - 1, &next_b, kept) {
                Flow::Continue => {}
                other => return other,
            }
            self.cs.pop();
            failed.insert(next_b);
        }
        Flow::Continue
    }

    /// Picks `b_{i+1}` with `i = bs.len()`.
    fn choose_b(&mut self, cpool: &Bitset, ccount: usize, bpool: &Bitset, bcount: usize) -> Flow {
        let i = self.bs.len();
        let need_c = self.k - i;
        let candidates = self.g.b_candidates(cpool, ccount, need_c, 0, |b| bpool.contains(b));
        let mut scratch = self.g.scratch();
        let mut failed: HashSet<Bitset> = HashSet::new();
        for b in candidates {
            self.g.c_nbrs_into(b, &mut scratch);
            let mut next_c = cpool.clone();
            next_c.intersect_with(&scratch);
            if failed.contains(&next_c) {
                continue;
            }
            if !self.ctr.tick() {
                return Flow::Stop;
            }
            let count = next_c.count();
            self.bs.push(b);
            let mut next_b = bpool.clone();
            next_b.remove(b);
            match self.choose_c(&next_c, count, &next_b, bcount - 1) {
                Flow::Continue => {}
                other => return other,
            }
            self.bs.pop();
            failed.insert(next_c);
        }
        Flow::Continue
    }
}

/// True iff the full `k × k` pattern `b_i·c_j ∈ A ⟺ i <= j` holds, with
/// distinct entries within each sequence and every product defined.
pub fn verify_ladder(cert: &LadderCertificate, a: &DenseSet, model: &GroupModel) -> Result<bool> {
    a.check_model(model)?;
    let k = cert.b.len();
    if k == 0 || cert.c.len() != k || !distinct_operands(&cert.b, model) || !distinct_operands(&cert.c, model) {
        return Ok(false);
    }
    for (i, &b) in cert.b.iter().enumerate() {
        for (j, &c) in cert.c.iter().enumerate() {
            let Some(p) = model.op(b, c) else { return Ok(false) };
            if a.contains(p) != (i <= j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn distinct_operands(xs: &[usize], model: &GroupModel) -> bool {
    let n = model.operands();
    let mut seen = Bitset::new(n);
    for &x in xs {
        if x >= n || seen.contains(x) {
            return false;
        }
        seen.insert(x);
    }
    true
}
