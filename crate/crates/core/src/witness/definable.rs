use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::model::GroupModel;
use crate::par::Budget;
use crate::set::DenseSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Intervals,
    /// Arithmetic progressions with step `1..=step_max`.
    Progressions {
        step_max: usize,
    },
}

impl Family {
    pub const DEFAULT_STEP_MAX: usize = 32;

    fn step_max(self) -> usize {
        match self {
            Family::Intervals => 1,
            Family::Progressions { step_max } => step_max,
        }
    }
}

/// `{start + i·step : i < len}`. Intervals have step 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    pub start: usize,
    pub step: usize,
    pub len: usize,
}

impl Progression {
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |i| self.start + i * self.step)
    }

    pub fn last(&self) -> Option<usize> {
        self.len.checked_sub(1).map(|i| self.start + i * self.step)
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AP({}, {}, {})", self.start, self.step, self.len)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefinableWitness {
    pub first: Progression,
    pub second: Progression,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DefinableOutcome {
    Found(DefinableWitness),
    /// `exhaustive` is relative to the family: for progressions, steps
    /// above `step_max` were not examined.
    NotFound {
        exhaustive: bool,
    },
}

/// Two progressions of length `n` whose sumset lies in `A`.
///
/// Step pairs `d1 <= d2` are tried in lexicographic order. For fixed steps
/// containment only depends on `s = a1 + a2`, so the feasible sums are the
/// intersection of `A` shifted by every offset `i·d1 + j·d2`. The smallest
/// feasible `s` wins, split with the smallest admissible `a1`. The budget
/// counts step pairs.
pub fn definable_witness_search(
    a: &DenseSet,
    model: &GroupModel,
    family: Family,
    n: usize,
    budget: Budget,
) -> Result<DefinableOutcome> {
    if !model.is_window() {
        return Err(Error::UnsupportedModel);
    }
    a.check_model(model)?;
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if family.step_max() == 0 {
        return Err(Error::InvalidInput("step_max must be at least 1".into()));
    }
    let l = model.operands();
    let mut used = 0u64;
    let mut feasible = Bitset::new(a.universe());
    let mut shifted = Bitset::new(a.universe());
    for d1 in 1..=family.step_max() {
        for d2 in d1..=family.step_max() {
            let span2 = (n - 1) * d2;
            if span2 >= l {
                break;
            }
            if budget.is_some_and(|cap| used >= cap) {
                return Ok(DefinableOutcome::NotFound { exhaustive: false });
            }
            used += 1;
            let max_a1 = l - 1 - (n - 1) * d1;
            let max_a2 = l - 1 - span2;
            feasible.clone_from(a.bits());
            let mut offsets: Vec<usize> = (0..n).flat_map(|i| (0..n).map(move |j| i * d1 + j * d2)).collect();
            offsets.sort_unstable();
            offsets.dedup();
            for &off in &offsets[1..] {
                a.bits().shr_into(off, &mut shifted);
                feasible.intersect_with(&shifted);
            }
            if let Some(s) = feasible.next_member(0).filter(|&s| s <= max_a1 + max_a2) {
                let a1 = s.saturating_sub(max_a2);
                return Ok(DefinableOutcome::Found(DefinableWitness {
                    first: Progression { start: a1, step: d1, len: n },
                    second: Progression { start: s - a1, step: d2, len: n },
                }));
            }
        }
        if (n - 1) * d1 >= l {
            break;
        }
    }
    Ok(DefinableOutcome::NotFound { exhaustive: true })
}

/// Both progressions have at least `n` terms inside the operand domain and
/// every sum lies in `A`.
pub fn verify_definable(w: &DefinableWitness, a: &DenseSet, model: &GroupModel, n: usize) -> Result<bool> {
    if !model.is_window() {
        return Err(Error::UnsupportedModel);
    }
    a.check_model(model)?;
    let ok_shape = |p: &Progression| p.len >= n.max(1) && p.step >= 1 && p.last().is_some_and(|x| x < model.operands());
    if !ok_shape(&w.first) || !ok_shape(&w.second) {
        return Ok(false);
    }
    Ok(w.first.members().all(|x| w.second.members().all(|y| model.op(x, y).is_some_and(|p| a.contains(p)))))
}
