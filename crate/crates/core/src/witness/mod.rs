//! Productset witnesses: square (`B·C ⊆ A`), triangular (`b_i·c_j ∈ A` for
//! `i <= j`), the greedy back-and-forth construction, the Ramsey upgrade
//! from triangular to square-or-ladder, and witnesses restricted to
//! intervals and arithmetic progressions.

mod definable;
mod greedy;
mod ramsey;
mod square;
mod triangular;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ladder::distinct_operands;
use crate::model::GroupModel;
use crate::set::DenseSet;

pub use definable::{
    definable_witness_search, verify_definable, DefinableOutcome, DefinableWitness, Family, Progression,
};
pub use greedy::{greedy_back_and_forth, GreedyOutcome};
pub use ramsey::{ramsey_upgrade, UpgradeResult, Upgraded};
pub use square::{find_square_witness, growth_curve, GrowthRow, SquareOutcome};
pub use triangular::{find_triangular_witness, TriangularOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exact,
    Heuristic,
}

/// Selection rule for greedy constructions; ties go to the smallest element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scorer {
    /// Maximise the size of the opposite pool after the pick.
    PoolSize,
    /// Pool size after the pick times the element's full degree.
    DensityWeighted,
    /// Uniform pick from the pool (SplitMix64, `draw % len`).
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareWitness {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl SquareWitness {
    pub fn size(&self) -> usize {
        self.b.len().min(self.c.len())
    }

    /// The witness read as sequences.
    pub fn as_triangular(&self) -> TriangularWitness {
        TriangularWitness { b: self.b.clone(), c: self.c.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularWitness {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl TriangularWitness {
    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }
}

/// `B`, `C` non-empty, duplicate-free operands with every `b·c ∈ A`.
pub fn verify_square(w: &SquareWitness, a: &DenseSet, model: &GroupModel) -> Result<bool> {
    a.check_model(model)?;
    if w.b.is_empty() || w.c.is_empty() || !distinct_operands(&w.b, model) || !distinct_operands(&w.c, model) {
        return Ok(false);
    }
    Ok(w.b.iter().all(|&b| w.c.iter().all(|&c| model.op(b, c).is_some_and(|p| a.contains(p)))))
}

/// Equal-length, duplicate-free sequences with `b_i·c_j ∈ A` for all `i <= j`.
pub fn verify_triangular(w: &TriangularWitness, a: &DenseSet, model: &GroupModel) -> Result<bool> {
    a.check_model(model)?;
    if w.b.is_empty() || w.b.len() != w.c.len() || !distinct_operands(&w.b, model) || !distinct_operands(&w.c, model) {
        return Ok(false);
    }
    Ok(w.b.iter().enumerate().all(|(i, &b)| w.c[i..].iter().all(|&c| model.op(b, c).is_some_and(|p| a.contains(p)))))
}
