use serde::{Deserialize, Serialize};

use super::{verify_triangular, SquareWitness, TriangularWitness};
use crate::error::{Error, Result};
use crate::ladder::LadderCertificate;
use crate::model::GroupModel;
use crate::set::DenseSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum Upgraded {
    Square(SquareWitness),
    Ladder(LadderCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpgradeResult {
    /// Zero-based positions into the input sequences, ascending.
    pub indices: Vec<usize>,
    pub upgraded: Upgraded,
}

/// Extracts a homogeneous index set for the colouring
/// `(i, j) ↦ [b_i·c_j ∈ A]`, `i > j`, by a pivot walk.
///
/// Each pivot colours the later survivors and keeps the larger class (ties
/// keep "in A"). The pivots carrying the majority colour, plus the final
/// pivot, form `I`, so `|I| >= floor(log2(m) / 2)`. Colour "in A" makes the
/// restriction a square witness, the other colour a ladder.
pub fn ramsey_upgrade(tri: &TriangularWitness, a: &DenseSet, model: &GroupModel) -> Result<UpgradeResult> {
    if !verify_triangular(tri, a, model)? {
        return Err(Error::InvalidInput("triangular witness does not verify".into()));
    }
    let color = |i: usize, j: usize| model.op(tri.b[i], tri.c[j]).is_some_and(|p| a.contains(p));

    let mut alive: Vec<usize> = (0..tri.len()).collect();
    let mut pivots: Vec<(usize, Option<bool>)> = Vec::new();
    while let Some((&p, rest)) = alive.split_first() {
        if rest.is_empty() {
            pivots.push((p, None));
            break;
        }
        let (inside, outside): (Vec<usize>, Vec<usize>) = rest.iter().partition(|&&q| color(q, p));
        let keep_in = inside.len() >= outside.len();
        pivots.push((p, Some(keep_in)));
        alive = if keep_in { inside } else { outside };
    }

    let ins = pivots.iter().filter(|(_, c)| *c == Some(true)).count();
    let outs = pivots.iter().filter(|(_, c)| *c == Some(false)).count();
    let majority = ins >= outs;
    let indices: Vec<usize> = pivots.iter().filter(|(_, c)| c.is_none_or(|c| c == majority)).map(|&(p, _)| p).collect();
    let b = indices.iter().map(|&i| tri.b[i]).collect();
    let c = indices.iter().map(|&i| tri.c[i]).collect();
    let upgraded =
        if majority { Upgraded::Square(SquareWitness { b, c }) } else { Upgraded::Ladder(LadderCertificate { b, c }) };
    Ok(UpgradeResult { indices, upgraded })
}
