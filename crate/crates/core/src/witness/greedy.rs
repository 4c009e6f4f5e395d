use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use super::{Scorer, SquareWitness};
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::model::GroupModel;
use crate::product::ProductGraph;
use crate::set::DenseSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GreedyOutcome {
    Square(SquareWitness),
    /// A pool ran dry. Says nothing about whether a witness exists.
    Stuck {
        b: Vec<usize>,
        c: Vec<usize>,
    },
}

/// Alternately adds `b_1, c_1, b_2, c_2, ...` until both sides hold `k`.
///
/// The `b` pool is every operand adjacent to all chosen `c`s, the `c` pool
/// every operand adjacent to all chosen `b`s; chosen elements leave their
/// pool. The scorer ranks each pool member by how much of the opposite pool
/// it would keep.
pub fn greedy_back_and_forth(a: &DenseSet, model: &GroupModel, k: usize, scorer: Scorer) -> Result<GreedyOutcome> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let g = ProductGraph::new(a, model)?;
    let n = g.operands();
    let mut rng = match scorer {
        Scorer::Random(seed) => Some(SplitMix64::seed_from_u64(seed)),
        _ => None,
    };
    let mut bpool = Bitset::full(n);
    let mut cpool = Bitset::full(n);
    let mut bs = Vec::with_capacity(k);
    let mut cs = Vec::with_capacity(k);
    let mut scratch = g.scratch();
    while cs.len() < k {
        let Some(b) = pick(&g, &bpool, &cpool, scorer, rng.as_mut(), &mut scratch, Side::B) else {
            return Ok(GreedyOutcome::Stuck { b: bs, c: cs });
        };
        bs.push(b);
        bpool.remove(b);
        g.c_nbrs_into(b, &mut scratch);
        cpool.intersect_with(&scratch);

        let Some(c) = pick(&g, &cpool, &bpool, scorer, rng.as_mut(), &mut scratch, Side::C) else {
            return Ok(GreedyOutcome::Stuck { b: bs, c: cs });
        };
        cs.push(c);
        cpool.remove(c);
        g.b_nbrs_into(c, &mut scratch);
        bpool.intersect_with(&scratch);
    }
    Ok(GreedyOutcome::Square(SquareWitness { b: bs, c: cs }))
}

#[derive(Clone, Copy)]
enum Side {
    B,
    C,
}

fn pick(
    g: &ProductGraph,
    pool: &Bitset,
    other: &Bitset,
    scorer: Scorer,
    rng: Option<&mut SplitMix64>,
    scratch: &mut Bitset,
    side: Side,
) -> Option<usize> {
    let len = pool.count();
    if len == 0 {
        return None;
    }
    if let (Scorer::Random(_), Some(rng)) = (scorer, rng) {
        let idx = (rng.next_u64() % len as u64) as usize;
        return pool.iter().nth(idx);
    }
    let other_count = other.count();
    let mut best: Option<(u128, usize)> = None;
    for x in pool.iter() {
        let kept = match side {
            Side::B => g.b_overlap(x, other, other_count, scratch),
            Side::C => g.c_overlap(x, other, other_count, scratch),
        } as u128;
        let score = match scorer {
            Scorer::DensityWeighted => {
                let deg = match side {
                    Side::B => g.c_nbrs(x).count(),
                    Side::C => g.b_nbrs(x).count(),
                };
                kept * deg as u128
            }
            _ => kept,
        };
        if best.is_none_or(|(s, _)| score > s) {
            best = Some((score, x));
        }
    }
    best.map(|(_, x)| x)
}
