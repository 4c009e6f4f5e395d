//! The bipartite relation `b·c ∈ A` over the operand domain, with the
//! neighbourhood queries every search kernel uses.

use crate::bitset::Bitset;
use crate::error::Result;
use crate::model::GroupModel;
use crate::set::DenseSet;

pub(crate) struct ProductGraph<'a> {
    set: &'a DenseSet,
    model: &'a GroupModel,
    operands: usize,
    members: Vec<usize>,
    inverse: Vec<usize>,
}

/// Pools at or below this size are scanned member by member.
const SMALL_POOL: usize = 64;

impl<'a> ProductGraph<'a> {
    pub fn new(set: &'a DenseSet, model: &'a GroupModel) -> Result<Self> {
        set.check_model(model)?;
        let inverse = match model {
            GroupModel::Cayley(g) => {
                let e = g.identity();
                (0..g.order()).map(|x| (0..g.order()).find(|&y| g.mul(x, y) == e).unwrap()).collect()
            }
            GroupModel::ZWindow { .. } => Vec::new(),
        };
        Ok(ProductGraph { set, model, operands: model.operands(), members: set.members().collect(), inverse })
    }

    pub fn operands(&self) -> usize {
        self.operands
    }

    #[inline]
    pub fn holds(&self, b: usize, c: usize) -> bool {
        self.model.op(b, c).is_some_and(|p| self.set.contains(p))
    }

    pub fn scratch(&self) -> Bitset {
        Bitset::new(self.operands)
    }

    /// `out = {c : b·c ∈ A}` over the operand domain.
    pub fn c_nbrs_into(&self, b: usize, out: &mut Bitset) {
        match self.model {
            GroupModel::ZWindow { .. } => self.set.bits().shr_into(b, out),
            GroupModel::Cayley(_) => {
                *out = Bitset::from_indices(self.operands, self.members.iter().map(|&a| self.c_for(b, a).unwrap()));
            }
        }
    }

    /// `out = {b : b·c ∈ A}` over the operand domain.
    pub fn b_nbrs_into(&self, c: usize, out: &mut Bitset) {
        match self.model {
            GroupModel::ZWindow { .. } => self.set.bits().shr_into(c, out),
            GroupModel::Cayley(_) => {
                *out = Bitset::from_indices(self.operands, self.members.iter().map(|&a| self.b_for(a, c).unwrap()));
            }
        }
    }

    pub fn c_nbrs(&self, b: usize) -> Bitset {
        let mut out = self.scratch();
        self.c_nbrs_into(b, &mut out);
        out
    }

    pub fn b_nbrs(&self, c: usize) -> Bitset {
        let mut out = self.scratch();
        self.b_nbrs_into(c, &mut out);
        out
    }

    /// The operand `b` with `b·c = a`, if any.
    #[inline]
    pub fn b_for(&self, a: usize, c: usize) -> Option<usize> {
        match self.model {
            GroupModel::ZWindow { .. } => a.checked_sub(c).filter(|&b| b < self.operands),
            GroupModel::Cayley(g) => Some(g.mul(a, self.inverse[c])),
        }
    }

    /// The operand `c` with `b·c = a`, if any.
    #[inline]
    pub fn c_for(&self, b: usize, a: usize) -> Option<usize> {
        match self.model {
            GroupModel::ZWindow { .. } => a.checked_sub(b).filter(|&c| c < self.operands),
            GroupModel::Cayley(g) => Some(g.mul(self.inverse[b], a)),
        }
    }

    fn sparse_set(&self) -> bool {
        self.members.len() * 16 <= self.operands
    }

    /// `|{c ∈ pool : b·c ∈ A}|`
    pub fn b_overlap(&self, b: usize, pool: &Bitset, pool_count: usize, scratch: &mut Bitset) -> usize {
        if pool_count <= SMALL_POOL {
            pool.iter().filter(|&c| self.holds(b, c)).count()
        } else if self.sparse_set() {
            self.members.iter().filter_map(|&a| self.c_for(b, a)).filter(|&c| pool.contains(c)).count()
        } else {
            self.c_nbrs_into(b, scratch);
            scratch.intersection_count(pool)
        }
    }

    /// `|{b ∈ pool : b·c ∈ A}|`
    pub fn c_overlap(&self, c: usize, pool: &Bitset, pool_count: usize, scratch: &mut Bitset) -> usize {
        if pool_count <= SMALL_POOL {
            pool.iter().filter(|&b| self.holds(b, c)).count()
        } else if self.sparse_set() {
            self.members.iter().filter_map(|&a| self.b_for(a, c)).filter(|&b| pool.contains(b)).count()
        } else {
            self.b_nbrs_into(c, scratch);
            scratch.intersection_count(pool)
        }
    }

    /// Ascending operands `b >= from` accepted by `accept` with
    /// `|{c ∈ pool : b·c ∈ A}| >= min_overlap`.
    pub fn b_candidates(
        &self,
        pool: &Bitset,
        pool_count: usize,
        min_overlap: usize,
        from: usize,
        accept: impl Fn(usize) -> bool,
    ) -> Vec<usize> {
        let range = self.operands.saturating_sub(from);
        if min_overlap == 0 {
            return (from..self.operands).filter(|&b| accept(b)).collect();
        }
        if pool_count < min_overlap || range == 0 {
            return Vec::new();
        }
        let pair_cost = pool_count.saturating_mul(self.members.len());
        if pair_cost <= range.saturating_mul(4) {
            let mut hits: Vec<usize> = Vec::with_capacity(pair_cost);
            for c in pool.iter() {
                for &a in &self.members {
                    if let Some(b) = self.b_for(a, c) {
                        if b >= from {
                            hits.push(b);
                        }
                    }
                }
            }
            hits.sort_unstable();
            let mut out = Vec::new();
            let mut i = 0;
            while i < hits.len() {
                let b = hits[i];
                let mut j = i;
                while j < hits.len() && hits[j] == b {
                    j += 1;
                }
                if j - i >= min_overlap && accept(b) {
                    out.push(b);
                }
                i = j;
            }
            return out;
        }
        let mut scratch = self.scratch();
        (from..self.operands)
            .filter(|&b| accept(b) && self.b_overlap(b, pool, pool_count, &mut scratch) >= min_overlap)
            .collect()
    }
}
