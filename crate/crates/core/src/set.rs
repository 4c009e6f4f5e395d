//! Dense subsets of a carrier and the generator expressions that build them.

use std::path::PathBuf;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::model::GroupModel;
use crate::rational::Rational;
use crate::setfile;

/// A subset of a model's carrier. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseSet {
    bits: Bitset,
    cardinality: usize,
}

impl DenseSet {
    pub fn from_bitset(bits: Bitset) -> Self {
        let cardinality = bits.count();
        DenseSet { bits, cardinality }
    }

    pub fn empty(universe: usize) -> Self {
        DenseSet::from_bitset(Bitset::new(universe))
    }

    pub fn full(universe: usize) -> Self {
        DenseSet::from_bitset(Bitset::full(universe))
    }

    /// Fails if any member is outside `0..universe`.
    pub fn from_members<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Result<Self> {
        let mut bits = Bitset::new(universe);
        for m in members {
            if m >= universe {
                return Err(Error::ElementOutOfRange { element: m, size: universe });
            }
            bits.insert(m);
        }
        Ok(DenseSet::from_bitset(bits))
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.cardinality
    }

    pub fn is_empty(&self) -> bool {
        self.cardinality == 0
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn bits(&self) -> &Bitset {
        &self.bits
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }

    pub(crate) fn check_model(&self, model: &GroupModel) -> Result<()> {
        if self.universe() != model.carrier_size() {
            return Err(Error::ModelMismatch { expected: model.carrier_size(), found: self.universe() });
        }
        Ok(())
    }
}

impl std::fmt::Debug for DenseSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DenseSet(|A|={}) ", self.cardinality)?;
        self.bits.fmt(f)
    }
}

/// Generator expression for a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSpec {
    /// `{x : x ≡ offset (mod modulus)}`
    Multiples {
        modulus: u64,
        offset: u64,
    },
    PowersOf2,
    /// Each element independently with probability `density`.
    Bernoulli {
        density: Rational,
        seed: u64,
    },
    /// `{x : ||x·theta|| < eps}` with `theta` an exact rational approximation.
    Bohr {
        theta: Rational,
        eps: Rational,
    },
    /// `{x : x >= t}`
    Threshold(u64),
    Explicit(Vec<usize>),
    File(PathBuf),
    Union(Box<SetSpec>, Box<SetSpec>),
    Intersect(Box<SetSpec>, Box<SetSpec>),
    /// `{x + k}` clipped to the carrier.
    Translate(Box<SetSpec>, i64),
    Complement(Box<SetSpec>),
}

/// Builds the set described by `spec` over `model`'s carrier.
///
/// Deterministic: Bernoulli sets draw one SplitMix64 output per carrier
/// element in index order and keep `x` iff `draw * q < p * 2^64` for
/// density `p/q`.
pub fn generate_set(model: &GroupModel, spec: &SetSpec) -> Result<DenseSet> {
    let n = model.carrier_size();
    let bits = generate_bits(n, spec)?;
    Ok(DenseSet::from_bitset(bits))
}

fn generate_bits(n: usize, spec: &SetSpec) -> Result<Bitset> {
    Ok(match spec {
        SetSpec::Multiples { modulus, offset } => {
            if *modulus == 0 {
                return Err(Error::SpecOutOfRange("multiples: modulus must be >= 1".into()));
            }
            let q = *modulus as usize;
            let r = (*offset % *modulus) as usize;
            Bitset::from_indices(n, (r..n).step_by(q))
        }
        SetSpec::PowersOf2 => Bitset::from_indices(n, (0..usize::BITS).map(|e| 1usize << e).take_while(|&p| p < n)),
        SetSpec::Bernoulli { density, seed } => {
            if *density < Rational::from_integer(0) || *density > Rational::from_integer(1) {
                return Err(Error::SpecOutOfRange(format!("bernoulli: delta must lie in [0,1], got {density}")));
            }
            let p = *density.numer() as u128;
            let q = *density.denom() as u128;
            let mut rng = SplitMix64::seed_from_u64(*seed);
            let mut bits = Bitset::new(n);
            for x in 0..n {
                let draw = rng.next_u64() as u128;
                // draw/2^64 < p/q; both sides fit in u128 since p <= q < 2^63.
                if draw * q < p << 64 {
                    bits.insert(x);
                }
            }
            bits
        }
        SetSpec::Bohr { theta, eps } => {
            let zero = Rational::from_integer(0);
            if *eps <= zero || *eps >= Rational::from_integer(1) {
                return Err(Error::SpecOutOfRange(format!("bohr: eps must lie in (0,1), got {eps}")));
            }
            let tp = *theta.numer() as i128;
            let tq = *theta.denom() as i128;
            let (ep, eq) = (*eps.numer() as i128, *eps.denom() as i128);
            let mut bits = Bitset::new(n);
            for x in 0..n {
                let r = (x as i128 * tp).rem_euclid(tq);
                let dist = r.min(tq - r);
                // dist/tq < ep/eq
                if dist * eq < ep * tq {
                    bits.insert(x);
                }
            }
            bits
        }
        SetSpec::Threshold(t) => {
            let t = (*t).min(n as u64) as usize;
            Bitset::from_indices(n, t..n)
        }
        SetSpec::Explicit(members) => {
            let mut bits = Bitset::new(n);
            for &m in members {
                if m >= n {
                    return Err(Error::ElementOutOfRange { element: m, size: n });
                }
                bits.insert(m);
            }
            bits
        }
        SetSpec::File(path) => setfile::read_set_file(path, n)?.bits().clone(),
        SetSpec::Union(a, b) => {
            let mut s = generate_bits(n, a)?;
            s.union_with(&generate_bits(n, b)?);
            s
        }
        SetSpec::Intersect(a, b) => {
            let mut s = generate_bits(n, a)?;
            s.intersect_with(&generate_bits(n, b)?);
            s
        }
        SetSpec::Translate(inner, k) => {
            let s = generate_bits(n, inner)?;
            let mut out = Bitset::new(n);
            let shift = k.unsigned_abs();
            if shift < n as u64 {
                if *k >= 0 {
                    s.shl_into(shift as usize, &mut out);
                } else {
                    s.shr_into(shift as usize, &mut out);
                }
            }
            out
        }
        SetSpec::Complement(inner) => generate_bits(n, inner)?.complement(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `{b : b·g ∈ A}`
    Right,
    /// `{c : g·c ∈ A}`
    Left,
}

/// The translate-quotient of `a` by `g`; undefined products are excluded.
pub fn quotient(a: &DenseSet, model: &GroupModel, g: usize, side: Side) -> Result<DenseSet> {
    a.check_model(model)?;
    let n = model.carrier_size();
    if g >= n {
        return Err(Error::ElementOutOfRange { element: g, size: n });
    }
    let mut out = Bitset::new(n);
    match model {
        GroupModel::ZWindow { .. } => a.bits().shr_into(g, &mut out),
        GroupModel::Cayley(_) => {
            for x in 0..n {
                let prod = match side {
                    Side::Right => model.op(x, g),
                    Side::Left => model.op(g, x),
                };
                if prod.is_some_and(|p| a.contains(p)) {
                    out.insert(x);
                }
            }
        }
    }
    Ok(DenseSet::from_bitset(out))
}

/// Left translate `g·A` (in a window: `A + g`, clipped).
pub fn left_translate(a: &DenseSet, model: &GroupModel, g: usize) -> Result<DenseSet> {
    a.check_model(model)?;
    let n = model.carrier_size();
    if g >= n {
        return Err(Error::ElementOutOfRange { element: g, size: n });
    }
    let mut out = Bitset::new(n);
    match model {
        GroupModel::ZWindow { .. } => a.bits().shl_into(g, &mut out),
        GroupModel::Cayley(grp) => {
            for x in a.members() {
                out.insert(grp.mul(g, x));
            }
        }
    }
    Ok(DenseSet::from_bitset(out))
}
