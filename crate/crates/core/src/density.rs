//! Windowed Banach density and the regular-point finder.
//!
//! [`find_regular_point`] walks an interval `[a, b)` greedily: from the
//! current point `x` it looks for the smallest `n <= N` whose block
//! `[x, x+n)` has density below `alpha/2`. If there is none, `x` is a good
//! point. Otherwise it jumps to `x + n`. Once fewer than `N` positions remain
//! the walk closes with a final block ending at `b`, and the cut points form
//! a [`PartitionCertificate`] bounding `|A ∩ [a,b)| / (b-a)` strictly below
//! `alpha/2 + N/(b-a)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::GroupModel;
use crate::rational::{self, Rational};
use crate::set::DenseSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub window: usize,
    pub best_start: usize,
    pub count: usize,
    #[serde(with = "rational::serde_pq")]
    pub density: Rational,
}

/// Largest `|A ∩ [m, m+n)| / n` over all starts `m`, with the smallest
/// maximising start.
pub fn banach_density(a: &DenseSet, model: &GroupModel, n: usize) -> Result<DensityReport> {
    sliding_extreme(a, model, n, |new, best| new > best)
}

/// Smallest `|A ∩ [m, m+n)| / n` over all starts.
pub fn lower_banach_density(a: &DenseSet, model: &GroupModel, n: usize) -> Result<DensityReport> {
    sliding_extreme(a, model, n, |new, best| new < best)
}

/// [`banach_density`] for each window length in `schedule`.
pub fn density_curve(a: &DenseSet, model: &GroupModel, schedule: &[usize]) -> Result<Vec<DensityReport>> {
    schedule.iter().map(|&n| banach_density(a, model, n)).collect()
}

fn sliding_extreme(
    a: &DenseSet,
    model: &GroupModel,
    n: usize,
    better: impl Fn(usize, usize) -> bool,
) -> Result<DensityReport> {
    if !model.is_window() {
        return Err(Error::UnsupportedModel);
    }
    a.check_model(model)?;
    let size = a.universe();
    if n == 0 || n > size {
        return Err(Error::WindowTooLarge { window: n, size });
    }
    let mut count = a.bits().count_range(0, n);
    let (mut best, mut best_start) = (count, 0);
    for m in 1..=size - n {
        count = count + a.contains(m + n - 1) as usize - a.contains(m - 1) as usize;
        if better(count, best) {
            best = count;
            best_start = m;
        }
    }
    Ok(DensityReport { window: n, best_start, count: best, density: Rational::new(best as i64, n as i64) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodPoint {
    pub x: usize,
    #[serde(with = "rational::serde_pq")]
    pub alpha: Rational,
    pub horizon: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCertificate {
    pub universe: usize,
    pub start: usize,
    pub end: usize,
    #[serde(with = "rational::serde_pq")]
    pub alpha: Rational,
    pub horizon: usize,
    /// `x_0 = start < x_1 < ... < x_K = end`
    pub cuts: Vec<usize>,
    /// `counts[k] = |A ∩ [x_k, x_{k+1})|`
    pub counts: Vec<usize>,
}

impl PartitionCertificate {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// The bound `alpha/2 + N/|I|` the interval density falls strictly below.
    pub fn bound(&self) -> Rational {
        let len = (self.end - self.start) as i64;
        self.alpha / 2 + Rational::new(self.horizon as i64, len)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegularPoint {
    Good(GoodPoint),
    Partition(PartitionCertificate),
}

/// `count < (alpha/2) * len`
#[inline]
fn sparse_block(count: usize, len: usize, alpha: &Rational) -> bool {
    rational::lt(2 * count as i128, len as i128, alpha)
}

fn check_alpha(alpha: &Rational) -> Result<()> {
    if *alpha <= Rational::from_integer(0) || *alpha > Rational::from_integer(1) {
        return Err(Error::BadAlpha(rational::to_pq(alpha)));
    }
    Ok(())
}

pub fn find_regular_point(
    a: &DenseSet,
    start: usize,
    end: usize,
    alpha: Rational,
    horizon: usize,
) -> Result<RegularPoint> {
    check_alpha(&alpha)?;
    let size = a.universe();
    if start >= end || end > size || horizon == 0 || horizon > end - start {
        return Err(Error::BadInterval { start, end, horizon, size });
    }
    let mut cuts = vec![start];
    let mut counts = Vec::new();
    let mut x = start;
    loop {
        if end - x < horizon {
            if x < end {
                counts.push(a.bits().count_range(x, end));
                cuts.push(end);
            }
            break;
        }
        let mut count = 0;
        let mut jump = None;
        for n in 1..=horizon {
            count += a.contains(x + n - 1) as usize;
            if sparse_block(count, n, &alpha) {
                jump = Some((n, count));
                break;
            }
        }
        match jump {
            None => return Ok(RegularPoint::Good(GoodPoint { x, alpha, horizon })),
            Some((n, count)) => {
                x += n;
                cuts.push(x);
                counts.push(count);
            }
        }
    }
    Ok(RegularPoint::Partition(PartitionCertificate { universe: size, start, end, alpha, horizon, cuts, counts }))
}

/// Recomputes every block count and inequality of `cert` against `a`.
///
/// Each block but the last must have length `<= N` and density below
/// `alpha/2`. The last block must have length `< N`, or satisfy the same
/// conditions as the others (the walk can land exactly on the end). The
/// total must satisfy `|A ∩ I| < (alpha/2)|I| + N`.
pub fn verify_density_certificate(cert: &PartitionCertificate, a: &DenseSet) -> Result<bool> {
    if cert.universe != a.universe() {
        return Err(Error::ModelMismatch { expected: cert.universe, found: a.universe() });
    }
    let (n, alpha) = (cert.horizon, &cert.alpha);
    if check_alpha(alpha).is_err()
        || n == 0
        || cert.start >= cert.end
        || cert.end > cert.universe
        || n > cert.end - cert.start
        || cert.cuts.len() < 2
        || cert.counts.len() != cert.cuts.len() - 1
        || cert.cuts[0] != cert.start
        || *cert.cuts.last().unwrap() != cert.end
        || cert.cuts.windows(2).any(|w| w[0] >= w[1])
    {
        return Ok(false);
    }
    let last = cert.counts.len() - 1;
    let mut total = 0usize;
    for (k, w) in cert.cuts.windows(2).enumerate() {
        let (lo, hi) = (w[0], w[1]);
        let len = hi - lo;
        let count = a.bits().count_range(lo, hi);
        if count != cert.counts[k] {
            return Ok(false);
        }
        total += count;
        let jump_block = len <= n && sparse_block(count, len, alpha);
        if !(jump_block || (k == last && len < n)) {
            return Ok(false);
        }
    }
    let interval = (cert.end - cert.start) as i128;
    let (p, q) = (*alpha.numer() as i128, *alpha.denom() as i128);
    // total / |I| < alpha/2 + N/|I|  <=>  2 q total < p |I| + 2 q N
    Ok(2 * q * (total as i128) < p * interval + 2 * q * (n as i128))
}

/// Checks `|A ∩ [x, x+n)| >= (alpha/2) n` for every `1 <= n <= N`.
pub fn verify_good_point(point: &GoodPoint, a: &DenseSet) -> bool {
    if check_alpha(&point.alpha).is_err() || point.horizon == 0 || point.x + point.horizon > a.universe() {
        return false;
    }
    let mut count = 0;
    (1..=point.horizon).all(|n| {
        count += a.contains(point.x + n - 1) as usize;
        !sparse_block(count, n, &point.alpha)
    })
}
