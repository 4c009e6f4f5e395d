//! Deterministic parallel first-success search over ordered top-level branches.
//!
//! Branches are evaluated in chunks of a fixed size schedule (independent of
//! the thread count); within a chunk they run in parallel, and results are
//! then replayed in branch order against the node budget exactly as a
//! sequential search would consume it. Outcome and node count are therefore
//! identical for any number of worker threads.

use rayon::prelude::*;

/// Node limit; `None` is unlimited.
pub type Budget = Option<u64>;

const MAX_CHUNK: usize = 64;

/// Node counter with a hard cap.
pub(crate) struct Counter {
    used: u64,
    cap: u64,
}

impl Counter {
    pub fn new(cap: u64) -> Self {
        Counter { used: 0, cap }
    }

    /// Counts one node; returns `false` once the cap is exceeded.
    #[inline]
    pub fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.cap
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

pub(crate) enum Step<T> {
    Found(T),
    Failed,
    Exhausted,
}

pub(crate) enum Outcome<T> {
    Found(T),
    /// The whole space was searched.
    NotFound,
    /// The budget ran out first.
    Exhausted,
}

/// Runs `branch(item, counter)` over `items` in order and returns the first
/// success, with the total number of nodes a sequential scan would spend.
pub(crate) fn first_success<T, F>(items: &[usize], budget: Budget, branch: F) -> (Outcome<T>, u64)
where
    T: Send,
    F: Fn(usize, &mut Counter) -> Step<T> + Sync,
{
    let total = budget.unwrap_or(u64::MAX);
    let mut remaining = total;
    let mut start = 0;
    let mut chunk = 1;
    while start < items.len() {
        let end = (start + chunk).min(items.len());
        let cap = remaining;
        let runs: Vec<(Step<T>, u64)> = items[start..end]
            .par_iter()
            .map(|&item| {
                let mut counter = Counter::new(cap);
                let step = branch(item, &mut counter);
                (step, counter.used())
            })
            .collect();
        for (step, used) in runs {
            if matches!(step, Step::Exhausted) || used > remaining {
                return (Outcome::Exhausted, total);
            }
            remaining -= used;
            if let Step::Found(t) = step {
                return (Outcome::Found(t), total - remaining);
            }
        }
        start = end;
        chunk = (chunk * 2).min(MAX_CHUNK);
    }
    (Outcome::NotFound, total - remaining)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Branch `i` costs `i + 1` nodes and succeeds iff `i == target`.
    fn run(items: &[usize], budget: Budget, target: usize) -> (Option<usize>, bool, u64) {
        let (out, nodes) = first_success(items, budget, |i, ctr| {
            for _ in 0..=i {
                if !ctr.tick() {
                    return Step::Exhausted;
                }
            }
            if i == target {
                Step::Found(i)
            } else {
                Step::Failed
            }
        });
        match out {
            Outcome::Found(t) => (Some(t), false, nodes),
            Outcome::NotFound => (None, false, nodes),
            Outcome::Exhausted => (None, true, nodes),
        }
    }

    #[test]
    fn matches_sequential_accounting() {
        let items: Vec<usize> = (0..100).collect();
        // Nodes up to and including branch 10: 1 + 2 + ... + 11 = 66.
        assert_eq!(run(&items, None, 10), (Some(10), false, 66));
        assert_eq!(run(&items, Some(66), 10), (Some(10), false, 66));
        assert_eq!(run(&items, Some(65), 10), (None, true, 65));
        assert_eq!(run(&items, None, 1000), (None, false, 5050));
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let items: Vec<usize> = (0..300).collect();
        let pools: Vec<_> =
            [1, 8].iter().map(|&n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap()).collect();
        for budget in [None, Some(100), Some(5000), Some(20_000)] {
            for target in [0, 7, 150, 999] {
                let a = pools[0].install(|| run(&items, budget, target));
                let b = pools[1].install(|| run(&items, budget, target));
                assert_eq!(a, b);
            }
        }
    }
}
