//! Exhaustive search over integer start times, independent of the
//! partition model. Only usable for a handful of tasks.

use crate::instance::{Instance, TaskParams};
use crate::schedule::{Interval, Schedule};

pub const SCHEDULE_BRUTE_LIMIT: usize = 5;

#[derive(Debug, Clone)]
pub struct BruteSchedule {
    pub makespan: u64,
    pub schedule: Schedule,
}

struct Search<'a> {
    inst: &'a Instance,
    p: TaskParams,
    horizon: u64,
    start: Vec<Option<u64>>,
    best: u64,
    best_start: Option<Vec<u64>>,
}

impl Search<'_> {
    fn busy(&self, s: u64) -> [Interval; 2] {
        let second = s + self.p.a + self.p.gap;
        [Interval::new(s, s + self.p.a), Interval::new(second, second + self.p.b)]
    }

    fn gap(&self, s: u64) -> (u64, u64) {
        (s + self.p.a, s + self.p.a + self.p.gap)
    }

    /// Whether task `t` at `s` is consistent with every placed task.
    fn fits(&self, t: usize, s: u64) -> bool {
        let mine = self.busy(s);
        let (lo, hi) = self.gap(s);
        for (j, sj) in self.start.iter().enumerate() {
            let Some(sj) = *sj else { continue };
            let theirs = self.busy(sj);
            if mine.iter().any(|x| theirs.iter().any(|y| x.overlaps(y))) {
                return false;
            }
            let (jlo, jhi) = self.gap(sj);
            let nested = mine.iter().any(|x| x.meets_open(jlo, jhi))
                || theirs.iter().any(|y| y.meets_open(lo, hi));
            if nested && !self.inst.graph.has_edge(t, j) {
                return false;
            }
        }
        true
    }

    /// Lower bound on the makespan of any completion in which the
    /// `remaining` unplaced tasks all start at or after `from`: their work
    /// and the placed work after `from` are disjoint. Nondecreasing in
    /// `from`.
    fn lower_bound(&self, from: u64, remaining: usize) -> u64 {
        let mut after = 0;
        let mut end = 0;
        for s in self.start.iter().flatten() {
            for iv in self.busy(*s) {
                end = end.max(iv.end);
                after += iv.end.saturating_sub(iv.start.max(from));
            }
        }
        if remaining == 0 {
            end
        } else {
            end.max(from + after + remaining as u64 * self.p.work())
                .max(from + self.p.span())
        }
    }

    fn go(&mut self, last: Option<u64>, remaining: usize) {
        if remaining == 0 {
            let c = self.lower_bound(0, 0);
            if c < self.best {
                self.best = c;
                self.best_start = Some(self.start.iter().map(|s| s.unwrap()).collect());
            }
            return;
        }
        let from = last.map_or(0, |l| l + 1);
        let n = self.start.len();
        // Starts are placed in increasing order and the earliest one is 0.
        let to = if last.is_none() { 0 } else { self.horizon.saturating_sub(self.p.span()) };
        for s in from..=to {
            if self.lower_bound(s, remaining) >= self.best {
                break;
            }
            for t in 0..n {
                if self.start[t].is_none() && self.fits(t, s) {
                    self.start[t] = Some(s);
                    self.go(Some(s), remaining - 1);
                    self.start[t] = None;
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BruteError {
    #[error("schedule search limited to {limit} tasks, got {n}")]
    Limit { n: usize, limit: usize },
    #[error("no valid schedule within horizon {0}")]
    Horizon(u64),
}

/// Minimum makespan over all valid integer schedules finishing by
/// `horizon` (default `2n(a+b)`), checked against the same rules as
/// [`crate::validate::validate_schedule`].
pub fn solve_schedule_brute(instance: &Instance, horizon: Option<u64>) -> Result<BruteSchedule, BruteError> {
    let n = instance.n();
    if n > SCHEDULE_BRUTE_LIMIT {
        return Err(BruteError::Limit {
            n,
            limit: SCHEDULE_BRUTE_LIMIT,
        });
    }
    let p = instance.params;
    let horizon = horizon.unwrap_or(2 * n as u64 * p.work());
    if n == 0 {
        return Ok(BruteSchedule {
            makespan: 0,
            schedule: Schedule::from_starts(p, Vec::new()),
        });
    }
    let mut search = Search {
        inst: instance,
        p,
        horizon,
        start: vec![None; n],
        best: horizon + 1,
        best_start: None,
    };
    search.go(None, n);
    match search.best_start {
        Some(start) => Ok(BruteSchedule {
            makespan: search.best,
            schedule: Schedule::from_starts(p, start),
        }),
        None => Err(BruteError::Horizon(horizon)),
    }
}
