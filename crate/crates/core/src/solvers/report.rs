use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use num_rational::Ratio;

use crate::partition::{CoverPartition, PathPartition};
use crate::schedule::Schedule;

/// Every strategy the crate offers, named as on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolverId {
    Sequential,
    Matching,
    DpcTree,
    DpcGreedy,
    Combined,
    Exact,
    ShortGap,
    Pi2Exact,
    Pi2Heuristic,
}

impl SolverId {
    pub const ALL: [SolverId; 9] = [
        SolverId::Sequential,
        SolverId::Matching,
        SolverId::DpcTree,
        SolverId::DpcGreedy,
        SolverId::Combined,
        SolverId::Exact,
        SolverId::ShortGap,
        SolverId::Pi2Exact,
        SolverId::Pi2Heuristic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SolverId::Sequential => "seq",
            SolverId::Matching => "match",
            SolverId::DpcTree => "dpc-tree",
            SolverId::DpcGreedy => "dpc-greedy",
            SolverId::Combined => "combined",
            SolverId::Exact => "exact",
            SolverId::ShortGap => "shortgap",
            SolverId::Pi2Exact => "pi2-exact",
            SolverId::Pi2Heuristic => "pi2-heur",
        }
    }
}

impl fmt::Display for SolverId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown solver `{0}`")]
pub struct UnknownSolver(pub String);

impl FromStr for SolverId {
    type Err = UnknownSolver;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SolverId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| UnknownSolver(s.to_string()))
    }
}

/// Shape statistics of a partition.
///
/// `n1` vertices are alone, `n2` lie on one-edge paths (`alpha2 = n2 / 2`
/// of them) and `n3` lie on the `alpha3` longer paths. `gamma` is the
/// matching size guaranteed by such a partition in the worst case,
/// `alpha2 + floor(n3 / 2) - alpha3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PartitionStats {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub alpha2: usize,
    pub alpha3: usize,
    pub gamma: usize,
    pub triangles: usize,
}

pub fn compute_stats(partition: &PathPartition) -> PartitionStats {
    let mut s = PartitionStats::default();
    for p in &partition.paths {
        match p.len() {
            0 => {}
            1 => s.n1 += 1,
            2 => s.n2 += 2,
            k => {
                s.n3 += k;
                s.alpha3 += 1;
            }
        }
    }
    s.alpha2 = s.n2 / 2;
    s.gamma = (s.alpha2 + s.n3 / 2).saturating_sub(s.alpha3);
    s
}

pub fn compute_cover_stats(cover: &CoverPartition) -> PartitionStats {
    PartitionStats {
        triangles: cover.triangles.len(),
        ..compute_stats(&cover.paths)
    }
}

/// Outcome of one solver run on one instance.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solver: SolverId,
    /// For the combined strategy, the sub-strategy whose result was kept.
    pub via: Option<SolverId>,
    pub partition: CoverPartition,
    pub cost: u64,
    pub schedule: Schedule,
    pub elapsed: Duration,
    /// The solver's result is optimal by construction.
    pub optimal: bool,
    pub oracle_cost: Option<u64>,
    pub stats: PartitionStats,
}

impl SolveReport {
    pub fn with_oracle(mut self, oracle_cost: u64) -> Self {
        self.oracle_cost = Some(oracle_cost);
        self
    }

    /// `cost / oracle_cost`, reduced; `1` when both are zero.
    pub fn ratio(&self) -> Option<Ratio<u64>> {
        self.oracle_cost.map(|opt| {
            if opt == 0 {
                Ratio::from_integer(1)
            } else {
                Ratio::new(self.cost, opt)
            }
        })
    }

    /// `(t_seq, t_idle)` of the schedule.
    pub fn decomposition(&self) -> (u64, u64) {
        self.schedule.decomposition()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_examples() {
        let p = PathPartition::new(vec![vec![0, 1], vec![2], vec![3, 4, 5]]);
        let s = compute_stats(&p);
        assert_eq!(
            (s.n1, s.n2, s.n3, s.alpha2, s.alpha3, s.gamma),
            (1, 2, 3, 1, 1, 1)
        );
        let s = compute_stats(&PathPartition::singletons(4));
        assert_eq!((s.n1, s.n2, s.n3, s.gamma), (4, 0, 0, 0));
        let s = compute_stats(&PathPartition::new(vec![vec![0, 1, 2, 3]]));
        assert_eq!((s.n1, s.n2, s.n3, s.alpha3, s.gamma), (0, 0, 4, 1, 1));
    }

    #[test]
    fn solver_names_round_trip() {
        for id in SolverId::ALL {
            assert_eq!(id.name().parse::<SolverId>(), Ok(id));
        }
        assert!("fastest".parse::<SolverId>().is_err());
    }
}
