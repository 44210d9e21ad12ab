//! End-to-end strategies: each turns an instance into a partition, lays it
//! out with [`build_schedule`] and reports the resulting makespan.
//!
//! | solver       | regime      | idea                                          |
//! |--------------|-------------|-----------------------------------------------|
//! | `seq`        | any         | every task alone                              |
//! | `match`      | isomorphic  | maximum matching, pairs then single tasks     |
//! | `dpc-tree`   | isomorphic  | exact minimum path cover of a forest          |
//! | `dpc-greedy` | isomorphic  | greedy path cover                             |
//! | `combined`   | isomorphic  | cheaper of a path cover and `match`           |
//! | `exact`      | isomorphic  | optimum over all path partitions              |
//! | `shortgap`   | short gap   | maximum matching (optimal when `L < a + b`)   |
//! | `pi2-exact`  | symmetric   | optimum over triangle and path covers         |
//! | `pi2-heur`   | symmetric   | greedy triangles, then matching               |

mod bounds;
mod brute;
mod exact;
mod report;

use std::time::Instant;

pub use bounds::{
    bounds, combined_bound_sweep, cmp_with_worst_combined, crossover_side, dpc_bound, matching_bound,
    worst_combined_approx, BoundTable, BoundsError, Rational,
};
pub use brute::{solve_schedule_brute, BruteError, BruteSchedule, SCHEDULE_BRUTE_LIMIT};
pub use exact::{has_hamiltonian_path, MAX_SUBSET_VERTICES};
pub use report::{compute_cover_stats, compute_stats, PartitionStats, SolveReport, SolverId, UnknownSolver};

use crate::graph::Graph;
use crate::instance::{Instance, Regime};
use crate::matching::{max_matching, partition_from_matching, LimitExceeded};
use crate::partition::{CoverPartition, PathPartition};
use crate::pathcover::{greedy_dpc, tree_min_dpc};
use crate::schedule::{build_schedule, partition_cost, ScheduleError};

pub const DEFAULT_EXACT_LIMIT: usize = 10;
pub const DEFAULT_PI2_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("solver {solver} does not handle the {regime} regime")]
    RegimeMismatch { solver: SolverId, regime: Regime },
    #[error("oracle limit exceeded: {0}")]
    OracleLimit(#[from] LimitExceeded),
    #[error("solver {0} needs a forest")]
    NotAForest(SolverId),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub exact_limit: usize,
    pub pi2_limit: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            exact_limit: DEFAULT_EXACT_LIMIT,
            pi2_limit: DEFAULT_PI2_LIMIT,
        }
    }
}

/// Which path cover the `dpc` strategy uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DpcAlgorithm {
    TreeExact,
    Greedy,
}

fn require(instance: &Instance, solver: SolverId, allowed: &[Regime]) -> Result<(), SolveError> {
    let regime = instance.regime();
    if allowed.contains(&regime) {
        Ok(())
    } else {
        Err(SolveError::RegimeMismatch { solver, regime })
    }
}

fn finish(
    solver: SolverId,
    instance: &Instance,
    partition: CoverPartition,
    started: Instant,
    optimal: bool,
) -> Result<SolveReport, SolveError> {
    let cost = partition_cost(&partition, instance)?;
    let schedule = build_schedule(&partition, instance)?;
    debug_assert_eq!(schedule.makespan(), cost);
    Ok(SolveReport {
        solver,
        via: None,
        stats: compute_cover_stats(&partition),
        partition,
        cost,
        schedule,
        elapsed: started.elapsed(),
        optimal,
        oracle_cost: None,
    })
}

/// Every task on its own: `n (a + L + b)`, which is `2n(a+b)` when the gap
/// equals `a + b`.
pub fn solve_sequential(instance: &Instance) -> Result<SolveReport, SolveError> {
    let t = Instant::now();
    require(
        instance,
        SolverId::Sequential,
        &[Regime::Isomorphic, Regime::Symmetric, Regime::ShortGap],
    )?;
    let p = PathPartition::singletons(instance.n());
    finish(SolverId::Sequential, instance, p.into(), t, false)
}

/// Pairs from a maximum matching, every other task alone.
pub fn solve_matching(instance: &Instance) -> Result<SolveReport, SolveError> {
    let t = Instant::now();
    require(instance, SolverId::Matching, &[Regime::Isomorphic])?;
    let m = max_matching(&instance.graph);
    let p = partition_from_matching(&instance.graph, &m);
    finish(SolverId::Matching, instance, p.into(), t, false)
}

/// A path cover read directly as a schedule partition.
pub fn solve_dpc(instance: &Instance, algorithm: DpcAlgorithm) -> Result<SolveReport, SolveError> {
    let t = Instant::now();
    let id = match algorithm {
        DpcAlgorithm::TreeExact => SolverId::DpcTree,
        DpcAlgorithm::Greedy => SolverId::DpcGreedy,
    };
    require(instance, id, &[Regime::Isomorphic])?;
    let cover = match algorithm {
        DpcAlgorithm::TreeExact => tree_min_dpc(&instance.graph).map_err(|_| SolveError::NotAForest(id))?,
        DpcAlgorithm::Greedy => greedy_dpc(&instance.graph),
    };
    finish(id, instance, cover.partition.into(), t, false)
}

/// Runs the path-cover strategy (exact on forests, greedy otherwise) and
/// the matching strategy and keeps the cheaper; ties keep the matching.
pub fn solve_combined(instance: &Instance) -> Result<SolveReport, SolveError> {
    let t = Instant::now();
    require(instance, SolverId::Combined, &[Regime::Isomorphic])?;
    let algorithm = if instance.graph.is_forest() {
        DpcAlgorithm::TreeExact
    } else {
        DpcAlgorithm::Greedy
    };
    let by_cover = solve_dpc(instance, algorithm)?;
    let by_matching = solve_matching(instance)?;
    let mut best = if by_cover.cost < by_matching.cost {
        by_cover
    } else {
        by_matching
    };
    best.via = Some(best.solver);
    best.solver = SolverId::Combined;
    best.elapsed = t.elapsed();
    Ok(best)
}

fn check_limit(n: usize, limit: usize) -> Result<(), SolveError> {
    if n > limit || n > MAX_SUBSET_VERTICES {
        Err(LimitExceeded {
            n,
            limit: limit.min(MAX_SUBSET_VERTICES),
        }
        .into())
    } else {
        Ok(())
    }
}

/// Optimum over every vertex-disjoint path partition, for at most `limit`
/// tasks.
pub fn solve_exact(instance: &Instance, limit: usize) -> Result<SolveReport, SolveError> {
    let t = Instant::now();
    require(instance, SolverId::Exact, &[Regime::Isomorphic])?;
    check_limit(instance.n(), limit)?;
    let (_, p) = exact::optimal_path_partition(&instance.graph, instance.params);
    finish(SolverId::Exact, instance, p.into(), t, true)
}

/// Optimal schedule when `L < a + b`.
///
/// A gap then holds a single sub-task and every nesting is a mutual pair,
/// so a maximum matching is optimal when `a <= L`. When `a > L` no first
/// sub-task fits into a gap, and a second sub-task inside another task's
/// gap would force the two first sub-tasks to overlap, so tasks run one
/// after the other.
pub fn solve_shortgap(instance: &Instance) -> Result<SolveReport, SolveError> {
    let t = Instant::now();
    require(instance, SolverId::ShortGap, &[Regime::ShortGap])?;
    let p = if instance.params.a <= instance.params.gap {
        partition_from_matching(&instance.graph, &max_matching(&instance.graph))
    } else {
        PathPartition::singletons(instance.n())
    };
    finish(SolverId::ShortGap, instance, p.into(), t, true)
}

/// Optimum over covers by triangles (no idle time) and paths when
/// `a = b` and `L = 2a`, for at most `limit` tasks.
pub fn solve_pi2_exact(instance: &Instance, limit: usize) -> Result<SolveReport, SolveError> {
    let t = Instant::now();
    require(instance, SolverId::Pi2Exact, &[Regime::Symmetric])?;
    check_limit(instance.n(), limit)?;
    let sol = exact::optimal_partition(&instance.graph, instance.params, true);
    finish(SolverId::Pi2Exact, instance, sol.cover, t, true)
}

/// Triangles taken greedily, lowest vertex ids first, in ascending order.
pub fn greedy_triangle_packing(graph: &Graph) -> Vec<[usize; 3]> {
    let n = graph.n();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    for u in 0..n {
        if used[u] {
            continue;
        }
        let found = graph
            .neighbors(u)
            .iter()
            .filter(|&&v| v > u && !used[v])
            .find_map(|&v| {
                graph
                    .neighbors(v)
                    .iter()
                    .find(|&&w| w > v && !used[w] && graph.has_edge(u, w))
                    .map(|&w| [u, v, w])
            });
        if let Some(t) = found {
            for v in t {
                used[v] = true;
            }
            out.push(t);
        }
    }
    out
}

/// Greedy triangle packing, then a maximum matching of what is left.
pub fn solve_pi2_heuristic(instance: &Instance) -> Result<SolveReport, SolveError> {
    let t = Instant::now();
    require(instance, SolverId::Pi2Heuristic, &[Regime::Symmetric])?;
    let g = &instance.graph;
    let triangles = greedy_triangle_packing(g);
    let mut covered = vec![false; g.n()];
    for v in triangles.iter().flatten() {
        covered[*v] = true;
    }
    let rest: Vec<usize> = (0..g.n()).filter(|&v| !covered[v]).collect();
    let (sub, back) = g.induced(&rest);
    let sub_paths = partition_from_matching(&sub, &max_matching(&sub));
    let paths = PathPartition::new(
        sub_paths
            .paths
            .into_iter()
            .map(|p| p.into_iter().map(|v| back[v]).collect())
            .collect(),
    );
    finish(SolverId::Pi2Heuristic, instance, CoverPartition::new(triangles, paths), t, false)
}

/// Dispatches to the named solver.
pub fn solve(instance: &Instance, solver: SolverId, options: &SolveOptions) -> Result<SolveReport, SolveError> {
    match solver {
        SolverId::Sequential => solve_sequential(instance),
        SolverId::Matching => solve_matching(instance),
        SolverId::DpcTree => solve_dpc(instance, DpcAlgorithm::TreeExact),
        SolverId::DpcGreedy => solve_dpc(instance, DpcAlgorithm::Greedy),
        SolverId::Combined => solve_combined(instance),
        SolverId::Exact => solve_exact(instance, options.exact_limit),
        SolverId::ShortGap => solve_shortgap(instance),
        SolverId::Pi2Exact => solve_pi2_exact(instance, options.pi2_limit),
        SolverId::Pi2Heuristic => solve_pi2_heuristic(instance),
    }
}

/// The optimal-cost oracle matching an instance's regime, if any applies.
pub fn oracle_for(instance: &Instance) -> Option<SolverId> {
    match instance.regime() {
        Regime::Isomorphic => Some(SolverId::Exact),
        Regime::Symmetric => Some(SolverId::Pi2Exact),
        Regime::ShortGap => Some(SolverId::ShortGap),
        Regime::Unsupported => None,
    }
}
