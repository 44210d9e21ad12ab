//! Single-machine scheduling of coupled tasks whose nesting is restricted by
//! a compatibility graph.
//!
//! Each task runs a sub-task of length `a`, waits exactly `L`, then runs a
//! sub-task of length `b`. A sub-task may execute inside another task's gap
//! only when the two tasks are adjacent in the graph. With `L = a + b` an
//! optimal schedule corresponds to a partition of the graph into
//! vertex-disjoint paths, so the solvers here work on path partitions and
//! [`schedule::build_schedule`] turns a partition into start times.
//!
//! ```
//! use coupled_sched::{parse_instance, solve, SolveOptions, SolverId};
//!
//! let inst = parse_instance("4 2 1 3\n0 1\n1 2\n2 3\n").unwrap();
//! let report = solve(&inst, SolverId::Combined, &SolveOptions::default()).unwrap();
//! assert_eq!(report.cost, 15);
//! ```

pub mod generate;
pub mod graph;
pub mod instance;
pub mod matching;
pub mod partition;
pub mod pathcover;
pub mod schedule;
pub mod solvers;
pub mod validate;

pub use generate::{generate, generate_graph, GenError, GenKind, GenSpec, Sampler};
pub use graph::{Graph, GraphError};
pub use instance::{classify_regime, graph_features, parse_instance, GraphFeatures, Instance, ParseError, Regime, TaskParams};
pub use matching::{brute_force_matching, max_matching, partition_from_matching, LimitExceeded, Matching};
pub use partition::{CoverPartition, Partition, PathPartition};
pub use pathcover::{brute_force_min_dpc, greedy_dpc, tree_min_dpc, DpcResult};
pub use schedule::{build_schedule, partition_cost, Schedule};
pub use solvers::{solve, SolveError, SolveOptions, SolveReport, SolverId};
pub use validate::{validate_schedule, Violation};
