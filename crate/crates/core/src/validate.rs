//! Checks an arbitrary schedule against the coupled-task rules and the
//! compatibility graph.
//!
//! Three rules are enforced:
//! - `gap`: the second sub-task starts exactly `L` after the first ends;
//! - `overlap`: busy intervals of all sub-tasks are pairwise disjoint;
//! - `compat`: a sub-task of task `j` may only meet the open gap of task `i`
//!   when `{i, j}` is an edge.
//!
//! Busy intervals are half-open and gaps are open, so touching endpoints are
//! legal.

use std::fmt;

use crate::instance::Instance;
use crate::schedule::{Interval, Part, Schedule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Schedule durations differ from the instance's.
    Params,
    /// Schedule has a different number of tasks than the instance.
    TaskCount { expected: usize, found: usize },
    Gap {
        task: usize,
        expected: u64,
        found: u64,
    },
    Overlap {
        first: (usize, Part, Interval),
        second: (usize, Part, Interval),
    },
    Compat {
        host: usize,
        gap: (u64, u64),
        guest: usize,
        part: Part,
        interval: Interval,
    },
}

impl Violation {
    /// Short name used by the CLI and in test assertions.
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Params => "params",
            Violation::TaskCount { .. } => "tasks",
            Violation::Gap { .. } => "gap",
            Violation::Overlap { .. } => "overlap",
            Violation::Compat { .. } => "compat",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Params => write!(f, "params: schedule durations do not match the instance"),
            Violation::TaskCount { expected, found } => {
                write!(f, "tasks: expected {expected} tasks, found {found}")
            }
            Violation::Gap {
                task,
                expected,
                found,
            } => write!(
                f,
                "gap: task {task} second sub-task starts at {found}, expected {expected}"
            ),
            Violation::Overlap { first, second } => write!(
                f,
                "overlap: task {} {} {} and task {} {} {}",
                first.0, first.1, first.2, second.0, second.1, second.2
            ),
            Violation::Compat {
                host,
                gap,
                guest,
                part,
                interval,
            } => write!(
                f,
                "compat: task {guest} {part} {interval} runs in gap ({},{}) of task {host} without an edge",
                gap.0, gap.1
            ),
        }
    }
}

fn busy_intervals(schedule: &Schedule) -> Vec<(Interval, usize, Part)> {
    let mut busy: Vec<(Interval, usize, Part)> = (0..schedule.n())
        .flat_map(|i| {
            [
                (schedule.first_interval(i), i, Part::First),
                (schedule.second_interval(i), i, Part::Second),
            ]
        })
        .collect();
    busy.sort();
    busy
}

/// Returns every violation found; an empty schedule for an empty instance is
/// valid.
pub fn validate_schedule(instance: &Instance, schedule: &Schedule) -> Result<(), Vec<Violation>> {
    if schedule.params != instance.params && schedule.params != instance.input_params() {
        return Err(vec![Violation::Params]);
    }
    if schedule.n() != instance.n() {
        return Err(vec![Violation::TaskCount {
            expected: instance.n(),
            found: schedule.n(),
        }]);
    }
    let p = schedule.params;
    let mut out = Vec::new();

    for i in 0..schedule.n() {
        let expected = schedule.start[i] + p.a + p.gap;
        if schedule.second[i] != expected {
            out.push(Violation::Gap {
                task: i,
                expected,
                found: schedule.second[i],
            });
        }
    }

    let busy = busy_intervals(schedule);
    for (k, &(iv, task, part)) in busy.iter().enumerate() {
        for &(jv, t2, p2) in &busy[k + 1..] {
            if jv.start >= iv.end {
                break;
            }
            if iv.overlaps(&jv) {
                out.push(Violation::Overlap {
                    first: (task, part, iv),
                    second: (t2, p2, jv),
                });
            }
        }
    }

    // Intervals meeting (lo, hi) start before hi and end after lo; an
    // interval that starts at or before lo - longest cannot reach lo.
    let longest = p.a.max(p.b);
    for host in 0..schedule.n() {
        let (lo, hi) = schedule.gap_bounds(host);
        if lo >= hi {
            continue;
        }
        let from = busy.partition_point(|(iv, _, _)| iv.start + longest <= lo);
        for &(iv, guest, part) in &busy[from..] {
            if iv.start >= hi {
                break;
            }
            if guest != host && iv.meets_open(lo, hi) && !instance.graph.has_edge(host, guest) {
                out.push(Violation::Compat {
                    host,
                    gap: (lo, hi),
                    guest,
                    part,
                    interval: iv,
                });
            }
        }
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Sub-tasks of other tasks that meet the open gap of `host`, in time order.
pub fn gap_occupants(schedule: &Schedule, host: usize) -> Vec<(usize, Part)> {
    let (lo, hi) = schedule.gap_bounds(host);
    let mut found: Vec<(Interval, usize, Part)> = (0..schedule.n())
        .filter(|&j| j != host)
        .flat_map(|j| [Part::First, Part::Second].map(|part| (schedule.interval(j, part), j, part)))
        .filter(|(iv, _, _)| iv.meets_open(lo, hi))
        .collect();
    found.sort();
    found.into_iter().map(|(_, j, part)| (j, part)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::instance::{parse_instance, TaskParams};
    use crate::partition::{CoverPartition, PathPartition};
    use crate::schedule::build_schedule;

    const P: TaskParams = TaskParams { a: 2, b: 1, gap: 3 };

    fn kinds(r: Result<(), Vec<Violation>>) -> Vec<&'static str> {
        r.err().unwrap_or_default().iter().map(Violation::kind).collect()
    }

    #[test]
    fn built_schedules_validate() {
        let inst = parse_instance("7 2 1 3\n0 1\n1 2\n2 3\n4 5\n").unwrap();
        let p = PathPartition::new(vec![vec![0, 1, 2, 3], vec![4, 5], vec![6]]);
        let s = build_schedule(&p, &inst).unwrap();
        assert_eq!(validate_schedule(&inst, &s), Ok(()));

        let k3 = parse_instance("4 1 1 2\n0 1\n1 2\n0 2\n2 3\n").unwrap();
        let c = CoverPartition::new(vec![[0, 1, 2]], PathPartition::new(vec![vec![3]]));
        let s = build_schedule(&c, &k3).unwrap();
        assert_eq!(validate_schedule(&k3, &s), Ok(()));
        assert_eq!(s.makespan(), 8 + 2);
    }

    #[test]
    fn nesting_without_edge_is_compat_violation() {
        let inst = Instance::new(Graph::empty(2), P);
        let s = Schedule::from_starts(P, vec![0, 2]);
        let v = validate_schedule(&inst, &s).unwrap_err();
        assert!(v.iter().all(|v| v.kind() == "compat"));
        assert!(v.contains(&Violation::Compat {
            host: 0,
            gap: (2, 5),
            guest: 1,
            part: Part::First,
            interval: Interval::new(2, 4),
        }));
    }

    #[test]
    fn identical_starts_overlap() {
        let inst = parse_instance("2 2 1 3\n0 1\n").unwrap();
        let s = Schedule::from_starts(P, vec![0, 0]);
        assert!(kinds(validate_schedule(&inst, &s)).contains(&"overlap"));
    }

    #[test]
    fn shifted_second_subtask_is_gap_violation() {
        let inst = parse_instance("1 2 1 3\n").unwrap();
        let mut s = Schedule::from_starts(P, vec![0]);
        s.second[0] = 6;
        assert_eq!(
            validate_schedule(&inst, &s),
            Err(vec![Violation::Gap {
                task: 0,
                expected: 5,
                found: 6
            }])
        );
    }

    #[test]
    fn touching_endpoints_are_legal() {
        // second task starts exactly when the first one's b-part ends
        let inst = Instance::new(Graph::empty(2), P);
        let s = Schedule::from_starts(P, vec![0, 6]);
        assert_eq!(validate_schedule(&inst, &s), Ok(()));
    }

    #[test]
    fn wrong_params_and_count() {
        let inst = parse_instance("2 2 1 3\n0 1\n").unwrap();
        let s = Schedule::from_starts(TaskParams::new(3, 1, 4), vec![0, 10]);
        assert_eq!(kinds(validate_schedule(&inst, &s)), vec!["params"]);
        let s = Schedule::from_starts(P, vec![0]);
        assert_eq!(kinds(validate_schedule(&inst, &s)), vec!["tasks"]);
    }

    #[test]
    fn reversed_schedule_is_valid_for_swapped_input() {
        let inst = parse_instance("3 1 2 3\n0 1\n1 2\n").unwrap();
        let s = build_schedule(&PathPartition::new(vec![vec![0, 1, 2]]), &inst).unwrap();
        let r = s.clone().into_input_orientation(&inst);
        assert_eq!(r.params, TaskParams::new(1, 2, 3));
        assert_eq!(validate_schedule(&inst, &r), Ok(()));
        assert_eq!(r.makespan(), s.makespan());
    }

    #[test]
    fn chain_gap_holds_b_then_a() {
        let inst = parse_instance("4 3 1 4\n0 1\n1 2\n2 3\n").unwrap();
        let s = build_schedule(&PathPartition::new(vec![vec![0, 1, 2, 3]]), &inst).unwrap();
        assert_eq!(gap_occupants(&s, 0), vec![(1, Part::First)]);
        assert_eq!(gap_occupants(&s, 1), vec![(0, Part::Second), (2, Part::First)]);
        assert_eq!(gap_occupants(&s, 3), vec![(2, Part::Second)]);
    }
}
