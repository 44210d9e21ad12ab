//! Timetables built from partitions, the idle-time cost model, and the
//! schedule text format.
//!
//! Every block of a partition is laid out on its own, and blocks are placed
//! back to back. The layouts, with `t0` the block start:
//!
//! | block            | starts                     | span           |
//! |------------------|----------------------------|----------------|
//! | single task      | `t0`                       | `a + L + b`    |
//! | pair `u-v`       | `t0`, `t0 + a`             | `2a + L + b`   |
//! | chain of `k >= 3`| `t0 + i(a+b)`              | `(k+1)(a+b)`   |
//! | triangle (a = b) | `t0`, `t0 + a`, `t0 + 2a`  | `6a`           |
//!
//! Chains and triangles need `L = a + b`. Pairs need the first sub-task to
//! fit in a gap, `a <= L`.

use std::fmt;

use crate::instance::{classify_regime, Instance, Regime, TaskParams};
use crate::partition::{Block, Partition, PartitionError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScheduleError {
    #[error("empty path")]
    EmptyPath,
    #[error("no layout for {regime} parameters {params}")]
    UnsupportedRegime { regime: Regime, params: TaskParams },
    #[error("pairs need a <= L, got {0}")]
    PairDoesNotFit(TaskParams),
    #[error("paths of {len} tasks need L = a + b, got {params}")]
    ChainNeedsFullGap { len: usize, params: TaskParams },
    #[error("triangles need a = b and L = 2a, got {0}")]
    TriangleNeedsSymmetric(TaskParams),
    #[error("invalid partition: {0}")]
    Partition(#[from] PartitionError),
}

/// Relative start times of one block and the time it occupies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLayout {
    pub offsets: Vec<u64>,
    pub span: u64,
}

fn block_layout(block: &Block<'_>, params: TaskParams) -> Result<BlockLayout, ScheduleError> {
    let regime = classify_regime(params);
    if regime == Regime::Unsupported {
        return Err(ScheduleError::UnsupportedRegime { regime, params });
    }
    let TaskParams { a, b, gap } = params;
    let full_gap = gap == a + b;
    let layout = match *block {
        Block::Triangle(_) => {
            if regime != Regime::Symmetric {
                return Err(ScheduleError::TriangleNeedsSymmetric(params));
            }
            BlockLayout {
                offsets: vec![0, a, 2 * a],
                span: 6 * a,
            }
        }
        Block::Path(p) => match p.len() {
            0 => return Err(ScheduleError::EmptyPath),
            1 => BlockLayout {
                offsets: vec![0],
                span: params.span(),
            },
            2 => {
                if a > gap {
                    return Err(ScheduleError::PairDoesNotFit(params));
                }
                BlockLayout {
                    offsets: vec![0, a],
                    span: a + params.span(),
                }
            }
            k => {
                if !full_gap {
                    return Err(ScheduleError::ChainNeedsFullGap { len: k, params });
                }
                let step = a + b;
                BlockLayout {
                    offsets: (0..k as u64).map(|i| i * step).collect(),
                    span: (k as u64 + 1) * step,
                }
            }
        },
    };
    Ok(layout)
}

/// Idle time a path adds to the processor, `w(p)`.
///
/// With `L = a + b` this is `a + b` for a single task, `a` for a pair and
/// `a + b` for any longer chain. With `L < a + b` a single task idles `L`
/// and a pair idles `L - b`.
pub fn path_cost(path: &[usize], params: TaskParams) -> Result<u64, ScheduleError> {
    block_cost(&Block::Path(path), params)
}

fn block_cost(block: &Block<'_>, params: TaskParams) -> Result<u64, ScheduleError> {
    let layout = block_layout(block, params)?;
    Ok(layout.span - block.len() as u64 * params.work())
}

/// Lays out one path (or triangle) starting at `t0`.
/// Returns `(task, start)` pairs in path order and the block span.
pub fn build_block(
    block: &Block<'_>,
    t0: u64,
    params: TaskParams,
) -> Result<(Vec<(usize, u64)>, u64), ScheduleError> {
    let layout = block_layout(block, params)?;
    let starts = block
        .vertices()
        .iter()
        .zip(&layout.offsets)
        .map(|(&v, &o)| (v, t0 + o))
        .collect();
    Ok((starts, layout.span))
}

/// Makespan of the schedule a valid partition induces: `n(a+b) + sum w(p)`.
pub fn partition_cost<P: Partition + ?Sized>(
    partition: &P,
    instance: &Instance,
) -> Result<u64, ScheduleError> {
    partition.validate(&instance.graph)?;
    let idle = partition
        .blocks()
        .iter()
        .map(|b| block_cost(b, instance.params))
        .sum::<Result<u64, _>>()?;
    Ok(instance.n() as u64 * instance.params.work() + idle)
}

enum OwnedBlock {
    Path(Vec<usize>),
    Triangle([usize; 3]),
}

impl OwnedBlock {
    fn as_block(&self) -> Block<'_> {
        match self {
            OwnedBlock::Path(p) => Block::Path(p),
            OwnedBlock::Triangle(t) => Block::Triangle(t),
        }
    }
}

/// Blocks sorted for layout: longest first, ties by smallest vertex id.
///
/// Paths are oriented with their smaller endpoint first, so the output does
/// not depend on how a solver happened to orient them.
fn ordered_blocks<P: Partition + ?Sized>(partition: &P) -> Vec<OwnedBlock> {
    let mut blocks: Vec<OwnedBlock> = partition
        .blocks()
        .iter()
        .map(|b| match b {
            Block::Triangle(t) => {
                let mut t = **t;
                t.sort_unstable();
                OwnedBlock::Triangle(t)
            }
            Block::Path(p) => {
                let mut p = p.to_vec();
                if p.len() > 1 && p[0] > p[p.len() - 1] {
                    p.reverse();
                }
                OwnedBlock::Path(p)
            }
        })
        .collect();
    blocks.sort_by_key(|b| {
        let b = b.as_block();
        (std::cmp::Reverse(b.len()), b.vertices()[0])
    });
    blocks
}

/// Concrete timetable for a partition, blocks laid out back to back.
pub fn build_schedule<P: Partition + ?Sized>(
    partition: &P,
    instance: &Instance,
) -> Result<Schedule, ScheduleError> {
    partition.validate(&instance.graph)?;
    let params = instance.params;
    let mut start = vec![0; instance.n()];
    let mut t = 0;
    for block in ordered_blocks(partition) {
        let (starts, span) = build_block(&block.as_block(), t, params)?;
        for (v, s) in starts {
            start[v] = s;
        }
        t += span;
    }
    Ok(Schedule::from_starts(params, start))
}

/// Which sub-task of a task an interval belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    First,
    Second,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::First => "a",
            Part::Second => "b",
        })
    }
}

/// Half-open time interval `[start, end)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub start: u64,
    pub end: u64,
}

impl Interval {
    pub fn new(start: u64, end: u64) -> Self {
        Interval { start, end }
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.start < other.end && other.start < self.end
    }

    /// Whether this busy interval meets the open interval `(lo, hi)`.
    pub fn meets_open(&self, lo: u64, hi: u64) -> bool {
        lo < hi && self.start < hi && self.end > lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.start, self.end)
    }
}

/// Start times of both sub-tasks of every task.
///
/// `second` is kept explicitly so that schedules read from files can be
/// checked for the exact-gap rule; schedules built here always satisfy
/// `second[i] = start[i] + a + L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub params: TaskParams,
    pub start: Vec<u64>,
    pub second: Vec<u64>,
}

impl Schedule {
    pub fn from_starts(params: TaskParams, start: Vec<u64>) -> Self {
        let offset = params.a + params.gap;
        let second = start.iter().map(|&s| s + offset).collect();
        Schedule {
            params,
            start,
            second,
        }
    }

    pub fn n(&self) -> usize {
        self.start.len()
    }

    pub fn first_interval(&self, task: usize) -> Interval {
        Interval::new(self.start[task], self.start[task] + self.params.a)
    }

    pub fn second_interval(&self, task: usize) -> Interval {
        Interval::new(self.second[task], self.second[task] + self.params.b)
    }

    pub fn interval(&self, task: usize, part: Part) -> Interval {
        match part {
            Part::First => self.first_interval(task),
            Part::Second => self.second_interval(task),
        }
    }

    /// Open gap `(end of first, start of second)` as a pair of bounds.
    pub fn gap_bounds(&self, task: usize) -> (u64, u64) {
        (self.start[task] + self.params.a, self.second[task])
    }

    pub fn makespan(&self) -> u64 {
        (0..self.n())
            .map(|i| self.second_interval(i).end.max(self.first_interval(i).end))
            .max()
            .unwrap_or(0)
    }

    /// `(t_seq, t_idle)` with `t_seq = n(a+b)` and `t_idle = C_max - t_seq`.
    ///
    /// Saturates at zero for `t_idle` when applied to an invalid (overlapping)
    /// schedule.
    pub fn decomposition(&self) -> (u64, u64) {
        let t_seq = self.n() as u64 * self.params.work();
        (t_seq, self.makespan().saturating_sub(t_seq))
    }

    /// The same timetable read backwards, with sub-task roles exchanged.
    ///
    /// Maps a schedule for `(a, b, L)` onto one for `(b, a, L)` with the same
    /// makespan; the compatibility structure is preserved because gaps map to
    /// gaps.
    pub fn reversed(&self) -> Schedule {
        let c = self.makespan();
        let (a, b) = (self.params.a, self.params.b);
        let start = self.second.iter().map(|&t| c - t - b).collect();
        let second = self.start.iter().map(|&s| c - s - a).collect();
        Schedule {
            params: self.params.swapped(),
            start,
            second,
        }
    }

    /// Schedule in the orientation of the instance as it was given.
    pub fn into_input_orientation(self, instance: &Instance) -> Schedule {
        if instance.swapped && self.params == instance.params {
            self.reversed()
        } else {
            self
        }
    }

    /// Text form: `task <id> start <t>` per task and a final `makespan <C>`.
    /// A ` second <t>` field is appended only when the second sub-task does
    /// not follow the exact gap.
    pub fn to_text(&self) -> String {
        let offset = self.params.a + self.params.gap;
        let mut out = String::new();
        for i in 0..self.n() {
            out.push_str(&format!("task {i} start {}", self.start[i]));
            if self.second[i] != self.start[i] + offset {
                out.push_str(&format!(" second {}", self.second[i]));
            }
            out.push('\n');
        }
        out.push_str(&format!("makespan {}\n", self.makespan()));
        out
    }

    /// Text Gantt chart: one row per task, `A` first sub-task, `.` gap,
    /// `B` second sub-task. One column covers `scale` time units; the scale
    /// is raised if needed to stay within `max_cols` columns.
    pub fn gantt(&self, scale: u64, max_cols: usize) -> String {
        let c = self.makespan();
        let mut scale = scale.max(1);
        let cols = |s: u64| c.div_ceil(s) as usize;
        if max_cols > 0 && cols(scale) > max_cols {
            scale = c.div_ceil(max_cols as u64);
        }
        let width = self.n().saturating_sub(1).to_string().len();
        let mut out = format!("# 1 column = {scale} time unit(s), makespan {c}\n");
        for i in 0..self.n() {
            let first = self.first_interval(i);
            let second = self.second_interval(i);
            let (g0, g1) = self.gap_bounds(i);
            let row: String = (0..cols(scale))
                .map(|col| {
                    let cell = Interval::new(col as u64 * scale, (col as u64 + 1) * scale);
                    if cell.overlaps(&first) {
                        'A'
                    } else if cell.overlaps(&second) {
                        'B'
                    } else if cell.meets_open(g0, g1) {
                        '.'
                    } else {
                        ' '
                    }
                })
                .collect();
            out.push_str(&format!("{i:>width$} |{}\n", row.trim_end()));
        }
        out
    }
}

pub fn makespan_decomposition(schedule: &Schedule) -> (u64, u64) {
    schedule.decomposition()
}

/// Parsed schedule file; `declared_makespan` is the value on the
/// `makespan` line, if present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleFile {
    pub schedule: Schedule,
    pub declared_makespan: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ScheduleParseError {
    pub line: usize,
    pub message: String,
}

/// Reads the schedule text format for `n` tasks with durations `params`.
pub fn parse_schedule(
    text: &str,
    n: usize,
    params: TaskParams,
) -> Result<ScheduleFile, ScheduleParseError> {
    let mut start: Vec<Option<u64>> = vec![None; n];
    let mut second: Vec<Option<u64>> = vec![None; n];
    let mut declared = None;
    let fail = |line, message: String| ScheduleParseError { line, message };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let line_text = raw.trim();
        if line_text.is_empty() || line_text.starts_with('#') {
            continue;
        }
        let tok: Vec<&str> = line_text.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| fail(line, format!("expected an integer, found `{s}`")))
        };
        match tok.as_slice() {
            ["makespan", c] => declared = Some(num(c)?),
            ["task", id, "start", t, rest @ ..] => {
                let id = num(id)? as usize;
                if id >= n {
                    return Err(fail(line, format!("task {id} out of range for n={n}")));
                }
                if start[id].is_some() {
                    return Err(fail(line, format!("task {id} listed twice")));
                }
                start[id] = Some(num(t)?);
                match rest {
                    [] => {}
                    ["second", t2] => second[id] = Some(num(t2)?),
                    _ => return Err(fail(line, "unexpected trailing fields".into())),
                }
            }
            _ => return Err(fail(line, format!("unrecognized line `{line_text}`"))),
        }
    }
    let start: Vec<u64> = start
        .iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| fail(0, format!("task {i} has no start time"))))
        .collect::<Result<_, _>>()?;
    let mut schedule = Schedule::from_starts(params, start);
    for (i, s) in second.iter().enumerate() {
        if let Some(s) = s {
            schedule.second[i] = *s;
        }
    }
    Ok(ScheduleFile {
        schedule,
        declared_makespan: declared,
    })
}
