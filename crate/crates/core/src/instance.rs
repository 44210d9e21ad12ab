//! Task parameters, problem instances and the text instance format.
//!
//! An instance file is line oriented. Lines starting with `#` are comments
//! and blank lines are skipped. The first data line is `n a b L`; every
//! following data line is an edge `u v` of the compatibility graph with
//! `0 <= u, v < n` and `u != v`.

use std::collections::HashSet;
use std::fmt;

use crate::graph::Graph;

/// Processing time of the two sub-tasks and the exact gap between them.
///
/// All tasks of an instance share these values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TaskParams {
    pub a: u64,
    pub b: u64,
    /// Idle time between the end of the first and the start of the second sub-task.
    pub gap: u64,
}

impl TaskParams {
    pub fn new(a: u64, b: u64, gap: u64) -> Self {
        TaskParams { a, b, gap }
    }

    /// Processing time of one task, `a + b`.
    pub fn work(&self) -> u64 {
        self.a + self.b
    }

    /// Time from the start of the first sub-task to the end of the second.
    pub fn span(&self) -> u64 {
        self.a + self.gap + self.b
    }

    /// Returns the parameters with `a >= b` and whether a swap happened.
    pub fn normalized(self) -> (TaskParams, bool) {
        if self.b > self.a {
            (TaskParams::new(self.b, self.a, self.gap), true)
        } else {
            (self, false)
        }
    }

    /// Sub-task roles exchanged; the time-reversed view of a schedule.
    pub fn swapped(self) -> TaskParams {
        TaskParams::new(self.b, self.a, self.gap)
    }
}

impl fmt::Display for TaskParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, L={})", self.a, self.b, self.gap)
    }
}

/// Parameter class of an instance. Determines which solvers apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `L < a + b`: at most one sub-task fits in a gap; matching is optimal.
    ShortGap,
    /// `L = a + b` and `a > b`.
    Isomorphic,
    /// `L = a + b` and `a = b`.
    Symmetric,
    /// `L > a + b`, not handled by any solver.
    Unsupported,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::ShortGap => "short-gap",
            Regime::Isomorphic => "isomorphic",
            Regime::Symmetric => "symmetric",
            Regime::Unsupported => "unsupported",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classifies normalized parameters (`a >= b`).
pub fn classify_regime(params: TaskParams) -> Regime {
    let work = params.work();
    match params.gap.cmp(&work) {
        std::cmp::Ordering::Less => Regime::ShortGap,
        std::cmp::Ordering::Greater => Regime::Unsupported,
        std::cmp::Ordering::Equal if params.a == params.b => Regime::Symmetric,
        std::cmp::Ordering::Equal => Regime::Isomorphic,
    }
}

/// A set of identical coupled tasks plus their compatibility graph.
///
/// Task `i` is vertex `i`. `params` is always normalized; `swapped` records
/// whether the input listed the longer sub-task second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub params: TaskParams,
    pub swapped: bool,
}

impl Instance {
    /// Builds an instance, normalizing the parameters.
    pub fn new(graph: Graph, params: TaskParams) -> Self {
        let (params, swapped) = params.normalized();
        Instance {
            graph,
            params,
            swapped,
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn regime(&self) -> Regime {
        classify_regime(self.params)
    }

    /// Parameters in the orientation they were given.
    pub fn input_params(&self) -> TaskParams {
        if self.swapped {
            self.params.swapped()
        } else {
            self.params
        }
    }

    /// Canonical text form; parameters are written in input orientation.
    pub fn to_text(&self) -> String {
        let p = self.input_params();
        let mut out = format!("{} {} {} {}\n", self.n(), p.a, p.b, p.gap);
        for &(u, v) in self.graph.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("missing header line `n a b L`")]
    MissingHeader,
    #[error("malformed line: expected {expected} integers")]
    Malformed { expected: usize },
    #[error("sub-task durations must be positive")]
    NonPositiveDuration,
    #[error("vertex {vertex} out of range for n={n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
}

fn parse_ints(line: &str, expected: usize) -> Option<Vec<u64>> {
    let vals: Result<Vec<u64>, _> = line.split_whitespace().map(str::parse).collect();
    vals.ok().filter(|v| v.len() == expected)
}

/// Parses the instance text format; line numbers in errors are 1-based.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError {
        line: 0,
        kind: ParseErrorKind::MissingHeader,
    })?;
    let err = |line, kind| ParseError { line, kind };
    let h = parse_ints(header, 4).ok_or(err(hline, ParseErrorKind::Malformed { expected: 4 }))?;
    let n = usize::try_from(h[0]).map_err(|_| err(hline, ParseErrorKind::Malformed { expected: 4 }))?;
    if h[1] == 0 || h[2] == 0 {
        return Err(err(hline, ParseErrorKind::NonPositiveDuration));
    }
    let params = TaskParams::new(h[1], h[2], h[3]);

    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let e = parse_ints(line, 2).ok_or(err(lineno, ParseErrorKind::Malformed { expected: 2 }))?;
        let (u, v) = (e[0] as usize, e[1] as usize);
        for w in [u, v] {
            if w >= n {
                return Err(err(lineno, ParseErrorKind::OutOfRange { vertex: w, n }));
            }
        }
        if u == v {
            return Err(err(lineno, ParseErrorKind::SelfLoop(u)));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(err(lineno, ParseErrorKind::DuplicateEdge(key.0, key.1)));
        }
        edges.push(key);
    }
    let graph = Graph::from_edges(n, edges).expect("edges validated above");
    Ok(Instance::new(graph, params))
}

/// Structural facts about the compatibility graph that drive solver choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFeatures {
    pub isolated: Vec<usize>,
    pub components: usize,
    pub forest: bool,
    /// Connected forest.
    pub tree: bool,
}

pub fn graph_features(instance: &Instance) -> GraphFeatures {
    let g = &instance.graph;
    let isolated = (0..g.n()).filter(|&v| g.degree(v) == 0).collect();
    let components = g.component_count();
    let forest = g.is_forest();
    GraphFeatures {
        isolated,
        components,
        forest,
        tree: forest && components == 1,
    }
}
