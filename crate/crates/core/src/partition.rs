//! Vertex-disjoint path partitions, and the triangle-plus-path covers used
//! when both sub-tasks have the same length.

use std::fmt;

use crate::graph::Graph;

/// Paths that are pairwise vertex-disjoint and together cover every vertex.
/// A single vertex is a path of length 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathPartition {
    pub paths: Vec<Vec<usize>>,
}

/// Vertex-disjoint triangles plus a path partition of the remaining vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CoverPartition {
    pub triangles: Vec<[usize; 3]>,
    pub paths: PathPartition,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("empty path")]
    EmptyPath,
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("vertex {0} appears more than once")]
    Repeated(usize),
    #[error("vertex {0} is not covered")]
    Uncovered(usize),
    #[error("consecutive vertices {0} and {1} are not adjacent")]
    MissingEdge(usize, usize),
    #[error("vertices {0:?} do not form a triangle")]
    NotTriangle([usize; 3]),
}

/// One class of a partition, in the form the schedule layouts consume.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block<'a> {
    Path(&'a [usize]),
    Triangle(&'a [usize; 3]),
}

impl Block<'_> {
    pub fn len(&self) -> usize {
        match self {
            Block::Path(p) => p.len(),
            Block::Triangle(_) => 3,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertices(&self) -> &[usize] {
        match self {
            Block::Path(p) => p,
            Block::Triangle(t) => &t[..],
        }
    }

    /// Smallest vertex id; used to order blocks of equal length.
    pub fn leading(&self) -> usize {
        self.vertices().iter().copied().min().unwrap_or(usize::MAX)
    }
}

/// Shared view over the two partition kinds.
pub trait Partition {
    fn blocks(&self) -> Vec<Block<'_>>;

    /// Checks the structural invariants against `graph`.
    fn validate(&self, graph: &Graph) -> Result<(), PartitionError>;
}

fn check_cover<'a, I>(n: usize, vertices: I) -> Result<(), PartitionError>
where
    I: IntoIterator<Item = &'a usize>,
{
    let mut seen = vec![false; n];
    for &v in vertices {
        if v >= n {
            return Err(PartitionError::OutOfRange(v));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(PartitionError::Repeated(v));
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(PartitionError::Uncovered(v)),
        None => Ok(()),
    }
}

fn check_paths(paths: &[Vec<usize>], graph: &Graph) -> Result<(), PartitionError> {
    for p in paths {
        if p.is_empty() {
            return Err(PartitionError::EmptyPath);
        }
        for w in p.windows(2) {
            if !graph.has_edge(w[0], w[1]) {
                return Err(PartitionError::MissingEdge(w[0], w[1]));
            }
        }
    }
    Ok(())
}

impl PathPartition {
    pub fn new(paths: Vec<Vec<usize>>) -> Self {
        PathPartition { paths }
    }

    pub fn singletons(n: usize) -> Self {
        PathPartition::new((0..n).map(|v| vec![v]).collect())
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Each path oriented with its smaller endpoint first, paths sorted by
    /// leading vertex. Two partitions are equal as sets of paths iff their
    /// canonical forms are equal.
    pub fn canonical(&self) -> PathPartition {
        let mut paths: Vec<Vec<usize>> = self
            .paths
            .iter()
            .map(|p| {
                let mut p = p.clone();
                if p.len() > 1 && p[0] > p[p.len() - 1] {
                    p.reverse();
                }
                p
            })
            .collect();
        paths.sort();
        PathPartition { paths }
    }
}

impl Partition for PathPartition {
    fn blocks(&self) -> Vec<Block<'_>> {
        self.paths.iter().map(|p| Block::Path(p)).collect()
    }

    fn validate(&self, graph: &Graph) -> Result<(), PartitionError> {
        check_paths(&self.paths, graph)?;
        check_cover(graph.n(), self.paths.iter().flatten())
    }
}

impl CoverPartition {
    pub fn new(triangles: Vec<[usize; 3]>, paths: PathPartition) -> Self {
        CoverPartition { triangles, paths }
    }

    /// Sorted triangles followed by the canonical path partition.
    pub fn canonical(&self) -> CoverPartition {
        let mut triangles: Vec<[usize; 3]> = self
            .triangles
            .iter()
            .map(|t| {
                let mut t = *t;
                t.sort_unstable();
                t
            })
            .collect();
        triangles.sort_unstable();
        CoverPartition {
            triangles,
            paths: self.paths.canonical(),
        }
    }
}

impl From<PathPartition> for CoverPartition {
    fn from(paths: PathPartition) -> Self {
        CoverPartition::new(Vec::new(), paths)
    }
}

impl Partition for CoverPartition {
    fn blocks(&self) -> Vec<Block<'_>> {
        self.triangles
            .iter()
            .map(Block::Triangle)
            .chain(self.paths.paths.iter().map(|p| Block::Path(p)))
            .collect()
    }

    fn validate(&self, graph: &Graph) -> Result<(), PartitionError> {
        for t in &self.triangles {
            if let Some(&v) = t.iter().find(|&&v| v >= graph.n()) {
                return Err(PartitionError::OutOfRange(v));
            }
            let [x, y, z] = *t;
            if !(graph.has_edge(x, y) && graph.has_edge(y, z) && graph.has_edge(x, z)) {
                return Err(PartitionError::NotTriangle(*t));
            }
        }
        check_paths(&self.paths.paths, graph)?;
        check_cover(
            graph.n(),
            self.triangles.iter().flatten().chain(self.paths.paths.iter().flatten()),
        )
    }
}

impl fmt::Display for PathPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .paths
            .iter()
            .map(|p| {
                let ids: Vec<String> = p.iter().map(usize::to_string).collect();
                format!("[{}]", ids.join("-"))
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Display for CoverPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.triangles {
            write!(f, "<{}-{}-{}> ", t[0], t[1], t[2])?;
        }
        write!(f, "{}", self.paths)
    }
}
