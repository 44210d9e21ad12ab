//! Minimum vertex-disjoint path cover: exact on forests, greedy on general
//! graphs, and an exhaustive oracle for small graphs.

use crate::graph::Graph;
use crate::matching::LimitExceeded;
use crate::partition::PathPartition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpcResult {
    pub partition: PathPartition,
    pub path_count: usize,
    /// Produced by an algorithm that is exact for this graph class.
    pub exact: bool,
}

impl DpcResult {
    fn new(partition: PathPartition, exact: bool) -> Self {
        let path_count = partition.len();
        DpcResult {
            partition,
            path_count,
            exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("graph is not a forest")]
pub struct NotAForest;

/// Splits a set of chosen edges with maximum degree 2 and no cycle into
/// paths, each oriented from its smaller endpoint.
fn paths_from_links(links: &[Vec<usize>]) -> PathPartition {
    let n = links.len();
    let mut seen = vec![false; n];
    let mut paths = Vec::new();
    for s in 0..n {
        if seen[s] || links[s].len() > 1 {
            continue;
        }
        let mut path = vec![s];
        seen[s] = true;
        let mut cur = s;
        while let Some(&next) = links[cur].iter().find(|&&w| !seen[w]) {
            seen[next] = true;
            path.push(next);
            cur = next;
        }
        paths.push(path);
    }
    debug_assert!(seen.iter().all(|&s| s), "links contain a cycle");
    PathPartition::new(paths).canonical()
}

/// Exact minimum path cover of a forest in linear time.
///
/// Vertices are processed children-first. A vertex joins up to two children
/// that are still path endpoints (smallest ids first); it stays available to
/// its own parent only if it joined fewer than two.
pub fn tree_min_dpc(graph: &Graph) -> Result<DpcResult, NotAForest> {
    if !graph.is_forest() {
        return Err(NotAForest);
    }
    let n = graph.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in graph.neighbors(v) {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
    }

    let mut open = vec![true; n];
    let mut links: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let joined: Vec<usize> = graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&c| parent[c] == v && open[c])
            .take(2)
            .collect();
        for &c in &joined {
            links[v].push(c);
            links[c].push(v);
        }
        open[v] = joined.len() < 2;
    }
    Ok(DpcResult::new(paths_from_links(&links), true))
}

/// Greedy path cover for general graphs.
///
/// Starts each path at an uncovered vertex of least uncovered degree and
/// extends the tail, then the head, always to the uncovered neighbor with
/// the fewest uncovered neighbors (ties to the smaller id).
pub fn greedy_dpc(graph: &Graph) -> DpcResult {
    let n = graph.n();
    let mut covered = vec![false; n];
    let mut free_deg: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let cover = |v: usize, covered: &mut Vec<bool>, free_deg: &mut Vec<usize>| {
        covered[v] = true;
        for &w in graph.neighbors(v) {
            free_deg[w] -= 1;
        }
    };
    let pick = |v: usize, covered: &[bool], free_deg: &[usize]| {
        graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !covered[w])
            .min_by_key(|&w| (free_deg[w], w))
    };

    let mut paths = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        let start = (0..n)
            .filter(|&v| !covered[v])
            .min_by_key(|&v| (free_deg[v], v))
            .expect("an uncovered vertex remains");
        cover(start, &mut covered, &mut free_deg);
        let mut tail = vec![start];
        while let Some(w) = pick(*tail.last().unwrap(), &covered, &free_deg) {
            cover(w, &mut covered, &mut free_deg);
            tail.push(w);
        }
        let mut head = Vec::new();
        let mut front = start;
        while let Some(w) = pick(front, &covered, &free_deg) {
            cover(w, &mut covered, &mut free_deg);
            head.push(w);
            front = w;
        }
        remaining -= tail.len() + head.len();
        head.reverse();
        head.extend(tail);
        paths.push(head);
    }
    DpcResult::new(PathPartition::new(paths).canonical(), false)
}

pub const BRUTE_FORCE_DPC_LIMIT: usize = 10;

/// Exhaustive minimum path cover for small graphs (test oracle).
///
/// Among all minimum covers returns the one whose canonical form is
/// lexicographically smallest.
pub fn brute_force_min_dpc(graph: &Graph, limit: usize) -> Result<DpcResult, LimitExceeded> {
    let n = graph.n();
    if n > limit {
        return Err(LimitExceeded { n, limit });
    }
    let mut search = DpcSearch {
        g: graph,
        used: vec![false; n],
        current: Vec::new(),
        best: None,
    };
    search.cover_next();
    let best = search.best.unwrap_or_default();
    Ok(DpcResult::new(best, true))
}

struct DpcSearch<'g> {
    g: &'g Graph,
    used: Vec<bool>,
    current: Vec<Vec<usize>>,
    best: Option<PathPartition>,
}

impl DpcSearch<'_> {
    fn over_budget(&self, extra: usize) -> bool {
        self.best
            .as_ref()
            .is_some_and(|b| self.current.len() + extra > b.len())
    }

    fn cover_next(&mut self) {
        let Some(v) = self.used.iter().position(|&u| !u) else {
            let cand = PathPartition::new(self.current.clone()).canonical();
            let better = match &self.best {
                None => true,
                Some(b) => (cand.len(), &cand.paths) < (b.len(), &b.paths),
            };
            if better {
                self.best = Some(cand);
            }
            return;
        };
        if self.over_budget(1) {
            return;
        }
        // Every path through v is some left arm reversed, v, some right arm.
        self.used[v] = true;
        let mut left = Vec::new();
        self.grow_left(v, &mut left);
        self.used[v] = false;
    }

    fn grow_left(&mut self, v: usize, left: &mut Vec<usize>) {
        let mut right = Vec::new();
        self.grow_right(v, left, &mut right);
        let end = *left.last().unwrap_or(&v);
        for &w in self.g.neighbors(end) {
            if !self.used[w] {
                self.used[w] = true;
                left.push(w);
                self.grow_left(v, left);
                left.pop();
                self.used[w] = false;
            }
        }
    }

    fn grow_right(&mut self, v: usize, left: &[usize], right: &mut Vec<usize>) {
        let first = *left.last().unwrap_or(&v);
        let last = *right.last().unwrap_or(&v);
        // Each path is produced once: in the orientation starting at its
        // smaller endpoint.
        if left.len() + right.len() == 0 || first < last {
            let mut path: Vec<usize> = left.iter().rev().copied().collect();
            path.push(v);
            path.extend_from_slice(right);
            self.current.push(path);
            self.cover_next();
            self.current.pop();
        }
        for &w in self.g.neighbors(last) {
            if !self.used[w] {
                self.used[w] = true;
                right.push(w);
                self.grow_right(v, left, right);
                right.pop();
                self.used[w] = false;
            }
        }
    }
}
