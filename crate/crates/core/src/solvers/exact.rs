//! Exhaustive optimum over all path partitions (and triangle covers), by
//! dynamic programming over vertex subsets.
//!
//! The cost of a block depends only on its size and on whether it admits a
//! Hamiltonian path (or is a triangle), so the optimum over all partitions
//! is a minimum over set partitions into feasible blocks. `ham_ends[S]`
//! holds the vertices at which some Hamiltonian path of `G[S]` ends; the
//! partition recurrence always branches on the block of the lowest vertex,
//! which visits each set partition once, `O(3^n)` in total.

use crate::graph::Graph;
use crate::instance::TaskParams;
use crate::partition::{CoverPartition, PathPartition};

pub(crate) type Mask = u32;

/// Largest vertex count the subset tables accept at all.
pub const MAX_SUBSET_VERTICES: usize = 24;

pub(crate) struct HamTable {
    ends: Vec<Mask>,
}

impl HamTable {
    pub(crate) fn new(graph: &Graph) -> Self {
        let n = graph.n();
        assert!(n <= MAX_SUBSET_VERTICES, "subset tables limited to {MAX_SUBSET_VERTICES} vertices");
        let nbr: Vec<Mask> = (0..n)
            .map(|v| graph.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
            .collect();
        let mut ends = vec![0 as Mask; 1 << n];
        for v in 0..n {
            ends[1 << v] = 1 << v;
        }
        for s in 1..(1usize << n) {
            let mut e = ends[s];
            while e != 0 {
                let v = e.trailing_zeros() as usize;
                e &= e - 1;
                let mut ext = nbr[v] & !(s as Mask);
                while ext != 0 {
                    let w = ext.trailing_zeros();
                    ext &= ext - 1;
                    ends[s | 1 << w] |= 1 << w;
                }
            }
        }
        HamTable { ends }
    }

    pub(crate) fn has_path(&self, s: Mask) -> bool {
        self.ends[s as usize] != 0
    }

    /// Lexicographically smallest Hamiltonian path of `G[s]` among those
    /// starting at their smaller endpoint.
    fn smallest_path(&self, graph: &Graph, s: Mask) -> Vec<usize> {
        // Reversal maps paths ending at v onto paths starting at v, so the
        // smallest endpoint is the smallest possible start, and a prefix
        // ending at x extends iff x is an end of a path of the rest plus x.
        let first = self.ends[s as usize].trailing_zeros() as usize;
        let mut path = vec![first];
        let mut rest = s & !(1 << first);
        while rest != 0 {
            let x = *path.last().unwrap();
            let next = graph
                .neighbors(x)
                .iter()
                .copied()
                .find(|&y| rest & (1 << y) != 0 && self.ends[rest as usize] & (1 << y) != 0)
                .expect("Hamiltonian table is consistent");
            path.push(next);
            rest &= !(1 << next);
        }
        path
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BlockKind {
    Path,
    Triangle,
}

/// Optimal partition and its idle time (the sum of block costs).
pub(crate) struct ExactSolution {
    pub idle: u64,
    pub cover: CoverPartition,
}

/// Minimizes total block idle time over partitions of `graph`.
///
/// Block costs follow the `L = a + b` layouts: `a + b` for one task, `a` for
/// an edge, `a + b` for a longer Hamiltonian block, and `0` for a triangle
/// when `triangles` is set. Among optimal partitions, the block holding the
/// lowest uncovered vertex is the numerically smallest vertex mask, and
/// each path is the smallest canonical Hamiltonian path of its block.
pub(crate) fn optimal_partition(graph: &Graph, params: TaskParams, triangles: bool) -> ExactSolution {
    let n = graph.n();
    let ham = HamTable::new(graph);
    let full: Mask = if n == 0 { 0 } else { ((1u64 << n) - 1) as Mask };
    let (single, pair, long) = (params.a + params.b, params.a, params.a + params.b);

    let block = |b: Mask| -> Option<(u64, BlockKind)> {
        match b.count_ones() {
            1 => Some((single, BlockKind::Path)),
            2 => ham.has_path(b).then_some((pair, BlockKind::Path)),
            k => {
                if triangles && k == 3 && is_triangle(graph, b) {
                    Some((0, BlockKind::Triangle))
                } else {
                    ham.has_path(b).then_some((long, BlockKind::Path))
                }
            }
        }
    };

    let mut best = vec![u64::MAX; 1 << n];
    let mut choice = vec![0 as Mask; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        if s & full != s {
            continue;
        }
        let low = s & s.wrapping_neg();
        let others = s & !low;
        // Submasks of `others` in increasing numeric order, each plus `low`.
        let mut sub: Mask = 0;
        loop {
            let b = sub | low;
            if let Some((c, _)) = block(b) {
                let rest = best[(s & !b) as usize];
                if rest != u64::MAX && c + rest < best[s as usize] {
                    best[s as usize] = c + rest;
                    choice[s as usize] = b;
                }
            }
            if sub == others {
                break;
            }
            sub = (sub.wrapping_sub(others)) & others;
        }
    }

    let mut cover = CoverPartition::default();
    let mut s = full;
    while s != 0 {
        let b = choice[s as usize];
        match block(b).expect("chosen block is feasible").1 {
            BlockKind::Triangle => {
                let v = vertices(b);
                cover.triangles.push([v[0], v[1], v[2]]);
            }
            BlockKind::Path => cover.paths.paths.push(ham.smallest_path(graph, b)),
        }
        s &= !b;
    }
    ExactSolution {
        idle: best[full as usize],
        cover: cover.canonical(),
    }
}

fn vertices(m: Mask) -> Vec<usize> {
    (0..Mask::BITS as usize).filter(|&v| m & (1 << v) != 0).collect()
}

fn is_triangle(graph: &Graph, m: Mask) -> bool {
    let v = vertices(m);
    v.len() == 3 && graph.has_edge(v[0], v[1]) && graph.has_edge(v[1], v[2]) && graph.has_edge(v[0], v[2])
}

/// Convenience for callers that only need the path form.
pub(crate) fn optimal_path_partition(graph: &Graph, params: TaskParams) -> (u64, PathPartition) {
    let sol = optimal_partition(graph, params, false);
    (sol.idle, sol.cover.paths)
}

/// Whether `graph` has a Hamiltonian path, from the subset table.
pub fn has_hamiltonian_path(graph: &Graph) -> bool {
    graph.n() == 0 || HamTable::new(graph).has_path(((1u64 << graph.n()) - 1) as Mask)
}
