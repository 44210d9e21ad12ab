#![allow(dead_code)]

use coupled_sched::{Graph, Instance, TaskParams};
use proptest::prelude::*;

pub const ISO_PARAMS: [(u64, u64); 4] = [(2, 1), (3, 1), (3, 2), (5, 4)];

pub fn iso(a: u64, b: u64) -> TaskParams {
    TaskParams::new(a, b, a + b)
}

/// Graph on `0..n` with one flag per pair in `(0,1), (0,2), ...` order.
pub fn graph_from_flags(n: usize, flags: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if flags[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (Just(n), proptest::collection::vec(any::<bool>(), pairs)).prop_map(|(n, f)| graph_from_flags(n, &f))
    })
}

/// Random labelled tree from a parent array: vertex `v > 0` attaches to
/// some earlier vertex, then labels are permuted.
pub fn arb_tree(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
        (parents, Just((0..n).collect::<Vec<usize>>()).prop_shuffle()).prop_map(move |(par, perm)| {
            Graph::from_edges(n, par.iter().enumerate().map(|(i, &p)| (perm[i + 1], perm[p]))).unwrap()
        })
    })
}

pub fn arb_iso_params() -> impl Strategy<Value = TaskParams> {
    prop_oneof![
        Just(iso(2, 1)),
        Just(iso(3, 1)),
        Just(iso(3, 2)),
        Just(iso(5, 4)),
        (2u64..12).prop_flat_map(|a| (Just(a), 1..a)).prop_map(|(a, b)| iso(a, b)),
    ]
}

pub fn instance(graph: Graph, params: TaskParams) -> Instance {
    Instance::new(graph, params)
}

/// Independent Hamiltonian-path test: plain DFS from every start vertex.
pub fn dfs_hamiltonian(g: &Graph) -> bool {
    fn extend(g: &Graph, v: usize, seen: &mut [bool], count: usize) -> bool {
        if count == g.n() {
            return true;
        }
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                if extend(g, w, seen, count + 1) {
                    return true;
                }
                seen[w] = false;
            }
        }
        false
    }
    if g.n() == 0 {
        return true;
    }
    (0..g.n()).any(|s| {
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        extend(g, s, &mut seen, 1)
    })
}
