//! Maximum-cardinality matching on general graphs.
//!
//! [`max_matching`] is Edmonds' blossom algorithm with BFS alternating trees
//! and blossom contraction through a `base` array, `O(n^3)` worst case. A
//! greedy pass seeds the matching; free vertices are then tried as roots in
//! increasing id order, each once: a vertex with no augmenting path stays
//! unaugmentable for the rest of the run.

use std::collections::VecDeque;

use crate::graph::Graph;
use crate::partition::PathPartition;

/// A set of vertex-disjoint edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![None; n],
        }
    }

    /// Builds a matching from edges; panics if two edges share a vertex.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut m = Matching::empty(n);
        for &(u, v) in edges {
            assert!(m.mate[u].is_none() && m.mate[v].is_none(), "edges share a vertex");
            m.mate[u] = Some(v);
            m.mate[v] = Some(u);
        }
        m
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn cardinality(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    /// Matched edges `(u, v)`, `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
            .collect()
    }

    /// True when every matched pair is an edge of `graph` and mates are mutual.
    pub fn is_valid_for(&self, graph: &Graph) -> bool {
        self.mate.len() == graph.n()
            && self.mate.iter().enumerate().all(|(u, m)| match *m {
                None => true,
                Some(v) => v != u && self.mate[v] == Some(u) && graph.has_edge(u, v),
            })
    }
}

struct Blossom<'g> {
    g: &'g Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    queue: VecDeque<usize>,
    // scratch, reset per use
    mark: Vec<bool>,
    in_blossom: Vec<bool>,
}

const NONE: usize = usize::MAX;

impl<'g> Blossom<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.n();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            queue: VecDeque::new(),
            mark: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn greedy_seed(&mut self) {
        for u in 0..self.g.n() {
            if self.mate[u] != NONE {
                continue;
            }
            if let Some(&v) = self.g.neighbors(u).iter().find(|&&v| self.mate[v] == NONE) {
                self.mate[u] = v;
                self.mate[v] = u;
            }
        }
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        self.mark.fill(false);
        loop {
            a = self.base[a];
            self.mark[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.mark[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v];
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = child;
            child = m;
            v = self.parent[m];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.in_tree.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.in_tree[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.in_tree[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn run(mut self) -> Matching {
        self.greedy_seed();
        for root in 0..self.g.n() {
            if self.mate[root] == NONE {
                if let Some(end) = self.find_path(root) {
                    self.augment(end);
                }
            }
        }
        Matching {
            mate: self
                .mate
                .into_iter()
                .map(|m| (m != NONE).then_some(m))
                .collect(),
        }
    }
}

/// Maximum-cardinality matching of a general graph. Deterministic for a
/// given graph.
pub fn max_matching(graph: &Graph) -> Matching {
    Blossom::new(graph).run()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("graph has {n} vertices, oracle limit is {limit}")]
pub struct LimitExceeded {
    pub n: usize,
    pub limit: usize,
}

pub const BRUTE_FORCE_MATCHING_LIMIT: usize = 16;

/// Exhaustive maximum matching for small graphs (test oracle).
///
/// Branches on the lowest unmatched vertex: leave it free, or match it with
/// each later free neighbor.
pub fn brute_force_matching(graph: &Graph, limit: usize) -> Result<Matching, LimitExceeded> {
    let n = graph.n();
    if n > limit {
        return Err(LimitExceeded { n, limit });
    }
    fn go(g: &Graph, v: usize, used: &mut [bool], cur: &mut Vec<(usize, usize)>, best: &mut Vec<(usize, usize)>) {
        let n = g.n();
        let v = (v..n).find(|&x| !used[x]);
        let Some(v) = v else {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
            return;
        };
        let free_after = (v + 1..n).filter(|&x| !used[x]).count();
        if cur.len() + free_after.div_ceil(2) <= best.len() {
            return;
        }
        used[v] = true;
        for &w in g.neighbors(v) {
            if w > v && !used[w] {
                used[w] = true;
                cur.push((v, w));
                go(g, v + 1, used, cur, best);
                cur.pop();
                used[w] = false;
            }
        }
        go(g, v + 1, used, cur, best);
        used[v] = false;
    }
    let mut best = Vec::new();
    go(graph, 0, &mut vec![false; n], &mut Vec::new(), &mut best);
    Ok(Matching::from_edges(n, &best))
}

/// Matched edges become 2-vertex paths, ordered by smaller endpoint; the
/// unmatched vertices follow as single-vertex paths.
pub fn partition_from_matching(graph: &Graph, matching: &Matching) -> PathPartition {
    let mut paths: Vec<Vec<usize>> = matching.edges().into_iter().map(|(u, v)| vec![u, v]).collect();
    paths.extend((0..graph.n()).filter(|&v| matching.mate(v).is_none()).map(|v| vec![v]));
    PathPartition::new(paths)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::partition::Partition;

    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn small_examples() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(max_matching(&p4).cardinality(), 2);
        assert_eq!(max_matching(&cycle(5)).cardinality(), 2);
        assert_eq!(max_matching(&petersen()).cardinality(), 5);
        assert_eq!(max_matching(&Graph::empty(0)).cardinality(), 0);
    }

    #[test]
    fn oracle_examples() {
        let lim = BRUTE_FORCE_MATCHING_LIMIT;
        assert_eq!(brute_force_matching(&complete(4), lim).unwrap().cardinality(), 2);
        assert_eq!(brute_force_matching(&Graph::empty(5), lim).unwrap().cardinality(), 0);
        assert_eq!(brute_force_matching(&cycle(7), lim).unwrap().cardinality(), 3);
        assert_eq!(brute_force_matching(&petersen(), lim).unwrap().cardinality(), 5);
        assert_eq!(
            brute_force_matching(&complete(17), lim),
            Err(LimitExceeded { n: 17, limit: 16 })
        );
    }

    #[test]
    fn greedy_seed_is_repaired_by_blossom() {
        // C5 on 0..5 with pendants 5-0 and 6-2: greedy takes 0-1 and 2-3,
        // the optimum 5-0, 6-2, 3-4 needs augmentation through the cycle.
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (6, 2)]).unwrap();
        let m = max_matching(&g);
        assert!(m.is_valid_for(&g));
        assert_eq!(m.cardinality(), 3);
        // pendants 0, 6, 7 pin 1, 2, 4 and 3-5 is no edge
        let g = Graph::from_edges(
            8,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (2, 6), (4, 7)],
        )
        .unwrap();
        assert_eq!(max_matching(&g).cardinality(), 3);
        assert_eq!(brute_force_matching(&g, BRUTE_FORCE_MATCHING_LIMIT).unwrap().cardinality(), 3);
    }

    #[test]
    fn partitions_from_matchings() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let m = Matching::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(partition_from_matching(&p4, &m).paths, vec![vec![0, 1], vec![2, 3]]);

        let e3 = Graph::empty(3);
        assert_eq!(
            partition_from_matching(&e3, &Matching::empty(3)).paths,
            vec![vec![0], vec![1], vec![2]]
        );

        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let m = Matching::from_edges(4, &[(0, 2)]);
        let p = partition_from_matching(&star, &m);
        assert_eq!(p.paths, vec![vec![0, 2], vec![1], vec![3]]);
        assert_eq!(p.validate(&star), Ok(()));
    }

    /// Max flow on the unit-capacity network source -> left -> right -> sink,
    /// by BFS augmenting paths.
    fn bipartite_max_flow(left: usize, right: usize, edges: &[(usize, usize)]) -> usize {
        let n = left + right + 2;
        let (s, t) = (n - 2, n - 1);
        let mut cap = vec![vec![0i32; n]; n];
        for c in &mut cap[s][..left] {
            *c = 1;
        }
        for v in 0..right {
            cap[left + v][t] = 1;
        }
        for &(u, v) in edges {
            cap[u][left + v] = 1;
        }
        let mut flow = 0;
        loop {
            let mut prev = vec![usize::MAX; n];
            prev[s] = s;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for y in 0..n {
                    if prev[y] == usize::MAX && cap[x][y] > 0 {
                        prev[y] = x;
                        q.push_back(y);
                    }
                }
            }
            if prev[t] == usize::MAX {
                return flow;
            }
            let mut y = t;
            while y != s {
                let x = prev[y];
                cap[x][y] -= 1;
                cap[y][x] += 1;
                y = x;
            }
            flow += 1;
        }
    }

    #[test]
    fn bipartite_matches_max_flow() {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let left = (next() % 7) as usize + 1;
            let right = (next() % 7) as usize + 1;
            let mut edges = Vec::new();
            for u in 0..left {
                for v in 0..right {
                    if next() % 3 == 0 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(left + right, edges.iter().map(|&(u, v)| (u, left + v))).unwrap();
            let m = max_matching(&g);
            assert!(m.is_valid_for(&g));
            assert_eq!(m.cardinality(), bipartite_max_flow(left, right, &edges));
        }
    }
}
