//! Seeded instance generators.
//!
//! All randomness comes from SplitMix64 (state initialised to the seed,
//! `state += 0x9E3779B97F4A7C15` then the usual xor-shift-multiply mix per
//! output). Derived draws are fixed so other implementations can replay a
//! sweep from its seeds:
//!
//! - `chance(p)`: `(next >> 11) * 2^-53 < p`
//! - `below(k)`: `next % k`
//! - shuffles are Fisher–Yates from the last index down, `j = below(i + 1)`
//! - pairs are visited as `(0,1), (0,2), ..., (n-2,n-1)`
//! - trees decode a Prüfer sequence of `n - 2` draws `below(n)`

use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::graph::Graph;
use crate::instance::{Instance, TaskParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Gnp,
    Tree,
    HamPath,
    Path,
    Cycle,
    Star,
    Complete,
    Edgeless,
}

impl GenKind {
    pub const ALL: [GenKind; 8] = [
        GenKind::Gnp,
        GenKind::Tree,
        GenKind::HamPath,
        GenKind::Path,
        GenKind::Cycle,
        GenKind::Star,
        GenKind::Complete,
        GenKind::Edgeless,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GenKind::Gnp => "gnp",
            GenKind::Tree => "tree",
            GenKind::HamPath => "hampath",
            GenKind::Path => "path",
            GenKind::Cycle => "cycle",
            GenKind::Star => "star",
            GenKind::Complete => "complete",
            GenKind::Edgeless => "edgeless",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GenKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GenError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("unknown graph kind `{0}`")]
    UnknownKind(String),
    #[error("probability {name}={value} is outside [0, 1]")]
    Probability { name: &'static str, value: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    /// Edge probability, `gnp` only.
    pub p: f64,
    /// Extra-edge probability, `hampath` only.
    pub q: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(kind: GenKind, n: usize, seed: u64) -> Self {
        GenSpec {
            kind,
            n,
            p: 0.5,
            q: 0.0,
            seed,
        }
    }
}

/// The seeded stream behind every generator.
pub struct Sampler {
    rng: SplitMix64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn below(&mut self, k: u64) -> u64 {
        assert!(k > 0);
        self.next_u64() % k
    }

    pub fn chance(&mut self, p: f64) -> bool {
        ((self.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < p
    }

    pub fn shuffle<T>(&mut self, v: &mut [T]) {
        for i in (1..v.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            v.swap(i, j);
        }
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        self.shuffle(&mut v);
        v
    }

    pub fn gnp(&mut self, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.chance(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).expect("pairs are distinct")
    }

    /// `gnp` redrawn from the same stream until connected. `p` must leave a
    /// realistic chance of connectivity.
    pub fn connected_gnp(&mut self, n: usize, p: f64) -> Graph {
        loop {
            let g = self.gnp(n, p);
            if g.is_connected() {
                return g;
            }
        }
    }

    /// Uniform labelled tree on `n` vertices.
    pub fn tree(&mut self, n: usize) -> Graph {
        if n < 2 {
            return Graph::empty(n);
        }
        let seq: Vec<usize> = (0..n - 2).map(|_| self.below(n as u64) as usize).collect();
        Graph::from_edges(n, prufer_edges(n, &seq)).expect("Prüfer decoding yields a tree")
    }

    /// A path through a random vertex order, plus every other pair with
    /// probability `q`.
    pub fn hampath(&mut self, n: usize, q: f64) -> Graph {
        let order = self.permutation(n);
        let mut edges: Vec<(usize, usize)> = order.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
        let path = Graph::from_edges(n, edges.iter().copied()).expect("a path is simple");
        for u in 0..n {
            for v in u + 1..n {
                if !path.has_edge(u, v) && self.chance(q) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).expect("pairs are distinct")
    }
}

fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = leaves.pop_first().expect("a leaf remains");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let u = leaves.pop_first().expect("two leaves remain");
    let w = leaves.pop_first().expect("two leaves remain");
    edges.push((u, w));
    edges
}

fn check_probability(name: &'static str, value: f64) -> Result<(), GenError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(GenError::Probability { name, value })
    }
}

pub fn generate_graph(spec: &GenSpec) -> Result<Graph, GenError> {
    check_probability("p", spec.p)?;
    check_probability("q", spec.q)?;
    let n = spec.n;
    let mut s = Sampler::new(spec.seed);
    let fixed = |edges: Vec<(usize, usize)>| Graph::from_edges(n, edges).expect("fixed families are simple");
    Ok(match spec.kind {
        GenKind::Gnp => s.gnp(n, spec.p),
        GenKind::Tree => s.tree(n),
        GenKind::HamPath => s.hampath(n, spec.q),
        GenKind::Path => fixed((1..n).map(|v| (v - 1, v)).collect()),
        GenKind::Cycle => {
            let mut e: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            if n >= 3 {
                e.push((0, n - 1));
            }
            fixed(e)
        }
        GenKind::Star => fixed((1..n).map(|v| (0, v)).collect()),
        GenKind::Complete => fixed((0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()),
        GenKind::Edgeless => Graph::empty(n),
    })
}

pub fn generate(spec: &GenSpec, params: TaskParams) -> Result<Instance, GenError> {
    Ok(Instance::new(generate_graph(spec)?, params))
}
