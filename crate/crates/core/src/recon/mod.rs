//! Reconstruction algorithms and the supergraph candidate they share.

pub mod degeneracy;
pub mod edges;
pub mod maxdeg;
pub mod treewidth;

use fixedbitset::FixedBitSet;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{Graph, Partition};
use crate::oracle::CcOracle;
use crate::scheme::{bernoulli_sample, deterministic_scheme, QueryScheme};

/// Working supergraph: starts complete and only loses pairs that some answer
/// showed in different components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateGraph {
    rows: Vec<FixedBitSet>,
    m: usize,
}

impl CandidateGraph {
    pub fn complete(n: usize) -> Self {
        let mut rows = Vec::with_capacity(n);
        for v in 0..n {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert_range(..);
            row.set(v, false);
            rows.push(row);
        }
        CandidateGraph {
            rows,
            m: n * n.saturating_sub(1) / 2,
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in g.edges() {
            rows[u].insert(v);
            rows[v].insert(u);
        }
        CandidateGraph {
            rows,
            m: g.edge_count(),
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.rows[u].contains(v)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if self.has_edge(u, v) {
            self.rows[u].set(v, false);
            self.rows[v].set(u, false);
            self.m -= 1;
        }
    }

    /// Number of candidate neighbors of `v` inside `within`.
    pub fn degree_within(&self, v: usize, within: &FixedBitSet) -> usize {
        self.rows[v].intersection_count(within)
    }

    /// Drops every pair whose endpoints lie in different blocks of `parts`.
    pub fn remove_split_pairs(&mut self, parts: &Partition) {
        if parts.len() < 2 {
            return;
        }
        let mut all = FixedBitSet::with_capacity(self.n());
        for b in parts.blocks() {
            all.extend(b.iter().copied());
        }
        let mut removed = 0;
        for b in parts.blocks() {
            let mut outside = all.clone();
            for &v in b {
                outside.set(v, false);
            }
            for &v in b {
                let before = self.rows[v].count_ones(..);
                self.rows[v].difference_with(&outside);
                removed += before - self.rows[v].count_ones(..);
            }
        }
        // each split pair was counted from both sides
        self.m -= removed / 2;
    }

    pub fn to_graph(&self) -> Graph {
        let edges = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)));
        Graph::from_edges(self.n(), edges).expect("candidate rows hold valid pairs")
    }
}

/// Where the sampled queries come from.
pub enum Mode<'a> {
    /// Fresh Bernoulli subsets drawn from the generator.
    Randomized(&'a mut dyn RngCore),
    /// A caller-supplied scheme, used for one fixed parameter.
    Scheme(&'a QueryScheme),
    /// The splitter-derived scheme for whatever parameter a round needs.
    Deterministic,
}

impl Mode<'_> {
    pub fn reborrow(&mut self) -> Mode<'_> {
        match self {
            Mode::Randomized(rng) => Mode::Randomized(&mut **rng),
            Mode::Scheme(s) => Mode::Scheme(s),
            Mode::Deterministic => Mode::Deterministic,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Mode::Randomized(_) => "randomized",
            Mode::Scheme(_) => "scheme",
            Mode::Deterministic => "deterministic",
        }
    }
}

/// Number of random queries for parameter `param` over `n` vertices:
/// `ceil(3e (param+1)^2 ln n)`, zero when `n <= 1`.
pub fn sample_count(param: usize, n: usize) -> u64 {
    if n <= 1 {
        return 0;
    }
    let p1 = (param + 1) as f64;
    (3.0 * std::f64::consts::E * p1 * p1 * (n as f64).ln()).ceil() as u64
}

/// Non-adaptive sampling round shared by the bounded-degree, treewidth and
/// degeneracy algorithms.
///
/// Randomized: `sample_count(param, count_n)` subsets of `ground`, each vertex
/// kept with probability `1/(param+1)`. Scheme modes: every scheme query
/// restricted to `ground`. When `ground` is not the full vertex set,
/// restricted scheme queries with fewer than two vertices are skipped.
/// Returns the number of queries asked.
pub(crate) fn sample_round<O: CcOracle + ?Sized>(
    oracle: &mut O,
    cand: &mut CandidateGraph,
    ground: &[usize],
    param: usize,
    count_n: usize,
    mode: &mut Mode<'_>,
) -> Result<u64> {
    let n = oracle.vertex_count();
    let full = ground.len() == n;
    if ground.len() <= 1 && !full {
        return Ok(0);
    }
    let mut asked = 0u64;
    match mode {
        Mode::Randomized(rng) => {
            let t = sample_count(param, count_n);
            for _ in 0..t {
                let q = bernoulli_sample(ground, (param + 1) as f64, &mut **rng)?;
                cand.remove_split_pairs(&oracle.cc(&q)?);
                asked += 1;
            }
        }
        Mode::Scheme(scheme) => {
            if scheme.n != n {
                return Err(invalid(format!("scheme over {} vertices, oracle has {n}", scheme.n)));
            }
            if scheme.p < param.min(n.saturating_sub(2)) {
                return Err(invalid(format!("scheme has p={} but the round needs p={param}", scheme.p)));
            }
            asked += run_scheme(oracle, cand, ground, full, scheme)?;
        }
        Mode::Deterministic => {
            if n >= 2 {
                let scheme = deterministic_scheme(n, param.min(n - 2))?;
                asked += run_scheme(oracle, cand, ground, full, &scheme)?;
            }
        }
    }
    Ok(asked)
}

fn run_scheme<O: CcOracle + ?Sized>(
    oracle: &mut O,
    cand: &mut CandidateGraph,
    ground: &[usize],
    full: bool,
    scheme: &QueryScheme,
) -> Result<u64> {
    let mut asked = 0;
    let mut inside = FixedBitSet::with_capacity(oracle.vertex_count());
    inside.extend(ground.iter().copied());
    for q in &scheme.queries {
        let q: Vec<usize> = if full {
            q.clone()
        } else {
            let r: Vec<usize> = q.iter().copied().filter(|&v| inside.contains(v)).collect();
            if r.len() < 2 {
                continue;
            }
            r
        };
        cand.remove_split_pairs(&oracle.cc(&q)?);
        asked += 1;
    }
    Ok(asked)
}

/// Record of a doubling search over an unknown parameter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingTrace {
    /// Guess used by each attempt, in order.
    pub guesses: Vec<usize>,
    /// Queries spent by each attempt.
    pub queries: Vec<u64>,
}

impl DoublingTrace {
    pub fn final_guess(&self) -> usize {
        self.guesses.last().copied().unwrap_or(0)
    }

    pub fn attempts(&self) -> usize {
        self.guesses.len()
    }

    pub fn total_queries(&self) -> u64 {
        self.queries.iter().sum()
    }
}
