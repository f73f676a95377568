//! Simple undirected graphs on dense vertex ids `0..n`, ground-truth component
//! computation and the plain-text graph file format.

mod generate;
mod io;
mod params;
pub mod treewidth;

pub use generate::{generate, Family};
pub use io::{parse_graph, read_graph, write_graph};
pub use params::{degeneracy, degeneracy_order, pairwise_connectivity, GraphParams};
pub use treewidth::{
    min_fill_ordering, treewidth_exact, treewidth_leq, treewidth_leq_with_guard, TreeDecomposition,
    DEFAULT_TREEWIDTH_GUARD,
};

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use crate::error::{invalid, Error, Result};

/// An immutable simple undirected graph. Vertices are `0..n`.
///
/// Adjacency lists are kept sorted, so derived equality is labeled equality
/// of edge sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate pairs (in either orientation)
    /// are merged; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Whether `s` is an independent set.
    pub fn is_independent(&self, s: &[usize]) -> bool {
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Subgraph induced by `s`, keeping the original vertex ids.
    pub fn induced(&self, s: &[usize]) -> Result<Graph> {
        let mask = membership(self.n(), s)?;
        Graph::from_edges(self.n(), self.edges().filter(|&(u, v)| mask[u] && mask[v]))
    }
}

pub(crate) fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v >= n {
        Err(Error::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}

pub(crate) fn membership(n: usize, s: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &v in s {
        check_vertex(v, n)?;
        mask[v] = true;
    }
    Ok(mask)
}

/// Sorted, deduplicated copy of a vertex list.
pub fn normalize(s: &[usize]) -> Vec<usize> {
    let mut out = s.to_vec();
    out.sort_unstable();
    out.dedup();
    out
}

/// A partition of a vertex set into disjoint nonempty blocks.
///
/// Canonical form: every block sorted ascending, blocks ordered by their
/// smallest element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonicalizes `blocks`. Fails if blocks overlap or one is empty.
    pub fn from_blocks(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(invalid("empty block in partition"));
            }
            b.sort_unstable();
            for &v in b.iter() {
                if !seen.insert(v) {
                    return Err(invalid(format!("vertex {v} appears in two blocks")));
                }
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<usize>> {
        self.blocks
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// All vertices covered, ascending.
    pub fn ground_set(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    /// Index of the block containing `v`, if any.
    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&v).is_ok())
    }

    /// Block index per vertex for a ground set of size `n`.
    pub fn labels(&self, n: usize) -> Vec<Option<usize>> {
        let mut labels = vec![None; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                if v < n {
                    labels[v] = Some(i);
                }
            }
        }
        labels
    }
}

/// Connected components of `g[s]` by direct traversal.
pub fn components_bruteforce(g: &Graph, s: &[usize]) -> Result<Partition> {
    let n = g.n();
    let inside = membership(n, s)?;
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    let mut queue = VecDeque::new();
    for v in normalize(s) {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        queue.push_back(v);
        let mut block = Vec::new();
        while let Some(x) = queue.pop_front() {
            block.push(x);
            for &y in g.neighbors(x) {
                if inside[y] && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    // Traversal starts from ascending roots, so blocks are already canonical.
    Ok(Partition { blocks })
}

/// Labeled equality of edge sets. Graphs must have the same vertex count.
pub fn graph_equal(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() {
        return Err(invalid(format!(
            "cannot compare graphs on {} and {} vertices",
            a.n(),
            b.n()
        )));
    }
    Ok(a == b)
}
