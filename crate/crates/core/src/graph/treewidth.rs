//! Elimination orderings, tree decompositions and an exact treewidth decision
//! procedure for small graphs.
//!
//! The exact search works on `u128` adjacency masks and explores elimination
//! orderings in which every eliminated vertex has degree at most `w`. Two
//! safe reductions are applied before branching: a simplicial or almost
//! simplicial vertex of degree at most `w` can always be eliminated first.
//! Failed states are memoized by their set of remaining vertices, which fully
//! determines the elimination graph.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};

use super::Graph;
use crate::error::{invalid, Error, Result};

/// Default vertex-count limit for the exact search.
pub const DEFAULT_TREEWIDTH_GUARD: usize = 60;

/// Hard limit imposed by the mask representation.
const MASK_BITS: usize = 128;

/// Search nodes explored before giving up with a capacity error.
const NODE_LIMIT: u64 = 20_000_000;

/// A tree decomposition: `bags[i]` is the bag of tree node `i`, `tree[i]` its neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    /// Largest bag size minus one (0 for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// Decomposition induced by eliminating vertices in `order`.
    ///
    /// Node `i` holds the bag of the `i`-th eliminated vertex: the vertex and
    /// its neighbors at elimination time. Its parent is the bag of the
    /// earliest eliminated of those neighbors; roots of the resulting forest
    /// are chained together.
    pub fn from_ordering(g: &Graph, order: &[usize]) -> Result<Self> {
        let n = g.n();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(invalid("elimination order is not a permutation"));
            }
            pos[v] = i;
        }
        if order.len() != n {
            return Err(invalid("elimination order is not a permutation"));
        }
        let mut adj: Vec<BTreeSet<usize>> = (0..n)
            .map(|v| g.neighbors(v).iter().copied().collect())
            .collect();
        let mut bags = Vec::with_capacity(n);
        let mut tree = vec![Vec::new(); n];
        let mut last_root: Option<usize> = None;
        for (i, &v) in order.iter().enumerate() {
            let higher: Vec<usize> = adj[v].iter().copied().collect();
            for (a_idx, &a) in higher.iter().enumerate() {
                adj[a].remove(&v);
                for &b in &higher[a_idx + 1..] {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
            let mut bag = higher.clone();
            bag.push(v);
            bag.sort_unstable();
            bags.push(bag);
            match higher.iter().map(|&u| pos[u]).min() {
                Some(parent) => {
                    tree[i].push(parent);
                    tree[parent].push(i);
                }
                None => {
                    if let Some(r) = last_root {
                        tree[i].push(r);
                        tree[r].push(i);
                    }
                    last_root = Some(i);
                }
            }
        }
        Ok(TreeDecomposition { bags, tree })
    }

    /// Checks that `tree` is a tree and that the three decomposition
    /// conditions hold for `g`: vertex cover, edge cover, and connected
    /// occurrence subtrees.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let nodes = self.bags.len();
        if self.tree.len() != nodes {
            return Err(invalid("tree and bag counts differ"));
        }
        let tree_edges: usize = self.tree.iter().map(Vec::len).sum();
        if nodes > 0 && tree_edges != 2 * (nodes - 1) {
            return Err(invalid("decomposition tree has the wrong number of edges"));
        }
        if nodes > 0 && reachable(&self.tree, 0, |_| true).len() != nodes {
            return Err(invalid("decomposition tree is disconnected"));
        }
        let n = g.n();
        let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (t, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                occurs[v].push(t);
            }
        }
        for (v, nodes_of_v) in occurs.iter().enumerate() {
            let Some(&start) = nodes_of_v.first() else {
                return Err(invalid(format!("vertex {v} is in no bag")));
            };
            let member: HashSet<usize> = nodes_of_v.iter().copied().collect();
            if reachable(&self.tree, start, |t| member.contains(&t)).len() != member.len() {
                return Err(invalid(format!("bags containing {v} are not connected")));
            }
        }
        for (u, v) in g.edges() {
            let covered = occurs[u]
                .iter()
                .any(|&t| self.bags[t].binary_search(&v).is_ok());
            if !covered {
                return Err(invalid(format!("edge {u}-{v} is in no bag")));
            }
        }
        Ok(())
    }
}

fn reachable(tree: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut seen = vec![false; tree.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut out = Vec::new();
    while let Some(t) = stack.pop() {
        out.push(t);
        for &s in &tree[t] {
            if !seen[s] && allowed(s) {
                seen[s] = true;
                stack.push(s);
            }
        }
    }
    out
}

/// Greedy min-fill elimination ordering and its width.
///
/// Ties are broken by smaller current degree, then smaller vertex id.
pub fn min_fill_ordering(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut width = 0;
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in (0..n).filter(|&v| alive[v]) {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0;
            for (i, &a) in nb.iter().enumerate() {
                fill += nb[i + 1..].iter().filter(|b| !adj[a].contains(b)).count();
            }
            let key = (fill, nb.len(), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        let (_, deg, v) = best.expect("a live vertex remains");
        width = width.max(deg);
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    (order, width)
}

/// Whether `g` has treewidth at most `w`, for graphs with at most
/// [`DEFAULT_TREEWIDTH_GUARD`] vertices.
pub fn treewidth_leq(g: &Graph, w: usize) -> Result<bool> {
    treewidth_leq_with_guard(g, w, DEFAULT_TREEWIDTH_GUARD)
}

pub fn treewidth_leq_with_guard(g: &Graph, w: usize, guard: usize) -> Result<bool> {
    Ok(ordering_within(g, w, guard)?.is_some())
}

/// Exact treewidth, for graphs with at most `guard` vertices.
pub fn treewidth_exact(g: &Graph, guard: usize) -> Result<usize> {
    check_guard(g, guard)?;
    let (_, upper) = min_fill_ordering(g);
    if g.n() == 0 {
        return Ok(0);
    }
    let lower = MaskGraph::new(g).contraction_lower_bound(u128::MAX >> (MASK_BITS - g.n()));
    for w in lower..upper {
        if ordering_within(g, w, guard)?.is_some() {
            return Ok(w);
        }
    }
    Ok(upper)
}

fn check_guard(g: &Graph, guard: usize) -> Result<()> {
    let limit = guard.min(MASK_BITS);
    if g.n() > limit {
        return Err(Error::Capacity {
            what: "exact treewidth vertex guard",
            size: g.n() as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// An elimination ordering of width at most `w`, or `None` if the treewidth exceeds `w`.
pub fn ordering_within(g: &Graph, w: usize, guard: usize) -> Result<Option<Vec<usize>>> {
    let (order, width) = min_fill_ordering(g);
    if width <= w {
        return Ok(Some(order));
    }
    check_guard(g, guard)?;
    let mg = MaskGraph::new(g);
    let all = if g.n() == 0 {
        0
    } else {
        u128::MAX >> (MASK_BITS - g.n())
    };
    let mut search = Search {
        w,
        failed: HashSet::new(),
        nodes: 0,
    };
    let mut order = Vec::with_capacity(g.n());
    match search.run(mg, all, &mut order) {
        Some(true) => Ok(Some(order)),
        Some(false) => Ok(None),
        None => Err(Error::Capacity {
            what: "exact treewidth search nodes",
            size: search.nodes as u128,
            limit: NODE_LIMIT as u128,
        }),
    }
}

#[derive(Clone)]
struct MaskGraph {
    adj: Vec<u128>,
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

impl MaskGraph {
    fn new(g: &Graph) -> Self {
        let adj = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u128, |m, &u| m | (1u128 << u)))
            .collect();
        MaskGraph { adj }
    }

    fn eliminate(&mut self, v: usize, rem: u128) {
        let nb = self.adj[v] & rem;
        for u in bits(nb) {
            self.adj[u] |= nb;
            self.adj[u] &= !(1u128 << u);
        }
    }

    fn is_clique(&self, set: u128) -> bool {
        bits(set).all(|u| set & !(1u128 << u) & !self.adj[u] == 0)
    }

    /// Minor-min-width: repeatedly contract a min-degree vertex into its
    /// min-degree neighbor; the largest min degree seen bounds treewidth from below.
    fn contraction_lower_bound(&self, rem: u128) -> usize {
        let mut adj = self.adj.clone();
        let mut rem = rem;
        let mut lb = 0;
        while rem.count_ones() >= 2 {
            let v = bits(rem)
                .min_by_key(|&v| (adj[v] & rem).count_ones())
                .unwrap();
            let nb = adj[v] & rem;
            lb = lb.max(nb.count_ones() as usize);
            if let Some(u) = bits(nb).min_by_key(|&u| (adj[u] & rem).count_ones()) {
                let others = nb & !(1u128 << u);
                adj[u] |= others;
                for x in bits(others) {
                    adj[x] |= 1u128 << u;
                }
            }
            rem &= !(1u128 << v);
        }
        lb
    }
}

struct Search {
    w: usize,
    failed: HashSet<u128>,
    nodes: u64,
}

enum Reduction {
    Eliminate(usize),
    /// A simplicial vertex whose closed neighborhood is a clique larger than `w + 1`.
    Infeasible,
    None,
}

impl Search {
    fn reduction(&self, g: &MaskGraph, rem: u128) -> Reduction {
        for v in bits(rem) {
            let nb = g.adj[v] & rem;
            let deg = nb.count_ones() as usize;
            if g.is_clique(nb) {
                return if deg <= self.w {
                    Reduction::Eliminate(v)
                } else {
                    Reduction::Infeasible
                };
            }
            if deg <= self.w && bits(nb).any(|x| g.is_clique(nb & !(1u128 << x))) {
                return Reduction::Eliminate(v);
            }
        }
        Reduction::None
    }

    /// `Some(found)` or `None` when the node limit was hit. On success `order` holds a full ordering.
    fn run(&mut self, mut g: MaskGraph, mut rem: u128, order: &mut Vec<usize>) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            return None;
        }
        let mark = order.len();
        loop {
            if rem.count_ones() as usize <= self.w + 1 {
                order.extend(bits(rem));
                return Some(true);
            }
            match self.reduction(&g, rem) {
                Reduction::Eliminate(v) => {
                    g.eliminate(v, rem);
                    rem &= !(1u128 << v);
                    order.push(v);
                }
                Reduction::Infeasible => {
                    order.truncate(mark);
                    return Some(false);
                }
                Reduction::None => break,
            }
        }
        if self.failed.contains(&rem) || g.contraction_lower_bound(rem) > self.w {
            order.truncate(mark);
            return Some(false);
        }
        let mut candidates: Vec<(u32, usize)> = bits(rem)
            .map(|v| ((g.adj[v] & rem).count_ones(), v))
            .filter(|&(d, _)| d as usize <= self.w)
            .collect();
        candidates.sort_unstable();
        for (_, v) in candidates {
            let mut next = g.clone();
            next.eliminate(v, rem);
            let branch_mark = order.len();
            order.push(v);
            match self.run(next, rem & !(1u128 << v), order)? {
                true => return Some(true),
                false => order.truncate(branch_mark),
            }
        }
        self.failed.insert(rem);
        order.truncate(mark);
        Some(false)
    }
}
