use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use super::treewidth::{min_fill_ordering, treewidth_exact};
use super::Graph;

/// Min-degree peeling order together with the degeneracy it certifies.
pub fn degeneracy_order(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
    for v in 0..n {
        buckets[degree[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    let mut low = 0;
    while order.len() < n {
        // Entries may be stale; skip until a live vertex with matching degree shows up.
        let v = loop {
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop().unwrap();
            if !removed[v] && degree[v] == low {
                break v;
            }
        };
        d = d.max(low);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                buckets[degree[w]].push(w);
                low = low.min(degree[w]);
            }
        }
    }
    (d, order)
}

/// Degeneracy: the largest minimum degree met along the min-degree peeling order.
pub fn degeneracy(g: &Graph) -> usize {
    degeneracy_order(g).0
}

/// Maximum over vertex pairs of the number of vertex-disjoint paths that have
/// at least one internal vertex. A direct edge between the pair does not count.
pub fn pairwise_connectivity(g: &Graph) -> usize {
    let n = g.n();
    let mut best = 0;
    for u in 0..n {
        for v in u + 1..n {
            if g.degree(u).min(g.degree(v)) <= best {
                continue;
            }
            best = best.max(disjoint_paths(g, u, v));
        }
    }
    best
}

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i32>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add(&mut self, a: usize, b: usize, c: i32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.head.len()];
        let mut queue = VecDeque::from([s]);
        let mut reached = vec![false; self.head.len()];
        reached[s] = true;
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &e in &self.head[x] {
                let y = self.to[e];
                if self.cap[e] > 0 && !reached[y] {
                    reached[y] = true;
                    via[y] = e;
                    queue.push_back(y);
                }
            }
        }
        if !reached[t] {
            return false;
        }
        let mut x = t;
        while x != s {
            let e = via[x];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            x = self.to[e ^ 1];
        }
        true
    }
}

/// Internally vertex-disjoint `u`-`v` paths of length at least two.
fn disjoint_paths(g: &Graph, u: usize, v: usize) -> usize {
    let n = g.n();
    // Vertex x splits into x_in = 2x and x_out = 2x + 1.
    let mut net = FlowNet::new(2 * n);
    for x in 0..n {
        if x != u && x != v {
            net.add(2 * x, 2 * x + 1, 1);
        }
    }
    for (a, b) in g.edges() {
        if (a == u && b == v) || (a == v && b == u) {
            continue;
        }
        net.add(2 * a + 1, 2 * b, 1);
        net.add(2 * b + 1, 2 * a, 1);
    }
    let mut flow = 0;
    while net.augment(2 * u + 1, 2 * v) {
        flow += 1;
    }
    flow
}

/// Treewidth as far as it could be determined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreewidthValue {
    Exact(usize),
    /// Graph too large for the exact search; heuristic upper bound.
    AtMost(usize),
}

impl TreewidthValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            TreewidthValue::Exact(k) => Some(k),
            TreewidthValue::AtMost(_) => None,
        }
    }

    pub fn upper_bound(self) -> usize {
        match self {
            TreewidthValue::Exact(k) | TreewidthValue::AtMost(k) => k,
        }
    }
}

/// Structural parameters of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphParams {
    pub max_degree: usize,
    pub degeneracy: usize,
    pub treewidth: TreewidthValue,
    /// Only computed up to `connectivity_limit` vertices.
    pub pairwise_connectivity: Option<usize>,
    pub edge_count: usize,
}

impl GraphParams {
    /// Computes every parameter; treewidth exactly when `g.n() <= treewidth_guard`.
    pub fn compute(g: &Graph, treewidth_guard: usize, connectivity_limit: usize) -> Self {
        let treewidth = match treewidth_exact(g, treewidth_guard) {
            Ok(k) => TreewidthValue::Exact(k),
            Err(_) => TreewidthValue::AtMost(min_fill_ordering(g).1),
        };
        GraphParams {
            max_degree: g.max_degree(),
            degeneracy: degeneracy(g),
            treewidth,
            pairwise_connectivity: (g.n() <= connectivity_limit).then(|| pairwise_connectivity(g)),
            edge_count: g.edge_count(),
        }
    }
}
