//! Edge-count-sensitive reconstruction by adaptive neighbor search.
//!
//! This is a simple binary-splitting stand-in using `O((n + m) log n)`
//! queries, not an `O(m log n / log m)` algorithm.

use crate::error::{invalid, Result};
use crate::graph::{normalize, Graph};
use crate::oracle::CcOracle;

/// Neighbors of `v` inside `s`, by binary splitting on `v`'s component.
///
/// Asks `cc({v} ∪ s)`; if `v` is isolated there, no vertex of `s` is a
/// neighbor. Otherwise the rest of `v`'s component is split in halves and
/// each half is searched on its own.
pub fn find_neighbors<O: CcOracle + ?Sized>(oracle: &mut O, v: usize, s: &[usize]) -> Result<Vec<usize>> {
    let s = normalize(s);
    if s.binary_search(&v).is_ok() {
        return Err(invalid(format!("vertex {v} must not be in its own search set")));
    }
    let mut found = Vec::new();
    let mut stack = vec![s];
    while let Some(part) = stack.pop() {
        if part.is_empty() {
            continue;
        }
        let mut q = part.clone();
        q.push(v);
        let parts = oracle.cc(&q)?;
        let block = parts
            .block_of(v)
            .map(|b| &parts.blocks()[b])
            .expect("queried vertex has a block");
        if block.len() == 1 {
            continue;
        }
        if part.len() == 1 {
            found.push(part[0]);
            continue;
        }
        let reach: Vec<usize> = block.iter().copied().filter(|&x| x != v).collect();
        let (lo, hi) = reach.split_at(reach.len() / 2);
        // searched low half first, so push it last
        stack.push(hi.to_vec());
        stack.push(lo.to_vec());
    }
    found.sort_unstable();
    Ok(found)
}

/// Learns every edge by searching each vertex's neighbors among later vertices.
pub fn reconstruct_edge_bounded<O: CcOracle + ?Sized>(oracle: &mut O) -> Result<Graph> {
    let n = oracle.vertex_count();
    let mut edges = Vec::new();
    for v in 0..n {
        let later: Vec<usize> = (v + 1..n).collect();
        for u in find_neighbors(oracle, v, &later)? {
            edges.push((v, u));
        }
    }
    Graph::from_edges(n, edges)
}
