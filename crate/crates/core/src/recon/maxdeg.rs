//! Bounded maximum degree (and bounded pairwise connectivity) reconstruction.

use super::{sample_round, CandidateGraph, DoublingTrace, Mode};
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::oracle::CcOracle;

/// Learns a graph of maximum degree at most `delta` from non-adaptive queries.
///
/// Randomized mode asks exactly [`sample_count`](super::sample_count)`(delta, n)`
/// queries with inclusion probability `1/(delta+1)`; scheme modes ask one query
/// per scheme entry. The output always contains the hidden edge set, and equals
/// it when every non-edge was split by some query.
pub fn reconstruct_bounded_degree<O: CcOracle + ?Sized>(oracle: &mut O, delta: usize, mut mode: Mode<'_>) -> Result<Graph> {
    let n = oracle.vertex_count();
    let mut cand = CandidateGraph::complete(n);
    let all: Vec<usize> = (0..n).collect();
    sample_round(oracle, &mut cand, &all, delta, n, &mut mode)?;
    Ok(cand.to_graph())
}

/// Same sampling as [`reconstruct_bounded_degree`] with the maximum pairwise
/// connectivity `lambda` in place of the degree bound.
pub fn reconstruct_bounded_connectivity<O: CcOracle + ?Sized>(oracle: &mut O, lambda: usize, mode: Mode<'_>) -> Result<Graph> {
    reconstruct_bounded_degree(oracle, lambda, mode)
}

/// Doubling search over the degree bound.
///
/// Starting at `D = 1`, each attempt runs the bounded-degree algorithm with
/// bound `D + 1` and fresh randomness. An output with a vertex of degree above
/// `D` doubles the guess; otherwise that output is returned.
pub fn reconstruct_unknown_degree<O: CcOracle + ?Sized>(oracle: &mut O, mut mode: Mode<'_>) -> Result<(Graph, DoublingTrace)> {
    if matches!(mode, Mode::Scheme(_)) {
        return Err(invalid("unknown-degree search builds its own schemes; use deterministic mode"));
    }
    let mut trace = DoublingTrace::default();
    let mut guess = 1usize;
    loop {
        let before = oracle.queries();
        let out = reconstruct_bounded_degree(oracle, guess + 1, mode.reborrow())?;
        trace.guesses.push(guess);
        trace.queries.push(oracle.queries() - before);
        if out.max_degree() <= guess {
            return Ok((out, trace));
        }
        guess *= 2;
    }
}
