//! Bounded-degeneracy reconstruction by repeated peeling.
//!
//! Each round samples the active set `V'` as if its maximum degree were `4d`,
//! then retires every active vertex whose candidate degree inside `V'` is at
//! most `4d`. In a `d`-degenerate graph at least half of any vertex set has
//! degree at most `4d` inside it, so `V'` at least halves each round.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{sample_round, CandidateGraph, DoublingTrace, Mode};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::oracle::CcOracle;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelRound {
    /// `|V'|` at the start of the round.
    pub active: usize,
    /// Vertices retired this round.
    pub removed: Vec<usize>,
    pub queries: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelTrace {
    /// Degree threshold used by every round.
    pub bound: usize,
    pub rounds: Vec<PeelRound>,
}

impl PeelTrace {
    pub fn total_queries(&self) -> u64 {
        self.rounds.iter().map(|r| r.queries).sum()
    }
}

/// What to do when a round retires fewer than half of the active vertices.
#[derive(Clone, Copy, PartialEq, Eq)]
enum SlowRound {
    Continue,
    Abort,
}

fn peel<O: CcOracle + ?Sized>(
    oracle: &mut O,
    bound: usize,
    mode: &mut Mode<'_>,
    slow: SlowRound,
) -> Result<(Graph, PeelTrace)> {
    let n = oracle.vertex_count();
    let mut cand = CandidateGraph::complete(n);
    let mut active: Vec<usize> = (0..n).collect();
    let mut trace = PeelTrace {
        bound,
        rounds: Vec::new(),
    };
    while !active.is_empty() {
        let asked = sample_round(oracle, &mut cand, &active, bound, n, mode)?;
        let mut inside = FixedBitSet::with_capacity(n);
        inside.extend(active.iter().copied());
        let (low, high): (Vec<usize>, Vec<usize>) =
            active.iter().partition(|&&v| cand.degree_within(v, &inside) <= bound);
        let round = PeelRound {
            active: active.len(),
            removed: low,
            queries: asked,
        };
        let too_few = round.removed.is_empty() || (slow == SlowRound::Abort && 2 * round.removed.len() < round.active);
        trace.rounds.push(round);
        if too_few {
            return Err(Error::ParameterTooSmall {
                param: bound,
                reason: format!("a peeling round retired too few of {} active vertices", active.len()),
            });
        }
        active = high;
    }
    Ok((cand.to_graph(), trace))
}

/// Reconstructs a graph of degeneracy at most `d` with threshold `4d`.
///
/// Scheme mode restricts every query of the given scheme to the active set;
/// the scheme must have `p >= 4d` (deterministic mode builds one). Fails with
/// [`Error::ParameterTooSmall`] if a round retires nothing, which only happens
/// when `d` is below the true degeneracy.
pub fn reconstruct_degeneracy<O: CcOracle + ?Sized>(oracle: &mut O, d: usize, mut mode: Mode<'_>) -> Result<(Graph, PeelTrace)> {
    peel(oracle, 4 * d, &mut mode, SlowRound::Continue)
}

/// Doubling search over the degeneracy: a guess `D` runs peeling with
/// threshold `4D` and restarts from scratch with `2D` as soon as a round
/// retires fewer than half of the active vertices.
pub fn reconstruct_unknown_degeneracy<O: CcOracle + ?Sized>(
    oracle: &mut O,
    mut mode: Mode<'_>,
) -> Result<(Graph, DoublingTrace, PeelTrace)> {
    if matches!(mode, Mode::Scheme(_)) {
        return Err(invalid("unknown-degeneracy search builds its own schemes; use deterministic mode"));
    }
    let mut trace = DoublingTrace::default();
    let mut guess = 1usize;
    loop {
        let before = oracle.queries();
        let attempt = peel(oracle, 4 * guess, &mut mode, SlowRound::Abort);
        trace.guesses.push(guess);
        trace.queries.push(oracle.queries() - before);
        match attempt {
            Ok((g, peel_trace)) => return Ok((g, trace, peel_trace)),
            Err(Error::ParameterTooSmall { .. }) => guess *= 2,
            Err(e) => return Err(e),
        }
    }
}
