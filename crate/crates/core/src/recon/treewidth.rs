//! Bounded-treewidth reconstruction.
//!
//! A non-adaptive sampling round learns a supergraph of small treewidth. A
//! second round prunes it: repeatedly take a balanced separator of every
//! component of the unprocessed part, and query each separator pair together
//! and each separator vertex together with every color class of the rest.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use super::{sample_round, CandidateGraph, DoublingTrace, Mode};
use crate::error::{invalid, Error, Result};
use crate::graph::{
    min_fill_ordering, treewidth::ordering_within, treewidth_leq, Graph, TreeDecomposition, DEFAULT_TREEWIDTH_GUARD,
};
use crate::oracle::CcOracle;

/// Learns a supergraph of the hidden graph that has treewidth at most `k`
/// with high probability. Same sampling as the bounded-degree algorithm.
pub fn learn_supergraph<O: CcOracle + ?Sized>(oracle: &mut O, k: usize, mut mode: Mode<'_>) -> Result<CandidateGraph> {
    let n = oracle.vertex_count();
    let mut cand = CandidateGraph::complete(n);
    let all: Vec<usize> = (0..n).collect();
    sample_round(oracle, &mut cand, &all, k, n, &mut mode)?;
    Ok(cand)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// Width at most `k`, found by the exact search when min-fill is not enough.
    Exact(usize),
    MinFill,
}

pub fn tree_decomposition(h: &Graph, strategy: Decomposition) -> Result<TreeDecomposition> {
    match strategy {
        Decomposition::MinFill => TreeDecomposition::from_ordering(h, &min_fill_ordering(h).0),
        Decomposition::Exact(k) => match ordering_within(h, k, DEFAULT_TREEWIDTH_GUARD)? {
            Some(order) => TreeDecomposition::from_ordering(h, &order),
            None => Err(Error::ParameterTooSmall {
                param: k,
                reason: "candidate treewidth exceeds the bound".into(),
            }),
        },
    }
}

/// Colors `1..=width+1`, proper on `h`.
///
/// Bags are visited breadth-first from node 0; each vertex is colored when it
/// first appears, avoiding the colors already used in that bag.
pub fn proper_coloring(h: &Graph, td: &TreeDecomposition) -> Result<Vec<usize>> {
    td.validate(h)?;
    let n = h.n();
    let mut color = vec![0usize; n];
    if td.bags.is_empty() {
        return Ok(color);
    }
    let mut seen = vec![false; td.bags.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(t) = queue.pop_front() {
        let bag = &td.bags[t];
        let mut used: Vec<usize> = bag.iter().map(|&v| color[v]).filter(|&c| c > 0).collect();
        for &v in bag {
            if color[v] == 0 {
                let c = (1..).find(|c| !used.contains(c)).unwrap();
                color[v] = c;
                used.push(c);
            }
        }
        for &s in &td.tree[t] {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
    }
    Ok(color)
}

/// Components of `h[within]`, each sorted, ordered by smallest vertex.
pub fn components_within(h: &Graph, within: &[usize]) -> Vec<Vec<usize>> {
    let n = h.n();
    let mut inside = vec![false; n];
    for &v in within {
        inside[v] = true;
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut sorted = within.to_vec();
    sorted.sort_unstable();
    for v in sorted {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let mut comp = vec![v];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for &y in h.neighbors(x) {
                if inside[y] && !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// A bag restricted to `comp` whose removal leaves components of at most
/// `|comp|/2` vertices; the smallest such bag wins. Components of at most
/// `width + 1` vertices are their own separator.
pub fn balanced_separator(h: &Graph, td: &TreeDecomposition, comp: &[usize]) -> Vec<usize> {
    let mut comp = comp.to_vec();
    comp.sort_unstable();
    if comp.len() <= td.width() + 1 {
        return comp;
    }
    let mut best: Option<Vec<usize>> = None;
    for bag in &td.bags {
        let sep: Vec<usize> = bag.iter().copied().filter(|v| comp.binary_search(v).is_ok()).collect();
        if sep.is_empty() || best.as_ref().is_some_and(|b| b.len() <= sep.len()) {
            continue;
        }
        let rest: Vec<usize> = comp.iter().copied().filter(|v| sep.binary_search(v).is_err()).collect();
        if components_within(h, &rest).iter().all(|c| 2 * c.len() <= comp.len()) {
            best = Some(sep);
        }
    }
    // a valid decomposition always has such a bag; keep progress regardless
    best.unwrap_or(comp)
}

/// One pass of the pruning loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanIteration {
    /// Unprocessed vertices at the start of the pass.
    pub remaining: Vec<usize>,
    /// One separator per component of the candidate restricted to `remaining`.
    pub separators: Vec<Vec<usize>>,
    /// Largest separator size.
    pub h: usize,
    /// Queries pairing separator positions `i < j`.
    pub pair_queries: Vec<Vec<usize>>,
    /// Queries joining one vertex per separator with one color class of the rest.
    pub color_queries: Vec<Vec<usize>>,
}

/// Every query the pruning round will ask, grouped by pass.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorPlan {
    pub width: usize,
    pub colors: usize,
    pub coloring: Vec<usize>,
    pub iterations: Vec<PlanIteration>,
}

impl SeparatorPlan {
    pub fn queries(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.iterations
            .iter()
            .flat_map(|it| it.pair_queries.iter().chain(&it.color_queries))
    }

    pub fn query_count(&self) -> usize {
        self.iterations
            .iter()
            .map(|it| it.pair_queries.len() + it.color_queries.len())
            .sum()
    }
}

/// Builds the full query collection of the pruning round for candidate `h`.
pub fn plan_pruning(h: &Graph, td: &TreeDecomposition, coloring: &[usize]) -> SeparatorPlan {
    let n = h.n();
    let colors = coloring.iter().copied().max().unwrap_or(0);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut iterations = Vec::new();
    while !remaining.is_empty() {
        let separators: Vec<Vec<usize>> = components_within(h, &remaining)
            .iter()
            .map(|c| balanced_separator(h, td, c))
            .collect();
        let hmax = separators.iter().map(Vec::len).max().unwrap_or(0);
        let mut in_sep = vec![false; n];
        for s in &separators {
            for &v in s {
                in_sep[v] = true;
            }
        }
        let rest: Vec<usize> = remaining.iter().copied().filter(|&v| !in_sep[v]).collect();

        let mut pair_queries = Vec::new();
        for i in 0..hmax {
            for j in i + 1..hmax {
                let mut q: Vec<usize> = separators
                    .iter()
                    .flat_map(|s| s.get(i).into_iter().chain(s.get(j)))
                    .copied()
                    .collect();
                q.sort_unstable();
                pair_queries.push(q);
            }
        }
        let mut color_queries = Vec::new();
        for i in 0..hmax {
            for c in 1..=colors {
                let mut q: Vec<usize> = separators.iter().map(|s| s[i % s.len()]).collect();
                q.extend(rest.iter().copied().filter(|&v| coloring[v] == c));
                q.sort_unstable();
                color_queries.push(q);
            }
        }
        iterations.push(PlanIteration {
            remaining: std::mem::replace(&mut remaining, rest),
            separators,
            h: hmax,
            pair_queries,
            color_queries,
        });
    }
    SeparatorPlan {
        width: td.width(),
        colors,
        coloring: coloring.to_vec(),
        iterations,
    }
}

/// Prunes a supergraph `h` of the hidden graph down to the hidden graph.
///
/// With a width hint `k` the decomposition is searched with width at most
/// `k` first; otherwise (or if that fails) min-fill is used. A wider
/// decomposition only costs queries. The output always contains the hidden
/// edge set, and equals it when `h` does.
pub fn prune_supergraph<O: CcOracle + ?Sized>(
    oracle: &mut O,
    h: &Graph,
    width_hint: Option<usize>,
) -> Result<(Graph, SeparatorPlan)> {
    if h.n() != oracle.vertex_count() {
        return Err(invalid("candidate and oracle disagree on the vertex count"));
    }
    let td = match width_hint {
        Some(k) => tree_decomposition(h, Decomposition::Exact(k))
            .or_else(|_| tree_decomposition(h, Decomposition::MinFill))?,
        None => tree_decomposition(h, Decomposition::MinFill)?,
    };
    let coloring = proper_coloring(h, &td)?;
    let plan = plan_pruning(h, &td, &coloring);
    let mut cand = CandidateGraph::from_graph(h);
    for q in plan.queries() {
        cand.remove_split_pairs(&oracle.cc(q)?);
    }
    Ok((cand.to_graph(), plan))
}

/// Accounting for one learn-then-prune run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreewidthRun {
    pub learn_queries: u64,
    pub prune_queries: u64,
    /// Passes of the pruning loop.
    pub iterations: usize,
    /// Width of the decomposition used for pruning.
    pub width: usize,
    /// Whether the learned candidate had treewidth at most the parameter,
    /// when that could be decided.
    pub candidate_within_bound: Option<bool>,
}

/// Learns a supergraph with parameter `k`, then prunes it.
pub fn reconstruct_treewidth<O: CcOracle + ?Sized>(oracle: &mut O, k: usize, mode: Mode<'_>) -> Result<(Graph, TreewidthRun)> {
    let start = oracle.queries();
    let cand = learn_supergraph(oracle, k, mode)?.to_graph();
    let learned = oracle.queries();
    let within = treewidth_leq(&cand, k).ok();
    let (out, plan) = prune_supergraph(oracle, &cand, Some(k))?;
    Ok((
        out,
        TreewidthRun {
            learn_queries: learned - start,
            prune_queries: oracle.queries() - learned,
            iterations: plan.iterations.len(),
            width: plan.width,
            candidate_within_bound: within,
        },
    ))
}

/// Doubling search over the treewidth.
///
/// Each attempt learns a supergraph with guess `D`; if that candidate has
/// treewidth above `D` the guess doubles, otherwise the candidate is pruned
/// and returned. The treewidth decision costs no queries but is only
/// available for candidates within the exact-search guard.
pub fn reconstruct_unknown_treewidth<O: CcOracle + ?Sized>(
    oracle: &mut O,
    mut mode: Mode<'_>,
) -> Result<(Graph, DoublingTrace, TreewidthRun)> {
    if matches!(mode, Mode::Scheme(_)) {
        return Err(invalid("unknown-treewidth search builds its own schemes; use deterministic mode"));
    }
    let mut trace = DoublingTrace::default();
    let mut guess = 1usize;
    loop {
        let before = oracle.queries();
        let cand = learn_supergraph(oracle, guess, mode.reborrow())?.to_graph();
        trace.guesses.push(guess);
        if treewidth_leq(&cand, guess)? {
            let learned = oracle.queries();
            let (out, plan) = prune_supergraph(oracle, &cand, Some(guess))?;
            trace.queries.push(oracle.queries() - before);
            let run = TreewidthRun {
                learn_queries: learned - before,
                prune_queries: oracle.queries() - learned,
                iterations: plan.iterations.len(),
                width: plan.width,
                candidate_within_bound: Some(true),
            };
            return Ok((out, trace, run));
        }
        trace.queries.push(oracle.queries() - before);
        guess *= 2;
    }
}
