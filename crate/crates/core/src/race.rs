//! Running several reconstruction algorithms against each other, one query
//! at a time, and keeping the first to finish.
//!
//! Every contender runs on its own scoped thread but only ever talks to the
//! coordinator, which owns one session per contender and serves them in
//! lockstep rounds: in each round every unfinished contender gets exactly one
//! answer, in list order. Only one contender computes at a time between
//! answers, so results do not depend on thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::mpsc::{channel, Receiver, Sender};

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::oracle::{CcOracle, OracleSession};
use crate::recon::edges::reconstruct_edge_bounded;
use crate::recon::maxdeg::reconstruct_unknown_degree;
use crate::recon::treewidth::reconstruct_unknown_treewidth;
use crate::recon::Mode;

type RunFn = dyn Fn(&mut dyn CcOracle) -> Result<Graph> + Send + Sync;

/// A named, re-runnable reconstruction algorithm.
pub struct Contender {
    pub id: String,
    run: Box<RunFn>,
}

impl Contender {
    pub fn new(id: impl Into<String>, run: impl Fn(&mut dyn CcOracle) -> Result<Graph> + Send + Sync + 'static) -> Self {
        Contender {
            id: id.into(),
            run: Box::new(run),
        }
    }

    pub fn run(&self, oracle: &mut dyn CcOracle) -> Result<Graph> {
        (self.run)(oracle)
    }

    /// Output and query count when run alone on a fresh session.
    pub fn run_standalone(&self, hidden: &Graph) -> Result<(Graph, u64)> {
        let mut s = OracleSession::counting(hidden);
        let g = self.run(&mut s)?;
        Ok((g, s.query_count()))
    }
}

/// Edge-bounded search, unknown-degree and unknown-treewidth doubling, each
/// randomized contender seeded from `seed`.
pub fn default_contenders(seed: u64) -> Vec<Contender> {
    vec![
        Contender::new("edge-bounded-standin", |o| reconstruct_edge_bounded(o)),
        Contender::new("unknown-degree", move |o| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            reconstruct_unknown_degree(o, Mode::Randomized(&mut rng)).map(|r| r.0)
        }),
        Contender::new("unknown-treewidth", move |o| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            reconstruct_unknown_treewidth(o, Mode::Randomized(&mut rng)).map(|r| r.0)
        }),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContenderOutcome {
    pub id: String,
    pub queries: u64,
    /// `"won"`, `"cancelled"`, or the error that stopped the contender.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaceReport {
    pub winner: String,
    pub winner_index: usize,
    pub winner_queries: u64,
    /// Scheduling rounds, including the one in which the winner finished.
    pub rounds: u64,
    pub total_queries: u64,
    pub contenders: Vec<ContenderOutcome>,
}

enum Request {
    Query(Vec<usize>),
    Done(Result<Graph>),
}

struct ChannelOracle {
    n: usize,
    queries: u64,
    requests: Sender<Request>,
    answers: Receiver<Result<Partition>>,
}

impl CcOracle for ChannelOracle {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn cc(&mut self, q: &[usize]) -> Result<Partition> {
        self.requests
            .send(Request::Query(q.to_vec()))
            .map_err(|_| Error::Cancelled)?;
        let answer = self.answers.recv().map_err(|_| Error::Cancelled)??;
        self.queries += 1;
        Ok(answer)
    }

    fn queries(&self) -> u64 {
        self.queries
    }
}

enum State {
    Running,
    Failed(Error),
}

struct Link {
    requests: Receiver<Request>,
    answers: Sender<Result<Partition>>,
    state: State,
}

/// Races `contenders` on `hidden` and returns the first finished output.
///
/// Ties within a round go to the contender listed first. With `c`
/// contenders and a winner needing `t` queries, at most `c * t + c - 1`
/// queries are asked in total. `budget` caps the total over all contenders.
pub fn race(hidden: &Graph, contenders: &[Contender], budget: Option<u64>) -> Result<(Graph, RaceReport)> {
    if contenders.is_empty() {
        return Err(crate::error::invalid("a race needs at least one contender"));
    }
    let n = hidden.n();
    std::thread::scope(|scope| {
        let mut links = Vec::with_capacity(contenders.len());
        for c in contenders {
            let (req_tx, req_rx) = channel();
            let (ans_tx, ans_rx) = channel();
            scope.spawn(move || {
                let mut oracle = ChannelOracle {
                    n,
                    queries: 0,
                    requests: req_tx.clone(),
                    answers: ans_rx,
                };
                let out = c.run(&mut oracle);
                // the coordinator may already be gone
                let _ = req_tx.send(Request::Done(out));
            });
            links.push(Link {
                requests: req_rx,
                answers: ans_tx,
                state: State::Running,
            });
        }
        let mut sessions: Vec<OracleSession> = contenders.iter().map(|_| OracleSession::counting(hidden)).collect();
        let mut total = 0u64;
        let mut rounds = 0u64;
        let mut winner: Option<(usize, Graph)> = None;
        while winner.is_none() && links.iter().any(|l| matches!(l.state, State::Running)) {
            rounds += 1;
            for i in 0..links.len() {
                if !matches!(links[i].state, State::Running) {
                    continue;
                }
                match links[i].requests.recv() {
                    Ok(Request::Query(q)) => {
                        let answer = if budget.is_some_and(|b| total >= b) {
                            Err(Error::BudgetExhausted { queries: total })
                        } else {
                            let a = sessions[i].cc_query(&q);
                            if a.is_ok() {
                                total += 1;
                            }
                            a
                        };
                        let _ = links[i].answers.send(answer);
                    }
                    Ok(Request::Done(Ok(g))) => {
                        winner = Some((i, g));
                        break;
                    }
                    Ok(Request::Done(Err(e))) => links[i].state = State::Failed(e),
                    Err(_) => links[i].state = State::Failed(Error::Cancelled),
                }
            }
        }
        let outcomes: Vec<ContenderOutcome> = contenders
            .iter()
            .zip(&links)
            .zip(&sessions)
            .enumerate()
            .map(|(i, ((c, l), s))| ContenderOutcome {
                id: c.id.clone(),
                queries: s.query_count(),
                status: match (&l.state, &winner) {
                    (State::Failed(e), _) => e.to_string(),
                    (State::Running, Some((w, _))) if *w == i => "won".into(),
                    (State::Running, _) => "cancelled".into(),
                },
            })
            .collect();
        // dropping the links unblocks and cancels every contender still running
        drop(links);
        let Some((w, g)) = winner else {
            return Err(match budget {
                Some(b) if total >= b => Error::BudgetExhausted { queries: total },
                _ => outcomes_error(&outcomes),
            });
        };
        let report = RaceReport {
            winner: contenders[w].id.clone(),
            winner_index: w,
            winner_queries: sessions[w].query_count(),
            rounds,
            total_queries: total,
            contenders: outcomes,
        };
        Ok((g, report))
    })
}

fn outcomes_error(outcomes: &[ContenderOutcome]) -> Error {
    let detail: Vec<String> = outcomes
        .iter()
        .map(|o| format!("{} after {} queries: {}", o.id, o.queries, o.status))
        .collect();
    Error::InvalidInput(format!("every contender failed ({})", detail.join("; ")))
}
