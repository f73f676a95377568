//! Query sessions over a hidden graph.
//!
//! An [`OracleSession`] is the only handle reconstruction code gets on the
//! hidden graph. Every answered query is counted, optionally checked against a
//! budget, and (for recording sessions) appended to a transcript.

use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

use crate::error::{invalid, Error, Result};
use crate::graph::{check_vertex, components_bruteforce, membership, normalize, Graph, Partition};

/// Anything that answers connected-components queries.
///
/// The reconstruction algorithms are written against this trait so they can
/// be driven by a plain session or by the race coordinator.
pub trait CcOracle {
    /// Size of the hidden vertex set.
    fn vertex_count(&self) -> usize;

    /// Connected components of the subgraph induced by `q`.
    fn cc(&mut self, q: &[usize]) -> Result<Partition>;

    /// Queries answered so far.
    fn queries(&self) -> u64;
}

impl<T: CcOracle + ?Sized> CcOracle for &mut T {
    fn vertex_count(&self) -> usize {
        (**self).vertex_count()
    }

    fn cc(&mut self, q: &[usize]) -> Result<Partition> {
        (**self).cc(q)
    }

    fn queries(&self) -> u64 {
        (**self).queries()
    }
}

/// How the maximal-independent-set oracle picks its answer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "kebab-case")]
pub enum MisStrategy {
    /// Greedy by ascending vertex id.
    #[default]
    GreedyLex,
    /// Answer `q \ {center}` whenever that set is independent and still
    /// maximal in `q`; otherwise greedy by ascending id.
    AdversaryAvoidCenter { center: usize },
}

/// One answered query, in the JSON-lines transcript layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum QueryRecord {
    Cc { q: Vec<usize>, out: Partition },
    Ccc { q: Vec<usize>, out: usize },
    Mis { q: Vec<usize>, out: Vec<usize> },
    Sep { v: usize, w: usize, u: Vec<usize>, out: bool },
}

pub struct OracleSession<'g> {
    hidden: &'g Graph,
    query_count: u64,
    budget: Option<u64>,
    transcript: Option<Vec<QueryRecord>>,
    mis_strategy: MisStrategy,
    sep_sizes: Vec<usize>,
}

impl<'g> OracleSession<'g> {
    /// A session that records every query in its transcript.
    pub fn new(hidden: &'g Graph) -> Self {
        OracleSession {
            hidden,
            query_count: 0,
            budget: None,
            transcript: Some(Vec::new()),
            mis_strategy: MisStrategy::default(),
            sep_sizes: Vec::new(),
        }
    }

    /// A session that only counts; used by the exhaustive sweeps.
    pub fn counting(hidden: &'g Graph) -> Self {
        OracleSession {
            transcript: None,
            ..OracleSession::new(hidden)
        }
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_mis_strategy(mut self, strategy: MisStrategy) -> Self {
        self.mis_strategy = strategy;
        self
    }

    pub fn n(&self) -> usize {
        self.hidden.n()
    }

    pub fn query_count(&self) -> u64 {
        self.query_count
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    /// Recorded queries; empty for counting sessions.
    pub fn transcript(&self) -> &[QueryRecord] {
        self.transcript.as_deref().unwrap_or(&[])
    }

    /// `|u|` of every separation query asked so far.
    pub fn sep_query_sizes(&self) -> &[usize] {
        &self.sep_sizes
    }

    fn charge(&mut self) -> Result<()> {
        if let Some(b) = self.budget {
            if self.query_count >= b {
                return Err(Error::BudgetExhausted {
                    queries: self.query_count,
                });
            }
        }
        self.query_count += 1;
        Ok(())
    }

    fn record(&mut self, rec: impl FnOnce() -> QueryRecord) {
        if let Some(t) = self.transcript.as_mut() {
            t.push(rec());
        }
    }

    fn checked(&self, q: &[usize]) -> Result<Vec<usize>> {
        for &v in q {
            check_vertex(v, self.n())?;
        }
        Ok(normalize(q))
    }

    pub fn cc_query(&mut self, q: &[usize]) -> Result<Partition> {
        let q = self.checked(q)?;
        self.charge()?;
        let out = components_bruteforce(self.hidden, &q)?;
        self.record(|| QueryRecord::Cc {
            q,
            out: out.clone(),
        });
        Ok(out)
    }

    /// Number of connected components of the induced subgraph.
    pub fn ccc_query(&mut self, q: &[usize]) -> Result<usize> {
        let q = self.checked(q)?;
        self.charge()?;
        let out = components_bruteforce(self.hidden, &q)?.len();
        self.record(|| QueryRecord::Ccc { q, out });
        Ok(out)
    }

    /// A maximal independent set of the induced subgraph, chosen by the session's strategy.
    pub fn mis_query(&mut self, q: &[usize]) -> Result<Vec<usize>> {
        let q = self.checked(q)?;
        self.charge()?;
        let out = match self.mis_strategy {
            MisStrategy::GreedyLex => greedy_mis(self.hidden, &q),
            MisStrategy::AdversaryAvoidCenter { center } => {
                let rest: Vec<usize> = q.iter().copied().filter(|&x| x != center).collect();
                let dominated = rest.iter().any(|&x| self.hidden.has_edge(center, x));
                if rest.len() < q.len() && dominated && self.hidden.is_independent(&rest) {
                    rest
                } else {
                    greedy_mis(self.hidden, &q)
                }
            }
        };
        self.record(|| QueryRecord::Mis {
            q,
            out: out.clone(),
        });
        Ok(out)
    }

    /// `true` ("Yes") iff `v` and `w` lie in different components of the graph with `u` removed.
    pub fn sep_query(&mut self, v: usize, w: usize, u: &[usize]) -> Result<bool> {
        let n = self.n();
        check_vertex(v, n)?;
        check_vertex(w, n)?;
        let u = self.checked(u)?;
        if v == w {
            return Err(invalid("separation query needs two distinct vertices"));
        }
        if u.binary_search(&v).is_ok() || u.binary_search(&w).is_ok() {
            return Err(invalid("separation query endpoints must not be removed"));
        }
        self.charge()?;
        let removed = membership(n, &u)?;
        let keep: Vec<usize> = (0..n).filter(|&x| !removed[x]).collect();
        let parts = components_bruteforce(self.hidden, &keep)?;
        let out = parts.block_of(v) != parts.block_of(w);
        self.sep_sizes.push(u.len());
        self.record(|| QueryRecord::Sep { v, w, u, out });
        Ok(out)
    }

    /// Writes the transcript as JSON lines.
    pub fn write_transcript<W: Write>(&self, mut out: W) -> Result<()> {
        for rec in self.transcript() {
            let line = serde_json::to_string(rec).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

impl CcOracle for OracleSession<'_> {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn cc(&mut self, q: &[usize]) -> Result<Partition> {
        self.cc_query(q)
    }

    fn queries(&self) -> u64 {
        self.query_count
    }
}

/// Greedy maximal independent set in ascending id order.
pub fn greedy_mis(g: &Graph, q: &[usize]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for &v in q {
        if chosen.iter().all(|&c| !g.has_edge(c, v)) {
            chosen.push(v);
        }
    }
    chosen
}

pub fn read_transcript<R: BufRead>(r: R) -> Result<Vec<QueryRecord>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?);
    }
    Ok(out)
}

/// Re-asks every recorded query against `hidden` and reports whether all
/// answers are reproduced.
pub fn replay_transcript(hidden: &Graph, records: &[QueryRecord], mis: MisStrategy) -> Result<bool> {
    let mut s = OracleSession::counting(hidden).with_mis_strategy(mis);
    for rec in records {
        let same = match rec {
            QueryRecord::Cc { q, out } => s.cc_query(q)? == *out,
            QueryRecord::Ccc { q, out } => s.ccc_query(q)? == *out,
            QueryRecord::Mis { q, out } => s.mis_query(q)? == *out,
            QueryRecord::Sep { v, w, u, out } => s.sep_query(*v, *w, u)? == *out,
        };
        if !same {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn is_maximal_independent(g: &Graph, q: &[usize], s: &[usize]) -> bool {
        g.is_independent(s)
            && q.iter()
                .filter(|v| !s.contains(v))
                .all(|&v| s.iter().any(|&x| g.has_edge(x, v)))
    }

    #[test]
    fn cc_examples_and_counter() {
        let g = path3();
        let mut s = OracleSession::new(&g);
        assert_eq!(s.cc_query(&[0, 2]).unwrap().blocks(), &[vec![0], vec![2]]);
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let mut t = OracleSession::new(&tri);
        assert_eq!(t.cc_query(&[0, 1]).unwrap().blocks(), &[vec![0, 1]]);
        assert_eq!(s.cc_query(&[1]).unwrap().len(), 1);
        assert_eq!(s.query_count(), 2);
        assert_eq!(s.transcript().len(), 2);
    }

    #[test]
    fn ccc_examples() {
        let pair = generate(&Family::CliquePair { eta: 3, n: 6, cross_prob: 0.0 }, 0).unwrap();
        let mut s = OracleSession::new(&pair);
        assert_eq!(s.ccc_query(&[]).unwrap(), 0);
        assert_eq!(s.ccc_query(&[0, 1, 2, 3, 4, 5]).unwrap(), 2);
        let empty = Graph::empty(5);
        let mut e = OracleSession::new(&empty);
        assert_eq!(e.ccc_query(&[0, 1, 2, 3, 4]).unwrap(), 5);
    }

    #[test]
    fn mis_examples() {
        let empty = Graph::empty(4);
        let mut s = OracleSession::new(&empty);
        assert_eq!(s.mis_query(&[3, 1, 2]).unwrap(), vec![1, 2, 3]);
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let mut t = OracleSession::new(&tri);
        assert_eq!(t.mis_query(&[0, 1, 2]).unwrap(), vec![0]);
        let star = generate(&Family::star(8), 0).unwrap();
        let mut a = OracleSession::new(&star)
            .with_mis_strategy(MisStrategy::AdversaryAvoidCenter { center: 0 });
        assert_eq!(a.mis_query(&[0, 2, 5, 7]).unwrap(), vec![2, 5, 7]);
        // center alone is its own maximal independent set
        assert_eq!(a.mis_query(&[0]).unwrap(), vec![0]);
    }

    #[test]
    fn sep_examples_and_errors() {
        let g = path3();
        let mut s = OracleSession::new(&g);
        assert!(s.sep_query(0, 2, &[1]).unwrap());
        assert!(!s.sep_query(0, 1, &[]).unwrap());
        assert!(s.sep_query(0, 1, &[0]).is_err());
        assert!(s.sep_query(1, 1, &[]).is_err());
        assert_eq!(s.query_count(), 2);
        assert_eq!(s.sep_query_sizes(), &[1, 0]);
    }

    #[test]
    fn budget_is_enforced_and_recoverable() {
        let g = path3();
        let mut s = OracleSession::new(&g).with_budget(Some(2));
        s.cc_query(&[0]).unwrap();
        s.cc_query(&[1]).unwrap();
        assert_eq!(s.cc_query(&[2]), Err(Error::BudgetExhausted { queries: 2 }));
        assert_eq!(s.query_count(), 2);
        assert_eq!(s.transcript().len(), 2);
    }

    #[test]
    fn out_of_range_queries_are_not_counted() {
        let g = path3();
        let mut s = OracleSession::new(&g);
        assert!(matches!(s.cc_query(&[7]), Err(Error::VertexOutOfRange { .. })));
        assert_eq!(s.query_count(), 0);
    }

    #[test]
    fn sep_agrees_with_cc_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..1000u64 {
            let n = rng.gen_range(3..12);
            let m = rng.gen_range(0..=n * (n - 1) / 2);
            let g = generate(&Family::ErWithMEdges { n, m }, trial).unwrap();
            let v = rng.gen_range(0..n);
            let w = (v + rng.gen_range(1..n)) % n;
            let u: Vec<usize> = (0..n).filter(|&x| x != v && x != w && rng.gen_bool(0.3)).collect();
            let mut a = OracleSession::counting(&g);
            let mut b = OracleSession::counting(&g);
            let keep: Vec<usize> = (0..n).filter(|x| !u.contains(x)).collect();
            let parts = b.cc_query(&keep).unwrap();
            assert_eq!(a.sep_query(v, w, &u).unwrap(), parts.block_of(v) != parts.block_of(w));
        }
    }

    #[test]
    fn transcript_round_trips_and_replays() {
        let g = generate(&Family::PartialKTree { n: 12, k: 2, delete_prob: 0.3 }, 4).unwrap();
        let mut s = OracleSession::new(&g);
        s.cc_query(&[0, 3, 5, 7]).unwrap();
        s.ccc_query(&[1, 2, 3]).unwrap();
        s.mis_query(&[0, 1, 2, 3, 4]).unwrap();
        s.sep_query(0, 11, &[1, 2]).unwrap();
        let mut buf = Vec::new();
        s.write_transcript(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.lines().next().unwrap().starts_with(r#"{"kind":"cc","q":[0,3,5,7],"out":"#));
        let back = read_transcript(&buf[..]).unwrap();
        assert_eq!(back, s.transcript());
        assert!(replay_transcript(&g, &back, MisStrategy::GreedyLex).unwrap());
        let other = Graph::empty(12);
        assert!(!replay_transcript(&other, &back, MisStrategy::GreedyLex).unwrap());
    }

    proptest! {
        #[test]
        fn cc_blocks_partition_the_query(seed in 0u64..500, n in 1usize..25, mask in any::<u32>()) {
            let m = (seed as usize * 3) % (n * (n - 1) / 2 + 1);
            let g = generate(&Family::ErWithMEdges { n, m }, seed).unwrap();
            let q: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let mut s = OracleSession::new(&g);
            let mut twin = OracleSession::new(&g);
            let parts = s.cc_query(&q).unwrap();
            prop_assert_eq!(parts.ground_set(), q.clone());
            prop_assert_eq!(twin.ccc_query(&q).unwrap(), parts.len());
            for strategy in [MisStrategy::GreedyLex, MisStrategy::AdversaryAvoidCenter { center: 0 }] {
                let mut m = OracleSession::new(&g).with_mis_strategy(strategy);
                let out = m.mis_query(&q).unwrap();
                prop_assert!(is_maximal_independent(&g, &q, &out));
            }
        }
    }

    #[test]
    fn clique_pair_answers_take_one_of_two_forms() {
        let eta = 4;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for seed in 0..20 {
            let g = generate(&Family::CliquePair { eta, n: 12, cross_prob: 0.5 }, seed).unwrap();
            let mut s = OracleSession::counting(&g);
            for _ in 0..200 {
                let q: Vec<usize> = (0..12).filter(|_| rng.gen_bool(0.5)).collect();
                let out = s.cc_query(&q).unwrap();
                assert!(crate::bridges::matches_clique_pair_forms(&out, &q, eta));
            }
        }
    }
}
