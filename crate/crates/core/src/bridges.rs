//! Simulating one oracle with another, with exact query accounting.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{check_vertex, normalize, Graph, Partition};
use crate::oracle::OracleSession;
use crate::unionfind::UnionFind;

/// Output of one simulation together with the queries it spent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeReport<T> {
    pub procedure: String,
    pub queries_used: u64,
    pub output: T,
}

fn report<T>(procedure: &str, session: &OracleSession<'_>, before: u64, output: T) -> BridgeReport<T> {
    BridgeReport {
        procedure: procedure.into(),
        queries_used: session.query_count() - before,
        output,
    }
}

/// A maximal independent set of `G[s]` using one CC query per vertex of `s`.
///
/// Vertices are tried in ascending order; `v` joins the set `T` when every
/// block of `cc(T ∪ {v})` is a singleton.
pub fn mis_via_cc(session: &mut OracleSession<'_>, s: &[usize]) -> Result<BridgeReport<Vec<usize>>> {
    let before = session.query_count();
    let mut t: Vec<usize> = Vec::new();
    for v in normalize(s) {
        let mut q = t.clone();
        q.push(v);
        if session.cc_query(&q)?.blocks().iter().all(|b| b.len() == 1) {
            t.push(v);
        }
    }
    Ok(report("mis-via-cc", session, before, t))
}

/// Components of `G[s]` from one MIS query per pair of `s`: a pair is an edge
/// exactly when its maximal independent set is a single vertex.
pub fn components_via_mis(session: &mut OracleSession<'_>, s: &[usize]) -> Result<BridgeReport<Partition>> {
    let before = session.query_count();
    let s = normalize(s);
    let mut uf = UnionFind::new(s.len());
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if session.mis_query(&[s[i], s[j]])?.len() == 1 {
                uf.union(i, j);
            }
        }
    }
    let parts = uf.partition_of(&s);
    Ok(report("components-via-mis", session, before, parts))
}

/// A separation query answered with the single CC query `cc(V \ u)`.
pub fn sep_via_cc(session: &mut OracleSession<'_>, v: usize, w: usize, u: &[usize]) -> Result<BridgeReport<bool>> {
    let n = session.n();
    check_vertex(v, n)?;
    check_vertex(w, n)?;
    let u = normalize(u);
    for &x in &u {
        check_vertex(x, n)?;
    }
    if v == w {
        return Err(invalid("separation query needs two distinct vertices"));
    }
    if u.binary_search(&v).is_ok() || u.binary_search(&w).is_ok() {
        return Err(invalid("separation query endpoints must not be removed"));
    }
    let before = session.query_count();
    let keep: Vec<usize> = (0..n).filter(|x| u.binary_search(x).is_err()).collect();
    let parts = session.cc_query(&keep)?;
    let out = parts.block_of(v) != parts.block_of(w);
    Ok(report("sep-via-cc", session, before, out))
}

/// Components of `G[s]` from `Sep(v, w, V \ s)` for every pair of `s`; a
/// "No" answer puts the pair in one component.
pub fn components_via_sep(session: &mut OracleSession<'_>, s: &[usize]) -> Result<BridgeReport<Partition>> {
    let n = session.n();
    let s = normalize(s);
    for &x in &s {
        check_vertex(x, n)?;
    }
    let before = session.query_count();
    let outside: Vec<usize> = (0..n).filter(|x| s.binary_search(x).is_err()).collect();
    let mut uf = UnionFind::new(s.len());
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if !session.sep_query(s[i], s[j], &outside)? {
                uf.union(i, j);
            }
        }
    }
    let parts = uf.partition_of(&s);
    Ok(report("components-via-sep", session, before, parts))
}

/// Reconstruction by asking the MIS oracle about every pair of vertices.
pub fn reconstruct_via_mis_pairs(session: &mut OracleSession<'_>) -> Result<BridgeReport<Graph>> {
    let before = session.query_count();
    let n = session.n();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if session.mis_query(&[u, v])?.len() == 1 {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(n, edges)?;
    Ok(report("mis-pairs", session, before, g))
}

/// Whether a CC answer on a clique-pair graph (cliques `0..eta` and
/// `eta..2eta`) has one of its two possible shapes: outside vertices as
/// singletons, plus either the two clique parts separately or their union.
pub fn matches_clique_pair_forms(out: &Partition, q: &[usize], eta: usize) -> bool {
    let q = normalize(q);
    let singles: Vec<Vec<usize>> = q.iter().filter(|&&v| v >= 2 * eta).map(|&v| vec![v]).collect();
    let c1: Vec<usize> = q.iter().copied().filter(|&v| v < eta).collect();
    let c2: Vec<usize> = q.iter().copied().filter(|&v| v >= eta && v < 2 * eta).collect();
    let joined: Vec<usize> = c1.iter().chain(&c2).copied().collect();
    let form = |groups: Vec<Vec<usize>>| -> Option<Partition> {
        let mut blocks = singles.clone();
        blocks.extend(groups.into_iter().filter(|g| !g.is_empty()));
        Partition::from_blocks(blocks).ok()
    };
    [form(vec![c1.clone(), c2.clone()]), form(vec![joined])]
        .into_iter()
        .flatten()
        .any(|p| p == *out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{components_bruteforce, generate, Family};
    use crate::oracle::MisStrategy;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn is_maximal_independent(g: &Graph, q: &[usize], s: &[usize]) -> bool {
        g.is_independent(s) && q.iter().filter(|v| !s.contains(v)).all(|&v| s.iter().any(|&x| g.has_edge(x, v)))
    }

    #[test]
    fn mis_via_cc_examples() {
        let e = Graph::empty(5);
        let mut s = OracleSession::new(&e);
        let r = mis_via_cc(&mut s, &[0, 2, 4]).unwrap();
        assert_eq!(r.output, vec![0, 2, 4]);
        assert_eq!(r.queries_used, 3);
        let k = generate(&Family::Complete { n: 6 }, 0).unwrap();
        let mut s = OracleSession::new(&k);
        let r = mis_via_cc(&mut s, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(r.output.len(), 1);
        assert_eq!(r.queries_used, 6);
        assert_eq!(mis_via_cc(&mut s, &[]).unwrap().output, Vec::<usize>::new());
    }

    #[test]
    fn mis_via_cc_is_maximal_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for seed in 0..1000 {
            let n = rng.gen_range(1..16);
            let g = generate(&Family::ErWithMEdges { n, m: rng.gen_range(0..=n * (n - 1) / 2) }, seed).unwrap();
            let q: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
            let mut s = OracleSession::counting(&g);
            let r = mis_via_cc(&mut s, &q).unwrap();
            assert!(is_maximal_independent(&g, &q, &r.output));
            assert_eq!(r.queries_used, q.len() as u64);
        }
    }

    #[test]
    fn components_via_mis_examples() {
        let p = generate(&Family::Path { n: 3 }, 0).unwrap();
        let mut s = OracleSession::new(&p);
        assert_eq!(components_via_mis(&mut s, &[1]).unwrap().queries_used, 0);
        let r = components_via_mis(&mut s, &[0, 1, 2]).unwrap();
        assert_eq!(r.output.blocks(), &[vec![0, 1, 2]]);
        assert_eq!(r.queries_used, 3);
    }

    #[test]
    fn sep_bridges_examples() {
        let p = generate(&Family::Path { n: 3 }, 0).unwrap();
        let mut s = OracleSession::new(&p);
        let r = sep_via_cc(&mut s, 0, 2, &[1]).unwrap();
        assert!(r.output);
        assert_eq!(r.queries_used, 1);
        assert!(sep_via_cc(&mut s, 0, 1, &[1]).is_err());
        let e = generate(&Family::Path { n: 2 }, 0).unwrap();
        let mut s = OracleSession::new(&e);
        let r = components_via_sep(&mut s, &[0, 1]).unwrap();
        assert_eq!(r.output.blocks(), &[vec![0, 1]]);
        assert_eq!(r.queries_used, 1);
    }

    #[test]
    fn bridges_agree_on_random_larger_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for seed in 0..1000 {
            let n = rng.gen_range(7..14);
            let g = generate(&Family::ErWithMEdges { n, m: rng.gen_range(0..2 * n) }, seed).unwrap();
            let q: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            let truth = components_bruteforce(&g, &q).unwrap();
            let mut s = OracleSession::counting(&g);
            assert_eq!(components_via_mis(&mut s, &q).unwrap().output, truth);
            assert_eq!(components_via_sep(&mut s, &q).unwrap().output, truth);
            let v = rng.gen_range(0..n);
            let w = (v + rng.gen_range(1..n)) % n;
            let u: Vec<usize> = (0..n).filter(|&x| x != v && x != w && rng.gen_bool(0.3)).collect();
            let mut twin = OracleSession::counting(&g);
            assert_eq!(sep_via_cc(&mut s, v, w, &u).unwrap().output, twin.sep_query(v, w, &u).unwrap());
        }
    }

    #[test]
    fn star_needs_many_mis_queries() {
        let g = generate(&Family::star(64), 0).unwrap();
        let mut s = OracleSession::counting(&g).with_mis_strategy(MisStrategy::AdversaryAvoidCenter { center: 0 });
        let r = reconstruct_via_mis_pairs(&mut s).unwrap();
        assert_eq!(r.output, g);
        assert!(r.queries_used >= 63);
        // the adversary hides the center from every larger query
        let leaves: Vec<usize> = (0..64).collect();
        assert!(!s.mis_query(&leaves).unwrap().contains(&0));
    }

    #[test]
    fn clique_pair_forms() {
        let g = generate(&Family::CliquePair { eta: 4, n: 10, cross_prob: 0.0 }, 0).unwrap();
        let mut s = OracleSession::counting(&g);
        let q = vec![0, 1, 5, 8];
        let out = s.cc_query(&q).unwrap();
        assert!(matches_clique_pair_forms(&out, &q, 4));
        let bogus = Partition::from_blocks(vec![vec![0], vec![1], vec![5], vec![8]]).unwrap();
        assert!(!matches_clique_pair_forms(&bogus, &q, 4));
    }
}
