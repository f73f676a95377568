//! End-to-end acceptance checks, one line per criterion.
//!
//! Ground truth always comes from the hidden graph or a brute-force oracle
//! defined in this file, never from the algorithm under test.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use ccrecon::bridges::{
    components_via_mis, components_via_sep, matches_clique_pair_forms, mis_via_cc, reconstruct_via_mis_pairs,
    sep_via_cc,
};
use ccrecon::graph::treewidth_leq;
use ccrecon::race::{default_contenders, race};
use ccrecon::recon::degeneracy::{reconstruct_degeneracy, reconstruct_unknown_degeneracy};
use ccrecon::recon::maxdeg::{reconstruct_bounded_degree, reconstruct_unknown_degree};
use ccrecon::recon::sample_count;
use ccrecon::recon::treewidth::{learn_supergraph, reconstruct_treewidth, reconstruct_unknown_treewidth};
use ccrecon::scheme::{deterministic_scheme, verify_scheme, witness_count_bound, VerifyMode};
use ccrecon::{components_bruteforce, generate, Family, Graph, MisStrategy, Mode, OracleSession, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ceil_log2(x: usize) -> usize {
    (x as f64).log2().ceil() as usize
}

fn binom2(k: usize) -> u64 {
    (k * k.saturating_sub(1) / 2) as u64
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

/// Every labeled graph on `n` vertices.
fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |m| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

/// Whether `v` and `w` are disconnected once `u` is removed, by plain search.
fn separated(g: &Graph, v: usize, w: usize, u: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    for &x in u {
        seen[x] = true;
    }
    let mut stack = vec![v];
    seen[v] = true;
    while let Some(x) = stack.pop() {
        if x == w {
            return false;
        }
        for &y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    true
}

fn is_maximal_independent(g: &Graph, s: &[usize], t: &[usize]) -> bool {
    g.is_independent(t)
        && s.iter()
            .all(|v| t.contains(v) || t.iter().any(|&x| g.has_edge(x, *v)))
}

fn ac1_maxdeg_randomized() -> Outcome {
    let start = Instant::now();
    let mut rates = Vec::new();
    for n in [32, 64, 128] {
        let g = generate(&Family::Cycle { n }, 0).map_err(|e| e.to_string())?;
        let want = sample_count(2, n);
        let expected = (3.0 * std::f64::consts::E * 9.0 * (n as f64).ln()).ceil() as u64;
        ensure(want == expected, || format!("n={n}: sample count {want}, closed form {expected}"))?;
        let mut ok = 0;
        for seed in 0..100 {
            let mut s = OracleSession::counting(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let out = reconstruct_bounded_degree(&mut s, 2, Mode::Randomized(&mut rng)).map_err(|e| e.to_string())?;
            ensure(s.query_count() == expected, || {
                format!("n={n} seed={seed}: {} queries, expected {expected}", s.query_count())
            })?;
            ok += usize::from(out == g);
        }
        ensure(ok >= 95, || format!("n={n}: {ok}/100 exact"))?;
        rates.push(format!("n={n} {ok}/100 q={expected}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} in {secs:.2}s", rates.join(", ")))
}

fn ac2_maxdeg_deterministic() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(2);
    let mut schemes = HashMap::new();
    let mut graphs = 0;
    for i in 0..500u64 {
        let n = r.gen_range(4..=12);
        let delta = r.gen_range(1..=3usize.min(n - 2));
        let scheme = match schemes.get(&(n, delta)) {
            Some(s) => s,
            None => {
                let s = deterministic_scheme(n, delta).map_err(|e| e.to_string())?;
                let rep = verify_scheme(&s, VerifyMode::exhaustive()).map_err(|e| e.to_string())?;
                ensure(rep.covered, || format!("scheme n={n} p={delta} misses {:?}", rep.counterexample))?;
                schemes.entry((n, delta)).or_insert(s)
            }
        };
        let g = generate(
            &Family::BoundedDegree {
                n,
                max_degree: delta,
                attempts: 3 * n,
            },
            i,
        )
        .map_err(|e| e.to_string())?;
        ensure(g.max_degree() <= delta, || format!("generator exceeded degree {delta}"))?;
        let mut s = OracleSession::counting(&g);
        let out = reconstruct_bounded_degree(&mut s, delta, Mode::Scheme(scheme)).map_err(|e| e.to_string())?;
        ensure(out == g, || format!("graph {i} (n={n}, delta={delta}) not recovered"))?;
        ensure(s.query_count() == scheme.len() as u64, || format!("graph {i}: query count differs from scheme size"))?;
        graphs += 1;
    }
    Ok(format!("{graphs}/500 exact using {} verified schemes", schemes.len()))
}

fn ac3_treewidth_pipeline() -> Outcome {
    let mut parts = Vec::new();
    for n in [30, 50] {
        let (mut exact, mut bounded) = (0, 0);
        let limit = ceil_log2(n) + 1;
        let mut worst = 0;
        for seed in 0..100 {
            let g = generate(&Family::PartialKTree { n, k: 2, delete_prob: 0.3 }, seed).map_err(|e| e.to_string())?;
            let mut s = OracleSession::counting(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (out, run) = reconstruct_treewidth(&mut s, 2, Mode::Randomized(&mut rng)).map_err(|e| e.to_string())?;
            ensure(run.iterations <= limit, || {
                format!("n={n} seed={seed}: {} pruning iterations > {limit}", run.iterations)
            })?;
            worst = worst.max(run.iterations);
            exact += usize::from(out == g);
            // same seed, same sampled queries: rebuild the learned candidate and check it here
            let mut s = OracleSession::counting(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cand = learn_supergraph(&mut s, 2, Mode::Randomized(&mut rng)).map_err(|e| e.to_string())?;
            let within = treewidth_leq(&cand.to_graph(), 2).map_err(|e| e.to_string())?;
            ensure(run.candidate_within_bound == Some(within), || format!("n={n} seed={seed}: run misreports candidate"))?;
            bounded += usize::from(within);
        }
        ensure(exact >= 95, || format!("n={n}: {exact}/100 exact"))?;
        ensure(bounded >= 95, || format!("n={n}: candidate treewidth <= 2 in {bounded}/100"))?;
        parts.push(format!("n={n} exact {exact}/100 tw<=2 {bounded}/100 iters<={worst}"));
    }
    Ok(parts.join(", "))
}

fn ac4_degeneracy() -> Outcome {
    let g = generate(&Family::Grid { rows: 10, cols: 10 }, 0).map_err(|e| e.to_string())?;
    let limit = 1 + ceil_log2(100);
    let mut exact = 0;
    let mut most = 0;
    for seed in 0..100 {
        let mut s = OracleSession::counting(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (out, trace) = reconstruct_degeneracy(&mut s, 2, Mode::Randomized(&mut rng)).map_err(|e| e.to_string())?;
        ensure(trace.rounds.len() <= limit, || format!("seed={seed}: {} rounds", trace.rounds.len()))?;
        for r in &trace.rounds {
            ensure(2 * r.removed.len() >= r.active, || {
                format!("seed={seed}: round removed {} of {}", r.removed.len(), r.active)
            })?;
        }
        most = most.max(trace.rounds.len());
        exact += usize::from(out == g);
    }
    ensure(exact >= 95, || format!("{exact}/100 exact"))?;
    Ok(format!("exact {exact}/100, rounds <= {most} (limit {limit})"))
}

fn ac5_unknown_parameters() -> Outcome {
    let mut parts = Vec::new();

    let star = generate(&Family::Star { n: 64, leaves: 15 }, 0).map_err(|e| e.to_string())?;
    ensure(star.max_degree() == 15, || "star instance does not have degree 15".into())?;
    let mut ok = 0;
    for seed in 0..100 {
        let mut s = OracleSession::counting(&star);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (out, trace) = reconstruct_unknown_degree(&mut s, Mode::Randomized(&mut rng)).map_err(|e| e.to_string())?;
        if out == star {
            ok += 1;
            ensure(trace.final_guess() < 30, || format!("degree guess {}", trace.final_guess()))?;
            ensure(trace.attempts() <= ceil_log2(15) + 1, || format!("{} degree attempts", trace.attempts()))?;
        }
    }
    parts.push(format!("delta=15: {ok}/100 exact"));

    let mut ok = 0;
    for seed in 0..30 {
        let g = generate(&Family::PartialKTree { n: 30, k: 4, delete_prob: 0.0 }, seed).map_err(|e| e.to_string())?;
        let mut s = OracleSession::counting(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (out, trace, _) = reconstruct_unknown_treewidth(&mut s, Mode::Randomized(&mut rng)).map_err(|e| e.to_string())?;
        if out == g {
            ok += 1;
            ensure(trace.final_guess() < 8, || format!("treewidth guess {}", trace.final_guess()))?;
            ensure(trace.attempts() <= ceil_log2(4) + 1, || format!("{} treewidth attempts", trace.attempts()))?;
        }
    }
    ensure(ok > 0, || "no treewidth trial succeeded".into())?;
    parts.push(format!("k=4: {ok}/30 exact"));

    let grid = generate(&Family::Grid { rows: 10, cols: 10 }, 0).map_err(|e| e.to_string())?;
    let mut ok = 0;
    for seed in 0..100 {
        let mut s = OracleSession::counting(&grid);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (out, trace, _) =
            reconstruct_unknown_degeneracy(&mut s, Mode::Randomized(&mut rng)).map_err(|e| e.to_string())?;
        if out == grid {
            ok += 1;
            ensure(trace.final_guess() < 4, || format!("degeneracy guess {}", trace.final_guess()))?;
            ensure(trace.attempts() <= ceil_log2(2) + 1, || format!("{} degeneracy attempts", trace.attempts()))?;
        }
    }
    ensure(ok > 0, || "no degeneracy trial succeeded".into())?;
    parts.push(format!("d=2: {ok}/100 exact"));
    Ok(parts.join(", "))
}

fn race_instance(i: u64) -> Family {
    match i % 6 {
        0 => Family::Cycle { n: 12 + i as usize % 9 },
        1 => Family::star(10 + i as usize % 7),
        2 => Family::Grid { rows: 3, cols: 3 + i as usize % 3 },
        3 => Family::PartialKTree {
            n: 14 + i as usize % 8,
            k: 2,
            delete_prob: 0.3,
        },
        4 => Family::BoundedDegree {
            n: 16,
            max_degree: 3,
            attempts: 40,
        },
        _ => Family::ErWithMEdges { n: 14, m: 6 + i as usize % 10 },
    }
}

fn ac6_race() -> Outcome {
    let mut wins: HashMap<String, usize> = HashMap::new();
    for i in 0..50u64 {
        let g = generate(&race_instance(i), i).map_err(|e| e.to_string())?;
        let contenders = default_contenders(i);
        let (out, report) = race(&g, &contenders, None).map_err(|e| e.to_string())?;
        let (alone, alone_queries) = contenders[report.winner_index]
            .run_standalone(&g)
            .map_err(|e| e.to_string())?;
        ensure(out == alone, || format!("instance {i}: race output differs from {} alone", report.winner))?;
        ensure(report.winner_queries == alone_queries, || {
            format!("instance {i}: winner used {} in race, {alone_queries} alone", report.winner_queries)
        })?;
        ensure(report.total_queries <= 3 * alone_queries + 2, || {
            format!("instance {i}: total {} vs winner {alone_queries}", report.total_queries)
        })?;
        *wins.entry(report.winner).or_default() += 1;
    }
    let mut w: Vec<_> = wins.into_iter().collect();
    w.sort();
    Ok(format!("50/50 within bound, winners {w:?}"))
}

fn ac7_bridges() -> Outcome {
    let mut checked = 0u64;
    for n in 0..=6 {
        for g in all_graphs(n) {
            for s in subsets(n) {
                let want = components_bruteforce(&g, &s).map_err(|e| e.to_string())?;

                let mut sess = OracleSession::counting(&g);
                let mis = mis_via_cc(&mut sess, &s).map_err(|e| e.to_string())?;
                ensure(is_maximal_independent(&g, &s, &mis.output), || format!("mis-via-cc on {g:?} {s:?}"))?;
                ensure(mis.queries_used == s.len() as u64, || "mis-via-cc query count".into())?;

                let mut sess = OracleSession::counting(&g);
                let rep = components_via_mis(&mut sess, &s).map_err(|e| e.to_string())?;
                ensure(rep.output == want, || format!("components-via-mis on {g:?} {s:?}"))?;
                ensure(rep.queries_used == binom2(s.len()), || "components-via-mis query count".into())?;

                let mut sess = OracleSession::counting(&g);
                let rep = components_via_sep(&mut sess, &s).map_err(|e| e.to_string())?;
                ensure(rep.output == want, || format!("components-via-sep on {g:?} {s:?}"))?;
                ensure(rep.queries_used == binom2(s.len()), || "components-via-sep query count".into())?;
                ensure(sess.sep_query_sizes().iter().all(|&k| k == n - s.len()), || "sep query size".into())?;

                // s doubles as the removed set U of a separation query
                for v in 0..n {
                    for w in v + 1..n {
                        if s.contains(&v) || s.contains(&w) {
                            continue;
                        }
                        let mut sess = OracleSession::counting(&g);
                        let rep = sep_via_cc(&mut sess, v, w, &s).map_err(|e| e.to_string())?;
                        ensure(rep.output == separated(&g, v, w, &s), || format!("sep-via-cc on {g:?} {v} {w} {s:?}"))?;
                        ensure(rep.queries_used == 1, || "sep-via-cc query count".into())?;
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (graph, set) cases on n <= 6"))
}

fn ac8_clique_pair() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(8);
    let mut joined = 0;
    for i in 0..10_000u64 {
        let inst = i / 1000;
        let fam = Family::CliquePair {
            eta: 4,
            n: 12,
            cross_prob: [0.0, 0.1, 0.3, 0.5, 1.0][inst as usize % 5],
        };
        let g = generate(&fam, inst).map_err(|e| e.to_string())?;
        let q: Vec<usize> = (0..12).filter(|_| r.gen_bool(0.5)).collect();
        let mut s = OracleSession::counting(&g);
        let out: Partition = s.cc_query(&q).map_err(|e| e.to_string())?;
        ensure(out == components_bruteforce(&g, &q).unwrap(), || "oracle disagrees with brute force".into())?;
        ensure(matches_clique_pair_forms(&out, &q, 4), || format!("answer {out:?} on {q:?} has neither form"))?;
        joined += usize::from(out.blocks().iter().any(|b| b.iter().any(|&v| v < 4) && b.iter().any(|&v| (4..8).contains(&v))));
    }
    Ok(format!("10000/10000 canonical, {joined} with joined cliques"))
}

fn ac9_mis_vs_cc() -> Outcome {
    let n = 64;
    let star = generate(&Family::star(n), 0).map_err(|e| e.to_string())?;
    let mut s = OracleSession::counting(&star).with_mis_strategy(MisStrategy::AdversaryAvoidCenter { center: 0 });
    let all: Vec<usize> = (0..n).collect();
    let answer = s.mis_query(&all).map_err(|e| e.to_string())?;
    ensure(!answer.contains(&0), || "adversary revealed the center".into())?;
    let mut s = OracleSession::counting(&star).with_mis_strategy(MisStrategy::AdversaryAvoidCenter { center: 0 });
    let rep = reconstruct_via_mis_pairs(&mut s).map_err(|e| e.to_string())?;
    ensure(rep.output == star, || "pairwise MIS decoding is wrong".into())?;
    ensure(rep.queries_used >= (n - 1) as u64, || format!("only {} MIS queries", rep.queries_used))?;

    let cap = 200.0 * (n as f64).log2();
    let (mut ok, mut most) = (0, 0);
    for seed in 0..100 {
        let mut s = OracleSession::counting(&star);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (out, _) = reconstruct_treewidth(&mut s, 1, Mode::Randomized(&mut rng)).map_err(|e| e.to_string())?;
        ensure(s.query_count() as f64 <= cap, || format!("seed={seed}: {} CC queries", s.query_count()))?;
        most = most.max(s.query_count());
        ok += usize::from(out == star);
    }
    ensure(ok >= 95, || format!("CC exact {ok}/100"))?;
    Ok(format!("MIS queries {} (>= {}), CC queries <= {most} (cap {cap:.0}), CC exact {ok}/100", rep.queries_used, n - 1))
}

fn ac10_schemes() -> Outcome {
    let mut pairs = 0;
    for n in 3..=40 {
        for p in 1..=n - 2 {
            let (exact, bound) = witness_count_bound(n, p).map_err(|e| e.to_string())?;
            ensure(exact as f64 <= bound, || format!("n={n} p={p}: {exact} > {bound}"))?;
            pairs += 1;
        }
    }
    let mut schemes = 0;
    for n in 2..=12 {
        for p in 0..=3usize.min(n - 2) {
            let s = deterministic_scheme(n, p).map_err(|e| e.to_string())?;
            let rep = verify_scheme(&s, VerifyMode::exhaustive()).map_err(|e| e.to_string())?;
            ensure(rep.covered, || format!("n={n} p={p}: uncovered {:?}", rep.counterexample))?;
            schemes += 1;
        }
    }
    Ok(format!("{pairs} witness bounds hold, {schemes} splitter schemes cover"))
}

fn main() -> ExitCode {
    let criteria: [Check; 10] = [
        ("max-degree randomized", ac1_maxdeg_randomized),
        ("max-degree deterministic", ac2_maxdeg_deterministic),
        ("treewidth pipeline", ac3_treewidth_pipeline),
        ("degeneracy peeling", ac4_degeneracy),
        ("unknown-parameter search", ac5_unknown_parameters),
        ("race", ac6_race),
        ("oracle bridges", ac7_bridges),
        ("clique-pair answers", ac8_clique_pair),
        ("MIS versus CC", ac9_mis_vs_cc),
        ("scheme machinery", ac10_schemes),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("AC{:<2} PASS {name} [{secs:.1}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("AC{:<2} FAIL {name} [{secs:.1}s]: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
