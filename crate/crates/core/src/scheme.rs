//! Random subset sampling, witnesses and non-adaptive query schemes.
//!
//! A p-query-scheme is a list of vertex subsets such that for every pair
//! `{u, v}` and every set `W` of `p` other vertices some query contains both
//! `u` and `v` and misses all of `W`.

use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// Default cap on the number of witnesses checked by exhaustive verification.
pub const DEFAULT_WITNESS_GUARD: u128 = 50_000_000;

/// Each vertex of `ground` is kept independently with probability `1/denom`.
pub fn bernoulli_sample<R: Rng + ?Sized>(ground: &[usize], denom: f64, rng: &mut R) -> Result<Vec<usize>> {
    if denom.is_nan() || denom < 1.0 {
        return Err(invalid(format!("inclusion denominator must be at least 1, got {denom}")));
    }
    let p = 1.0 / denom;
    Ok(ground.iter().copied().filter(|_| rng.gen_bool(p)).collect())
}

/// A random subset of `0..n` with inclusion probability `1/denom`.
pub fn bernoulli_subset<R: Rng + ?Sized>(n: usize, denom: f64, rng: &mut R) -> Result<Vec<usize>> {
    let ground: Vec<usize> = (0..n).collect();
    bernoulli_sample(&ground, denom, rng)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pair: (usize, usize),
    pub excluded: Vec<usize>,
}

impl Witness {
    pub fn is_covered_by(&self, q: &[usize]) -> bool {
        let has = |v: &usize| q.binary_search(v).is_ok();
        has(&self.pair.0) && has(&self.pair.1) && !self.excluded.iter().any(has)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Random,
    Splitter,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Random => "random",
            Provenance::Splitter => "splitter",
        })
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Provenance::Random),
            "splitter" => Ok(Provenance::Splitter),
            other => Err(invalid(format!("unknown scheme provenance {other:?}"))),
        }
    }
}

/// Ordered list of non-adaptive queries over `0..n`, each sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryScheme {
    pub n: usize,
    pub p: usize,
    pub provenance: Provenance,
    pub queries: Vec<Vec<usize>>,
}

impl QueryScheme {
    pub fn len(&self) -> usize {
        self.queries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }
}

/// Number of queries drawn by [`random_scheme`].
pub fn random_scheme_size(n: usize, p: usize) -> Result<usize> {
    if n < 2 || p > n - 2 {
        return Err(invalid(format!("scheme parameter p={p} out of range for n={n}")));
    }
    if p == 0 {
        return Ok(1);
    }
    let (nf, pf) = (n as f64, p as f64);
    let inner = nf.powf(2.0 / pf) * std::f64::consts::E * (nf - 2.0) / pf;
    let l = (pf + 1.0).powi(2) * std::f64::consts::E * pf * inner.ln();
    Ok((l.ceil() as usize).max(1))
}

/// Independent subsets with inclusion probability `1/(p+1)`; unverified.
pub fn random_scheme<R: Rng + ?Sized>(n: usize, p: usize, rng: &mut R) -> Result<QueryScheme> {
    let l = random_scheme_size(n, p)?;
    let queries = if p == 0 {
        vec![(0..n).collect()]
    } else {
        let mut qs = Vec::with_capacity(l);
        for _ in 0..l {
            qs.push(bernoulli_subset(n, (p + 1) as f64, rng)?);
        }
        qs
    };
    Ok(QueryScheme {
        n,
        p,
        provenance: Provenance::Random,
        queries,
    })
}

/// A family of colorings `v -> (v mod q) + 1`, one per modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitter {
    pub n: usize,
    pub kappa: usize,
    pub colors: usize,
    pub moduli: Vec<usize>,
}

impl Splitter {
    pub fn functions(&self) -> usize {
        self.moduli.len()
    }

    /// Color in `1..=colors` of `v` under function `f`.
    pub fn color(&self, f: usize, v: usize) -> usize {
        v % self.moduli[f] + 1
    }

    /// Whether some function gives the vertices of `s` pairwise distinct colors.
    pub fn separates(&self, s: &[usize]) -> bool {
        self.moduli.iter().any(|&q| {
            let mut seen: Vec<usize> = s.iter().map(|v| v % q).collect();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }
}

fn is_prime(x: usize) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Deterministic splitter from prime moduli at least `kappa^2`.
///
/// Two vertices collide modulo `q` only when `q` divides their difference,
/// which is below `n`. A difference has at most `r` distinct prime factors of
/// size at least `kappa^2`, where `r` is the largest exponent with
/// `kappa^(2r) <= n - 1`. With `kappa(kappa-1)/2 * r + 1` primes, some prime
/// separates every pair of any `kappa`-subset.
pub fn build_splitter(n: usize, kappa: usize) -> Result<Splitter> {
    if kappa == 0 || kappa > n {
        return Err(invalid(format!("splitter size kappa={kappa} out of range for n={n}")));
    }
    if kappa == 1 {
        return Ok(Splitter {
            n,
            kappa,
            colors: 1,
            moduli: vec![1],
        });
    }
    let k2 = kappa * kappa;
    let mut r = 0usize;
    let mut power = k2;
    while power <= n.saturating_sub(1) {
        r += 1;
        power = power.saturating_mul(k2);
    }
    let needed = kappa * (kappa - 1) / 2 * r + 1;
    let mut moduli = Vec::with_capacity(needed);
    let mut q = k2;
    while moduli.len() < needed {
        if is_prime(q) {
            moduli.push(q);
        }
        q += 1;
    }
    Ok(Splitter {
        n,
        kappa,
        colors: *moduli.last().unwrap(),
        moduli,
    })
}

/// One query `f^-1(i) ∪ f^-1(j)` per function and color pair `i <= j`, empty ones dropped.
pub fn scheme_from_splitter(sp: &Splitter, p: usize) -> Result<QueryScheme> {
    if sp.kappa != p + 2 {
        return Err(invalid(format!(
            "splitter built for kappa={} but p={p} needs kappa={}",
            sp.kappa,
            p + 2
        )));
    }
    let mut queries = Vec::new();
    for f in 0..sp.functions() {
        let mut classes = vec![Vec::new(); sp.colors + 1];
        for v in 0..sp.n {
            classes[sp.color(f, v)].push(v);
        }
        for i in 1..=sp.colors {
            for j in i..=sp.colors {
                if classes[i].is_empty() && classes[j].is_empty() {
                    continue;
                }
                let mut q = classes[i].clone();
                if i != j {
                    q.extend_from_slice(&classes[j]);
                    q.sort_unstable();
                }
                queries.push(q);
            }
        }
    }
    Ok(QueryScheme {
        n: sp.n,
        p,
        provenance: Provenance::Splitter,
        queries,
    })
}

/// The splitter-derived p-query-scheme on `0..n`.
pub fn deterministic_scheme(n: usize, p: usize) -> Result<QueryScheme> {
    if n < 2 || p > n - 2 {
        return Err(invalid(format!("scheme parameter p={p} out of range for n={n}")));
    }
    scheme_from_splitter(&build_splitter(n, p + 2)?, p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive { guard: u128 },
    Sampled { count: u64, seed: u64 },
}

impl VerifyMode {
    pub fn exhaustive() -> Self {
        VerifyMode::Exhaustive {
            guard: DEFAULT_WITNESS_GUARD,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub covered: bool,
    pub counterexample: Option<Witness>,
    pub witnesses_checked: u128,
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Exact witness count `C(n,2) * C(n-2,p)` and the bound `n^2 (e(n-2)/p)^p`.
pub fn witness_count_bound(n: usize, p: usize) -> Result<(u128, f64)> {
    if p == 0 || n < 2 || p > n - 2 {
        return Err(invalid(format!("witness count needs 1 <= p <= n-2, got n={n} p={p}")));
    }
    let exact = binomial(n as u128, 2) * binomial(n as u128 - 2, p as u128);
    let (nf, pf) = (n as f64, p as f64);
    let bound = nf * nf * (std::f64::consts::E * (nf - 2.0) / pf).powf(pf);
    Ok((exact, bound))
}

/// Per vertex, the set of query indices containing it.
fn incidence(scheme: &QueryScheme) -> Result<Vec<FixedBitSet>> {
    let mut inc = vec![FixedBitSet::with_capacity(scheme.len()); scheme.n];
    for (i, q) in scheme.queries.iter().enumerate() {
        for &v in q {
            if v >= scheme.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: scheme.n });
            }
            inc[v].insert(i);
        }
    }
    Ok(inc)
}

/// Checks witnesses for a covering query, reporting the first uncovered one.
///
/// Exhaustive mode walks witnesses in lexicographic order and stops at the
/// first counterexample.
pub fn verify_scheme(scheme: &QueryScheme, mode: VerifyMode) -> Result<CoverageReport> {
    let (n, p) = (scheme.n, scheme.p);
    if n < 2 || p > n - 2 {
        return Ok(CoverageReport {
            covered: true,
            counterexample: None,
            witnesses_checked: 0,
        });
    }
    let inc = incidence(scheme)?;
    match mode {
        VerifyMode::Exhaustive { guard } => {
            let total = binomial(n as u128, 2) * binomial(n as u128 - 2, p as u128);
            if total > guard {
                return Err(Error::Capacity {
                    what: "exhaustive witness enumeration",
                    size: total,
                    limit: guard,
                });
            }
            let mut checked = 0u128;
            for u in 0..n {
                for v in u + 1..n {
                    let mut both = inc[u].clone();
                    both.intersect_with(&inc[v]);
                    let rest: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
                    let mut chosen = Vec::with_capacity(p);
                    if let Some(excluded) = first_uncovered(&inc, &rest, p, 0, &both, &mut chosen, &mut checked) {
                        return Ok(CoverageReport {
                            covered: false,
                            counterexample: Some(Witness { pair: (u, v), excluded }),
                            witnesses_checked: checked,
                        });
                    }
                }
            }
            Ok(CoverageReport {
                covered: true,
                counterexample: None,
                witnesses_checked: checked,
            })
        }
        VerifyMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in 0..count {
                let picked = sample(&mut rng, n, p + 2).into_vec();
                let (u, v) = (picked[0].min(picked[1]), picked[0].max(picked[1]));
                let mut excluded = picked[2..].to_vec();
                excluded.sort_unstable();
                let mut live = inc[u].clone();
                live.intersect_with(&inc[v]);
                for &w in &excluded {
                    live.difference_with(&inc[w]);
                }
                if live.is_clear() {
                    return Ok(CoverageReport {
                        covered: false,
                        counterexample: Some(Witness { pair: (u, v), excluded }),
                        witnesses_checked: i as u128 + 1,
                    });
                }
            }
            Ok(CoverageReport {
                covered: true,
                counterexample: None,
                witnesses_checked: count as u128,
            })
        }
    }
}

/// Depth-first over excluded sets; `live` holds the queries still covering the prefix.
fn first_uncovered(
    inc: &[FixedBitSet],
    rest: &[usize],
    p: usize,
    start: usize,
    live: &FixedBitSet,
    chosen: &mut Vec<usize>,
    checked: &mut u128,
) -> Option<Vec<usize>> {
    if chosen.len() == p {
        *checked += 1;
        return live.is_clear().then(|| chosen.clone());
    }
    let need = p - chosen.len();
    for i in start..=rest.len() - need {
        let mut next = live.clone();
        next.difference_with(&inc[rest[i]]);
        chosen.push(rest[i]);
        if next.is_clear() {
            // every completion of this prefix is uncovered
            let mut out = chosen.clone();
            out.extend_from_slice(&rest[i + 1..i + need]);
            *checked += 1;
            return Some(out);
        }
        let found = first_uncovered(inc, rest, p, i + 1, &next, chosen, checked);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Text dump: a header line `n p l provenance`, then one line per query.
pub fn write_scheme<W: Write>(scheme: &QueryScheme, mut out: W) -> Result<()> {
    writeln!(out, "{} {} {} {}", scheme.n, scheme.p, scheme.len(), scheme.provenance)?;
    for q in &scheme.queries {
        let line: Vec<String> = q.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn read_scheme<R: BufRead>(r: R) -> Result<QueryScheme> {
    let mut lines = r.lines();
    let header = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })??;
    let parse_err = |line: usize, msg: String| Error::Parse { line, msg };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(parse_err(1, "header must be `n p l provenance`".into()));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|e| parse_err(1, e.to_string()));
    let (n, p, l) = (num(fields[0])?, num(fields[1])?, num(fields[2])?);
    let provenance: Provenance = fields[3].parse()?;
    let mut queries = Vec::with_capacity(l);
    for i in 0..l {
        let line_no = i + 2;
        let line = lines
            .next()
            .ok_or_else(|| parse_err(line_no, format!("expected {l} query lines")))??;
        let mut q = Vec::new();
        for tok in line.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| parse_err(line_no, format!("bad vertex {tok:?}")))?;
            if v >= n {
                return Err(parse_err(line_no, format!("vertex {v} out of range")));
            }
            if q.last().is_some_and(|&last| last >= v) {
                return Err(parse_err(line_no, "query vertices must be strictly ascending".into()));
            }
            q.push(v);
        }
        queries.push(q);
    }
    if let Some(extra) = lines.next() {
        if !extra?.trim().is_empty() {
            return Err(parse_err(l + 2, "trailing content after queries".into()));
        }
    }
    Ok(QueryScheme {
        n,
        p,
        provenance,
        queries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in start..n {
                cur.push(v);
                go(n, k, v + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, k, 0, &mut Vec::new(), &mut out);
        out
    }

    /// Direct enumeration of every witness against every query.
    fn covered_bruteforce(scheme: &QueryScheme) -> bool {
        let n = scheme.n;
        subsets(n, 2).into_iter().all(|pair| {
            let rest: Vec<usize> = (0..n).filter(|v| !pair.contains(v)).collect();
            subsets(rest.len(), scheme.p).into_iter().all(|idx| {
                let w = Witness {
                    pair: (pair[0], pair[1]),
                    excluded: idx.iter().map(|&i| rest[i]).collect(),
                };
                scheme.queries.iter().any(|q| w.is_covered_by(q))
            })
        })
    }

    #[test]
    fn bernoulli_edge_cases() {
        let mut r = rng(0);
        assert_eq!(bernoulli_subset(7, 1.0, &mut r).unwrap(), (0..7).collect::<Vec<_>>());
        assert!(bernoulli_subset(7, 0.5, &mut r).is_err());
        assert!(bernoulli_subset(7, f64::NAN, &mut r).is_err());
    }

    #[test]
    fn bernoulli_size_concentrates() {
        let mut r = rng(1);
        let q = bernoulli_subset(10_000, 10.0, &mut r).unwrap();
        let sd = (10_000.0f64 * 0.1 * 0.9).sqrt();
        assert!((q.len() as f64 - 1000.0).abs() <= 3.0 * sd, "size {}", q.len());
    }

    #[test]
    fn bernoulli_hits_a_witness_often_enough() {
        // |U| = 2 included, |W| = p excluded, denominator p + 1
        for p in [1usize, 2, 3] {
            let mut r = rng(p as u64);
            let draws = 100_000;
            let n = p + 2;
            let mut hits = 0u64;
            for _ in 0..draws {
                let q = bernoulli_subset(n, (p + 1) as f64, &mut r).unwrap();
                if q.contains(&0) && q.contains(&1) && !q.iter().any(|&v| v >= 2) {
                    hits += 1;
                }
            }
            let floor = 1.0 / ((p + 1) as f64).powi(2) / std::f64::consts::E;
            let sd = (floor * (1.0 - floor) / draws as f64).sqrt();
            assert!(hits as f64 / draws as f64 >= floor - 3.0 * sd, "p={p} hits={hits}");
        }
    }

    #[test]
    fn bernoulli_inclusions_are_pairwise_independent() {
        // 2x2 chi-square for each vertex pair, df = 1, critical value 10.83 at 0.001
        let mut r = rng(9);
        let (n, draws) = (6usize, 20_000usize);
        let mut counts = vec![[[0f64; 2]; 2]; n * n];
        for _ in 0..draws {
            let q = bernoulli_subset(n, 3.0, &mut r).unwrap();
            let mut m = [0usize; 6];
            for v in q {
                m[v] = 1;
            }
            for a in 0..n {
                for b in a + 1..n {
                    counts[a * n + b][m[a]][m[b]] += 1.0;
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let c = counts[a * n + b];
                let total = draws as f64;
                let mut chi = 0.0;
                for i in 0..2 {
                    for j in 0..2 {
                        let row = c[i][0] + c[i][1];
                        let col = c[0][j] + c[1][j];
                        let expect = row * col / total;
                        chi += (c[i][j] - expect).powi(2) / expect;
                    }
                }
                assert!(chi < 10.83, "pair {a},{b} chi2 {chi}");
            }
        }
    }

    #[test]
    fn random_scheme_sizes() {
        assert_eq!(random_scheme_size(6, 1).unwrap(), 65);
        let s = random_scheme(9, 0, &mut rng(0)).unwrap();
        assert_eq!(s.queries, vec![(0..9).collect::<Vec<_>>()]);
        for (n, p) in [(6, 1), (10, 2), (20, 3)] {
            assert_eq!(random_scheme(n, p, &mut rng(2)).unwrap().len(), random_scheme_size(n, p).unwrap());
        }
        assert!(random_scheme(5, 4, &mut rng(0)).is_err());
    }

    #[test]
    fn random_scheme_usually_covers_small_instances() {
        let good = (0..100)
            .filter(|&seed| {
                let s = random_scheme(6, 1, &mut rng(seed)).unwrap();
                verify_scheme(&s, VerifyMode::exhaustive()).unwrap().covered
            })
            .count();
        assert!(good >= 99, "{good}/100 seeds covered");
    }

    #[test]
    fn splitter_examples() {
        let c = build_splitter(10, 1).unwrap();
        assert_eq!(c.moduli, vec![1]);
        assert!((0..10).all(|v| c.color(0, v) == 1));
        let s = build_splitter(4, 2).unwrap();
        assert!(subsets(4, 2).iter().all(|p| s.separates(p)));
        let big = build_splitter(64, 3).unwrap();
        assert_eq!(big.moduli, vec![11, 13, 17, 19]);
        assert_eq!(big.colors, 19);
        assert!(subsets(64, 3).iter().all(|t| big.separates(t)));
        assert!(build_splitter(3, 4).is_err());
    }

    #[test]
    fn splitter_scheme_examples() {
        let sp = build_splitter(5, 3).unwrap();
        let s = scheme_from_splitter(&sp, 1).unwrap();
        assert!(verify_scheme(&s, VerifyMode::exhaustive()).unwrap().covered);
        assert!(covered_bruteforce(&s));
        assert!(scheme_from_splitter(&sp, 2).is_err());
        // size is functions * C(C+1, 2) minus the unions of two empty classes
        for (n, p) in [(5, 0), (9, 1), (12, 2), (30, 1)] {
            let sp = build_splitter(n, p + 2).unwrap();
            let s = scheme_from_splitter(&sp, p).unwrap();
            let mut expected = 0;
            for &q in &sp.moduli {
                let c = sp.colors;
                let empty = c - q.min(n);
                expected += c * (c + 1) / 2 - empty * (empty + 1) / 2;
            }
            assert_eq!(s.len(), expected);
        }
    }

    #[test]
    fn splitter_schemes_cover_all_small_witnesses() {
        for n in 2..=12 {
            for p in 0..=3usize.min(n - 2) {
                let s = deterministic_scheme(n, p).unwrap();
                let r = verify_scheme(&s, VerifyMode::exhaustive()).unwrap();
                assert!(r.covered, "n={n} p={p} {:?}", r.counterexample);
            }
        }
    }

    #[test]
    fn verify_trivial_cases() {
        let full = QueryScheme {
            n: 6,
            p: 0,
            provenance: Provenance::Random,
            queries: vec![(0..6).collect()],
        };
        assert!(verify_scheme(&full, VerifyMode::exhaustive()).unwrap().covered);
        let empty = QueryScheme {
            queries: vec![],
            ..full.clone()
        };
        let r = verify_scheme(&empty, VerifyMode::exhaustive()).unwrap();
        assert_eq!(
            r.counterexample,
            Some(Witness {
                pair: (0, 1),
                excluded: vec![]
            })
        );
        let r = verify_scheme(&empty, VerifyMode::Sampled { count: 10, seed: 0 }).unwrap();
        assert!(!r.covered);
        let wide = QueryScheme { p: 3, ..full };
        assert!(verify_scheme(&wide, VerifyMode::Exhaustive { guard: 10 }).is_err());
    }

    #[test]
    fn verification_matches_bruteforce_on_random_schemes() {
        for seed in 0..60 {
            let mut r = rng(seed);
            let n = r.gen_range(4..8);
            let p = r.gen_range(1..3);
            let l = r.gen_range(0..25);
            let queries = (0..l).map(|_| bernoulli_subset(n, (p + 1) as f64, &mut r).unwrap()).collect();
            let s = QueryScheme {
                n,
                p,
                provenance: Provenance::Random,
                queries,
            };
            let rep = verify_scheme(&s, VerifyMode::exhaustive()).unwrap();
            assert_eq!(rep.covered, covered_bruteforce(&s), "seed {seed}");
            if let Some(w) = rep.counterexample {
                assert!(!s.queries.iter().any(|q| w.is_covered_by(q)));
            }
        }
    }

    #[test]
    fn witness_counts() {
        let (e, b) = witness_count_bound(5, 1).unwrap();
        assert_eq!(e, 30);
        assert!((b - 25.0 * std::f64::consts::E * 3.0).abs() < 1e-9);
        let (e, b) = witness_count_bound(4, 2).unwrap();
        assert_eq!(e, 6);
        assert!((b - 16.0 * std::f64::consts::E.powi(2)).abs() < 1e-9);
        for n in 3..=40 {
            for p in 1..=n - 2 {
                let (e, b) = witness_count_bound(n, p).unwrap();
                assert!(e as f64 <= b, "n={n} p={p}");
            }
        }
        assert!(witness_count_bound(5, 0).is_err());
    }

    proptest! {
        #[test]
        fn scheme_text_round_trips(seed in 0u64..200, n in 2usize..15) {
            let p = (seed as usize) % (n - 1);
            let s = random_scheme(n, p.min(2), &mut rng(seed)).unwrap();
            let mut buf = Vec::new();
            write_scheme(&s, &mut buf).unwrap();
            let back = read_scheme(&buf[..]).unwrap();
            prop_assert_eq!(&back, &s);
            let mut again = Vec::new();
            write_scheme(&back, &mut again).unwrap();
            prop_assert_eq!(buf, again);
        }
    }
}
