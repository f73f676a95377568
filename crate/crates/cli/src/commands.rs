use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use ccrecon::bridges::{components_via_mis, components_via_sep, mis_via_cc, sep_via_cc};
use ccrecon::experiment::{fit_scaling, run_experiment, write_csv, Algorithm, ExperimentConfig, ModeKind, ScalingAxis};
use ccrecon::graph::{read_graph, write_graph};
use ccrecon::race::{default_contenders, race};
use ccrecon::recon::edges::reconstruct_edge_bounded;
use ccrecon::recon::maxdeg::reconstruct_bounded_degree;
use ccrecon::scheme::{
    deterministic_scheme, random_scheme, read_scheme, verify_scheme, write_scheme, VerifyMode,
};
use ccrecon::{components_bruteforce, generate, Family, Graph, Mode, OracleSession};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{BridgeArgs, FamilyArgs, Format, RaceArgs, RunArgs, SchemeCommand, ValidateArgs};
use crate::config::FileConfig;

/// Failure of a command, split by exit status.
pub enum Failure {
    /// Bad flags or configuration; exit status 2.
    Usage(String),
    /// The command ran and failed or found a violation; exit status 1.
    Run(String),
}

impl From<ccrecon::Error> for Failure {
    fn from(e: ccrecon::Error) -> Self {
        match e {
            ccrecon::Error::InvalidInput(msg) => Failure::Usage(msg),
            other => Failure::Run(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

pub type Outcome = Result<(), Failure>;

/// Global settings after merging the config file under the command line.
pub struct Globals {
    pub seed: u64,
    pub budget: Option<u64>,
    pub out: Option<std::path::PathBuf>,
    pub format: Option<Format>,
    pub file: FileConfig,
}

impl Globals {
    fn sink(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.out {
            Some(p) => Box::new(File::create(p).map_err(|e| Failure::Run(format!("cannot create {}: {e}", p.display())))?),
            None => Box::new(std::io::stdout().lock()),
        })
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Outcome {
        let mut w = self.sink()?;
        serde_json::to_writer_pretty(&mut w, value).map_err(|e| Failure::Run(e.to_string()))?;
        writeln!(w)?;
        Ok(())
    }

    /// Resolves a family from flags, falling back to the config file.
    fn family(&self, args: &FamilyArgs, size_hint: Option<usize>) -> Result<Family, Failure> {
        let name = args
            .family
            .clone()
            .or_else(|| self.file.family.clone())
            .ok_or_else(|| Failure::Usage("--family is required".into()))?;
        let mut params = self.file.family_params().map_err(Failure::Usage)?;
        params.extend(args.params());
        if let Some(n) = size_hint {
            fill_size(&name, &mut params, n);
        }
        Ok(Family::from_params(&name, &params)?)
    }
}

/// Placeholder size so a sweep family parses without an explicit `--n`.
fn fill_size(name: &str, params: &mut BTreeMap<String, String>, n: usize) {
    if name == "grid" {
        if !params.contains_key("rows") && !params.contains_key("n") {
            params.insert("rows".into(), n.to_string());
            params.insert("cols".into(), n.to_string());
        }
    } else if name == "clique_pair" {
        // n defaults to 2 * eta for this family
    } else {
        params.entry("n".into()).or_insert_with(|| n.to_string());
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let f = File::open(path).map_err(|e| Failure::Run(format!("cannot open {}: {e}", path.display())))?;
    Ok(read_graph(BufReader::new(f))?)
}

fn hidden_graph(g: &Globals, path: &Option<std::path::PathBuf>, fam: &FamilyArgs) -> Result<Graph, Failure> {
    match path {
        Some(p) => load_graph(p),
        None => Ok(generate(&g.family(fam, None)?, g.seed)?),
    }
}

pub fn gen(g: &Globals, fam: &FamilyArgs) -> Outcome {
    let graph = generate(&g.family(fam, None)?, g.seed)?;
    let mut w = g.sink()?;
    write_graph(&graph, &mut w)?;
    Ok(())
}

pub fn run(g: &Globals, a: &RunArgs) -> Outcome {
    let file = &g.file;
    let algorithm: Algorithm = a
        .algorithm
        .clone()
        .or_else(|| file.algorithm.clone())
        .ok_or_else(|| Failure::Usage("--algorithm is required".into()))?
        .parse()?;
    let sizes = if a.sizes.is_empty() { file.sizes.clone() } else { a.sizes.clone() };
    let family = g.family(&a.family, sizes.first().copied())?;
    let sizes = if sizes.is_empty() {
        vec![match family {
            Family::Grid { rows, .. } => rows,
            ref f => f.vertex_count(),
        }]
    } else {
        sizes
    };
    let mode = match a.mode.clone().or_else(|| file.mode.clone()).as_deref() {
        None | Some("randomized") => ModeKind::Randomized,
        Some("deterministic") => ModeKind::Deterministic,
        Some(other) => return Err(Failure::Usage(format!("unknown mode {other:?}"))),
    };
    let mut cfg = ExperimentConfig::new(algorithm, family, sizes, a.trials.or(file.trials).unwrap_or(10));
    cfg.params = if a.params.is_empty() { file.params.clone() } else { a.params.clone() };
    cfg.base_seed = g.seed;
    cfg.mode = mode;
    cfg.budget = g.budget;
    cfg.timing = a.timing || file.timing;
    cfg.validate()?;
    let records = run_experiment(&cfg)?;
    if let Some(axis) = &a.fit {
        let axis = if axis == "parameter" { ScalingAxis::Parameter } else { ScalingAxis::LogN };
        match fit_scaling(&records, axis) {
            Ok(fit) => eprintln!("{}", serde_json::to_string(&fit).map_err(|e| Failure::Run(e.to_string()))?),
            Err(e) => eprintln!("no fit: {e}"),
        }
    }
    match g.format.unwrap_or(Format::Csv) {
        Format::Csv => write_csv(&records, g.sink()?)?,
        Format::Json => g.emit_json(&records)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct RaceOutput {
    #[serde(flatten)]
    report: ccrecon::race::RaceReport,
    correct: bool,
    /// Output edges as `"u v"` lines of the graph file format.
    edges: Vec<String>,
}

pub fn race_cmd(g: &Globals, a: &RaceArgs) -> Outcome {
    let hidden = hidden_graph(g, &a.graph, &a.family)?;
    let (out, report) = race(&hidden, &default_contenders(g.seed), g.budget)?;
    let result = RaceOutput {
        correct: out == hidden,
        edges: out.edges().map(|(u, v)| format!("{u} {v}")).collect(),
        report,
    };
    match g.format.unwrap_or(Format::Json) {
        Format::Json => g.emit_json(&result)?,
        Format::Csv => {
            let mut w = g.sink()?;
            writeln!(w, "id,queries,status")?;
            for c in &result.report.contenders {
                writeln!(w, "{},{},\"{}\"", c.id, c.queries, c.status.replace('"', "'"))?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct BridgeCheck {
    procedure: String,
    queries_used: u64,
    expected_queries: u64,
    correct: bool,
}

pub fn bridge(g: &Globals, a: &BridgeArgs) -> Outcome {
    let hidden = hidden_graph(g, &a.graph, &a.family)?;
    let n = hidden.n();
    let mut s = a.set.clone().unwrap_or_else(|| (0..n).collect());
    s.sort_unstable();
    s.dedup();
    let want = components_bruteforce(&hidden, &s)?;
    let pairs = (s.len() * s.len().saturating_sub(1) / 2) as u64;
    let session = || OracleSession::counting(&hidden).with_budget(g.budget);
    let mut checks = Vec::new();

    let mut sess = session();
    let rep = mis_via_cc(&mut sess, &s)?;
    let maximal = s
        .iter()
        .all(|v| rep.output.contains(v) || rep.output.iter().any(|&x| hidden.has_edge(x, *v)));
    checks.push(BridgeCheck {
        procedure: rep.procedure,
        queries_used: rep.queries_used,
        expected_queries: s.len() as u64,
        correct: hidden.is_independent(&rep.output) && maximal,
    });

    let mut sess = session();
    let rep = components_via_mis(&mut sess, &s)?;
    checks.push(BridgeCheck {
        procedure: rep.procedure,
        queries_used: rep.queries_used,
        expected_queries: pairs,
        correct: rep.output == want,
    });

    let mut sess = session();
    let rep = components_via_sep(&mut sess, &s)?;
    checks.push(BridgeCheck {
        procedure: rep.procedure,
        queries_used: rep.queries_used,
        expected_queries: pairs,
        correct: rep.output == want,
    });

    // Sep(v, w, V \ s) for every pair of s, each answered by one CC query
    let outside: Vec<usize> = (0..n).filter(|x| s.binary_search(x).is_err()).collect();
    let (mut used, mut agree) = (0, true);
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let mut sess = session();
            let rep = sep_via_cc(&mut sess, s[i], s[j], &outside)?;
            used += rep.queries_used;
            agree &= rep.output == (want.block_of(s[i]) != want.block_of(s[j]));
        }
    }
    checks.push(BridgeCheck {
        procedure: "sep-via-cc".into(),
        queries_used: used,
        expected_queries: pairs,
        correct: agree,
    });

    let all_ok = checks.iter().all(|c| c.correct && c.queries_used == c.expected_queries);
    match g.format.unwrap_or(Format::Json) {
        Format::Json => g.emit_json(&checks)?,
        Format::Csv => {
            let mut w = g.sink()?;
            writeln!(w, "procedure,queries_used,expected_queries,correct")?;
            for c in &checks {
                writeln!(w, "{},{},{},{}", c.procedure, c.queries_used, c.expected_queries, c.correct)?;
            }
        }
    }
    if all_ok {
        Ok(())
    } else {
        Err(Failure::Run("a bridge disagreed with brute force".into()))
    }
}

pub fn scheme(g: &Globals, cmd: &SchemeCommand) -> Outcome {
    match cmd {
        SchemeCommand::Build { n, p, kind } => {
            let s = if kind == "random" {
                random_scheme(*n, *p, &mut ChaCha8Rng::seed_from_u64(g.seed))?
            } else {
                deterministic_scheme(*n, *p)?
            };
            write_scheme(&s, g.sink()?)?;
        }
        SchemeCommand::Verify { input, samples } => {
            let f = File::open(input).map_err(|e| Failure::Run(format!("cannot open {}: {e}", input.display())))?;
            let s = read_scheme(BufReader::new(f))?;
            let mode = match samples {
                Some(count) => VerifyMode::Sampled {
                    count: *count,
                    seed: g.seed,
                },
                None => VerifyMode::exhaustive(),
            };
            let rep = verify_scheme(&s, mode)?;
            match g.format.unwrap_or(Format::Json) {
                Format::Json => g.emit_json(&rep)?,
                Format::Csv => {
                    let mut w = g.sink()?;
                    writeln!(w, "covered,witnesses_checked")?;
                    writeln!(w, "{},{}", rep.covered, rep.witnesses_checked)?;
                }
            }
            if !rep.covered {
                return Err(Failure::Run(format!("uncovered witness {:?}", rep.counterexample)));
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SuiteResult {
    suite: &'static str,
    cases: u64,
    failures: u64,
}

fn every_graph(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |m| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("pairs are in range")
    })
}

/// Largest `max_n` accepted: all labeled graphs on 7 vertices is already 2^21.
const VALIDATE_LIMIT: usize = 7;

pub fn validate(g: &Globals, a: &ValidateArgs) -> Outcome {
    if a.max_n > VALIDATE_LIMIT {
        return Err(Failure::Usage(format!("--max-n is limited to {VALIDATE_LIMIT}")));
    }
    let mut oracle = SuiteResult { suite: "oracle", cases: 0, failures: 0 };
    let mut bridges = SuiteResult { suite: "bridges", cases: 0, failures: 0 };
    let mut recon = SuiteResult { suite: "reconstruction", cases: 0, failures: 0 };
    let mut schemes = SuiteResult { suite: "schemes", cases: 0, failures: 0 };

    for n in 2..=a.max_n.max(2) {
        for p in 0..=3usize.min(n - 2) {
            schemes.cases += 1;
            let s = deterministic_scheme(n, p)?;
            if !verify_scheme(&s, VerifyMode::exhaustive())?.covered {
                schemes.failures += 1;
            }
        }
    }

    for n in 0..=a.max_n {
        let scheme = (n >= 2).then(|| deterministic_scheme(n, 3.min(n - 2))).transpose()?;
        for graph in every_graph(n) {
            for mask in 0u32..1 << n {
                let s: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                let want = components_bruteforce(&graph, &s)?;
                let mut sess = OracleSession::counting(&graph);
                oracle.cases += 1;
                if sess.cc_query(&s)? != want || sess.ccc_query(&s)? != want.len() {
                    oracle.failures += 1;
                }

                bridges.cases += 1;
                let mut sess = OracleSession::counting(&graph);
                let mis = mis_via_cc(&mut sess, &s)?.output;
                let mis_ok = graph.is_independent(&mis)
                    && s.iter().all(|v| mis.contains(v) || mis.iter().any(|&x| graph.has_edge(x, *v)));
                let mut sess = OracleSession::counting(&graph);
                let via_mis = components_via_mis(&mut sess, &s)?.output;
                let mut sess = OracleSession::counting(&graph);
                let via_sep = components_via_sep(&mut sess, &s)?.output;
                if !mis_ok || via_mis != want || via_sep != want {
                    bridges.failures += 1;
                }
            }

            let mut sess = OracleSession::counting(&graph);
            recon.cases += 1;
            if reconstruct_edge_bounded(&mut sess)? != graph {
                recon.failures += 1;
            }
            if let Some(scheme) = &scheme {
                if graph.max_degree() <= scheme.p {
                    let mut sess = OracleSession::counting(&graph);
                    recon.cases += 1;
                    if reconstruct_bounded_degree(&mut sess, scheme.p, Mode::Scheme(scheme))? != graph {
                        recon.failures += 1;
                    }
                }
            }
        }
    }

    let suites = [oracle, bridges, recon, schemes];
    match g.format {
        Some(Format::Json) => g.emit_json(&suites)?,
        Some(Format::Csv) => {
            let mut w = g.sink()?;
            writeln!(w, "suite,cases,failures")?;
            for s in &suites {
                writeln!(w, "{},{},{}", s.suite, s.cases, s.failures)?;
            }
        }
        None => {
            let mut w = g.sink()?;
            for s in &suites {
                let verdict = if s.failures == 0 { "ok" } else { "FAILED" };
                writeln!(w, "{:<15} {:>9} cases  {verdict}", s.suite, s.cases)?;
            }
        }
    }
    let failed: Vec<&str> = suites.iter().filter(|s| s.failures > 0).map(|s| s.suite).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Run(format!("failing suites: {}", failed.join(", "))))
    }
}
