//! Seeded experiment sweeps and scaling fits over query counts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{invalid, Error, Result};
use crate::graph::{generate, graph_equal, Family, Graph, GraphParams};
use crate::oracle::OracleSession;
use crate::race::{default_contenders, race};
use crate::recon::degeneracy::{reconstruct_degeneracy, reconstruct_unknown_degeneracy};
use crate::recon::edges::reconstruct_edge_bounded;
use crate::recon::maxdeg::{reconstruct_bounded_connectivity, reconstruct_bounded_degree, reconstruct_unknown_degree};
use crate::recon::treewidth::{reconstruct_treewidth, reconstruct_unknown_treewidth};
use crate::recon::Mode;

/// Version tag written in the first line of every CSV file.
pub const CSV_VERSION_LINE: &str = "# ccrecon experiment csv v1";

pub const CSV_COLUMNS: [&str; 14] = [
    "algorithm",
    "family",
    "n",
    "delta",
    "k",
    "d",
    "m",
    "lambda",
    "guess_final",
    "seed",
    "queries",
    "rounds",
    "correct",
    "wall_ms",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Maxdeg,
    MaxdegUnknown,
    Connectivity,
    Treewidth,
    TreewidthUnknown,
    Degeneracy,
    DegeneracyUnknown,
    /// Binary-splitting neighbor search (stand-in for an edge-count-optimal method).
    Edges,
    Race,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::Maxdeg,
        Algorithm::MaxdegUnknown,
        Algorithm::Connectivity,
        Algorithm::Treewidth,
        Algorithm::TreewidthUnknown,
        Algorithm::Degeneracy,
        Algorithm::DegeneracyUnknown,
        Algorithm::Edges,
        Algorithm::Race,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Maxdeg => "maxdeg",
            Algorithm::MaxdegUnknown => "maxdeg-unknown",
            Algorithm::Connectivity => "connectivity",
            Algorithm::Treewidth => "treewidth",
            Algorithm::TreewidthUnknown => "treewidth-unknown",
            Algorithm::Degeneracy => "degeneracy",
            Algorithm::DegeneracyUnknown => "degeneracy-unknown",
            Algorithm::Edges => "edges",
            Algorithm::Race => "race",
        }
    }

    /// Whether the algorithm takes the structural parameter as input.
    pub fn needs_parameter(self) -> bool {
        matches!(
            self,
            Algorithm::Maxdeg | Algorithm::Connectivity | Algorithm::Treewidth | Algorithm::Degeneracy
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| invalid(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    #[default]
    Randomized,
    Deterministic,
}

impl FromStr for ModeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "randomized" => Ok(ModeKind::Randomized),
            "deterministic" => Ok(ModeKind::Deterministic),
            other => Err(invalid(format!("unknown mode {other:?}"))),
        }
    }
}

/// A full experiment description; together with `base_seed` it determines every output byte
/// (wall times excepted, which are zero unless `timing` is set).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    /// Base family; its size is replaced by each entry of `sizes`
    /// (the side length for grids).
    pub family: Family,
    pub sizes: Vec<usize>,
    /// Structural parameter handed to the known-parameter algorithms. Each
    /// entry is a separate sweep point; empty means "use the hidden graph's
    /// true value".
    #[serde(default)]
    pub params: Vec<usize>,
    pub trials: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default)]
    pub mode: ModeKind,
    /// Only `"cc"` drives the reconstruction algorithms.
    #[serde(default = "default_oracle")]
    pub oracle: String,
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(default)]
    pub timing: bool,
    /// Vertex limit for exact treewidth, both for reporting and for the unknown-treewidth check.
    #[serde(default = "default_guard")]
    pub treewidth_guard: usize,
    /// Vertex limit for computing the pairwise connectivity column.
    #[serde(default = "default_connectivity_limit")]
    pub connectivity_limit: usize,
}

fn default_oracle() -> String {
    "cc".into()
}

fn default_guard() -> usize {
    crate::graph::DEFAULT_TREEWIDTH_GUARD
}

fn default_connectivity_limit() -> usize {
    128
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm, family: Family, sizes: Vec<usize>, trials: usize) -> Self {
        ExperimentConfig {
            algorithm,
            family,
            sizes,
            params: Vec::new(),
            trials,
            base_seed: 0,
            mode: ModeKind::Randomized,
            oracle: default_oracle(),
            budget: None,
            timing: false,
            treewidth_guard: default_guard(),
            connectivity_limit: default_connectivity_limit(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        if self.sizes.is_empty() {
            return Err(invalid("the size sweep is empty"));
        }
        if self.oracle != "cc" {
            return Err(invalid(format!(
                "oracle {:?} cannot drive reconstruction; only \"cc\" is supported",
                self.oracle
            )));
        }
        if self.budget == Some(0) {
            return Err(invalid("budget must be positive"));
        }
        if !self.params.is_empty() && !self.algorithm.needs_parameter() {
            return Err(invalid(format!("algorithm {} takes no parameter", self.algorithm)));
        }
        if self.mode == ModeKind::Deterministic && matches!(self.algorithm, Algorithm::Race | Algorithm::Edges) {
            return Err(invalid(format!("algorithm {} has no deterministic mode switch", self.algorithm)));
        }
        Ok(())
    }

    fn points(&self) -> Vec<(usize, Option<usize>)> {
        let params: Vec<Option<usize>> = if self.params.is_empty() {
            vec![None]
        } else {
            self.params.iter().copied().map(Some).collect()
        };
        self.sizes
            .iter()
            .flat_map(|&n| params.iter().map(move |&p| (n, p)))
            .collect()
    }
}

/// One trial's outcome. `reason` explains failed runs and is only kept in JSON output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub algorithm: String,
    pub family: String,
    pub n: usize,
    pub delta: usize,
    pub k: Option<usize>,
    pub d: usize,
    pub m: usize,
    pub lambda: Option<usize>,
    /// Parameter used by the final attempt (the given one for known-parameter algorithms).
    pub guess_final: Option<usize>,
    pub seed: u64,
    pub queries: u64,
    /// Attempts, pruning passes or peeling rounds, depending on the algorithm.
    pub rounds: u64,
    pub correct: bool,
    pub wall_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Seed of trial `trial` at sweep point `point`, independent of the other points.
pub fn trial_seed(base: u64, point: usize, trial: usize) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(mix(mix(base) ^ point as u64) ^ trial as u64)
}

struct Outcome {
    graph: Graph,
    guess: Option<usize>,
    rounds: u64,
}

fn run_algorithm(
    cfg: &ExperimentConfig,
    params: &GraphParams,
    given: Option<usize>,
    seed: u64,
    session: &mut OracleSession<'_>,
) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA5A5_A5A5_A5A5_A5A5);
    let mut mode = match cfg.mode {
        ModeKind::Randomized => Mode::Randomized(&mut rng),
        ModeKind::Deterministic => Mode::Deterministic,
    };
    let param = |truth: Option<usize>| -> Result<usize> {
        given.or(truth).ok_or_else(|| invalid("true parameter unavailable; pass it explicitly"))
    };
    let out = match cfg.algorithm {
        Algorithm::Maxdeg => {
            let p = param(Some(params.max_degree))?;
            let g = reconstruct_bounded_degree(session, p, mode.reborrow())?;
            Outcome { graph: g, guess: Some(p), rounds: 1 }
        }
        Algorithm::Connectivity => {
            let p = param(params.pairwise_connectivity)?;
            let g = reconstruct_bounded_connectivity(session, p, mode.reborrow())?;
            Outcome { graph: g, guess: Some(p), rounds: 1 }
        }
        Algorithm::MaxdegUnknown => {
            let (g, t) = reconstruct_unknown_degree(session, mode.reborrow())?;
            Outcome { graph: g, guess: Some(t.final_guess()), rounds: t.attempts() as u64 }
        }
        Algorithm::Treewidth => {
            let p = param(Some(params.treewidth.upper_bound()))?;
            let (g, run) = reconstruct_treewidth(session, p, mode.reborrow())?;
            Outcome { graph: g, guess: Some(p), rounds: run.iterations as u64 }
        }
        Algorithm::TreewidthUnknown => {
            let (g, t, _) = reconstruct_unknown_treewidth(session, mode.reborrow())?;
            Outcome { graph: g, guess: Some(t.final_guess()), rounds: t.attempts() as u64 }
        }
        Algorithm::Degeneracy => {
            let p = param(Some(params.degeneracy))?;
            let (g, trace) = reconstruct_degeneracy(session, p, mode.reborrow())?;
            Outcome { graph: g, guess: Some(p), rounds: trace.rounds.len() as u64 }
        }
        Algorithm::DegeneracyUnknown => {
            let (g, t, _) = reconstruct_unknown_degeneracy(session, mode.reborrow())?;
            Outcome { graph: g, guess: Some(t.final_guess()), rounds: t.attempts() as u64 }
        }
        Algorithm::Edges => Outcome {
            graph: reconstruct_edge_bounded(session)?,
            guess: None,
            rounds: 1,
        },
        Algorithm::Race => unreachable!("races are run without a single session"),
    };
    Ok(out)
}

fn run_trial(cfg: &ExperimentConfig, point: usize, n: usize, given: Option<usize>, trial: usize) -> ExperimentRecord {
    let seed = trial_seed(cfg.base_seed, point, trial);
    let family = cfg.family.with_size(n);
    let started = Instant::now();
    let mut rec = ExperimentRecord {
        algorithm: cfg.algorithm.name().into(),
        family: family.name().into(),
        n: family.vertex_count(),
        delta: 0,
        k: None,
        d: 0,
        m: 0,
        lambda: None,
        guess_final: None,
        seed,
        queries: 0,
        rounds: 0,
        correct: false,
        wall_ms: 0.0,
        reason: None,
    };
    let hidden = match generate(&family, seed) {
        Ok(g) => g,
        Err(e) => {
            rec.reason = Some(e.to_string());
            return rec;
        }
    };
    let params = GraphParams::compute(&hidden, cfg.treewidth_guard, cfg.connectivity_limit);
    rec.delta = params.max_degree;
    rec.k = params.treewidth.exact();
    rec.d = params.degeneracy;
    rec.m = params.edge_count;
    rec.lambda = params.pairwise_connectivity;

    let result = if cfg.algorithm == Algorithm::Race {
        match race(&hidden, &default_contenders(seed), cfg.budget) {
            Ok((g, report)) => {
                rec.queries = report.total_queries;
                rec.rounds = report.rounds;
                Ok(g)
            }
            Err(e) => {
                if let Error::BudgetExhausted { queries } = e {
                    rec.queries = queries;
                }
                Err(e)
            }
        }
    } else {
        let mut session = OracleSession::counting(&hidden).with_budget(cfg.budget);
        let out = run_algorithm(cfg, &params, given, seed, &mut session);
        rec.queries = session.query_count();
        out.map(|o| {
            rec.guess_final = o.guess;
            rec.rounds = o.rounds;
            o.graph
        })
    };
    match result {
        Ok(g) => rec.correct = graph_equal(&g, &hidden).unwrap_or(false),
        Err(e) => rec.reason = Some(e.to_string()),
    }
    if cfg.timing {
        rec.wall_ms = started.elapsed().as_secs_f64() * 1e3;
    }
    rec
}

/// Runs every trial of every sweep point; trials run in parallel, records come
/// back ordered by (sweep point, trial).
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize, Option<usize>, usize)> = cfg
        .points()
        .into_iter()
        .enumerate()
        .flat_map(|(i, (n, p))| (0..cfg.trials).map(move |t| (i, n, p, t)))
        .collect();
    Ok(jobs
        .into_par_iter()
        .map(|(i, n, p, t)| run_trial(cfg, i, n, p, t))
        .collect())
}

/// Writes records as CSV preceded by the version comment line.
pub fn write_csv<W: Write>(records: &[ExperimentRecord], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_VERSION_LINE}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS).map_err(csv_err)?;
    let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in records {
        w.write_record([
            r.algorithm.clone(),
            r.family.clone(),
            r.n.to_string(),
            r.delta.to_string(),
            opt(r.k),
            r.d.to_string(),
            r.m.to_string(),
            opt(r.lambda),
            opt(r.guess_final),
            r.seed.to_string(),
            r.queries.to_string(),
            r.rounds.to_string(),
            r.correct.to_string(),
            format!("{:.3}", r.wall_ms),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingAxis {
    /// Exponent of `param + 1`, where `param` is each record's final guess.
    Parameter,
    /// Exponent of `ln n`.
    LogN,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub axis: ScalingAxis,
    /// `(x, mean queries)` per sweep point, sorted by `x`.
    pub points: Vec<(f64, f64)>,
    /// Least-squares slope of `ln(mean queries)` against `ln x`.
    pub exponent: f64,
}

/// Mean queries per sweep point and the fitted log-log slope along `axis`.
pub fn fit_scaling(records: &[ExperimentRecord], axis: ScalingAxis) -> Result<ScalingFit> {
    let mut groups: Vec<(f64, f64, usize)> = Vec::new();
    for r in records {
        let x = match axis {
            ScalingAxis::Parameter => r
                .guess_final
                .ok_or_else(|| invalid("record has no parameter value"))? as f64 + 1.0,
            ScalingAxis::LogN => (r.n as f64).ln(),
        };
        match groups.iter_mut().find(|g| g.0 == x) {
            Some(g) => {
                g.1 += r.queries as f64;
                g.2 += 1;
            }
            None => groups.push((x, r.queries as f64, 1)),
        }
    }
    if groups.len() < 3 {
        return Err(invalid(format!("scaling fit needs at least 3 sweep points, got {}", groups.len())));
    }
    let mut points: Vec<(f64, f64)> = groups.iter().map(|&(x, s, c)| (x, s / c as f64)).collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(invalid("scaling fit needs positive coordinates"));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(ScalingFit {
        axis,
        points,
        exponent: sxy / sxx,
    })
}
