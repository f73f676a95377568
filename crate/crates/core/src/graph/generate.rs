use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::Graph;
use crate::error::{invalid, Result};

/// Instance families understood by [`generate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Edgeless { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    /// Center 0 joined to vertices `1..=leaves`; the remaining vertices are isolated.
    Star { n: usize, leaves: usize },
    Complete { n: usize },
    Grid { rows: usize, cols: usize },
    /// Uniformly random graph with exactly `m` edges.
    ErWithMEdges { n: usize, m: usize },
    /// Random pair insertions (`attempts` of them) that keep every degree at most `max_degree`.
    BoundedDegree { n: usize, max_degree: usize, attempts: usize },
    /// Random k-tree with every edge outside the initial clique deleted with `delete_prob`.
    PartialKTree { n: usize, k: usize, delete_prob: f64 },
    /// Cliques on `0..eta` and `eta..2eta`, each cross pair present with `cross_prob`,
    /// plus isolated padding vertices up to `n`.
    CliquePair { eta: usize, n: usize, cross_prob: f64 },
    /// Vertices 0 and 1 joined to every other vertex, but not to each other.
    GUv { n: usize },
    /// [`Family::GUv`] plus the edge 0-1.
    GUvPlus { n: usize },
    /// Cliques on consecutive blocks of `p` vertices plus the path `i, i+1`; each
    /// in-block edge off the path is kept with `keep_prob`.
    BlockChain { n: usize, p: usize, keep_prob: f64 },
}

impl Family {
    pub fn star(n: usize) -> Self {
        Family::Star {
            n,
            leaves: n.saturating_sub(1),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Edgeless { .. } => "edgeless",
            Family::Path { .. } => "path",
            Family::Cycle { .. } => "cycle",
            Family::Star { .. } => "star",
            Family::Complete { .. } => "complete",
            Family::Grid { .. } => "grid",
            Family::ErWithMEdges { .. } => "er_with_m_edges",
            Family::BoundedDegree { .. } => "bounded_degree",
            Family::PartialKTree { .. } => "partial_ktree",
            Family::CliquePair { .. } => "clique_pair",
            Family::GUv { .. } => "g_uv",
            Family::GUvPlus { .. } => "g_uv_plus",
            Family::BlockChain { .. } => "block_chain",
        }
    }

    /// Number of vertices of every member of the family.
    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Grid { rows, cols } => rows * cols,
            Family::Edgeless { n }
            | Family::Path { n }
            | Family::Cycle { n }
            | Family::Star { n, .. }
            | Family::Complete { n }
            | Family::ErWithMEdges { n, .. }
            | Family::BoundedDegree { n, .. }
            | Family::PartialKTree { n, .. }
            | Family::CliquePair { n, .. }
            | Family::GUv { n }
            | Family::GUvPlus { n }
            | Family::BlockChain { n, .. } => n,
        }
    }

    /// Builds a family from its name and string parameters.
    ///
    /// `n` is accepted by every family except `grid`, which takes `rows` and
    /// `cols` (`n` alone makes a square grid when it is a perfect square).
    pub fn from_params(name: &str, params: &BTreeMap<String, String>) -> Result<Self> {
        let get = |key: &str| -> Result<Option<f64>> {
            params
                .get(key)
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| invalid(format!("parameter {key}={s:?} is not a number")))
                })
                .transpose()
        };
        let int = |key: &str| -> Result<Option<usize>> {
            match get(key)? {
                Some(x) if x < 0.0 || x.fract() != 0.0 => {
                    Err(invalid(format!("parameter {key} must be a nonnegative integer")))
                }
                Some(x) => Ok(Some(x as usize)),
                None => Ok(None),
            }
        };
        let need = |key: &str| -> Result<usize> {
            int(key)?.ok_or_else(|| invalid(format!("family {name} requires parameter {key}")))
        };
        let n = || need("n");
        let family = match name {
            "edgeless" => Family::Edgeless { n: n()? },
            "path" => Family::Path { n: n()? },
            "cycle" => Family::Cycle { n: n()? },
            "star" => {
                let n = n()?;
                Family::Star {
                    n,
                    leaves: int("leaves")?.unwrap_or(n.saturating_sub(1)),
                }
            }
            "complete" => Family::Complete { n: n()? },
            "grid" => match (int("rows")?, int("cols")?, int("n")?) {
                (Some(rows), Some(cols), _) => Family::Grid { rows, cols },
                (None, None, Some(n)) => {
                    let side = (n as f64).sqrt().round() as usize;
                    if side * side != n {
                        return Err(invalid(format!("grid with n={n} needs rows and cols")));
                    }
                    Family::Grid {
                        rows: side,
                        cols: side,
                    }
                }
                _ => return Err(invalid("grid requires rows and cols")),
            },
            "er_with_m_edges" | "er" => Family::ErWithMEdges {
                n: n()?,
                m: need("m")?,
            },
            "bounded_degree" => {
                let n = n()?;
                let max_degree = need("max_degree")?;
                Family::BoundedDegree {
                    n,
                    max_degree,
                    attempts: int("attempts")?.unwrap_or(n * max_degree),
                }
            }
            "partial_ktree" => Family::PartialKTree {
                n: n()?,
                k: need("k")?,
                delete_prob: get("delete_prob")?.unwrap_or(0.0),
            },
            "clique_pair" => {
                let eta = need("eta")?;
                Family::CliquePair {
                    eta,
                    n: int("n")?.unwrap_or(2 * eta),
                    cross_prob: get("cross_prob")?.unwrap_or(0.5),
                }
            }
            "g_uv" => Family::GUv { n: n()? },
            "g_uv_plus" => Family::GUvPlus { n: n()? },
            "block_chain" => Family::BlockChain {
                n: n()?,
                p: need("p")?,
                keep_prob: get("keep_prob")?.unwrap_or(1.0),
            },
            other => return Err(invalid(format!("unknown family {other:?}"))),
        };
        Ok(family)
    }

    /// The family with its size parameter replaced by `n` (square side for grids).
    pub fn with_size(&self, n: usize) -> Self {
        let mut f = self.clone();
        match &mut f {
            Family::Grid { rows, cols } => {
                *rows = n;
                *cols = n;
            }
            Family::Star { n: size, leaves } => {
                *size = n;
                *leaves = n.saturating_sub(1);
            }
            Family::Edgeless { n: size }
            | Family::Path { n: size }
            | Family::Cycle { n: size }
            | Family::Complete { n: size }
            | Family::ErWithMEdges { n: size, .. }
            | Family::BoundedDegree { n: size, .. }
            | Family::PartialKTree { n: size, .. }
            | Family::CliquePair { n: size, .. }
            | Family::GUv { n: size }
            | Family::GUvPlus { n: size }
            | Family::BlockChain { n: size, .. } => *size = n,
        }
        f
    }
}

fn check_prob(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(invalid(format!("{name} must lie in [0, 1], got {p}")))
    }
}

/// Deterministically generates a member of `family` from `seed`.
pub fn generate(family: &Family, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let n = family.vertex_count();
    match *family {
        Family::Edgeless { .. } => {}
        Family::Path { n } => edges.extend((1..n).map(|v| (v - 1, v))),
        Family::Cycle { n } => {
            if n < 3 {
                return Err(invalid(format!("cycle needs n >= 3, got {n}")));
            }
            edges.extend((1..n).map(|v| (v - 1, v)));
            edges.push((0, n - 1));
        }
        Family::Star { n, leaves } => {
            if n == 0 || leaves >= n {
                return Err(invalid(format!("star with {leaves} leaves does not fit n = {n}")));
            }
            edges.extend((1..=leaves).map(|v| (0, v)));
        }
        Family::Complete { n } => {
            for u in 0..n {
                edges.extend((u + 1..n).map(|v| (u, v)));
            }
        }
        Family::Grid { rows, cols } => {
            for r in 0..rows {
                for c in 0..cols {
                    let v = r * cols + c;
                    if c + 1 < cols {
                        edges.push((v, v + 1));
                    }
                    if r + 1 < rows {
                        edges.push((v, v + cols));
                    }
                }
            }
        }
        Family::ErWithMEdges { n, m } => {
            let total = n * n.saturating_sub(1) / 2;
            if m > total {
                return Err(invalid(format!("{m} edges do not fit on {n} vertices")));
            }
            let mut pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let (chosen, _) = pairs.partial_shuffle(&mut rng, m);
            edges.extend_from_slice(chosen);
        }
        Family::BoundedDegree {
            n,
            max_degree,
            attempts,
        } => {
            if n >= 2 && max_degree > 0 {
                let mut degree = vec![0usize; n];
                let mut present = std::collections::HashSet::new();
                for _ in 0..attempts {
                    let u = rng.gen_range(0..n);
                    let v = rng.gen_range(0..n);
                    let key = (u.min(v), u.max(v));
                    if u == v
                        || degree[u] >= max_degree
                        || degree[v] >= max_degree
                        || !present.insert(key)
                    {
                        continue;
                    }
                    degree[u] += 1;
                    degree[v] += 1;
                    edges.push(key);
                }
            }
        }
        Family::PartialKTree { n, k, delete_prob } => {
            check_prob("delete_prob", delete_prob)?;
            if n < k + 1 {
                return Err(invalid(format!("a {k}-tree needs at least {} vertices", k + 1)));
            }
            // The initial (k+1)-clique is kept intact.
            for u in 0..=k {
                edges.extend((u + 1..=k).map(|v| (u, v)));
            }
            let mut cliques: Vec<Vec<usize>> = (0..=k)
                .map(|skip| (0..=k).filter(|&x| x != skip).collect())
                .collect();
            for v in k + 1..n {
                let base = cliques[rng.gen_range(0..cliques.len())].clone();
                for &u in &base {
                    if !rng.gen_bool(delete_prob) {
                        edges.push((u, v));
                    }
                }
                for skip in 0..base.len() {
                    let mut c: Vec<usize> = base
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    c.push(v);
                    cliques.push(c);
                }
            }
        }
        Family::CliquePair { eta, n, cross_prob } => {
            check_prob("cross_prob", cross_prob)?;
            if n < 2 * eta {
                return Err(invalid(format!("two {eta}-cliques do not fit n = {n}")));
            }
            for side in [0, eta] {
                for u in side..side + eta {
                    edges.extend((u + 1..side + eta).map(|v| (u, v)));
                }
            }
            for u in 0..eta {
                for v in eta..2 * eta {
                    if rng.gen_bool(cross_prob) {
                        edges.push((u, v));
                    }
                }
            }
        }
        Family::GUv { n } | Family::GUvPlus { n } => {
            if n < 2 {
                return Err(invalid("g_uv needs n >= 2"));
            }
            for x in 2..n {
                edges.push((0, x));
                edges.push((1, x));
            }
            if matches!(family, Family::GUvPlus { .. }) {
                edges.push((0, 1));
            }
        }
        Family::BlockChain { n, p, keep_prob } => {
            check_prob("keep_prob", keep_prob)?;
            if p == 0 {
                return Err(invalid("block size p must be positive"));
            }
            for u in 0..n {
                for v in u + 1..n {
                    // path edges draw no randomness
                    if v == u + 1 || (u / p == v / p && rng.gen_bool(keep_prob)) {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    Graph::from_edges(n, edges)
}
