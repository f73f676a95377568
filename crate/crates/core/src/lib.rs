//! Reconstruction of hidden graphs through connected-components queries.
//!
//! The hidden graph is only reachable through an [`OracleSession`], which
//! answers connected-components (and related) queries and counts them. The
//! algorithms in [`recon`] learn the edge set from those answers:
//!
//! - [`recon::maxdeg`]: bounded maximum degree or pairwise connectivity,
//! - [`recon::treewidth`]: bounded treewidth (learn a supergraph, then prune),
//! - [`recon::degeneracy`]: bounded degeneracy by repeated peeling,
//! - [`recon::edges`]: adaptive neighbor search, for sparse graphs,
//!
//! plus doubling wrappers for unknown parameters, a query-granular [`race`]
//! between algorithms, and simulations of one oracle by another in [`bridges`].

pub mod bridges;
mod error;
pub mod experiment;
pub mod graph;
pub mod oracle;
pub mod race;
pub mod recon;
pub mod scheme;
pub mod unionfind;

pub use error::{Error, Result};
pub use graph::{components_bruteforce, generate, graph_equal, Family, Graph, GraphParams, Partition, TreeDecomposition};
pub use oracle::{CcOracle, MisStrategy, OracleSession, QueryRecord};
pub use recon::{CandidateGraph, DoublingTrace, Mode};
pub use scheme::QueryScheme;
