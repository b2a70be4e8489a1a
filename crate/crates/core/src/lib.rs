//! Exact algorithms for minimum-weight dominating induced matchings (DIMs).
//!
//! A DIM is a set of edges such that every edge of the graph shares an
//! endpoint with exactly one member. Equivalently, the vertices split into a
//! white independent set and a black set inducing a perfect matching; the
//! matching is the DIM.
//!
//! Two exact solvers are provided: [`domset::solve_domset`] branches over the
//! colorings of a vertex dominating set, and [`mis::solve_mis`] enumerates
//! maximal independent sets. [`mis::count_dims`] counts DIMs and
//! [`oracle`] holds brute-force references for small graphs.

pub mod bench;
pub mod coloring;
pub mod domset;
pub mod generate;
pub mod graph;
pub mod mis;
pub mod oracle;
pub mod solve;

pub use coloring::{Color, Coloring, Invalid, Propagation};
pub use domset::{find_dominating_set, solve_domset, BranchTrace, DomsetOptions, DomsetOutcome, SolveStats};
pub use graph::{preprocess, validate_dim, Dim, EdgeId, Graph, ParseError, Vertex};
pub use mis::{count_dims, enumerate_mis, solve_mis, CountResult};
pub use solve::{count, select_algorithm, solve, Algorithm, Solution, SolveError, SolveOptions};
