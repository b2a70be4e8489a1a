//! Whole-graph entry points: strip isolated parts, pick an algorithm, solve
//! the residual graph, and lift the answer back.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::domset::{find_dominating_set, solve_domset, BranchTrace, DomsetError, DomsetOptions, SolveStats};
use crate::graph::{preprocess, validate_dim, Dim, Graph};
use crate::mis::{count_dims, solve_mis, CountResult};
use crate::oracle::{brute_solve, TooLarge};

/// Per-vertex growth rate of the maximal-independent-set algorithm's worst case.
pub const MIS_BASE: f64 = 1.44225;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Auto,
    Domset,
    Mis,
    Brute,
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Algorithm::Auto),
            "domset" => Ok(Algorithm::Domset),
            "mis" => Ok(Algorithm::Mis),
            "brute" => Ok(Algorithm::Brute),
            _ => Err(format!("unknown algorithm `{s}`")),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Auto => "auto",
            Algorithm::Domset => "domset",
            Algorithm::Mis => "mis",
            Algorithm::Brute => "brute",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error(transparent)]
    Domset(#[from] DomsetError),
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
    #[error("solver returned an edge set that is not a dominating induced matching")]
    InvalidWitness,
}

/// Picks `domset` when `4^|D|` does not exceed `MIS_BASE^n`, i.e.
/// `2|D| <= n log2(MIS_BASE)`, for the dominating set `D` the domset solver
/// would use. `g` should already be preprocessed.
pub fn select_algorithm(g: &Graph) -> Algorithm {
    let d = find_dominating_set(g).len();
    if (2 * d) as f64 <= g.n() as f64 * MIS_BASE.log2() {
        Algorithm::Domset
    } else {
        Algorithm::Mis
    }
}

#[derive(Debug, Default)]
pub struct SolveOptions<'a> {
    pub algorithm: Option<Algorithm>,
    pub threads: usize,
    pub trace: Option<&'a mut BranchTrace>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Edge ids of the input graph.
    pub dim: Option<Dim>,
    /// The concrete algorithm that ran (never `Auto`).
    pub algorithm: Algorithm,
    pub domset_stats: Option<SolveStats>,
    pub mis_count: Option<u64>,
}

/// Minimum-weight DIM of `g`, or `None` when `g` has none. Any returned DIM
/// has been re-checked against the edge-domination definition.
pub fn solve(g: &Graph, opts: SolveOptions<'_>) -> Result<Solution, SolveError> {
    let pre = preprocess(g);
    let residual = &pre.residual;
    let algorithm = match opts.algorithm.unwrap_or(Algorithm::Auto) {
        Algorithm::Auto => select_algorithm(residual),
        other => other,
    };
    let mut solution = Solution { dim: None, algorithm, domset_stats: None, mis_count: None };
    let residual_dim = match algorithm {
        Algorithm::Domset => {
            let d = find_dominating_set(residual);
            let out = solve_domset(residual, &d, DomsetOptions { threads: opts.threads, trace: opts.trace })?;
            solution.domset_stats = Some(out.stats);
            out.dim
        }
        Algorithm::Mis => {
            let out = solve_mis(residual, opts.threads);
            solution.mis_count = Some(out.mis_count);
            out.dim
        }
        Algorithm::Brute => {
            let r = brute_solve(residual)?;
            let min = r.min_weight;
            r.all_dims.into_iter().map(|edges| Dim::from_edges(residual, edges)).find(|d| Some(d.weight) == min)
        }
        Algorithm::Auto => unreachable!(),
    };
    if let Some(d) = residual_dim {
        let lifted = pre.lift(g, &d);
        if !validate_dim(g, &lifted.edges) {
            return Err(SolveError::InvalidWitness);
        }
        solution.dim = Some(lifted);
    }
    Ok(solution)
}

/// Counts the DIMs of `g`, including the weight of forced isolated edges.
pub fn count(g: &Graph) -> CountResult {
    let pre = preprocess(g);
    let mut c = count_dims(&pre.residual);
    c.min_weight = c.min_weight.map(|w| w + pre.forced_weight);
    c
}
