//! Exhaustive ground truth for small graphs. Deliberately naive: every
//! vertex subset is tried against the definitions, nothing is pruned.

use thiserror::Error;

use crate::graph::{EdgeId, Graph, Vertex};
use crate::mis::CountResult;

pub const MAX_ORACLE_VERTICES: usize = 20;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("brute force is limited to {MAX_ORACLE_VERTICES} vertices, got {0}")]
pub struct TooLarge(pub usize);

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Edge-id sets (sorted), one per DIM, in order of their black vertex mask.
    pub all_dims: Vec<Vec<EdgeId>>,
    /// Black vertex mask of each entry of `all_dims`.
    pub black_masks: Vec<u32>,
    pub min_weight: Option<f64>,
    pub counts: CountResult,
}

fn neighbor_masks(g: &Graph) -> Vec<u32> {
    let mut masks = vec![0u32; g.n()];
    for e in g.edges() {
        masks[e.u] |= 1 << e.v;
        masks[e.v] |= 1 << e.u;
    }
    masks
}

/// All black sets `B` such that `G[B]` is 1-regular and `V \ B` is independent.
pub fn brute_solve(g: &Graph) -> Result<OracleResult, TooLarge> {
    let n = g.n();
    if n > MAX_ORACLE_VERTICES {
        return Err(TooLarge(n));
    }
    let nbrs = neighbor_masks(g);
    let full: u32 = (1u32 << n) - 1;

    let mut all_dims = Vec::new();
    let mut black_masks = Vec::new();
    let mut weights = Vec::new();
    for black in 0..=full {
        let white = full & !black;
        let ok =
            (0..n).all(
                |v| {
                    if black >> v & 1 == 1 {
                        (nbrs[v] & black).count_ones() == 1
                    } else {
                        nbrs[v] & white == 0
                    }
                },
            );
        if !ok {
            continue;
        }
        let edges: Vec<EdgeId> = (0..g.m())
            .filter(|&id| {
                let e = g.edge(id);
                black >> e.u & 1 == 1 && black >> e.v & 1 == 1
            })
            .collect();
        weights.push(edges.iter().map(|&id| g.edge(id).weight).sum::<f64>());
        all_dims.push(edges);
        black_masks.push(black);
    }

    let min_weight = weights.iter().copied().reduce(f64::min);
    let min_count = min_weight.map_or(0, |m| weights.iter().filter(|&&w| w == m).count()) as u128;
    let counts = CountResult { total: all_dims.len() as u128, min_weight, min_count };
    Ok(OracleResult { all_dims, black_masks, min_weight, counts })
}

/// All maximal independent sets, each a sorted vertex list, in mask order.
pub fn brute_mis(g: &Graph) -> Result<Vec<Vec<Vertex>>, TooLarge> {
    let n = g.n();
    if n > MAX_ORACLE_VERTICES {
        return Err(TooLarge(n));
    }
    let nbrs = neighbor_masks(g);
    let full: u32 = (1u32 << n) - 1;
    let mut out = Vec::new();
    for set in 0..=full {
        let independent = (0..n).all(|v| set >> v & 1 == 0 || nbrs[v] & set == 0);
        let maximal = (0..n).all(|v| set >> v & 1 == 1 || nbrs[v] & set != 0);
        if independent && maximal {
            out.push((0..n).filter(|&v| set >> v & 1 == 1).collect());
        }
    }
    Ok(out)
}
