//! Seeded instance generators.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)`; integer weights
//! are drawn with `random_range(lo..=hi)` in edge order, after the structure
//! of the graph is fixed. Equal `(family, n, seed, weights)` always give the
//! same graph.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{validate_dim, Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("bad weight spec `{0}` (expected `unit` or `uniform:lo:hi`)")]
    BadWeights(String),
    #[error("edge probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("family {family} needs at least {min} vertices, got {n}")]
    TooFewVertices { family: Family, min: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Complete,
    Random,
    RandomDim,
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        Ok(match s {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "star" => Family::Star,
            "complete" => Family::Complete,
            "random" => Family::Random,
            "random_dim" => Family::RandomDim,
            _ => return Err(GenError::UnknownFamily(s.to_string())),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Complete => "complete",
            Family::Random => "random",
            Family::RandomDim => "random_dim",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSpec {
    Unit,
    Uniform { lo: u64, hi: u64 },
}

impl FromStr for WeightSpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        let bad = || GenError::BadWeights(s.to_string());
        if s == "unit" {
            return Ok(WeightSpec::Unit);
        }
        let mut it = s.split(':');
        match (it.next(), it.next(), it.next(), it.next()) {
            (Some("uniform"), Some(lo), Some(hi), None) => {
                let lo: u64 = lo.parse().map_err(|_| bad())?;
                let hi: u64 = hi.parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                Ok(WeightSpec::Uniform { lo, hi })
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub weights: WeightSpec,
    /// Edge probability for `random` and `random_dim`.
    pub p: f64,
}

impl GenParams {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GenParams { family, n, seed, weights: WeightSpec::Unit, p: 0.5 }
    }
}

fn weighted(rng: &mut ChaCha8Rng, n: usize, pairs: Vec<(Vertex, Vertex)>, spec: WeightSpec) -> Graph {
    let edges: Vec<(Vertex, Vertex, f64)> = pairs
        .into_iter()
        .map(|(u, v)| {
            let w = match spec {
                WeightSpec::Unit => 1.0,
                WeightSpec::Uniform { lo, hi } => rng.random_range(lo..=hi) as f64,
            };
            (u, v, w)
        })
        .collect();
    Graph::new(n, edges).expect("generated edges are simple")
}

pub fn gen_instance(params: &GenParams) -> Result<Graph, GenError> {
    let GenParams { family, n, seed, weights, p } = *params;
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::BadProbability(p));
    }
    let min = match family {
        Family::Cycle => 3,
        Family::RandomDim => 2,
        _ => 1,
    };
    if n < min {
        return Err(GenError::TooFewVertices { family, min, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let pairs: Vec<(Vertex, Vertex)> = match family {
        Family::Path => (1..n).map(|i| (i - 1, i)).collect(),
        Family::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        Family::Star => (1..n).map(|i| (0, i)).collect(),
        Family::Complete => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        Family::Random => {
            let mut out = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        out.push((u, v));
                    }
                }
            }
            out
        }
        Family::RandomDim => {
            return Ok(planted_dim(&mut rng, n, weights, p));
        }
    };
    Ok(weighted(&mut rng, n, pairs, weights))
}

/// A graph with a planted DIM: `2k` black vertices matched in pairs, the rest
/// white, and white–black edges added with probability `p`.
fn planted_dim(rng: &mut ChaCha8Rng, n: usize, weights: WeightSpec, p: f64) -> Graph {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let k = rng.random_range(1..=n / 2);
    let (black, white) = order.split_at(2 * k);

    let mut pairs: Vec<(Vertex, Vertex)> = black.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
    for &w in white {
        for &b in black {
            if rng.random_bool(p) {
                pairs.push((w.min(b), w.max(b)));
            }
        }
    }
    pairs.sort_unstable();
    let g = weighted(rng, n, pairs, weights);

    let planted: Vec<_> = black.chunks(2).map(|c| g.edge_between(c[0], c[1]).expect("matching edge present")).collect();
    assert!(validate_dim(&g, &planted), "planted matching must be a DIM");
    g
}
