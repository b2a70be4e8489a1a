//! Minimum-weight DIM and DIM counting by enumerating maximal independent
//! sets.
//!
//! Every DIM leaves an independent set of unmatched (white) vertices, and
//! that set sits inside some maximal independent set `I`. Coloring `V \ I`
//! black pins the DIM down up to the choice of partner for each single black
//! vertex, and those partners can only be members of `I` whose sole neighbor
//! is that single.

use rayon::prelude::*;

use crate::coloring::{Color, Coloring};
use crate::graph::{Dim, Graph, Vertex};

/// Streams the maximal independent sets of `g`, each as a sorted vertex list.
///
/// Sets are grown one vertex at a time: every MIS of `G[0..=k]` has a unique
/// parent MIS of `G[0..k]`, and every MIS of `G[0..k]` has at least one
/// child, so a depth-first walk of this tree emits each set exactly once
/// with polynomial delay.
pub fn enumerate_mis(g: &Graph) -> MisIter<'_> {
    MisIter { g, stack: vec![(0, vec![false; g.n()])] }
}

pub struct MisIter<'g> {
    g: &'g Graph,
    stack: Vec<(usize, Vec<bool>)>,
}

impl MisIter<'_> {
    /// Children of the MIS `set` of `G[0..k]` in `G[0..=k]`.
    fn expand(&mut self, k: usize, mut set: Vec<bool>) {
        let g = self.g;
        let blocked = g.neighbors(k).iter().any(|&(u, _)| u < k && set[u]);
        if !blocked {
            set[k] = true;
            self.stack.push((k + 1, set));
            return;
        }

        // (set \ N(k)) + k, kept only if maximal in G[0..=k] and if the greedy
        // completion of set \ N(k) in G[0..k] gives back `set`
        let mut swapped = set.clone();
        for &(u, _) in g.neighbors(k) {
            if u < k {
                swapped[u] = false;
            }
        }
        let mut greedy = swapped.clone();
        let mut parent_ok = true;
        for x in 0..k {
            if !greedy[x] && !g.neighbors(x).iter().any(|&(u, _)| u < k && greedy[u]) {
                greedy[x] = true;
                if !set[x] {
                    parent_ok = false;
                    break;
                }
            }
        }
        parent_ok = parent_ok && greedy == set;
        if parent_ok {
            swapped[k] = true;
            let maximal =
                (0..=k).filter(|&x| !swapped[x]).all(|x| g.neighbors(x).iter().any(|&(u, _)| u <= k && swapped[u]));
            if maximal {
                self.stack.push((k + 1, swapped));
            }
        }
        self.stack.push((k + 1, set));
    }
}

impl Iterator for MisIter<'_> {
    type Item = Vec<Vertex>;

    fn next(&mut self) -> Option<Vec<Vertex>> {
        while let Some((k, set)) = self.stack.pop() {
            if k == self.g.n() {
                return Some((0..k).filter(|&v| set[v]).collect());
            }
            self.expand(k, set);
        }
        None
    }
}

/// The partial coloring induced by a maximal independent set `I`: `V \ I`
/// black; a member of `I` whose only neighbor is a single black vertex left
/// uncolored; every other member of `I` white.
#[derive(Debug, Clone)]
pub struct InducedColoring {
    pub coloring: Coloring,
    pub singles: Vec<Vertex>,
    pub uncolored: Vec<Vertex>,
}

/// Builds the coloring induced by `mis`. `None` when `V \ I` already has a
/// black vertex with two black neighbors.
pub fn induced_coloring(g: &Graph, mis: &[Vertex]) -> Option<InducedColoring> {
    let mut in_mis = vec![false; g.n()];
    for &v in mis {
        in_mis[v] = true;
    }
    let mut c = Coloring::new(g);
    for v in (0..g.n()).filter(|&v| !in_mis[v]) {
        c.set_color(g, v, Color::Black).ok()?;
    }
    let singles = c.singles();
    let mut uncolored = Vec::new();
    for &v in mis {
        match g.neighbors(v) {
            &[(u, _)] if c.is_single(u) => uncolored.push(v),
            _ => c.set_color(g, v, Color::White).expect("neighbors of an independent set member are black"),
        }
    }
    Some(InducedColoring { coloring: c, singles, uncolored })
}

/// `(single, [(partner, edge weight)])` for every single.
type Choices = Vec<(Vertex, Vec<(Vertex, f64)>)>;

/// Per-single completion choices of an induced coloring, or `None` when some
/// single has no uncolored neighbor and the coloring cannot be completed.
fn completions(g: &Graph, ic: &InducedColoring) -> Option<Choices> {
    ic.singles
        .iter()
        .map(|&s| {
            let options: Vec<(Vertex, f64)> = g
                .neighbors(s)
                .iter()
                .filter(|&&(u, _)| ic.coloring.color(u) == Color::Uncolored)
                .map(|&(u, e)| (u, g.edge(e).weight))
                .collect();
            (!options.is_empty()).then_some((s, options))
        })
        .collect()
}

/// Weight of the black pairs already matched inside `V \ I`.
fn paired_weight(g: &Graph, c: &Coloring) -> f64 {
    g.edges().iter().filter(|e| c.color(e.u) == Color::Black && c.pair(e.u) == Some(e.v)).map(|e| e.weight).sum()
}

/// Completes an induced coloring by giving each single its lightest
/// uncolored neighbor (smallest id on ties) and whitening the rest.
pub fn complete_min(g: &Graph, ic: &InducedColoring) -> Option<Dim> {
    let choices = completions(g, ic)?;
    let mut c = ic.coloring.clone();
    for (_, options) in &choices {
        let &(w, _) =
            options.iter().min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0))).expect("non-empty by construction");
        c.set_color(g, w, Color::Black).expect("partner touches only its single");
    }
    for &u in &ic.uncolored {
        if c.color(u) == Color::Uncolored {
            c.set_color(g, u, Color::White).expect("uncolored vertices only touch blacks");
        }
    }
    Some(c.to_dim(g))
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MisOutcome {
    pub dim: Option<Dim>,
    pub mis_count: u64,
}

/// Minimum-weight DIM over the completions of all maximal independent sets.
/// Ties keep the set emitted first, for any thread count.
pub fn solve_mis(g: &Graph, threads: usize) -> MisOutcome {
    let evaluate = |mis: Vec<Vertex>| induced_coloring(g, &mis).and_then(|ic| complete_min(g, &ic));
    if threads <= 1 {
        let mut out = MisOutcome::default();
        for mis in enumerate_mis(g) {
            out.mis_count += 1;
            if let Some(dim) = evaluate(mis) {
                if out.dim.as_ref().is_none_or(|b| dim.weight < b.weight) {
                    out.dim = Some(dim);
                }
            }
        }
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        pool.install(|| {
            let (count, best) = enumerate_mis(g)
                .enumerate()
                .par_bridge()
                .map(|(idx, mis)| (1u64, evaluate(mis).map(|d| (idx, d))))
                .reduce(
                    || (0, None),
                    |(ca, a), (cb, b)| {
                        let best = match (a, b) {
                            (Some(x), Some(y)) => Some(if (y.1.weight, y.0) < (x.1.weight, x.0) { y } else { x }),
                            (x, y) => x.or(y),
                        };
                        (ca + cb, best)
                    },
                );
            MisOutcome { dim: best.map(|(_, d)| d), mis_count: count }
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CountResult {
    pub total: u128,
    pub min_weight: Option<f64>,
    pub min_count: u128,
}

impl CountResult {
    /// Folds in another batch of DIMs.
    pub fn merge(self, other: CountResult) -> CountResult {
        let (min_weight, min_count) = match (self.min_weight, other.min_weight) {
            (None, w) => (w, other.min_count),
            (w, None) => (w, self.min_count),
            (Some(a), Some(b)) if a < b => (Some(a), self.min_count),
            (Some(a), Some(b)) if b < a => (Some(b), other.min_count),
            (Some(a), Some(_)) => (Some(a), self.min_count + other.min_count),
        };
        CountResult { total: self.total + other.total, min_weight, min_count }
    }

    /// Renders the `COUNT ...` output line.
    pub fn render(&self) -> String {
        match self.min_weight {
            Some(w) if self.total > 0 => {
                format!("COUNT {} MINWEIGHT {} MINCOUNT {}\n", self.total, w, self.min_count)
            }
            _ => "COUNT 0\n".to_string(),
        }
    }
}

/// Counts the DIMs completing one induced coloring.
fn count_one(g: &Graph, ic: &InducedColoring) -> CountResult {
    let Some(choices) = completions(g, ic) else {
        return CountResult::default();
    };
    let mut total: u128 = 1;
    let mut min_count: u128 = 1;
    let mut weight = paired_weight(g, &ic.coloring);
    for (_, options) in &choices {
        total *= options.len() as u128;
        let lightest = options.iter().map(|o| o.1).fold(f64::INFINITY, f64::min);
        min_count *= options.iter().filter(|o| o.1 == lightest).count() as u128;
        weight += lightest;
    }
    CountResult { total, min_weight: Some(weight), min_count }
}

/// Counts the DIMs of `g`. `g` must have no isolated edges: each DIM is then
/// produced by exactly one maximal independent set, so no DIM is counted twice.
pub fn count_dims(g: &Graph) -> CountResult {
    enumerate_mis(g)
        .filter_map(|mis| induced_coloring(g, &mis))
        .map(|ic| count_one(g, &ic))
        .fold(CountResult::default(), CountResult::merge)
}
