//! Minimum-weight DIM by enumerating every white/black coloring of a vertex
//! dominating set `D`, stabilizing each with the forcing rules, and pairing
//! off the remaining single black vertices.
//!
//! After stabilization every uncolored vertex hangs off exactly one single
//! black vertex `s`, so the uncolored set splits into parts `N_U(s)`. Each
//! part is classified:
//!
//! * **Dead**: empty, or its induced subgraph is not a star plus isolated
//!   vertices. No valid completion exists.
//! * **Forced**: a unique maximum-degree vertex; it must become the pair.
//! * **Free**: no edge to another part. Any maximum-degree vertex works, so
//!   the one with the lightest edge to `s` is taken.
//! * **Cross**: some edge `vw` leads into another part. Branch on `v` black
//!   versus `v` white (which forces `w` black).
//!
//! Dead and Forced are exhausted first, then Free, then Cross. Every branch
//! pairs at least one single, so a root with `q` singles left after the
//! Forced fixpoint produces at most `2^q` leaves.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::coloring::{uncolored_partition, Color, Coloring, ContractViolation, Propagation};
use crate::graph::{Dim, Graph, Vertex};

/// Largest dominating set for which root enumeration is attempted.
pub const MAX_DOMSET: usize = 40;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DomsetError {
    #[error("the given vertex set is not dominating")]
    NotDominating,
    #[error("dominating set of size {0} exceeds the supported maximum of {MAX_DOMSET}")]
    TooLarge(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error(transparent)]
    Contract(#[from] ContractViolation),
}

/// A dominating set with at most `n/2` vertices: the smaller of a greedy
/// maximal independent set `I` and its complement. Requires that the graph
/// has no isolated vertices (otherwise `V \ I` need not dominate).
pub fn find_dominating_set(g: &Graph) -> Vec<Vertex> {
    let mut in_set = vec![false; g.n()];
    for v in 0..g.n() {
        if !g.neighbors(v).iter().any(|&(u, _)| in_set[u]) {
            in_set[v] = true;
        }
    }
    let (inside, outside): (Vec<Vertex>, Vec<Vertex>) = (0..g.n()).partition(|&v| in_set[v]);
    if inside.len() <= outside.len() {
        inside
    } else {
        outside
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PartClass {
    Dead,
    Forced(Vertex),
    /// Maximum-degree candidates with their edge weight to the single,
    /// sorted by (weight, id); the first entry is the one chosen.
    Free(Vec<(Vertex, f64)>),
    /// Edge `v`–`w` with `v` in the part of single `i` and `w` in the part of
    /// single `j`.
    Cross {
        v: Vertex,
        w: Vertex,
        i: Vertex,
        j: Vertex,
    },
}

/// Classifies the part `N_U(single)`. `owner[u]` names the single whose part
/// contains uncolored vertex `u`.
pub fn classify_part(g: &Graph, single: Vertex, part: &[Vertex], owner: &[Option<Vertex>]) -> PartClass {
    if part.is_empty() {
        return PartClass::Dead;
    }
    let inner_degree: Vec<usize> =
        part.iter().map(|&v| g.neighbors(v).iter().filter(|&&(u, _)| owner[u] == Some(single)).count()).collect();
    let inner_edges = inner_degree.iter().sum::<usize>() / 2;
    let max_degree = inner_degree.iter().copied().max().unwrap_or(0);
    // star plus isolated vertices: some vertex touches every inner edge
    if inner_edges > 0 && max_degree != inner_edges {
        return PartClass::Dead;
    }
    let tops: Vec<Vertex> =
        part.iter().zip(&inner_degree).filter(|&(_, &d)| d == max_degree).map(|(&v, _)| v).collect();
    if let [only] = tops[..] {
        return PartClass::Forced(only);
    }

    let mut cross: Option<(Vertex, Vertex, Vertex)> = None;
    for &v in part {
        for &(w, _) in g.neighbors(v) {
            if let Some(j) = owner[w] {
                if j != single && cross.is_none_or(|best| (j, v, w) < best) {
                    cross = Some((j, v, w));
                }
            }
        }
    }
    if let Some((j, v, w)) = cross {
        return PartClass::Cross { v, w, i: single, j };
    }

    let mut candidates: Vec<(Vertex, f64)> = tops
        .into_iter()
        .map(|v| (v, g.edge(g.edge_between(single, v).expect("part vertices neighbor their single")).weight))
        .collect();
    candidates.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    PartClass::Free(candidates)
}

/// Branch-tree recorder rendered as Graphviz DOT. One node per propagation
/// fixpoint.
#[derive(Debug, Clone, Default)]
pub struct BranchTrace {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl BranchTrace {
    pub fn new() -> Self {
        Self::default()
    }

    fn add(&mut self, parent: Option<usize>, label: String) -> usize {
        let id = self.labels.len();
        self.labels.push(label);
        if let Some(p) = parent {
            self.edges.push((p, id));
        }
        id
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph branch {\n  node [shape=box];\n");
        for (i, label) in self.labels.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
        }
        for (a, b) in &self.edges {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Result of pairing off the singles of one stable coloring.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolution {
    pub best: Option<Dim>,
    pub leaves: u64,
    /// Singles left once Dead/Forced parts are exhausted at the top level.
    pub q: usize,
}

struct Resolver<'a> {
    g: &'a Graph,
    best: Option<Dim>,
    leaves: u64,
    q: Option<usize>,
    trace: Option<&'a mut BranchTrace>,
}

impl Resolver<'_> {
    fn node(&mut self, parent: Option<usize>, label: impl FnOnce() -> String) -> Option<usize> {
        self.trace.as_deref_mut().map(|t| t.add(parent, label()))
    }

    fn leaf(&mut self, c: &Coloring, depth: usize, node: Option<usize>, label: &str) {
        self.leaves += 1;
        if depth == 0 && self.q.is_none() {
            self.q = Some(c.singles().len());
        }
        self.node(node, || label.to_string());
    }

    fn offer(&mut self, dim: Dim) {
        if self.best.as_ref().is_none_or(|b| dim.weight < b.weight) {
            self.best = Some(dim);
        }
    }

    fn descend(&mut self, c: &mut Coloring, depth: usize, mut node: Option<usize>) -> Result<(), ContractViolation> {
        let g = self.g;
        loop {
            let uncolored = c.uncolored();
            let singles = c.singles();
            if singles.is_empty() {
                // every uncolored vertex has a single black neighbor, so none is left
                let dim = c.to_dim(g);
                let w = dim.weight;
                self.offer(dim);
                self.leaf(c, depth, node, &format!("DIM {w}"));
                return Ok(());
            }
            let parts: BTreeMap<Vertex, Vec<Vertex>> = uncolored_partition(g, c, &uncolored)?;
            let mut owner = vec![None; g.n()];
            for (&s, part) in &parts {
                for &u in part {
                    owner[u] = Some(s);
                }
            }
            let classes: Vec<(Vertex, PartClass)> = singles
                .iter()
                .map(|&s| (s, classify_part(g, s, parts.get(&s).map_or(&[][..], Vec::as_slice), &owner)))
                .collect();

            if let Some((s, _)) = classes.iter().find(|(_, k)| *k == PartClass::Dead) {
                let s = *s;
                self.leaf(c, depth, node, &format!("dead: single {}", s + 1));
                return Ok(());
            }
            if let Some((s, PartClass::Forced(v))) = classes.iter().find(|(_, k)| matches!(k, PartClass::Forced(_))) {
                let (s, v) = (*s, *v);
                if !self.assign(c, v, Color::Black) {
                    self.leaf(c, depth, node, &format!("forced {}-{}: invalid", s + 1, v + 1));
                    return Ok(());
                }
                node = self.node(node, || format!("forced {}-{}", s + 1, v + 1));
                continue;
            }
            if depth == 0 && self.q.is_none() {
                self.q = Some(singles.len());
            }
            if let Some((s, PartClass::Free(cands))) = classes.iter().find(|(_, k)| matches!(k, PartClass::Free(_))) {
                let (s, v) = (*s, cands[0].0);
                if !self.assign(c, v, Color::Black) {
                    self.leaf(c, depth, node, &format!("free {}-{}: invalid", s + 1, v + 1));
                    return Ok(());
                }
                node = self.node(node, || format!("free {}-{}", s + 1, v + 1));
                continue;
            }
            let Some((_, PartClass::Cross { v, w, i, j })) =
                classes.into_iter().find(|(_, k)| matches!(k, PartClass::Cross { .. }))
            else {
                unreachable!("every part class was handled above");
            };
            let mark = c.mark();
            for (color, label) in [(Color::Black, "black"), (Color::White, "white")] {
                if self.assign(c, v, color) {
                    let child = self
                        .node(node, || format!("cross {}|{} via {}-{}: {} {label}", i + 1, j + 1, v + 1, w + 1, v + 1));
                    self.descend(c, depth + 1, child)?;
                } else {
                    self.leaf(c, depth + 1, node, &format!("{} {label}: invalid", v + 1));
                }
                c.undo_to(g, mark);
            }
            return Ok(());
        }
    }

    fn assign(&mut self, c: &mut Coloring, v: Vertex, color: Color) -> bool {
        c.set_color(self.g, v, color).is_ok() && c.propagate(self.g).is_stable()
    }
}

/// Finds the minimum-weight total valid extension of a stable coloring that
/// arose from a dominating root. The coloring is restored before returning.
pub fn resolve_singles(g: &Graph, c: &mut Coloring) -> Result<Resolution, ContractViolation> {
    resolve_traced(g, c, None, None)
}

fn resolve_traced(
    g: &Graph,
    c: &mut Coloring,
    trace: Option<&mut BranchTrace>,
    parent: Option<usize>,
) -> Result<Resolution, ContractViolation> {
    let mark = c.mark();
    let mut r = Resolver { g, best: None, leaves: 0, q: None, trace };
    let out = r.descend(c, 0, parent);
    c.undo_to(g, mark);
    out?;
    Ok(Resolution { best: r.best, leaves: r.leaves, q: r.q.unwrap_or(0) })
}

/// Colors `d[k]` black when bit `k` of `mask` is set and white otherwise,
/// then propagates. `c` must be blank.
pub fn stabilize_root(g: &Graph, d: &[Vertex], mask: u64, c: &mut Coloring) -> Propagation {
    for (k, &v) in d.iter().enumerate() {
        let color = if mask >> k & 1 == 1 { Color::Black } else { Color::White };
        if c.set_color(g, v, color).is_err() {
            return Propagation::Invalid;
        }
    }
    c.propagate(g)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolveStats {
    pub dominating_set_size: usize,
    pub roots_explored: u64,
    pub branch_leaves_per_root: Vec<u64>,
    /// Zero for roots whose propagation already failed.
    pub q_per_root: Vec<usize>,
}

impl SolveStats {
    pub fn total_leaves(&self) -> u64 {
        self.branch_leaves_per_root.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomsetOutcome {
    pub dim: Option<Dim>,
    pub stats: SolveStats,
}

#[derive(Debug, Default)]
pub struct DomsetOptions<'a> {
    /// Worker threads for root exploration; 0 or 1 runs sequentially.
    pub threads: usize,
    /// Records the branch tree; forces sequential exploration.
    pub trace: Option<&'a mut BranchTrace>,
}

struct RootResult {
    dim: Option<Dim>,
    leaves: u64,
    q: usize,
}

fn explore_root(
    g: &Graph,
    d: &[Vertex],
    mask: u64,
    c: &mut Coloring,
    trace: Option<&mut BranchTrace>,
) -> Result<RootResult, ContractViolation> {
    let outcome = stabilize_root(g, d, mask, c);
    let result = match outcome {
        Propagation::Invalid => {
            if let Some(t) = trace {
                t.add(None, format!("root {mask:#b}: invalid"));
            }
            RootResult { dim: None, leaves: 0, q: 0 }
        }
        Propagation::Stable { .. } => {
            let mut trace = trace;
            let parent = trace.as_deref_mut().map(|t| t.add(None, format!("root {mask:#b}")));
            let r = resolve_traced(g, c, trace, parent)?;
            debug_assert!(r.leaves <= 1u64 << r.q, "more leaves than 2^q");
            RootResult { dim: r.best, leaves: r.leaves, q: r.q }
        }
    };
    c.undo_to(g, 0);
    Ok(result)
}

/// Minimum-weight DIM of `g` by enumerating all `2^|d|` colorings of the
/// dominating set `d`. `g` should have no isolated vertices or edges.
///
/// Roots are visited in binary-counter order over `d` sorted by id (bit `k`
/// set means the `k`-th vertex is black). Ties go to the lowest root index,
/// so results do not depend on the thread count.
pub fn solve_domset(g: &Graph, d: &[Vertex], opts: DomsetOptions<'_>) -> Result<DomsetOutcome, DomsetError> {
    if let Some(&v) = d.iter().find(|&&v| v >= g.n()) {
        return Err(DomsetError::VertexOutOfRange(v));
    }
    let mut d = d.to_vec();
    d.sort_unstable();
    d.dedup();
    if !g.is_dominating(&d) {
        return Err(DomsetError::NotDominating);
    }
    if d.len() > MAX_DOMSET {
        return Err(DomsetError::TooLarge(d.len()));
    }
    let roots = 1u64 << d.len();

    let results: Vec<RootResult> = match (opts.trace, opts.threads) {
        (Some(trace), _) => {
            let mut c = Coloring::new(g);
            let mut out = Vec::with_capacity(roots as usize);
            for mask in 0..roots {
                out.push(explore_root(g, &d, mask, &mut c, Some(&mut *trace))?);
            }
            out
        }
        (None, 0 | 1) => {
            let mut c = Coloring::new(g);
            (0..roots).map(|mask| explore_root(g, &d, mask, &mut c, None)).collect::<Result<_, _>>()?
        }
        (None, threads) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
            pool.install(|| {
                (0..roots)
                    .into_par_iter()
                    .map_init(|| Coloring::new(g), |c, mask| explore_root(g, &d, mask, c, None))
                    .collect::<Result<Vec<_>, _>>()
            })?
        }
    };

    let mut stats = SolveStats { dominating_set_size: d.len(), roots_explored: roots, ..Default::default() };
    let mut best: Option<Dim> = None;
    for r in results {
        stats.branch_leaves_per_root.push(r.leaves);
        stats.q_per_root.push(r.q);
        if let Some(dim) = r.dim {
            if best.as_ref().is_none_or(|b| dim.weight < b.weight) {
                best = Some(dim);
            }
        }
    }
    Ok(DomsetOutcome { dim: best, stats })
}
