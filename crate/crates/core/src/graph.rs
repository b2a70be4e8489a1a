//! Weighted simple undirected graphs, the text file format, preprocessing of
//! isolated parts, and an independent dominating-induced-matching checker.

use std::collections::{BTreeSet, HashSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub weight: f64,
}

impl Edge {
    /// The endpoint of this edge that is not `x`.
    #[inline]
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("invalid weight {0} (weights must be finite and non-negative)")]
    InvalidWeight(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: malformed header, expected `p dim <n> <m>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: duplicate header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: edge before header")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: malformed edge, expected `e <u> <v> <w>`")]
    MalformedEdge { line: usize },
    #[error("line {line}: unrecognized record")]
    UnknownRecord { line: usize },
    #[error("missing `p dim` header")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: negative weight {weight}")]
    NegativeWeight { line: usize, weight: f64 },
    #[error("line {line}: weight is not a finite decimal")]
    BadWeight { line: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("input is not valid UTF-8")]
    Encoding,
}

/// A weighted simple undirected graph on vertices `0..n`.
///
/// Immutable once built; adjacency lists hold `(neighbor, edge id)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex, f64)>) -> Result<Self, GraphError> {
        let mut g = Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] };
        let mut seen = HashSet::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(GraphError::InvalidWeight(w));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            let id = g.edges.len();
            g.edges.push(Edge { u, v, weight: w });
            g.adj[u].push((v, id));
            g.adj[v].push((u, id));
        }
        Ok(g)
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].iter().find(|&&(x, _)| x == b).map(|&(_, e)| e)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// True iff every vertex is in `set` or adjacent to a member.
    pub fn is_dominating(&self, set: &[Vertex]) -> bool {
        let mut covered = vec![false; self.n];
        for &v in set {
            covered[v] = true;
            for &(u, _) in &self.adj[v] {
                covered[u] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }

    /// Parses the `p dim` text format (1-based vertex ids in the file).
    pub fn parse(bytes: &[u8]) -> Result<Self, ParseError> {
        let text = std::str::from_utf8(bytes).map_err(|_| ParseError::Encoding)?;
        let mut header: Option<(usize, usize)> = None;
        let mut raw: Vec<(Vertex, Vertex, f64)> = Vec::new();
        let mut seen = HashSet::new();

        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed == "c" || trimmed.starts_with("c ") || trimmed.starts_with("c\t") {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            match fields.next() {
                Some("p") => {
                    if header.is_some() {
                        return Err(ParseError::DuplicateHeader { line: line_no });
                    }
                    let bad = ParseError::MalformedHeader { line: line_no };
                    if fields.next() != Some("dim") {
                        return Err(bad);
                    }
                    let n = fields.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad.clone())?;
                    let m = fields.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad.clone())?;
                    if fields.next().is_some() {
                        return Err(bad);
                    }
                    header = Some((n, m));
                }
                Some("e") => {
                    let (n, _) = header.ok_or(ParseError::EdgeBeforeHeader { line: line_no })?;
                    let bad = ParseError::MalformedEdge { line: line_no };
                    let u: usize = fields.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad.clone())?;
                    let v: usize = fields.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad.clone())?;
                    let w_str = fields.next().ok_or_else(|| bad.clone())?;
                    if fields.next().is_some() {
                        return Err(bad);
                    }
                    let w: f64 = w_str.parse().map_err(|_| ParseError::BadWeight { line: line_no })?;
                    if !w.is_finite() {
                        return Err(ParseError::BadWeight { line: line_no });
                    }
                    if w < 0.0 {
                        return Err(ParseError::NegativeWeight { line: line_no, weight: w });
                    }
                    for x in [u, v] {
                        if x == 0 || x > n {
                            return Err(ParseError::VertexOutOfRange { line: line_no, vertex: x, n });
                        }
                    }
                    if u == v {
                        return Err(ParseError::SelfLoop { line: line_no, vertex: u });
                    }
                    if !seen.insert((u.min(v), u.max(v))) {
                        return Err(ParseError::DuplicateEdge { line: line_no, u, v });
                    }
                    raw.push((u - 1, v - 1, w));
                }
                _ => return Err(ParseError::UnknownRecord { line: line_no }),
            }
        }

        let (n, m) = header.ok_or(ParseError::MissingHeader)?;
        if raw.len() != m {
            return Err(ParseError::EdgeCountMismatch { declared: m, found: raw.len() });
        }
        // every constraint was checked above
        Ok(Graph::new(n, raw).expect("validated while parsing"))
    }

    /// Renders the graph in the same text format accepted by [`Graph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p dim {} {}", self.n, self.m()).unwrap();
        for e in &self.edges {
            writeln!(out, "e {} {} {}", e.u + 1, e.v + 1, e.weight).unwrap();
        }
        out
    }
}

/// A dominating induced matching: edge ids plus their total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Dim {
    pub edges: Vec<EdgeId>,
    pub weight: f64,
}

impl Dim {
    /// Builds a `Dim` from edge ids of `g`, sorting the ids and summing weights.
    pub fn from_edges(g: &Graph, mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let weight = edges.iter().map(|&e| g.edge(e).weight).sum();
        Dim { edges, weight }
    }

    pub fn empty() -> Self {
        Dim { edges: Vec::new(), weight: 0.0 }
    }
}

/// Checks the edge-domination definition directly: every edge of `g` must be
/// dominated by exactly one member of `candidate` (a member dominates itself).
pub fn validate_dim(g: &Graph, candidate: &[EdgeId]) -> bool {
    let members: BTreeSet<EdgeId> = candidate.iter().copied().collect();
    if members.iter().any(|&e| e >= g.m()) {
        return false;
    }
    let mut incident = vec![0usize; g.n()];
    for &e in &members {
        let edge = g.edge(e);
        incident[edge.u] += 1;
        incident[edge.v] += 1;
    }
    g.edges().iter().enumerate().all(|(id, e)| {
        // a member is counted at both of its endpoints
        let own = usize::from(members.contains(&id));
        incident[e.u] + incident[e.v] - own == 1
    })
}

/// Output of [`preprocess`]: the residual graph plus what was stripped off.
#[derive(Debug, Clone, PartialEq)]
pub struct PreprocessResult {
    pub residual: Graph,
    /// Original ids of the isolated-edge components; every DIM contains them.
    pub forced_edges: Vec<EdgeId>,
    pub forced_weight: f64,
    pub removed_isolated_vertices: Vec<Vertex>,
    /// `vertex_map[r]` is the original id of residual vertex `r`.
    pub vertex_map: Vec<Vertex>,
    /// `edge_map[r]` is the original id of residual edge `r`.
    pub edge_map: Vec<EdgeId>,
}

impl PreprocessResult {
    /// Lifts a DIM of the residual graph to a DIM of the original graph.
    pub fn lift(&self, original: &Graph, residual_dim: &Dim) -> Dim {
        let mut edges: Vec<EdgeId> = residual_dim.edges.iter().map(|&e| self.edge_map[e]).collect();
        edges.extend_from_slice(&self.forced_edges);
        Dim::from_edges(original, edges)
    }

    pub fn residual_id(&self, original: Vertex) -> Option<Vertex> {
        self.vertex_map.iter().position(|&v| v == original)
    }
}

/// Strips isolated vertices and isolated-edge components.
pub fn preprocess(g: &Graph) -> PreprocessResult {
    let mut keep = vec![true; g.n()];
    let mut removed_isolated_vertices = Vec::new();
    let mut forced_edges = Vec::new();

    for (v, kept) in keep.iter_mut().enumerate() {
        match g.neighbors(v) {
            [] => {
                *kept = false;
                removed_isolated_vertices.push(v);
            }
            &[(u, e)] if g.degree(u) == 1 => {
                *kept = false;
                if v < u {
                    forced_edges.push(e);
                }
            }
            _ => {}
        }
    }

    let mut new_id = vec![usize::MAX; g.n()];
    let mut vertex_map = Vec::new();
    for v in (0..g.n()).filter(|&v| keep[v]) {
        new_id[v] = vertex_map.len();
        vertex_map.push(v);
    }
    let mut edge_map = Vec::new();
    let mut residual_edges = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if keep[e.u] && keep[e.v] {
            edge_map.push(id);
            residual_edges.push((new_id[e.u], new_id[e.v], e.weight));
        }
    }
    let residual = Graph::new(vertex_map.len(), residual_edges).expect("subgraph of a valid graph");
    let forced_weight = forced_edges.iter().map(|&e| g.edge(e).weight).sum();

    PreprocessResult { residual, forced_edges, forced_weight, removed_isolated_vertices, vertex_map, edge_map }
}

/// Renders a solve result in the `DIM <weight>` / `NODIM` output format.
pub fn render_dim(g: &Graph, dim: Option<&Dim>) -> String {
    match dim {
        None => "NODIM\n".to_string(),
        Some(d) => {
            let mut out = format!("DIM {}\n", d.weight);
            let mut pairs: Vec<(Vertex, Vertex)> = d
                .edges
                .iter()
                .map(|&e| {
                    let edge = g.edge(e);
                    (edge.u.min(edge.v) + 1, edge.u.max(edge.v) + 1)
                })
                .collect();
            pairs.sort_unstable();
            for (u, v) in pairs {
                writeln!(out, "e {u} {v}").unwrap();
            }
            out
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
