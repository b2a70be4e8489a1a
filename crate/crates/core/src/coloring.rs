//! Partial white/black colorings with incremental counters, a trail for
//! undo, and the four forcing rules run to a fixpoint over a worklist.
//!
//! A coloring is valid-partial when no two whites are adjacent and no black
//! vertex has more than one black neighbor. A black vertex is *single* when it
//! has no black neighbor and *paired* otherwise.

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;
use thiserror::Error;

use crate::graph::{Dim, EdgeId, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Uncolored,
    White,
    Black,
}

/// Marker for a coloring that can no longer extend to a valid total coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("coloring is invalid")]
pub struct Invalid;

/// Raised when an uncolored vertex of a stable coloring does not have exactly
/// one black neighbor, or that neighbor is paired. Only possible when the root
/// colored set was not dominating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("uncolored vertex {vertex} has {black_neighbors} black neighbors (expected exactly one single)")]
pub struct ContractViolation {
    pub vertex: Vertex,
    pub black_neighbors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Propagation {
    Stable { singles: Vec<Vertex>, uncolored: Vec<Vertex> },
    Invalid,
}

impl Propagation {
    pub fn is_stable(&self) -> bool {
        matches!(self, Propagation::Stable { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    color: Vec<Color>,
    pair: Vec<Option<Vertex>>,
    black_nbrs: Vec<u32>,
    uncolored_nbrs: Vec<u32>,
    trail: Vec<Vertex>,
    queue: VecDeque<Vertex>,
    queued: Vec<bool>,
}

impl Coloring {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        Coloring {
            color: vec![Color::Uncolored; n],
            pair: vec![None; n],
            black_nbrs: vec![0; n],
            uncolored_nbrs: (0..n).map(|v| g.degree(v) as u32).collect(),
            trail: Vec::new(),
            queue: VecDeque::new(),
            queued: vec![false; n],
        }
    }

    #[inline]
    pub fn color(&self, v: Vertex) -> Color {
        self.color[v]
    }

    #[inline]
    pub fn colors(&self) -> &[Color] {
        &self.color
    }

    #[inline]
    pub fn pair(&self, v: Vertex) -> Option<Vertex> {
        self.pair[v]
    }

    #[inline]
    pub fn black_neighbors(&self, v: Vertex) -> usize {
        self.black_nbrs[v] as usize
    }

    #[inline]
    pub fn uncolored_neighbors(&self, v: Vertex) -> usize {
        self.uncolored_nbrs[v] as usize
    }

    pub fn is_single(&self, v: Vertex) -> bool {
        self.color[v] == Color::Black && self.pair[v].is_none()
    }

    pub fn is_total(&self) -> bool {
        self.color.iter().all(|&c| c != Color::Uncolored)
    }

    pub fn singles(&self) -> Vec<Vertex> {
        (0..self.color.len()).filter(|&v| self.is_single(v)).collect()
    }

    pub fn uncolored(&self) -> Vec<Vertex> {
        (0..self.color.len()).filter(|&v| self.color[v] == Color::Uncolored).collect()
    }

    /// Pending worklist entries, in queue order.
    pub fn worklist(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.queue.iter().copied()
    }

    /// Position in the trail; pass to [`Coloring::undo_to`] to roll back.
    #[inline]
    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    /// Colors an uncolored vertex. Fails without modifying anything when the
    /// assignment would break valid-partiality.
    ///
    /// Panics if `v` is already colored.
    pub fn set_color(&mut self, g: &Graph, v: Vertex, color: Color) -> Result<(), Invalid> {
        assert_eq!(self.color[v], Color::Uncolored, "vertex {v} is already colored");
        match color {
            Color::Uncolored => panic!("cannot assign Uncolored"),
            Color::White => {
                if g.neighbors(v).iter().any(|&(u, _)| self.color[u] == Color::White) {
                    return Err(Invalid);
                }
                self.color[v] = Color::White;
                for &(u, _) in g.neighbors(v) {
                    self.uncolored_nbrs[u] -= 1;
                }
            }
            Color::Black => {
                if self.black_nbrs[v] > 1 {
                    return Err(Invalid);
                }
                let mut partner = None;
                for &(u, _) in g.neighbors(v) {
                    if self.color[u] == Color::Black {
                        if self.black_nbrs[u] > 0 {
                            return Err(Invalid);
                        }
                        partner = Some(u);
                    }
                }
                self.color[v] = Color::Black;
                for &(u, _) in g.neighbors(v) {
                    self.uncolored_nbrs[u] -= 1;
                    self.black_nbrs[u] += 1;
                }
                if let Some(u) = partner {
                    self.pair[v] = Some(u);
                    self.pair[u] = Some(v);
                }
            }
        }
        self.trail.push(v);
        self.enqueue(v);
        for &(u, _) in g.neighbors(v) {
            self.enqueue(u);
        }
        Ok(())
    }

    #[inline]
    fn enqueue(&mut self, v: Vertex) {
        if !self.queued[v] {
            self.queued[v] = true;
            self.queue.push_back(v);
        }
    }

    fn clear_queue(&mut self) {
        for v in self.queue.drain(..) {
            self.queued[v] = false;
        }
    }

    /// Rolls back every assignment made after `mark`, and drops the worklist.
    pub fn undo_to(&mut self, g: &Graph, mark: usize) {
        self.clear_queue();
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            let was = self.color[v];
            self.color[v] = Color::Uncolored;
            for &(u, _) in g.neighbors(v) {
                self.uncolored_nbrs[u] += 1;
                if was == Color::Black {
                    self.black_nbrs[u] -= 1;
                }
            }
            if let Some(u) = self.pair[v].take() {
                self.pair[u] = None;
            }
        }
    }

    /// Runs the forcing rules to a fixpoint, FIFO worklist order.
    pub fn propagate(&mut self, g: &Graph) -> Propagation {
        self.propagate_by(g, |q| q.pop_front())
    }

    /// As [`Coloring::propagate`], but draws worklist entries in random order.
    pub fn propagate_shuffled<R: Rng>(&mut self, g: &Graph, rng: &mut R) -> Propagation {
        self.propagate_by(g, |q| {
            if q.is_empty() {
                None
            } else {
                let i = rng.random_range(0..q.len());
                q.swap_remove_back(i)
            }
        })
    }

    fn propagate_by<F>(&mut self, g: &Graph, mut next: F) -> Propagation
    where
        F: FnMut(&mut VecDeque<Vertex>) -> Option<Vertex>,
    {
        while let Some(x) = next(&mut self.queue) {
            self.queued[x] = false;
            if self.apply_rules(g, x).is_err() {
                self.clear_queue();
                return Propagation::Invalid;
            }
        }
        Propagation::Stable { singles: self.singles(), uncolored: self.uncolored() }
    }

    fn apply_rules(&mut self, g: &Graph, x: Vertex) -> Result<(), Invalid> {
        match self.color[x] {
            // (iii) two black neighbors force white
            Color::Uncolored => {
                if self.black_nbrs[x] >= 2 {
                    self.set_color(g, x, Color::White)?;
                }
            }
            // (i) neighbors of a white vertex are black
            Color::White => {
                if self.uncolored_nbrs[x] > 0 {
                    for &(u, _) in g.neighbors(x) {
                        if self.color[u] == Color::Uncolored {
                            self.set_color(g, u, Color::Black)?;
                        }
                    }
                }
            }
            Color::Black => match self.pair[x] {
                // (ii) the other neighbors of a paired black vertex are white
                Some(_) => {
                    if self.uncolored_nbrs[x] > 0 {
                        for &(u, _) in g.neighbors(x) {
                            if self.color[u] == Color::Uncolored {
                                self.set_color(g, u, Color::White)?;
                            }
                        }
                    }
                }
                // (iv) a single with one uncolored neighbor pairs with it;
                // a single with none can never be paired
                None => match self.uncolored_nbrs[x] {
                    0 => return Err(Invalid),
                    1 => {
                        let u = g
                            .neighbors(x)
                            .iter()
                            .map(|&(u, _)| u)
                            .find(|&u| self.color[u] == Color::Uncolored)
                            .expect("counter says one uncolored neighbor");
                        self.set_color(g, u, Color::Black)?;
                    }
                    _ => {}
                },
            },
        }
        Ok(())
    }

    /// The black edges of a total valid coloring, as a DIM.
    ///
    /// Panics if the coloring is not total, or some black vertex is unpaired.
    pub fn to_dim(&self, g: &Graph) -> Dim {
        assert!(self.is_total(), "coloring is not total");
        let mut edges: Vec<EdgeId> = Vec::new();
        for v in 0..g.n() {
            if self.color[v] == Color::Black {
                let u = self.pair[v].unwrap_or_else(|| panic!("black vertex {v} is unpaired"));
                if v < u {
                    edges.push(g.edge_between(v, u).expect("pairs are adjacent"));
                }
            }
        }
        Dim::from_edges(g, edges)
    }
}

/// Splits the uncolored vertices of a stable coloring by their unique single
/// black neighbor. Keys are the singles with at least one uncolored neighbor.
pub fn uncolored_partition(
    g: &Graph,
    c: &Coloring,
    uncolored: &[Vertex],
) -> Result<BTreeMap<Vertex, Vec<Vertex>>, ContractViolation> {
    let mut parts: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &v in uncolored {
        let mut blacks = g.neighbors(v).iter().map(|&(u, _)| u).filter(|&u| c.color(u) == Color::Black);
        match (blacks.next(), blacks.next()) {
            (Some(s), None) if c.is_single(s) => parts.entry(s).or_default().push(v),
            _ => return Err(ContractViolation { vertex: v, black_neighbors: c.black_neighbors(v) }),
        }
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> Graph {
        Graph::new(n, (0..n - 1).map(|i| (i, i + 1, 1.0))).unwrap()
    }

    #[test]
    fn set_white_enqueues() {
        let g = path(3);
        let mut c = Coloring::new(&g);
        c.set_color(&g, 0, Color::White).unwrap();
        assert_eq!(c.color(0), Color::White);
        assert!(c.worklist().any(|v| v == 0));
        assert_eq!(c.uncolored_neighbors(1), 1);
    }

    #[test]
    fn adjacent_whites_are_invalid() {
        let g = path(2);
        let mut c = Coloring::new(&g);
        c.set_color(&g, 0, Color::White).unwrap();
        assert_eq!(c.set_color(&g, 1, Color::White), Err(Invalid));
        assert_eq!(c.color(1), Color::Uncolored);
    }

    #[test]
    fn black_with_two_black_neighbors_is_invalid() {
        let g = path(3);
        let mut c = Coloring::new(&g);
        c.set_color(&g, 0, Color::Black).unwrap();
        c.set_color(&g, 2, Color::Black).unwrap();
        assert_eq!(c.black_neighbors(1), 2);
        assert_eq!(c.set_color(&g, 1, Color::Black), Err(Invalid));
    }

    #[test]
    fn black_next_to_paired_is_invalid() {
        let g = path(3);
        let mut c = Coloring::new(&g);
        c.set_color(&g, 0, Color::Black).unwrap();
        c.set_color(&g, 1, Color::Black).unwrap();
        assert_eq!(c.pair(0), Some(1));
        assert_eq!(c.pair(1), Some(0));
        assert_eq!(c.set_color(&g, 2, Color::Black), Err(Invalid));
    }

    #[test]
    #[should_panic(expected = "already colored")]
    fn recoloring_panics() {
        let g = path(2);
        let mut c = Coloring::new(&g);
        c.set_color(&g, 0, Color::White).unwrap();
        let _ = c.set_color(&g, 0, Color::Black);
    }

    #[test]
    fn white_end_of_p3_forces_pair() {
        let g = path(3);
        let mut c = Coloring::new(&g);
        c.set_color(&g, 0, Color::White).unwrap();
        assert_eq!(c.propagate(&g), Propagation::Stable { singles: vec![], uncolored: vec![] });
        assert_eq!(c.colors(), &[Color::White, Color::Black, Color::Black]);
        assert_eq!(c.pair(1), Some(2));
        assert_eq!(c.to_dim(&g).edges, vec![1]);
    }

    #[test]
    fn paired_blacks_whiten_neighbors() {
        let g = path(3);
        let mut c = Coloring::new(&g);
        c.set_color(&g, 0, Color::Black).unwrap();
        c.set_color(&g, 1, Color::Black).unwrap();
        assert!(c.propagate(&g).is_stable());
        assert_eq!(c.colors(), &[Color::Black, Color::Black, Color::White]);
    }

    #[test]
    fn p4_white_black_root_is_dead() {
        // 2=White, 3=Black (1-based): vertex 1 becomes a single black with
        // only a white neighbor, so it can never be paired.
        let g = path(4);
        let mut c = Coloring::new(&g);
        c.set_color(&g, 1, Color::White).unwrap();
        c.set_color(&g, 2, Color::Black).unwrap();
        assert_eq!(c.propagate(&g), Propagation::Invalid);
    }

    #[test]
    fn star_with_black_center_stays_open() {
        let g = Graph::new(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        let mut c = Coloring::new(&g);
        c.set_color(&g, 0, Color::Black).unwrap();
        let Propagation::Stable { singles, uncolored } = c.propagate(&g) else { panic!() };
        assert_eq!(singles, vec![0]);
        assert_eq!(uncolored, vec![1, 2, 3]);
        let parts = uncolored_partition(&g, &c, &uncolored).unwrap();
        assert_eq!(parts.into_iter().collect::<Vec<_>>(), vec![(0, vec![1, 2, 3])]);
    }

    #[test]
    fn partition_empty_without_singles() {
        let g = path(3);
        let mut c = Coloring::new(&g);
        c.set_color(&g, 0, Color::White).unwrap();
        let Propagation::Stable { singles, uncolored } = c.propagate(&g) else { panic!() };
        assert!(singles.is_empty());
        assert!(uncolored.is_empty());
        assert!(uncolored_partition(&g, &c, &uncolored).unwrap().is_empty());

        // middle white leaves both ends as singles with nothing to pair with
        let mut c = Coloring::new(&g);
        c.set_color(&g, 1, Color::White).unwrap();
        assert_eq!(c.propagate(&g), Propagation::Invalid);
    }

    #[test]
    fn partition_reports_non_dominating_root() {
        // 0 adjacent to 1 and 2, tail 2-3-4; {0} does not dominate 3 or 4
        let g = Graph::new(5, [(0, 1, 1.0), (0, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0)]).unwrap();
        let mut c = Coloring::new(&g);
        c.set_color(&g, 0, Color::Black).unwrap();
        let Propagation::Stable { uncolored, .. } = c.propagate(&g) else { panic!() };
        assert_eq!(uncolored, vec![1, 2, 3, 4]);
        assert_eq!(uncolored_partition(&g, &c, &uncolored), Err(ContractViolation { vertex: 3, black_neighbors: 0 }));
    }

    #[test]
    fn undo_restores_counters() {
        let g = Graph::new(5, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (4, 0, 1.0)]).unwrap();
        let mut c = Coloring::new(&g);
        c.set_color(&g, 0, Color::Black).unwrap();
        c.propagate(&g);
        let snapshot = c.clone();
        let mark = c.mark();
        c.set_color(&g, 1, Color::Black).unwrap();
        let _ = c.propagate(&g);
        c.undo_to(&g, mark);
        assert_eq!(c, snapshot);
    }

    #[test]
    fn to_dim_on_trivial_colorings() {
        let k2 = path(2);
        let mut c = Coloring::new(&k2);
        c.set_color(&k2, 0, Color::Black).unwrap();
        c.set_color(&k2, 1, Color::Black).unwrap();
        assert_eq!(c.to_dim(&k2), Dim { edges: vec![0], weight: 1.0 });

        let empty = Graph::empty(0);
        assert_eq!(Coloring::new(&empty).to_dim(&empty), Dim::empty());
    }

    #[test]
    fn p4_total_coloring_to_dim() {
        let g = Graph::new(4, [(0, 1, 5.0), (1, 2, 2.0), (2, 3, 7.0)]).unwrap();
        let mut c = Coloring::new(&g);
        for (v, col) in [(0, Color::White), (1, Color::Black), (2, Color::Black), (3, Color::White)] {
            c.set_color(&g, v, col).unwrap();
        }
        assert_eq!(c.to_dim(&g), Dim { edges: vec![1], weight: 2.0 });
    }

    #[test]
    fn shuffled_order_matches_fifo_on_a_cycle() {
        let g = Graph::new(6, (0..6).map(|i| (i, (i + 1) % 6, 1.0))).unwrap();
        let mut fifo = Coloring::new(&g);
        fifo.set_color(&g, 0, Color::White).unwrap();
        let expected = fifo.propagate(&g);
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut c = Coloring::new(&g);
            c.set_color(&g, 0, Color::White).unwrap();
            assert_eq!(c.propagate_shuffled(&g, &mut rng), expected);
            assert_eq!(c.colors(), fifo.colors());
        }
    }
}
