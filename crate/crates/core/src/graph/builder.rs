use std::collections::HashSet;

use super::EdgeOrigin;
use crate::instances::{BicriteriaInstance, Edge};

/// Accumulates edges with provenance. A second edge between the same pair of
/// vertices is subdivided: a fresh midpoint takes the full weight on the first
/// half and `(0, 0)` on the second.
pub(crate) struct GraphBuilder {
    n: usize,
    edges: Vec<(Edge, EdgeOrigin)>,
    used: HashSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { n, edges: Vec::new(), used: HashSet::new() }
    }

    pub fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn edge(&mut self, tail: usize, head: usize, length: u64, cost: u64, origin: EdgeOrigin) {
        if self.used.insert((tail, head)) {
            self.edges.push((Edge::new(tail, head, length, cost), origin));
        } else {
            let mid = self.vertex();
            self.used.insert((tail, mid));
            self.used.insert((mid, head));
            self.edges.push((Edge::new(tail, mid, length, cost), origin));
            self.edges.push((Edge::new(mid, head, 0, 0), EdgeOrigin::Subdivision));
        }
    }

    /// Sorts edges and provenance together.
    pub fn finish(mut self, s: usize, t: usize, budget_length: u64, budget_cost: u64) -> (BicriteriaInstance, Vec<EdgeOrigin>) {
        self.edges.sort_by_key(|(e, _)| *e);
        let (edges, origins): (Vec<_>, Vec<_>) = self.edges.into_iter().unzip();
        (BicriteriaInstance { n: self.n, edges, s, t, budget_length, budget_cost }, origins)
    }
}
