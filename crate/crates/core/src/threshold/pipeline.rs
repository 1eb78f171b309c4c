use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use super::color::{color_code, ColorStrategy, ColoredCopy};
use super::family::{pair_to_single, scale_thresholds, ScaledEntry};
use crate::error::{Error, Result};
use crate::instances::{BicriteriaInstance, ExactBicritKPathInstance, ExactKPathInstance, Instance, LayeredEdge, LayeredGraph};

/// A colored copy with `s` and `t` folded into the neighbouring edges.
///
/// For `k >= 2` the layers are `V_1, ..., V_k`. For `k = 1` there is no edge
/// inside `V_1` to carry the endpoint weights, so the graph gets a second
/// layer holding a single sink image, and each `s -> v -> t` pair becomes one
/// edge `v -> sink` with the summed weight. Either way every surviving path
/// uses `num_layers - 1` edges and has the weight of its original s,t-path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsorbedGraph {
    pub graph: LayeredGraph<(u64, u64)>,
    /// Original vertex of each vertex, `None` for the sink image.
    pub vertex: Vec<Option<usize>>,
    /// Original edges behind each edge, in path order.
    pub edge_paths: Vec<Vec<usize>>,
}

impl AbsorbedGraph {
    /// Original s,t-path of a path given by its edges.
    pub fn original_path(&self, edges: &[usize]) -> Vec<usize> {
        edges.iter().flat_map(|&e| self.edge_paths[e].iter().copied()).collect()
    }
}

fn add(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    // saturated sums exceed any budget and get pruned
    (a.0.saturating_add(b.0), a.1.saturating_add(b.1))
}

/// Compacts vertices in order and sorts edges together with their paths.
fn assemble(
    num_layers: usize,
    vertices: Vec<(Option<usize>, usize)>,
    copy_id: impl Fn(Option<usize>) -> usize,
    edges: Vec<(usize, usize, (u64, u64), Vec<usize>)>,
) -> AbsorbedGraph {
    let mut index = std::collections::HashMap::new();
    for (i, (v, _)) in vertices.iter().enumerate() {
        index.insert(copy_id(*v), i);
    }
    let mut edges: Vec<(LayeredEdge<(u64, u64)>, Vec<usize>)> = edges
        .into_iter()
        .filter_map(|(u, v, weight, path)| Some((LayeredEdge { from: *index.get(&u)?, to: *index.get(&v)?, weight }, path)))
        .collect();
    edges.sort();
    let (edges, edge_paths) = edges.into_iter().unzip();
    let (vertex, layer_of) = vertices.into_iter().unzip();
    AbsorbedGraph { graph: LayeredGraph { num_layers, layer_of, edges }, vertex, edge_paths }
}

/// Adds `s`-edges onto edges leaving `V_1` and `t`-edges onto edges entering
/// `V_k`, dropping `V_1` vertices without an `s`-edge and `V_k` vertices
/// without a `t`-edge.
pub fn absorb_endpoints(copy: &ColoredCopy, k: usize) -> AbsorbedGraph {
    let g = &copy.graph;
    let n = g.num_vertices();
    let mut from_s: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut to_t: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in g.edges.iter().enumerate() {
        if e.from == copy.s {
            from_s[e.to].push(i);
        }
        if e.to == copy.t {
            to_t[e.from].push(i);
        }
    }
    let orig = |i: usize| copy.edge[i];

    if k == 1 {
        let sink = n;
        let mut vertices: Vec<(Option<usize>, usize)> = Vec::new();
        let mut edges = Vec::new();
        for v in 0..n {
            if g.layer_of[v] != 1 || from_s[v].is_empty() || to_t[v].is_empty() {
                continue;
            }
            vertices.push((Some(v), 0));
            for &a in &from_s[v] {
                for &b in &to_t[v] {
                    let w = add(g.edges[a].weight, g.edges[b].weight);
                    edges.push((v, sink, w, vec![orig(a), orig(b)]));
                }
            }
        }
        if !vertices.is_empty() {
            vertices.push((None, 1));
        }
        let mut out = assemble(2, vertices, |v| v.unwrap_or(sink), edges);
        to_original(&mut out, copy);
        return out;
    }

    let keep = |v: usize| {
        let layer = g.layer_of[v];
        (1..=k).contains(&layer) && (layer != 1 || !from_s[v].is_empty()) && (layer != k || !to_t[v].is_empty())
    };
    let vertices: Vec<(Option<usize>, usize)> =
        (0..n).filter(|&v| keep(v)).map(|v| (Some(v), g.layer_of[v] - 1)).collect();
    let mut edges = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if e.from == copy.s || e.to == copy.t || !keep(e.from) || !keep(e.to) {
            continue;
        }
        let heads: Vec<Option<usize>> =
            if g.layer_of[e.from] == 1 { from_s[e.from].iter().map(|&a| Some(a)).collect() } else { vec![None] };
        let tails: Vec<Option<usize>> =
            if g.layer_of[e.to] == k { to_t[e.to].iter().map(|&b| Some(b)).collect() } else { vec![None] };
        for a in &heads {
            for b in &tails {
                let mut w = e.weight;
                let mut path = Vec::with_capacity(3);
                if let Some(a) = *a {
                    w = add(g.edges[a].weight, w);
                    path.push(orig(a));
                }
                path.push(orig(i));
                if let Some(b) = *b {
                    w = add(w, g.edges[b].weight);
                    path.push(orig(b));
                }
                edges.push((e.from, e.to, w, path));
            }
        }
    }
    let mut out = assemble(k, vertices, |v| v.expect("no sink image"), edges);
    to_original(&mut out, copy);
    out
}

fn to_original(a: &mut AbsorbedGraph, copy: &ColoredCopy) {
    for v in a.vertex.iter_mut() {
        *v = v.map(|c| copy.vertex[c]);
    }
}

/// Drops edges over either budget and vertices on no first-to-last-layer
/// path.
pub fn prune(a: &AbsorbedGraph, budget_length: u64, budget_cost: u64) -> AbsorbedGraph {
    let g = &a.graph;
    let n = g.num_vertices();
    let last = g.num_layers.saturating_sub(1);
    let light: Vec<usize> =
        (0..g.edges.len()).filter(|&i| g.edges[i].weight.0 <= budget_length && g.edges[i].weight.1 <= budget_cost).collect();
    let mut fwd: Vec<bool> = g.layer_of.iter().map(|&l| l == 0).collect();
    let mut bwd: Vec<bool> = g.layer_of.iter().map(|&l| l == last).collect();
    for _ in 0..last {
        for &i in &light {
            let e = &g.edges[i];
            fwd[e.to] |= fwd[e.from];
            bwd[e.from] |= bwd[e.to];
        }
    }
    let alive: Vec<bool> = (0..n).map(|v| fwd[v] && bwd[v]).collect();
    let mut index = vec![usize::MAX; n];
    let mut vertex = Vec::new();
    let mut layer_of = Vec::new();
    for v in (0..n).filter(|&v| alive[v]) {
        index[v] = vertex.len();
        vertex.push(a.vertex[v]);
        layer_of.push(g.layer_of[v]);
    }
    let mut edges = Vec::new();
    let mut edge_paths = Vec::new();
    for &i in &light {
        let e = &g.edges[i];
        if alive[e.from] && alive[e.to] {
            edges.push(LayeredEdge { from: index[e.from], to: index[e.to], weight: e.weight });
            edge_paths.push(a.edge_paths[i].clone());
        }
    }
    AbsorbedGraph { graph: LayeredGraph { num_layers: g.num_layers, layer_of, edges }, vertex, edge_paths }
}

/// One generated exact instance and where it came from.
#[derive(Clone, Debug)]
pub struct ExactJob {
    pub instance: ExactKPathInstance,
    pub coloring: usize,
    pub ordering: usize,
    /// Index into the cross product of the two one-dimensional families.
    pub entry: usize,
    pub source: Arc<AbsorbedGraph>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PipelineStats {
    pub colorings: u64,
    pub distinct_graphs: u64,
    pub instances: u64,
}

struct Current {
    source: Arc<AbsorbedGraph>,
    coloring: usize,
    ordering: usize,
    f1: Vec<ScaledEntry>,
    f2: Vec<ScaledEntry>,
    next: usize,
}

/// Lazy stream of exact instances whose OR decides whether `g` has a
/// feasible s,t-path with exactly `k` internal vertices.
///
/// Absorbed graphs that coincide after pruning are emitted once.
pub struct ExactInstances<'a> {
    copies: Box<dyn Iterator<Item = ColoredCopy> + 'a>,
    k: usize,
    budgets: (u64, u64),
    cap: u64,
    seen: HashSet<LayeredGraph<(u64, u64)>>,
    current: Option<Current>,
    pub stats: PipelineStats,
}

impl ExactInstances<'_> {
    fn next_graph(&mut self) -> Result<bool> {
        for copy in self.copies.by_ref() {
            self.stats.colorings += 1;
            let absorbed = prune(&absorb_endpoints(&copy, self.k), self.budgets.0, self.budgets.1);
            if absorbed.graph.edges.is_empty() || !self.seen.insert(absorbed.graph.clone()) {
                continue;
            }
            self.stats.distinct_graphs += 1;
            let edges = &absorbed.graph.edges;
            let m = absorbed.graph.num_layers - 1;
            let w1: Vec<u64> = edges.iter().map(|e| e.weight.0).collect();
            let w2: Vec<u64> = edges.iter().map(|e| e.weight.1).collect();
            let f1 = scale_thresholds(&w1, self.budgets.0, m, self.cap)?;
            let f2 = scale_thresholds(&w2, self.budgets.1, m, self.cap)?;
            self.current = Some(Current {
                source: Arc::new(absorbed),
                coloring: copy.partition.coloring,
                ordering: copy.partition.ordering,
                f1,
                f2,
                next: 0,
            });
            return Ok(true);
        }
        Ok(false)
    }

    fn emit(&mut self) -> Option<Result<ExactJob>> {
        let cur = self.current.as_mut()?;
        if cur.next >= cur.f1.len() * cur.f2.len() {
            return None;
        }
        let entry = cur.next;
        cur.next += 1;
        let (e1, e2) = (&cur.f1[entry / cur.f2.len()], &cur.f2[entry % cur.f2.len()]);
        let g = &cur.source.graph;
        let edges = g
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| LayeredEdge { from: e.from, to: e.to, weight: (e1.weights[i], e2.weights[i]) })
            .collect();
        let pair = ExactBicritKPathInstance {
            graph: LayeredGraph { num_layers: g.num_layers, layer_of: g.layer_of.clone(), edges },
            targets: (e1.target, e2.target),
            weight_bound: self.cap,
        };
        self.stats.instances += 1;
        Some(pair_to_single(&pair, g.num_layers - 1, self.cap).map(|instance| ExactJob {
            instance,
            coloring: cur.coloring,
            ordering: cur.ordering,
            entry,
            source: Arc::clone(&cur.source),
        }))
    }
}

impl Iterator for ExactInstances<'_> {
    type Item = Result<ExactJob>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(job) = self.emit() {
                return Some(job);
            }
            match self.next_graph() {
                Ok(true) => continue,
                Ok(false) => return None,
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

/// Color coding, endpoint absorption, threshold families over the absorbed
/// edges and pair flattening, with `W = max(L, C)`.
///
/// An s,t-path with `k` internal vertices becomes a path of `k - 1` absorbed
/// edges (one edge for `k = 1`), so the families use that many summands.
pub fn bicriteria_to_exact_instances(g: &BicriteriaInstance, k: usize, strategy: ColorStrategy) -> Result<ExactInstances<'_>> {
    if let Some(v) = g.validate().first() {
        return Err(Error::InvalidInstance(v.to_string()));
    }
    let copies = color_code(g, k, strategy)?;
    Ok(ExactInstances {
        copies: Box::new(copies),
        k,
        budgets: (g.budget_length, g.budget_cost),
        cap: g.budget_length.max(g.budget_cost),
        seen: HashSet::new(),
        current: None,
        stats: PipelineStats::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::Edge;
    use crate::threshold::color::colored_copy;
    use crate::threshold::ColorPartition;

    fn copy_with(g: &BicriteriaInstance, k: usize, classes: &[Option<usize>]) -> ColoredCopy {
        colored_copy(g, k, ColorPartition { coloring: 0, ordering: 0, class_of: classes.to_vec() })
    }

    #[test]
    fn absorbs_both_ends_into_one_edge() {
        let g = BicriteriaInstance::new(
            4,
            vec![Edge::new(0, 1, 1, 1), Edge::new(1, 2, 2, 2), Edge::new(2, 3, 3, 3)],
            0,
            3,
            9,
            9,
        );
        let a = absorb_endpoints(&copy_with(&g, 2, &[None, Some(0), Some(1), None]), 2);
        assert_eq!(a.graph.edges, vec![LayeredEdge { from: 0, to: 1, weight: (6, 6) }]);
        assert_eq!(a.vertex, vec![Some(1), Some(2)]);
        assert_eq!(a.original_path(&[0]), vec![0, 1, 2]);
    }

    #[test]
    fn drops_first_class_vertex_without_source_edge() {
        // 4 is in V_1 but has no edge from s
        let g = BicriteriaInstance::new(
            5,
            vec![Edge::new(0, 1, 1, 1), Edge::new(1, 2, 1, 1), Edge::new(4, 2, 1, 1), Edge::new(2, 3, 1, 1)],
            0,
            3,
            9,
            9,
        );
        let a = absorb_endpoints(&copy_with(&g, 2, &[None, Some(0), Some(1), None, Some(0)]), 2);
        assert_eq!(a.vertex, vec![Some(1), Some(2)]);
        assert_eq!(a.graph.edges.len(), 1);
    }

    #[test]
    fn single_class_folds_into_two_layers() {
        let g = BicriteriaInstance::new(
            4,
            vec![Edge::new(0, 1, 1, 2), Edge::new(1, 3, 3, 4), Edge::new(0, 2, 1, 1)],
            0,
            3,
            9,
            9,
        );
        let a = absorb_endpoints(&copy_with(&g, 1, &[None, Some(0), Some(0), None]), 1);
        assert_eq!(a.graph.num_layers, 2);
        assert_eq!(a.vertex, vec![Some(1), None]);
        assert_eq!(a.graph.edges, vec![LayeredEdge { from: 0, to: 1, weight: (4, 6) }]);
    }

    #[test]
    fn pruning_removes_heavy_edges_and_dead_vertices() {
        let g = BicriteriaInstance::new(
            5,
            vec![
                Edge::new(0, 1, 1, 1),
                Edge::new(0, 2, 1, 1),
                Edge::new(1, 3, 9, 1),
                Edge::new(2, 3, 1, 1),
                Edge::new(3, 4, 1, 1),
            ],
            0,
            4,
            5,
            5,
        );
        let a = absorb_endpoints(&copy_with(&g, 2, &[None, Some(0), Some(0), Some(1), None]), 2);
        assert_eq!(a.graph.edges.len(), 2);
        let p = prune(&a, 5, 5);
        assert_eq!(p.vertex, vec![Some(2), Some(3)]);
        assert_eq!(p.graph.edges.len(), 1);
    }

    #[test]
    fn single_vertex_graph_yields_a_yes() {
        let g = BicriteriaInstance::new(3, vec![Edge::new(0, 1, 2, 1), Edge::new(1, 2, 1, 3)], 0, 2, 3, 4);
        let jobs: Vec<ExactJob> = bicriteria_to_exact_instances(&g, 1, ColorStrategy::default())
            .unwrap()
            .collect::<Result<_>>()
            .unwrap();
        assert!(!jobs.is_empty());
        let yes = jobs
            .iter()
            .filter(|j| crate::solvers::solve_exact_kpath_mim(&j.instance).unwrap().is_yes())
            .count();
        assert!(yes > 0);
    }

    #[test]
    fn budgets_below_every_path_give_nothing() {
        let g = BicriteriaInstance::new(3, vec![Edge::new(0, 1, 2, 1), Edge::new(1, 2, 1, 3)], 0, 2, 2, 4);
        let mut it = bicriteria_to_exact_instances(&g, 1, ColorStrategy::default()).unwrap();
        let jobs: Vec<_> = it.by_ref().collect::<Result<Vec<_>>>().unwrap();
        for j in &jobs {
            assert!(!crate::solvers::solve_exact_kpath_mim(&j.instance).unwrap().is_yes());
        }
        assert_eq!(it.stats.colorings, 1);
    }
}
