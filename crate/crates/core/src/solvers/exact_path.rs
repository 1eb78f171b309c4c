use std::collections::BTreeMap;
use std::time::Instant;

use super::SolveResult;
use crate::error::{Error, Result};
use crate::instances::{ExactBicritKPathInstance, ExactKPathInstance, Instance, LayeredGraph, SolutionCertificate};

/// Achievable weights per vertex, each with the edge that reached it first.
type Frontier<W> = Vec<BTreeMap<W, Option<usize>>>;

/// Meet in the middle on a layered graph.
///
/// Prefix weights are collected from the first layer up to the middle layer
/// `ceil((k+1)/2)` and suffix weights from the last layer back to it; at each
/// middle vertex the two sorted weight sets are matched against the target.
/// A single-vertex path has weight 0.
pub fn solve_exact_kpath_mim(inst: &ExactKPathInstance) -> Result<SolveResult> {
    let started = Instant::now();
    if let Some(v) = inst.validate().first() {
        return Err(Error::InvalidInstance(v.to_string()));
    }
    let (found, states) = layered_mim(&inst.graph, 0u64, inst.target, |acc, w| acc.checked_add(*w), |t, p| t.checked_sub(*p));
    Ok(finish(found, states, started))
}

/// The same search with componentwise pair weights.
pub fn solve_exact_bicrit_kpath_mim(inst: &ExactBicritKPathInstance) -> Result<SolveResult> {
    let started = Instant::now();
    if let Some(v) = inst.validate().first() {
        return Err(Error::InvalidInstance(v.to_string()));
    }
    let (found, states) = layered_mim(
        &inst.graph,
        (0u64, 0u64),
        inst.targets,
        |acc, w| Some((acc.0.checked_add(w.0)?, acc.1.checked_add(w.1)?)),
        |t, p| Some((t.0.checked_sub(p.0)?, t.1.checked_sub(p.1)?)),
    );
    Ok(finish(found, states, started))
}

fn finish(found: Option<(Vec<usize>, Vec<usize>)>, states: u64, started: Instant) -> SolveResult {
    match found {
        Some((vertices, edges)) => SolveResult::yes(SolutionCertificate::LayeredPath { vertices, edges }, states, started),
        None => SolveResult::no(states, started),
    }
}

/// `add` extends a partial weight (returning `None` once it overshoots),
/// `rest` is the weight still needed after a prefix.
fn layered_mim<W: Ord + Copy>(
    g: &LayeredGraph<W>,
    zero: W,
    target: W,
    add: impl Fn(&W, &W) -> Option<W>,
    rest: impl Fn(&W, &W) -> Option<W>,
) -> (Option<(Vec<usize>, Vec<usize>)>, u64) {
    let k = g.num_layers;
    let n = g.num_vertices();
    if k == 0 {
        return (None, 0);
    }
    let within = |w: &W| rest(&target, w).is_some();
    // 0-based index of layer ceil((k+1)/2)
    let mid = (k + 1).div_ceil(2) - 1;
    let out = g.out_edges();
    let inc = g.in_edges();

    let mut prefix: Frontier<W> = vec![BTreeMap::new(); n];
    for v in g.layer(0) {
        prefix[v].insert(zero, None);
    }
    for layer in 0..mid {
        for u in g.layer(layer) {
            let weights: Vec<W> = prefix[u].keys().copied().collect();
            for &ei in &out[u] {
                let e = &g.edges[ei];
                for w in &weights {
                    if let Some(next) = add(w, &e.weight).filter(|x| within(x)) {
                        prefix[e.to].entry(next).or_insert(Some(ei));
                    }
                }
            }
        }
    }
    let mut suffix: Frontier<W> = vec![BTreeMap::new(); n];
    for v in g.layer(k - 1) {
        suffix[v].insert(zero, None);
    }
    for layer in (mid + 1..k).rev() {
        for u in g.layer(layer) {
            let weights: Vec<W> = suffix[u].keys().copied().collect();
            for &ei in &inc[u] {
                let e = &g.edges[ei];
                for w in &weights {
                    if let Some(next) = add(w, &e.weight).filter(|x| within(x)) {
                        suffix[e.from].entry(next).or_insert(Some(ei));
                    }
                }
            }
        }
    }
    let states = prefix.iter().chain(&suffix).map(|m| m.len() as u64).sum();

    for v in g.layer(mid) {
        for p in prefix[v].keys() {
            let Some(need) = rest(&target, p) else { continue };
            if suffix[v].contains_key(&need) {
                return (Some(trace(g, &prefix, &suffix, v, *p, need, &rest)), states);
            }
        }
    }
    (None, states)
}

fn trace<W: Ord + Copy>(
    g: &LayeredGraph<W>,
    prefix: &Frontier<W>,
    suffix: &Frontier<W>,
    mid_vertex: usize,
    p: W,
    s: W,
    rest: &impl Fn(&W, &W) -> Option<W>,
) -> (Vec<usize>, Vec<usize>) {
    let mut vertices = vec![mid_vertex];
    let mut edges = Vec::new();
    let (mut v, mut w) = (mid_vertex, p);
    while let Some(ei) = prefix[v][&w] {
        let e = &g.edges[ei];
        edges.push(ei);
        w = rest(&w, &e.weight).expect("recorded weights decompose");
        v = e.from;
        vertices.push(v);
    }
    vertices.reverse();
    edges.reverse();
    let (mut v, mut w) = (mid_vertex, s);
    while let Some(ei) = suffix[v][&w] {
        let e = &g.edges[ei];
        edges.push(ei);
        w = rest(&w, &e.weight).expect("recorded weights decompose");
        v = e.to;
        vertices.push(v);
    }
    (vertices, edges)
}
