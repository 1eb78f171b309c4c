//! Seeded random instance generators.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::seq::{IteratorRandom, SliceRandom};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::instances::{
    BicriteriaInstance, CnfFormula, Constraint, CspInstance, Edge, ExactBicritKPathInstance, ExactKPathInstance,
    KSumInstance, LayeredEdge, LayeredGraph, SubsetSumInstance,
};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Three variables over `{1, 2}` with `x1 = x2`, `x2 != x3` and
/// `x1 = 1 => x3 = 1`. Its only solution is `(2, 2, 1)`.
pub fn worked_example_csp() -> CspInstance {
    CspInstance::new(
        3,
        1,
        vec![
            Constraint::new(vec![0, 1], vec![vec![1, 1], vec![2, 2]]),
            Constraint::new(vec![1, 2], vec![vec![1, 2], vec![2, 1]]),
            Constraint::new(vec![0, 2], vec![vec![1, 1], vec![2, 1], vec![2, 2]]),
        ],
    )
}

/// `n` items uniform in `[0, max_item]`. Half of the time the target is the
/// sum of a random subset, otherwise uniform in `[0, max_target]`.
pub fn random_subset_sum(rng: &mut impl Rng, n: usize, max_item: u64, max_target: u64) -> SubsetSumInstance {
    let items: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max_item)).collect();
    let target = if rng.gen_bool(0.5) {
        items.iter().filter(|_| rng.gen_bool(0.5)).sum::<u64>().min(max_target)
    } else {
        rng.gen_range(0..=max_target)
    };
    SubsetSumInstance::from_u64(&items, target)
}

/// Clauses of exactly `width` distinct variables with random signs.
pub fn random_cnf(rng: &mut impl Rng, num_vars: usize, num_clauses: usize, width: usize) -> CnfFormula {
    let width = width.min(num_vars);
    let clauses = (0..num_clauses)
        .map(|_| {
            let mut vars = (1..=num_vars as i32).choose_multiple(rng, width);
            vars.sort_unstable();
            vars.into_iter().map(|v| if rng.gen_bool(0.5) { v } else { -v }).collect()
        })
        .collect();
    CnfFormula::new(num_vars, clauses)
}

/// A small random CSP: `1..=max_vars` variables over `[2^a]` with
/// `a in 1..=max_bits`, up to `max_constraints` constraints of arity at most
/// two, each listing up to `max_tuples` distinct satisfying tuples.
pub fn random_csp(
    rng: &mut impl Rng,
    max_vars: usize,
    max_bits: u32,
    max_constraints: usize,
    max_tuples: usize,
) -> CspInstance {
    let num_vars = rng.gen_range(1..=max_vars);
    let bits = rng.gen_range(1..=max_bits);
    let size = 1u64 << bits;
    let num_constraints = rng.gen_range(0..=max_constraints);
    let constraints = (0..num_constraints)
        .map(|_| {
            let arity = rng.gen_range(1..=num_vars.min(2));
            let mut vars = (0..num_vars).choose_multiple(rng, arity);
            vars.sort_unstable();
            let space = size.pow(arity as u32);
            let count = rng.gen_range(0..=(max_tuples as u64).min(space));
            let picked: BTreeSet<u64> = (0..space).choose_multiple(rng, count as usize).into_iter().collect();
            let tuples = picked
                .into_iter()
                .map(|mut code| {
                    (0..arity)
                        .map(|_| {
                            let v = code % size + 1;
                            code /= size;
                            v
                        })
                        .collect()
                })
                .collect();
            Constraint::new(vars, tuples)
        })
        .collect();
    CspInstance::new(num_vars, bits, constraints)
}

/// `k` groups of `size` values in `[0, max]`; the target is a planted tuple
/// sum half of the time.
pub fn random_ksum(rng: &mut impl Rng, k: usize, size: usize, max: u64) -> KSumInstance {
    let groups: Vec<Vec<BigUint>> =
        (0..k).map(|_| (0..size).map(|_| BigUint::from(rng.gen_range(0..=max))).collect()).collect();
    let target = if rng.gen_bool(0.5) && size > 0 {
        groups.iter().map(|g| g.choose(rng).expect("non-empty").clone()).sum()
    } else {
        BigUint::from(rng.gen_range(0..=max * k as u64))
    };
    KSumInstance::new(groups, target)
}

/// A random simple directed graph (cycles allowed) with `s = 0` and
/// `t = n - 1`; weights in `[0, max_weight]`.
pub fn random_bicriteria(
    rng: &mut impl Rng,
    n: usize,
    edge_prob: f64,
    max_weight: u64,
    budgets: (u64, u64),
) -> BicriteriaInstance {
    let (s, t) = (0, n - 1);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || u == t || v == s || !rng.gen_bool(edge_prob) {
                continue;
            }
            edges.push(Edge::new(u, v, rng.gen_range(0..=max_weight), rng.gen_range(0..=max_weight)));
        }
    }
    BicriteriaInstance::new(n, edges, s, t, budgets.0, budgets.1)
}

/// A random layered DAG with `s = 0`, `t = n - 1` and weights in `[0, max_weight]`.
pub fn random_dag(rng: &mut impl Rng, n: usize, edge_prob: f64, max_weight: u64, budgets: (u64, u64)) -> BicriteriaInstance {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push(Edge::new(u, v, rng.gen_range(0..=max_weight), rng.gen_range(0..=max_weight)));
            }
        }
    }
    BicriteriaInstance::new(n, edges, 0, n - 1, budgets.0, budgets.1)
}

fn random_layering(rng: &mut impl Rng, k: usize, width: usize) -> Vec<usize> {
    let mut layer_of: Vec<usize> = (0..k).flat_map(|i| std::iter::repeat_n(i, rng.gen_range(1..=width))).collect();
    layer_of.shuffle(rng);
    layer_of
}

fn layered_edges<W>(rng: &mut impl Rng, layer_of: &[usize], edge_prob: f64, mut weight: impl FnMut(&mut dyn rand::RngCore) -> W) -> Vec<LayeredEdge<W>>
where
    W: Copy,
{
    let mut edges = Vec::new();
    for (u, &lu) in layer_of.iter().enumerate() {
        for (v, &lv) in layer_of.iter().enumerate() {
            if lv == lu + 1 && rng.gen_bool(edge_prob) {
                let w = weight(rng as &mut dyn rand::RngCore);
                edges.push(LayeredEdge { from: u, to: v, weight: w });
            }
        }
    }
    edges
}

/// A random layered instance with `1..=width` vertices per layer and a
/// target uniform in `[0, (k-1) * w]`.
pub fn random_exact_kpath(rng: &mut impl Rng, k: usize, width: usize, edge_prob: f64, w: u64) -> ExactKPathInstance {
    let layer_of = random_layering(rng, k, width);
    let edges = layered_edges(rng, &layer_of, edge_prob, |r| r.gen_range(0..=w));
    let target = rng.gen_range(0..=w * k.saturating_sub(1) as u64);
    ExactKPathInstance { graph: LayeredGraph::new(k, layer_of, edges), target, weight_bound: w }
}

pub fn random_exact_bicrit_kpath(
    rng: &mut impl Rng,
    k: usize,
    width: usize,
    edge_prob: f64,
    w: u64,
) -> ExactBicritKPathInstance {
    let layer_of = random_layering(rng, k, width);
    let edges = layered_edges(rng, &layer_of, edge_prob, |r| (r.gen_range(0..=w), r.gen_range(0..=w)));
    let span = w * k.saturating_sub(1) as u64;
    let targets = (rng.gen_range(0..=span), rng.gen_range(0..=span));
    ExactBicritKPathInstance { graph: LayeredGraph::new(k, layer_of, edges), targets, weight_bound: w }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::Instance;

    #[test]
    fn generators_are_deterministic_and_valid() {
        let a = random_subset_sum(&mut seeded(7), 10, 100, 500);
        let b = random_subset_sum(&mut seeded(7), 10, 100, 500);
        assert_eq!(a, b);
        assert!(random_cnf(&mut seeded(1), 6, 10, 3).is_valid());
        for seed in 0..20 {
            assert!(random_csp(&mut seeded(seed), 3, 2, 3, 8).is_valid());
            assert!(random_bicriteria(&mut seeded(seed), 8, 0.3, 32, (40, 40)).is_valid());
            assert!(random_exact_kpath(&mut seeded(seed), 3, 3, 0.5, 32).is_valid());
            assert!(random_exact_bicrit_kpath(&mut seeded(seed), 3, 3, 0.5, 8).is_valid());
        }
        assert!(worked_example_csp().is_valid());
    }
}
