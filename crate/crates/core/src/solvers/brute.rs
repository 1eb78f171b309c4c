//! Exhaustive oracles. They enumerate the whole search space and serve as
//! ground truth for the reductions and the faster solvers.

use std::collections::HashMap;
use std::hash::Hash;
use std::ops::{Add, Sub};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::SolveResult;
use crate::error::{Error, Result};
use crate::instances::{
    BicriteriaInstance, CnfFormula, CspInstance, ExactBicritKPathInstance, ExactKPathInstance, KSumInstance,
    LayeredGraph, SolutionCertificate, SubsetSumInstance,
};

/// Largest number of subsets, tuples or assignments enumerated.
pub const SUBSET_CAP: u128 = 1 << 24;
/// Largest number of complete paths enumerated.
pub const PATH_CAP: u64 = 10_000_000;
/// Largest item count for the split counting oracle (two halves of `2^24`).
const SPLIT_COUNT_MAX_ITEMS: usize = 48;

fn check_cap(space: u128, what: &str) -> Result<()> {
    if space > SUBSET_CAP {
        Err(Error::CapExceeded(format!("{space} {what} exceed the brute-force cap {SUBSET_CAP}")))
    } else {
        Ok(())
    }
}

fn pow2(n: usize) -> u128 {
    if n >= 127 { u128::MAX } else { 1u128 << n }
}

pub fn brute_subset_sum(inst: &SubsetSumInstance) -> Result<SolveResult> {
    let started = Instant::now();
    let n = inst.items.len();
    check_cap(pow2(n), "subsets")?;
    for mask in 0u64..1 << n {
        let sum: BigUint = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| &inst.items[i]).sum();
        if sum == inst.target {
            let items = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            return Ok(SolveResult::yes(SolutionCertificate::Subset { items }, mask + 1, started));
        }
    }
    Ok(SolveResult::no(1 << n, started))
}

/// Number of index subsets summing to the target.
///
/// Up to 24 items every subset is enumerated; up to 48 items the subsets of
/// each half are enumerated and matched through a count table.
pub fn count_subset_sum(inst: &SubsetSumInstance) -> Result<u64> {
    let n = inst.items.len();
    if n <= 24 {
        let mut count = 0;
        for mask in 0u64..1 << n {
            let sum: BigUint = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| &inst.items[i]).sum();
            count += u64::from(sum == inst.target);
        }
        return Ok(count);
    }
    if n > SPLIT_COUNT_MAX_ITEMS {
        return Err(Error::CapExceeded(format!("{n} items exceed the counting cap {SPLIT_COUNT_MAX_ITEMS}")));
    }
    let total: BigUint = inst.items.iter().sum();
    if total.bits() < 127 {
        let items: Vec<u128> = inst.items.iter().map(|x| x.to_u128().expect("fits")).collect();
        Ok(inst.target.to_u128().map_or(0, |t| split_count(&items, &t)))
    } else {
        Ok(split_count(&inst.items, &inst.target))
    }
}

fn split_count<T>(items: &[T], target: &T) -> u64
where
    T: Clone + Eq + Hash + Ord + Zero + for<'a> Add<&'a T, Output = T>,
    for<'a> &'a T: Sub<&'a T, Output = T>,
{
    fn sums<T: Clone + Zero + for<'a> Add<&'a T, Output = T>>(items: &[T]) -> Vec<T> {
        let mut out = vec![T::zero()];
        for item in items {
            let ext: Vec<T> = out.iter().map(|s| s.clone() + item).collect();
            out.extend(ext);
        }
        out
    }
    let mid = items.len() / 2;
    let mut right: HashMap<T, u64> = HashMap::new();
    for s in sums(&items[mid..]) {
        *right.entry(s).or_default() += 1;
    }
    let mut count = 0;
    for s in sums(&items[..mid]) {
        if &s <= target {
            count += right.get(&(target - &s)).copied().unwrap_or(0);
        }
    }
    count
}

pub fn brute_ksum(inst: &KSumInstance) -> Result<SolveResult> {
    let started = Instant::now();
    let space: u128 = inst.groups.iter().map(|g| g.len() as u128).product();
    check_cap(space, "tuples")?;
    if space == 0 {
        return Ok(SolveResult::no(0, started));
    }
    let mut picks = vec![0usize; inst.k()];
    let mut visited = 0u64;
    loop {
        visited += 1;
        let sum: BigUint = picks.iter().zip(&inst.groups).map(|(&p, g)| &g[p]).sum();
        if sum == inst.target {
            return Ok(SolveResult::yes(SolutionCertificate::Tuple { picks }, visited, started));
        }
        // odometer, last group fastest
        let mut pos = inst.k();
        loop {
            if pos == 0 {
                return Ok(SolveResult::no(visited, started));
            }
            pos -= 1;
            picks[pos] += 1;
            if picks[pos] < inst.groups[pos].len() {
                break;
            }
            picks[pos] = 0;
        }
    }
}

/// Satisfying assignments of a CSP: how many, and the first in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatCount {
    pub count: u64,
    pub first: Option<Vec<u64>>,
}

pub fn brute_csp_sat(psi: &CspInstance) -> Result<SatCount> {
    let size = psi.universe_size() as u128;
    let space = size.checked_pow(psi.num_vars as u32).unwrap_or(u128::MAX);
    check_cap(space, "assignments")?;
    let mut values = vec![1u64; psi.num_vars];
    let mut result = SatCount { count: 0, first: None };
    for _ in 0..space {
        if psi.is_satisfied_by(&values) {
            result.count += 1;
            result.first.get_or_insert_with(|| values.clone());
        }
        for v in values.iter_mut().rev() {
            if (*v as u128) < size {
                *v += 1;
                break;
            }
            *v = 1;
        }
    }
    Ok(result)
}

/// Satisfying assignments of a CNF, encoded as 0/1 values.
pub fn brute_cnf_sat(phi: &CnfFormula) -> Result<SatCount> {
    check_cap(pow2(phi.num_vars), "assignments")?;
    let mut result = SatCount { count: 0, first: None };
    for mask in 0u64..1 << phi.num_vars {
        let bools: Vec<bool> = (0..phi.num_vars).map(|i| mask >> i & 1 == 1).collect();
        if phi.is_satisfied_by(&bools) {
            result.count += 1;
            result.first.get_or_insert_with(|| bools.iter().map(|&b| u64::from(b)).collect());
        }
    }
    Ok(result)
}

/// A simple s,t-path with its weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathRecord {
    pub edges: Vec<usize>,
    pub length: u128,
    pub cost: u128,
}

/// Every simple s,t-path, in depth-first order over edge indices.
pub fn enumerate_st_paths(g: &BicriteriaInstance) -> Result<Vec<PathRecord>> {
    fn dfs(
        g: &BicriteriaInstance,
        adj: &[Vec<usize>],
        v: usize,
        on_path: &mut [bool],
        stack: &mut Vec<usize>,
        weight: (u128, u128),
        out: &mut Vec<PathRecord>,
    ) -> Result<()> {
        if v == g.t {
            if out.len() as u64 >= PATH_CAP {
                return Err(Error::CapExceeded(format!("more than {PATH_CAP} paths")));
            }
            out.push(PathRecord { edges: stack.clone(), length: weight.0, cost: weight.1 });
            return Ok(());
        }
        for &ei in &adj[v] {
            let e = &g.edges[ei];
            if on_path[e.head] {
                continue;
            }
            on_path[e.head] = true;
            stack.push(ei);
            dfs(g, adj, e.head, on_path, stack, (weight.0 + e.length as u128, weight.1 + e.cost as u128), out)?;
            stack.pop();
            on_path[e.head] = false;
        }
        Ok(())
    }
    let adj = g.out_edges();
    let mut on_path = vec![false; g.n];
    on_path[g.s] = true;
    let mut out = Vec::new();
    dfs(g, &adj, g.s, &mut on_path, &mut Vec::new(), (0, 0), &mut out)?;
    Ok(out)
}

fn first_feasible(g: &BicriteriaInstance, internal: Option<usize>) -> Result<SolveResult> {
    let started = Instant::now();
    let paths = enumerate_st_paths(g)?;
    let states = paths.len() as u64;
    let hit = paths.into_iter().find(|p| {
        p.length <= g.budget_length as u128
            && p.cost <= g.budget_cost as u128
            && internal.is_none_or(|k| p.edges.len() == k + 1)
    });
    Ok(match hit {
        Some(p) => SolveResult::yes(SolutionCertificate::Path { edges: p.edges }, states, started),
        None => SolveResult::no(states, started),
    })
}

/// Any simple s,t-path within both budgets.
pub fn brute_bicriteria(g: &BicriteriaInstance) -> Result<SolveResult> {
    first_feasible(g, None)
}

/// A feasible simple s,t-path with exactly `k` internal vertices.
pub fn brute_bicriteria_k(g: &BicriteriaInstance, k: usize) -> Result<SolveResult> {
    first_feasible(g, Some(k))
}

/// Depth-first search over all layered paths; `hit` tests the weight sum.
fn layered_paths<W: Copy + Ord, A: Copy>(
    g: &LayeredGraph<W>,
    zero: A,
    add: impl Fn(A, W) -> A,
    hit: impl Fn(A) -> bool,
) -> Result<(Option<(Vec<usize>, Vec<usize>)>, u64)> {
    let k = g.num_layers;
    let adj = g.out_edges();
    let mut visited = 0u64;
    let mut stack: Vec<(usize, A, Vec<usize>, Vec<usize>)> =
        g.layer(0).into_iter().rev().map(|v| (v, zero, vec![v], vec![])).collect();
    while let Some((v, w, vertices, edges)) = stack.pop() {
        visited += 1;
        if visited > PATH_CAP * 10 {
            return Err(Error::CapExceeded("layered path search".into()));
        }
        if vertices.len() == k {
            if hit(w) {
                return Ok((Some((vertices, edges)), visited));
            }
            continue;
        }
        for &ei in adj[v].iter().rev() {
            let e = &g.edges[ei];
            let mut vs = vertices.clone();
            vs.push(e.to);
            let mut es = edges.clone();
            es.push(ei);
            stack.push((e.to, add(w, e.weight), vs, es));
        }
    }
    Ok((None, visited))
}

pub fn brute_exact_kpath(inst: &ExactKPathInstance) -> Result<SolveResult> {
    let started = Instant::now();
    let (found, visited) = layered_paths(&inst.graph, 0u128, |a, w| a + w as u128, |w| w == inst.target as u128)?;
    Ok(match found {
        Some((vertices, edges)) => {
            SolveResult::yes(SolutionCertificate::LayeredPath { vertices, edges }, visited, started)
        }
        None => SolveResult::no(visited, started),
    })
}

pub fn brute_exact_bicrit_kpath(inst: &ExactBicritKPathInstance) -> Result<SolveResult> {
    let started = Instant::now();
    let target = (inst.targets.0 as u128, inst.targets.1 as u128);
    let (found, visited) = layered_paths(
        &inst.graph,
        (0u128, 0u128),
        |a, w| (a.0 + w.0 as u128, a.1 + w.1 as u128),
        |w| w == target,
    )?;
    Ok(match found {
        Some((vertices, edges)) => {
            SolveResult::yes(SolutionCertificate::LayeredPath { vertices, edges }, visited, started)
        }
        None => SolveResult::no(visited, started),
    })
}
