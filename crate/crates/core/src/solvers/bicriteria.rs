use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::time::Instant;

use super::SolveResult;
use crate::error::{Error, Result};
use crate::instances::{BicriteriaInstance, Edge, Instance, SolutionCertificate};

/// Largest budget used as a table axis by default.
pub const DEFAULT_JOKSCH_CAP: u64 = 1 << 24;
/// Largest number of distinct edge lengths the count-vector DP accepts by default.
pub const DEFAULT_DISTINCT_CAP: usize = 3;
const MAX_TABLE_CELLS: u128 = 1 << 28;
const UNSET: u64 = u64::MAX;

/// Which budget indexes the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JokschAxis {
    Length,
    Cost,
    /// The smaller of the two budgets.
    Auto,
}

fn ensure_valid(g: &BicriteriaInstance) -> Result<()> {
    match g.validate().first() {
        Some(v) => Err(Error::InvalidInstance(v.to_string())),
        None => Ok(()),
    }
}

/// Pseudo-polynomial DP over `(exact length used, vertex)`.
///
/// `best[l][v]` is the least cost of an s,v-walk of total length exactly `l`.
/// Levels are filled in increasing `l`; within a level, zero-length edges are
/// relaxed with Dijkstra on cost. A feasible walk is shortcut to a path,
/// which only lowers both sums.
pub fn solve_bicriteria_joksch(g: &BicriteriaInstance, axis: JokschAxis, cap: u64) -> Result<SolveResult> {
    let started = Instant::now();
    ensure_valid(g)?;
    let use_cost = match axis {
        JokschAxis::Length => false,
        JokschAxis::Cost => true,
        JokschAxis::Auto => g.budget_cost < g.budget_length,
    };
    let (budget, other_budget) =
        if use_cost { (g.budget_cost, g.budget_length) } else { (g.budget_length, g.budget_cost) };
    if budget > cap {
        return Err(Error::CapExceeded(format!("budget {budget} above the table cap {cap}")));
    }
    let n = g.n;
    let levels = budget as usize + 1;
    if levels as u128 * n as u128 > MAX_TABLE_CELLS {
        return Err(Error::CapExceeded(format!("{levels} x {n} table")));
    }
    let axis_w = |e: &Edge| if use_cost { e.cost } else { e.length };
    let other_w = |e: &Edge| if use_cost { e.length } else { e.cost };

    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut zero_out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in g.edges.iter().enumerate() {
        incoming[e.head].push(i);
        if axis_w(e) == 0 {
            zero_out[e.tail].push(i);
        }
    }

    let mut best = vec![UNSET; levels * n];
    let mut pred = vec![u32::MAX; levels * n];
    best[g.s] = 0;
    let mut heap = BinaryHeap::new();
    for l in 0..levels {
        let row = l * n;
        for v in 0..n {
            for &ei in &incoming[v] {
                let e = &g.edges[ei];
                let w = axis_w(e) as usize;
                if w == 0 || w > l {
                    continue;
                }
                let from = best[(l - w) * n + e.tail];
                if from == UNSET {
                    continue;
                }
                let cand = from.saturating_add(other_w(e));
                if cand < best[row + v] {
                    best[row + v] = cand;
                    pred[row + v] = ei as u32;
                }
            }
        }
        heap.extend((0..n).filter(|&v| best[row + v] != UNSET).map(|v| Reverse((best[row + v], v))));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d != best[row + u] {
                continue;
            }
            for &ei in &zero_out[u] {
                let e = &g.edges[ei];
                let cand = d.saturating_add(other_w(e));
                if cand < best[row + e.head] {
                    best[row + e.head] = cand;
                    pred[row + e.head] = ei as u32;
                    heap.push(Reverse((cand, e.head)));
                }
            }
        }
    }
    let states = (levels * n) as u64;

    let Some(level) = (0..levels).find(|&l| best[l * n + g.t] <= other_budget) else {
        return Ok(SolveResult::no(states, started));
    };
    let mut walk = Vec::new();
    let (mut l, mut v) = (level, g.t);
    while !(v == g.s && l == 0) {
        let ei = pred[l * n + v] as usize;
        walk.push(ei);
        l -= axis_w(&g.edges[ei]) as usize;
        v = g.edges[ei].tail;
    }
    walk.reverse();
    let path = shortcut(g, &walk);
    Ok(SolveResult::yes(SolutionCertificate::Path { edges: path }, states, started))
}

/// Removes cycles from an s,t-walk given as edge indices.
fn shortcut(g: &BicriteriaInstance, walk: &[usize]) -> Vec<usize> {
    let mut path: Vec<usize> = Vec::new();
    let mut position = vec![usize::MAX; g.n];
    position[g.s] = 0;
    for &ei in walk {
        let head = g.edges[ei].head;
        if position[head] != usize::MAX {
            for removed in path.drain(position[head]..) {
                position[g.edges[removed].head] = usize::MAX;
            }
        } else {
            path.push(ei);
            position[head] = path.len();
        }
    }
    path
}

/// Label DP indexed by how many edges of each distinct length a path uses.
///
/// With distinct lengths `l_1 < ... < l_lambda`, the table keeps for every
/// vertex `v` and count vector `(i_1, ..., i_lambda)` the least cost of an
/// s,v-path using exactly `i_j` edges of length `l_j`. Vectors whose total
/// length exceeds the budget are pruned. Zero-length edges leave the vector
/// unchanged, so a zero length counts towards the cap but not the table.
/// Requires an acyclic graph.
pub fn solve_bicriteria_distinct_dp(g: &BicriteriaInstance, lambda_cap: usize) -> Result<SolveResult> {
    let started = Instant::now();
    ensure_valid(g)?;
    let mut lengths: Vec<u64> = g.edges.iter().map(|e| e.length).collect();
    lengths.sort_unstable();
    lengths.dedup();
    if lengths.len() > lambda_cap {
        return Err(Error::CapExceeded(format!(
            "{} distinct lengths exceed the cap {lambda_cap}",
            lengths.len()
        )));
    }
    lengths.retain(|&l| l > 0);
    let order = g.topological_order().ok_or(Error::Cyclic)?;
    let adj = g.out_edges();
    let slot = |len: u64| (len > 0).then(|| lengths.binary_search(&len).expect("collected"));

    type Label = (u64, Option<(usize, Vec<u32>)>);
    let mut table: Vec<BTreeMap<Vec<u32>, Label>> = vec![BTreeMap::new(); g.n];
    table[g.s].insert(vec![0; lengths.len()], (0, None));
    let mut states = 0u64;
    for &u in &order {
        let labels: Vec<(Vec<u32>, u64)> = table[u].iter().map(|(k, v)| (k.clone(), v.0)).collect();
        states += labels.len() as u64;
        for &ei in &adj[u] {
            let e = &g.edges[ei];
            for (counts, cost) in &labels {
                let mut next = counts.clone();
                if let Some(i) = slot(e.length) {
                    next[i] += 1;
                }
                let total: u128 = next.iter().zip(&lengths).map(|(&c, &l)| c as u128 * l as u128).sum();
                if total > g.budget_length as u128 {
                    continue;
                }
                let cand = cost.saturating_add(e.cost);
                let entry = table[e.head].entry(next).or_insert((UNSET, None));
                if cand < entry.0 {
                    *entry = (cand, Some((ei, counts.clone())));
                }
            }
        }
    }

    let Some((counts, _)) = table[g.t].iter().find(|(_, label)| label.0 <= g.budget_cost) else {
        return Ok(SolveResult::no(states, started));
    };
    let mut path = Vec::new();
    let (mut v, mut counts) = (g.t, counts.clone());
    while let Some((ei, prev)) = table[v][&counts].1.clone() {
        path.push(ei);
        v = g.edges[ei].tail;
        counts = prev;
    }
    path.reverse();
    Ok(SolveResult::yes(SolutionCertificate::Path { edges: path }, states, started))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond(l: u64, c: u64) -> BicriteriaInstance {
        BicriteriaInstance::new(
            4,
            vec![Edge::new(0, 1, 1, 5), Edge::new(1, 3, 0, 0), Edge::new(0, 2, 5, 1), Edge::new(2, 3, 0, 0)],
            0,
            3,
            l,
            c,
        )
    }

    #[test]
    fn single_edge() {
        let g = BicriteriaInstance::new(2, vec![Edge::new(0, 1, 2, 3)], 0, 1, 2, 3);
        assert!(solve_bicriteria_joksch(&g, JokschAxis::Length, DEFAULT_JOKSCH_CAP).unwrap().is_yes());
        let tight = BicriteriaInstance { budget_length: 1, ..g };
        assert!(!solve_bicriteria_joksch(&tight, JokschAxis::Length, DEFAULT_JOKSCH_CAP).unwrap().is_yes());
    }

    #[test]
    fn diamond_budgets() {
        for axis in [JokschAxis::Length, JokschAxis::Cost, JokschAxis::Auto] {
            assert!(!solve_bicriteria_joksch(&diamond(3, 3), axis, DEFAULT_JOKSCH_CAP).unwrap().is_yes());
            let r = solve_bicriteria_joksch(&diamond(5, 5), axis, DEFAULT_JOKSCH_CAP).unwrap();
            assert!(diamond(5, 5).check_certificate(r.certificate.as_ref().unwrap()).unwrap());
        }
        assert!(!solve_bicriteria_distinct_dp(&diamond(3, 3), 3).unwrap().is_yes());
        assert!(solve_bicriteria_distinct_dp(&diamond(5, 5), 3).unwrap().is_yes());
    }

    #[test]
    fn state_count_is_table_size() {
        let r = solve_bicriteria_joksch(&diamond(5, 5), JokschAxis::Length, DEFAULT_JOKSCH_CAP).unwrap();
        assert_eq!(r.stats.states, 6 * 4);
    }

    #[test]
    fn walks_are_shortcut() {
        // 0 -> 1 -> 2 -> 1 would be a walk; zero-cost cycle through 2
        let g = BicriteriaInstance::new(
            4,
            vec![Edge::new(0, 1, 0, 0), Edge::new(1, 2, 0, 0), Edge::new(2, 1, 0, 0), Edge::new(1, 3, 1, 1)],
            0,
            3,
            1,
            1,
        );
        let r = solve_bicriteria_joksch(&g, JokschAxis::Length, DEFAULT_JOKSCH_CAP).unwrap();
        assert!(g.check_certificate(r.certificate.as_ref().unwrap()).unwrap());
        assert!(matches!(solve_bicriteria_distinct_dp(&g, 3), Err(Error::Cyclic)));
    }

    #[test]
    fn empty_graph_is_no() {
        let g = BicriteriaInstance::new(2, vec![], 0, 1, 10, 10);
        assert!(!solve_bicriteria_distinct_dp(&g, 3).unwrap().is_yes());
        assert!(!solve_bicriteria_joksch(&g, JokschAxis::Auto, DEFAULT_JOKSCH_CAP).unwrap().is_yes());
    }

    #[test]
    fn too_many_lengths() {
        let g = BicriteriaInstance::new(
            3,
            vec![Edge::new(0, 1, 1, 0), Edge::new(1, 2, 2, 0), Edge::new(0, 2, 3, 0)],
            0,
            2,
            10,
            10,
        );
        assert!(solve_bicriteria_distinct_dp(&g, 2).is_err());
        assert!(solve_bicriteria_distinct_dp(&g, 3).unwrap().is_yes());
    }
}
