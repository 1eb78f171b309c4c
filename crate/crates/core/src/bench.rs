//! Timing grids for the pseudo-polynomial solvers, emitted as CSV rows.

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::generate::{random_dag, random_subset_sum, seeded};
use crate::solvers::{solve_bicriteria_joksch, solve_subset_sum_dp, solve_subset_sum_mim, JokschAxis, SolveResult};

/// Rows that can be written as one CSV line each.
pub trait CsvRow {
    fn header() -> &'static str;
    fn line(&self) -> String;
}

pub fn to_csv<R: CsvRow>(rows: &[R]) -> String {
    let mut out = String::from(R::header());
    out.push('\n');
    for r in rows {
        out.push_str(&r.line());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JokschRow {
    pub budget: u64,
    pub vertices: usize,
    pub edges: usize,
    pub answer: String,
    pub states: u64,
    /// Median over the repetitions.
    pub nanos: u64,
}

impl CsvRow for JokschRow {
    fn header() -> &'static str {
        "budget,vertices,edges,answer,states,nanos"
    }

    fn line(&self) -> String {
        format!("{},{},{},{},{},{}", self.budget, self.vertices, self.edges, self.answer, self.states, self.nanos)
    }
}

fn answer(r: &SolveResult) -> String {
    if r.is_yes() { "yes" } else { "no" }.to_string()
}

fn median(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

/// Joksch on one fixed DAG whose weights are rescaled with each length
/// budget, so only `L` changes along the grid. The cost budget is set below
/// every path so the whole table is always filled.
pub fn joksch_grid(budgets: &[u64], vertices: usize, edge_prob: f64, reps: usize, seed: u64) -> Result<Vec<JokschRow>> {
    let base = random_dag(&mut seeded(seed), vertices, edge_prob, 1 << 20, (0, 0));
    let reps = reps.max(1);
    budgets
        .iter()
        .map(|&budget| {
            let mut g = base.clone();
            for e in g.edges.iter_mut() {
                e.length = ((e.length as u128 * budget as u128) >> 20) as u64 / 4;
                e.cost = 1;
            }
            g.budget_length = budget;
            g.budget_cost = 0;
            let mut times = Vec::with_capacity(reps);
            let mut last = None;
            for _ in 0..reps {
                let r = solve_bicriteria_joksch(&g, JokschAxis::Length, u64::MAX)?;
                times.push(r.stats.nanos);
                last = Some(r);
            }
            let r = last.expect("at least one repetition");
            Ok(JokschRow {
                budget,
                vertices: g.n,
                edges: g.edges.len(),
                answer: answer(&r),
                states: r.stats.states,
                nanos: median(times),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossoverRow {
    pub items: usize,
    pub target: u64,
    pub answer: String,
    pub dp_states: u64,
    pub dp_nanos: u64,
    pub mim_states: u64,
    pub mim_nanos: u64,
}

impl CsvRow for CrossoverRow {
    fn header() -> &'static str {
        "items,target,answer,dp_states,dp_nanos,mim_states,mim_nanos"
    }

    fn line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.items, self.target, self.answer, self.dp_states, self.dp_nanos, self.mim_states, self.mim_nanos
        )
    }
}

/// Subset Sum DP against meet in the middle on the same random instances,
/// one row per item count. Item values grow with `max_item`, which moves the
/// crossover.
pub fn dp_vs_mim(item_counts: &[usize], max_item: u64, seed: u64) -> Result<Vec<CrossoverRow>> {
    let mut rng = seeded(seed);
    item_counts
        .iter()
        .map(|&n| {
            let max_target = max_item.saturating_mul(n as u64) / 2;
            let cap = rng.gen_range(0..=max_target);
            let inst = random_subset_sum(&mut rng, n, max_item, cap);
            let target = crate::instances::to_u64(&inst.target)?;
            let dp = solve_subset_sum_dp(&inst, u64::MAX)?;
            let mim = solve_subset_sum_mim(&inst, usize::MAX)?;
            debug_assert_eq!(dp.answer, mim.answer);
            Ok(CrossoverRow {
                items: n,
                target,
                answer: answer(&dp),
                dp_states: dp.stats.states,
                dp_nanos: dp.stats.nanos,
                mim_states: mim.stats.states,
                mim_nanos: mim.stats.nanos,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn joksch_grid_rows() {
        let budgets: Vec<u64> = (10..15).map(|i| 1 << i).collect();
        let rows = joksch_grid(&budgets, 20, 0.3, 1, 1).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.answer == "no" && r.states == (r.budget + 1) * 20));
        let csv = to_csv(&rows);
        assert_eq!(csv.lines().count(), 6);
        assert!(csv.starts_with("budget,"));
    }

    #[test]
    fn crossover_rows() {
        let rows = dp_vs_mim(&[4, 8, 12], 1000, 2).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.dp_states > 0 && r.mim_states > 0));
        let a = dp_vs_mim(&[4, 8, 12], 1000, 2).unwrap();
        let strip = |rs: &[CrossoverRow]| rs.iter().map(|r| (r.items, r.target, r.answer.clone())).collect::<Vec<_>>();
        assert_eq!(strip(&rows), strip(&a));
    }
}
