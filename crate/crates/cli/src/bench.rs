use anyhow::Result;
use ssbp_core::bench::{dp_vs_mim, joksch_grid, to_csv};

use crate::args::{BenchSuite, Global};
use crate::manifest::Run;

pub fn run(suite: &BenchSuite, global: &Global, run: &mut Run) -> Result<()> {
    match suite {
        BenchSuite::Joksch { budgets, vertices, edge_prob, reps, out } => {
            let rows = joksch_grid(budgets, *vertices, *edge_prob, *reps, global.seed)?;
            run.write(out.out.as_deref(), &to_csv(&rows), false)
        }
        BenchSuite::DpVsMim { items, max_item, out } => {
            let rows = dp_vs_mim(items, *max_item, global.seed)?;
            run.write(out.out.as_deref(), &to_csv(&rows), false)
        }
    }
}
