use anyhow::{bail, Result};
use ssbp_core::avgfree::build_behrend_set;
use ssbp_core::generate::{
    worked_example_csp, random_bicriteria, random_cnf, random_csp, random_dag, random_exact_kpath, random_ksum,
    random_subset_sum, seeded,
};
use ssbp_core::instances::format::{bundle_to_jsonl, to_canonical_json};
use ssbp_core::instances::{write_dimacs, OrBundle};
use ssbp_core::numeric::{csp_to_subset_sum, group_to_csp, LayoutMode};

use crate::args::{GenKind, Global};
use crate::manifest::{sidecar, Run};

pub fn run(kind: &GenKind, global: &Global, run: &mut Run) -> Result<()> {
    let mut rng = seeded(global.seed);
    match kind {
        GenKind::Cnf { vars, clauses, width, out } => {
            if *width == 0 || width > vars {
                bail!("clause width must lie in [1, {vars}]");
            }
            let phi = random_cnf(&mut rng, *vars, *clauses, *width);
            run.write(out.out.as_deref(), &write_dimacs(&phi), true)
        }
        GenKind::Csp { vars, universe_bits, constraints, tuples, paper_example, out } => {
            let psi = if *paper_example {
                worked_example_csp()
            } else {
                if *vars == 0 || *universe_bits == 0 || *universe_bits > 16 {
                    bail!("need at least one variable and universe bits in [1, 16]");
                }
                random_csp(&mut rng, *vars, *universe_bits, *constraints, *tuples)
            };
            run.write(out.out.as_deref(), &(to_canonical_json(&psi) + "\n"), true)
        }
        GenKind::SubsetSum { n, max, max_target, from_cnf, vars, clauses, width, group_bits, eps, out } => {
            if !*from_cnf {
                let cap = max_target.unwrap_or(max.saturating_mul(*n as u64) / 2);
                let inst = random_subset_sum(&mut rng, *n, *max, cap);
                return run.write(out.out.as_deref(), &(to_canonical_json(&inst) + "\n"), true);
            }
            if *width == 0 || width > vars {
                bail!("clause width must lie in [1, {vars}]");
            }
            let phi = random_cnf(&mut rng, *vars, *clauses, *width);
            let psi = group_to_csp(&phi, *group_bits, global.caps.cap_tuples)?;
            let set = build_behrend_set(psi.degree_bound.max(2), *eps, psi.universe_size() as usize)?;
            let (inst, map) = csp_to_subset_sum(&psi, &set, LayoutMode::Minimal)?;
            run.write(out.out.as_deref(), &(inst.to_json_with_bits() + "\n"), true)?;
            if let Some(path) = &out.out {
                run.write(Some(&sidecar(path, "cnf")), &write_dimacs(&phi), true)?;
                run.write(Some(&sidecar(path, "witness.json")), &(to_canonical_json(&map) + "\n"), true)?;
            }
            Ok(())
        }
        GenKind::Ksum { k, size, max, out } => {
            if *k == 0 || *size == 0 {
                bail!("need k >= 1 and non-empty groups");
            }
            let inst = random_ksum(&mut rng, *k, *size, *max);
            run.write(out.out.as_deref(), &(to_canonical_json(&inst) + "\n"), true)
        }
        GenKind::Bundle { members, n, max, out } => {
            if *members == 0 {
                bail!("a bundle needs at least one member");
            }
            let instances = (0..*members)
                .map(|_| random_subset_sum(&mut rng, *n, *max, max.saturating_mul(*n as u64) / 2))
                .collect();
            run.write(out.out.as_deref(), &bundle_to_jsonl(&OrBundle { instances }), true)
        }
        GenKind::Bicriteria { n, edge_prob, max_weight, budget_length, budget_cost, dag, out } => {
            if *n < 2 || !(0.0..=1.0).contains(edge_prob) {
                bail!("need n >= 2 and an edge probability in [0, 1]");
            }
            let budgets = (*budget_length, *budget_cost);
            let g = if *dag {
                random_dag(&mut rng, *n, *edge_prob, *max_weight, budgets)
            } else {
                random_bicriteria(&mut rng, *n, *edge_prob, *max_weight, budgets)
            };
            run.write(out.out.as_deref(), &(to_canonical_json(&g) + "\n"), true)
        }
        GenKind::ExactKpath { k, layer_width, edge_prob, w, out } => {
            if *k == 0 || *layer_width == 0 || !(0.0..=1.0).contains(edge_prob) {
                bail!("need k >= 1, a positive layer width and an edge probability in [0, 1]");
            }
            let inst = random_exact_kpath(&mut rng, *k, *layer_width, *edge_prob, *w);
            run.write(out.out.as_deref(), &(to_canonical_json(&inst) + "\n"), true)
        }
        GenKind::Avgfree { k, n, eps, out } => {
            let set = build_behrend_set(*k, *eps, *n)?;
            run.write(out.out.as_deref(), &(to_canonical_json(&set) + "\n"), true)
        }
    }
}
