use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use ssbp_core::avgfree::{build_behrend_set, AvgFreeSet};
use ssbp_core::graph::{digit_expand, exactpath_to_bicriteria, ksum_to_multigraph, or_to_bicriteria};
use ssbp_core::instances::format::{parse_any, to_canonical_json};
use ssbp_core::instances::{AnyInstance, Instance, OrBundle};
use ssbp_core::numeric::{csp_to_subset_sum, group_to_csp, split_to_ksum, LayoutMode};
use ssbp_core::threshold::{bicriteria_to_exact_instances, ColorStrategy};

use crate::args::{Coloring, Format, Global, Layout, ReduceArgs, Step};
use crate::manifest::{sidecar, Run};

pub fn parse_input(run: &mut Run, path: &Path) -> Result<AnyInstance> {
    let text = run.read(path)?;
    parse_any(&text).with_context(|| format!("parsing {}", path.display()))
}

fn mismatch(step: Step, got: &AnyInstance) -> anyhow::Error {
    anyhow!("step {step:?} does not accept a {} instance", got.kind())
}

fn checked<T: Instance + Serialize>(inst: &T) -> Result<String> {
    if let Some(v) = inst.validate().first() {
        bail!("reduction produced an invalid instance: {v}");
    }
    Ok(to_canonical_json(inst) + "\n")
}

pub fn strategy(coloring: Coloring, trials: usize, global: &Global) -> ColorStrategy {
    match coloring {
        Coloring::Exhaustive => ColorStrategy::Exhaustive { cap: global.caps.cap_colorings },
        Coloring::Randomized => ColorStrategy::Randomized { trials, seed: global.seed },
    }
}

/// Writes several documents: one per line into `out`, or one per file into
/// the directory `out`.
fn write_many(run: &mut Run, out: &Path, docs: &[String], format: Format) -> Result<()> {
    match format {
        Format::Jsonl => run.write(Some(out), &docs.concat(), true),
        Format::Json => {
            fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
            for (i, doc) in docs.iter().enumerate() {
                run.write(Some(&out.join(format!("{i:06}.json"))), doc, true)?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct Grouping {
    group_bits: u32,
    cnf_vars: usize,
}

#[derive(Serialize)]
struct Provenance {
    index: usize,
    coloring: usize,
    ordering: usize,
    entry: usize,
}

#[derive(Serialize)]
struct PipelineManifest {
    k: usize,
    strategy: ColorStrategy,
    colorings: u64,
    distinct_graphs: u64,
    instances: Vec<Provenance>,
}

pub fn run(args: &ReduceArgs, global: &Global, run: &mut Run) -> Result<()> {
    let input = parse_input(run, &args.input)?;
    let out = args.out.as_path();
    match (args.step, &input) {
        (Step::Sat2csp, AnyInstance::Cnf(phi)) => {
            let psi = group_to_csp(phi, args.group_bits, global.caps.cap_tuples)?;
            run.write(Some(out), &checked(&psi)?, true)?;
            let g = Grouping { group_bits: args.group_bits, cnf_vars: phi.num_vars };
            run.write(Some(&sidecar(out, "grouping.json")), &(to_canonical_json(&g) + "\n"), true)
        }
        (Step::Csp2ss, AnyInstance::Csp(psi)) => {
            let set = match (&args.avgfree, args.layout) {
                (Some(path), _) => {
                    let text = run.read(path)?;
                    serde_json::from_str::<AvgFreeSet>(&text).with_context(|| format!("parsing {}", path.display()))?
                }
                // f(1) = 1, f(2) = 2, as in the worked example
                (None, Layout::PaperExample) => AvgFreeSet::from_elements(2, vec![1, 2]),
                (None, Layout::Minimal) => {
                    build_behrend_set(psi.degree_bound.max(2), args.eps, psi.universe_size() as usize)?
                }
            };
            let mode = match args.layout {
                Layout::Minimal => LayoutMode::Minimal,
                Layout::PaperExample => LayoutMode::worked_example(),
            };
            let (inst, map) = csp_to_subset_sum(psi, &set, mode)?;
            checked(&inst)?;
            run.write(Some(out), &(inst.to_json_with_bits() + "\n"), true)?;
            run.write(Some(&sidecar(out, "witness.json")), &(to_canonical_json(&map) + "\n"), true)
        }
        (Step::Ss2ksum, AnyInstance::SubsetSum(inst)) => run.write(Some(out), &checked(&split_to_ksum(inst, args.k)?)?, true),
        (Step::Or2path, AnyInstance::Bundle(_) | AnyInstance::SubsetSum(_)) => {
            let bundle = match input {
                AnyInstance::Bundle(b) => b,
                AnyInstance::SubsetSum(s) => OrBundle { instances: vec![s] },
                _ => unreachable!(),
            };
            let m = match args.m {
                Some(m) => m,
                None => u64::try_from(&bundle.max_value()).map_err(|_| anyhow!("bundle values exceed 64 bits"))?,
            };
            let (g, trace) = or_to_bicriteria(&bundle, m)?;
            run.write(Some(out), &checked(&g)?, true)?;
            run.write(Some(&sidecar(out, "trace.json")), &(to_canonical_json(&trace) + "\n"), true)
        }
        (Step::Ksum2path, AnyInstance::KSum(inst)) => {
            let (g, trace) = ksum_to_multigraph(inst)?;
            run.write(Some(out), &checked(&g)?, true)?;
            run.write(Some(&sidecar(out, "trace.json")), &(to_canonical_json(&trace) + "\n"), true)
        }
        (Step::DigitExpand, AnyInstance::Bicriteria(g)) => run.write(Some(out), &checked(&digit_expand(g, args.tau)?)?, true),
        (Step::Exact2bicrit, AnyInstance::ExactKPath(inst)) => {
            let docs = exactpath_to_bicriteria(inst)?.iter().map(checked).collect::<Result<Vec<_>>>()?;
            write_many(run, out, &docs, global.format)
        }
        (Step::Bicrit2exact, AnyInstance::Bicriteria(g)) => {
            let strategy = strategy(args.coloring, args.trials, global);
            let mut jobs = bicriteria_to_exact_instances(g, args.k, strategy)?;
            let mut docs = Vec::new();
            let mut instances = Vec::new();
            for job in jobs.by_ref() {
                let job = job?;
                if docs.len() == global.caps.cap_outputs {
                    bail!("more than {} exact instances; raise --cap-outputs", global.caps.cap_outputs);
                }
                instances.push(Provenance {
                    index: docs.len(),
                    coloring: job.coloring,
                    ordering: job.ordering,
                    entry: job.entry,
                });
                docs.push(checked(&job.instance)?);
            }
            write_many(run, out, &docs, global.format)?;
            let manifest = PipelineManifest {
                k: args.k,
                strategy,
                colorings: jobs.stats.colorings,
                distinct_graphs: jobs.stats.distinct_graphs,
                instances,
            };
            run.write(Some(&sidecar(out, "provenance.json")), &(to_canonical_json(&manifest) + "\n"), true)
        }
        (step, other) => Err(mismatch(step, other)),
    }
}
