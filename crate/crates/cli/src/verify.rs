use anyhow::{bail, Context, Result};
use rand::Rng;
use serde::Serialize;
use ssbp_core::avgfree::{build_behrend_set, verify_average_free, AvgFreeSet};
use ssbp_core::generate::{random_bicriteria, random_cnf, random_csp, random_exact_kpath, random_subset_sum, seeded};
use ssbp_core::graph::{digit_expand, exactpath_to_bicriteria, ksum_to_multigraph, or_to_bicriteria};
use ssbp_core::instances::format::to_canonical_json;
use ssbp_core::instances::{Instance, KSumInstance, OrBundle};
use ssbp_core::numeric::{csp_to_subset_sum, group_to_csp, split_to_ksum, LayoutMode};
use ssbp_core::solvers::brute::{
    brute_bicriteria, brute_bicriteria_k, brute_cnf_sat, brute_csp_sat, brute_exact_kpath, brute_ksum, brute_subset_sum,
    count_subset_sum,
};
use ssbp_core::solvers::{Answer, SolveResult};
use ssbp_core::threshold::{bicriteria_to_exact_instances, ColorStrategy};

use crate::args::{Global, Step, VerifyMode};
use crate::manifest::Run;
use crate::reduce::parse_input;

#[derive(Serialize)]
struct Report {
    mode: &'static str,
    status: &'static str,
    detail: serde_json::Value,
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Returns whether the check passed.
pub fn run(mode: &VerifyMode, global: &Global, run: &mut Run) -> Result<bool> {
    let (ok, report) = match mode {
        VerifyMode::Certificate { input, result } => {
            let inst = parse_input(run, input)?;
            let text = run.read(result)?;
            let r: SolveResult = serde_json::from_str(&text).with_context(|| format!("parsing {}", result.display()))?;
            let (ok, note) = match (&r.answer, &r.certificate) {
                (Answer::Yes, Some(cert)) => {
                    let ok = inst.check_certificate(cert)?;
                    (ok, if ok { "certificate holds" } else { "certificate does not solve the instance" })
                }
                (Answer::Yes, None) => (false, "YES without a certificate"),
                (Answer::No, _) => (true, "answer is NO; nothing to replay"),
            };
            (ok, Report { mode: "certificate", status: status(ok), detail: serde_json::json!({ "note": note }) })
        }
        VerifyMode::Avgfree { set, input, k } => {
            let (elements, file_k) = match input {
                Some(path) => {
                    let text = run.read(path)?;
                    let s: AvgFreeSet =
                        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
                    (s.elements, Some(s.k))
                }
                None => (set.clone(), None),
            };
            let Some(k) = k.or(file_k) else { bail!("pass -k for a set given on the command line") };
            let ok = verify_average_free(&elements, k);
            let detail = serde_json::json!({ "k": k, "size": elements.len() });
            (ok, Report { mode: "avgfree", status: status(ok), detail })
        }
        VerifyMode::Equivalence { step, trials, max_vars } => {
            let e = equivalence(*step, *trials, (*max_vars).max(1), global.seed, global)?;
            let ok = e.mismatches.is_empty();
            (ok, Report { mode: "equivalence", status: status(ok), detail: serde_json::to_value(&e)? })
        }
    };
    run.write(None, &(to_canonical_json(&report) + "\n"), true)?;
    Ok(ok)
}

#[derive(Debug, Serialize)]
pub struct Equivalence {
    pub step: Step,
    pub trials: usize,
    pub yes: usize,
    pub no: usize,
    /// Trial indices where the two sides disagree.
    pub mismatches: Vec<usize>,
}

/// k-SUM with every element at most the target, as the path gadget needs.
fn bounded_ksum(rng: &mut impl Rng, max_size: usize) -> KSumInstance {
    let k = rng.gen_range(2..=3);
    let target = rng.gen_range(0..=30u64);
    let groups: Vec<Vec<u64>> = (0..k)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            (0..size).map(|_| rng.gen_range(0..=target)).collect()
        })
        .collect();
    let refs: Vec<&[u64]> = groups.iter().map(Vec::as_slice).collect();
    KSumInstance::from_u64(&refs, target)
}

/// Answers on both sides of one reduction step for a random instance.
fn trial(step: Step, rng: &mut impl Rng, max_vars: usize, global: &Global) -> Result<(bool, bool)> {
    Ok(match step {
        Step::Sat2csp => {
            let vars = rng.gen_range(1..=max_vars);
            let width = rng.gen_range(1..=vars.min(3));
            let clauses = rng.gen_range(0..=2 * vars);
            let phi = random_cnf(rng, vars, clauses, width);
            let psi = group_to_csp(&phi, rng.gen_range(1..=3), global.caps.cap_tuples)?;
            (brute_cnf_sat(&phi)?.count > 0, brute_csp_sat(&psi)?.count > 0)
        }
        Step::Csp2ss => {
            let psi = random_csp(rng, max_vars, 2, 3, 6);
            let set = build_behrend_set(psi.degree_bound.max(2), 0.5, psi.universe_size() as usize)?;
            let (inst, _) = csp_to_subset_sum(&psi, &set, LayoutMode::Minimal)?;
            (brute_csp_sat(&psi)?.count > 0, count_subset_sum(&inst)? > 0)
        }
        Step::Ss2ksum => {
            let n = rng.gen_range(1..=10);
            let inst = random_subset_sum(rng, n, 50, 250);
            let ks = split_to_ksum(&inst, rng.gen_range(2..=4))?;
            (brute_subset_sum(&inst)?.is_yes(), brute_ksum(&ks)?.is_yes())
        }
        Step::Or2path => {
            let members = rng.gen_range(1..=3);
            let mut instances = Vec::new();
            for _ in 0..members {
                let n = rng.gen_range(0..=5);
                instances.push(random_subset_sum(rng, n, 20, 60));
            }
            let bundle = OrBundle { instances };
            let truth = bundle.instances.iter().map(brute_subset_sum).collect::<ssbp_core::Result<Vec<_>>>()?;
            let (g, _) = or_to_bicriteria(&bundle, 60)?;
            (truth.iter().any(SolveResult::is_yes), brute_bicriteria(&g)?.is_yes())
        }
        Step::Ksum2path => {
            let inst = bounded_ksum(rng, 4);
            let (g, _) = ksum_to_multigraph(&inst)?;
            (brute_ksum(&inst)?.is_yes(), brute_bicriteria(&g)?.is_yes())
        }
        Step::DigitExpand => {
            let inst = bounded_ksum(rng, 3);
            let (g, _) = ksum_to_multigraph(&inst)?;
            let h = digit_expand(&g, rng.gen_range(1..=3))?;
            (brute_bicriteria(&g)?.is_yes(), brute_bicriteria(&h)?.is_yes())
        }
        Step::Exact2bicrit => {
            let (k, w) = (rng.gen_range(1..=max_vars + 1), rng.gen_range(0..=12));
            let inst = random_exact_kpath(rng, k, 3, 0.6, w);
            let mut any = false;
            for g in exactpath_to_bicriteria(&inst)? {
                any |= brute_bicriteria(&g)?.is_yes();
            }
            (brute_exact_kpath(&inst)?.is_yes(), any)
        }
        Step::Bicrit2exact => {
            let k = rng.gen_range(1..=3usize);
            let span = 8 * (k as u64 + 1);
            let budgets = (rng.gen_range(span / 2..=span), rng.gen_range(span / 2..=span));
            let n = rng.gen_range(3..=max_vars + 4);
            let g = random_bicriteria(rng, n, 0.45, 8, budgets);
            let strategy = ColorStrategy::Exhaustive { cap: global.caps.cap_colorings };
            let mut any = false;
            for job in bicriteria_to_exact_instances(&g, k, strategy)? {
                if brute_exact_kpath(&job?.instance)?.is_yes() {
                    any = true;
                    break;
                }
            }
            (brute_bicriteria_k(&g, k)?.is_yes(), any)
        }
    })
}

pub fn equivalence(step: Step, trials: usize, max_vars: usize, seed: u64, global: &Global) -> Result<Equivalence> {
    let mut rng = seeded(seed);
    let mut e = Equivalence { step, trials, yes: 0, no: 0, mismatches: Vec::new() };
    for i in 0..trials {
        let (source, image) = trial(step, &mut rng, max_vars, global)?;
        if source {
            e.yes += 1;
        } else {
            e.no += 1;
        }
        if source != image {
            log::warn!("trial {i}: source says {source}, image says {image}");
            e.mismatches.push(i);
        }
    }
    Ok(e)
}
