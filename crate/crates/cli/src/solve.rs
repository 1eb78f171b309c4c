use anyhow::{bail, Result};
use ssbp_core::instances::format::to_canonical_json;
use ssbp_core::instances::{AnyInstance, SolutionCertificate};
use ssbp_core::solvers::brute::{
    brute_bicriteria, brute_bicriteria_k, brute_cnf_sat, brute_csp_sat, brute_exact_bicrit_kpath, brute_exact_kpath,
    brute_ksum, brute_subset_sum, SatCount,
};
use ssbp_core::solvers::{
    solve_bicriteria_distinct_dp, solve_bicriteria_joksch, solve_bicriteria_kpath, solve_exact_bicrit_kpath_mim,
    solve_exact_kpath_mim, solve_ksum, solve_subset_sum_dp, solve_subset_sum_mim, Answer, JokschAxis, SolveResult,
    SolveStats,
};

use crate::args::{Algo, Global, SolveArgs};
use crate::manifest::Run;
use crate::reduce::{parse_input, strategy};

fn from_count(c: SatCount, states: u64) -> SolveResult {
    match c.first {
        Some(values) => SolveResult {
            answer: Answer::Yes,
            certificate: Some(SolutionCertificate::Assignment { values }),
            stats: SolveStats { states, nanos: 0 },
        },
        None => SolveResult { answer: Answer::No, certificate: None, stats: SolveStats { states, nanos: 0 } },
    }
}

pub fn solve(inst: &AnyInstance, args: &SolveArgs, global: &Global) -> Result<SolveResult> {
    let caps = &global.caps;
    let unsupported = || anyhow::anyhow!("--algo {:?} does not apply to a {} instance", args.algo, inst.kind());
    if args.k.is_some() && !matches!(inst, AnyInstance::Bicriteria(_)) {
        bail!("-k applies to bicriteria instances only");
    }
    let r = match (inst, args.algo) {
        (AnyInstance::SubsetSum(s), Algo::Auto | Algo::Dp) => solve_subset_sum_dp(s, caps.cap_dp)?,
        (AnyInstance::SubsetSum(s), Algo::Mim) => solve_subset_sum_mim(s, caps.cap_mim)?,
        (AnyInstance::SubsetSum(s), Algo::Brute) => brute_subset_sum(s)?,
        (AnyInstance::KSum(s), Algo::Auto | Algo::Mim) => solve_ksum(s)?,
        (AnyInstance::KSum(s), Algo::Brute) => brute_ksum(s)?,
        (AnyInstance::Bicriteria(g), algo) => match (args.k, algo) {
            (Some(k), Algo::Auto | Algo::ColorCoding) => {
                solve_bicriteria_kpath(g, k, strategy(args.coloring, args.trials, global))?
            }
            (Some(k), Algo::Brute) => brute_bicriteria_k(g, k)?,
            (None, Algo::Auto | Algo::Joksch) => solve_bicriteria_joksch(g, JokschAxis::Auto, caps.cap_joksch)?,
            (None, Algo::DistinctDp) => solve_bicriteria_distinct_dp(g, caps.cap_distinct)?,
            (None, Algo::Brute) => brute_bicriteria(g)?,
            (None, Algo::ColorCoding) => bail!("color coding needs -k"),
            _ => return Err(unsupported()),
        },
        (AnyInstance::ExactKPath(e), Algo::Auto | Algo::Mim) => solve_exact_kpath_mim(e)?,
        (AnyInstance::ExactKPath(e), Algo::Brute) => brute_exact_kpath(e)?,
        (AnyInstance::ExactBicritKPath(e), Algo::Auto | Algo::Mim) => solve_exact_bicrit_kpath_mim(e)?,
        (AnyInstance::ExactBicritKPath(e), Algo::Brute) => brute_exact_bicrit_kpath(e)?,
        (AnyInstance::Csp(psi), Algo::Auto | Algo::Brute) => {
            let space = psi.universe_size().saturating_pow(psi.num_vars as u32);
            from_count(brute_csp_sat(psi)?, space)
        }
        (AnyInstance::Cnf(phi), Algo::Auto | Algo::Brute) => from_count(brute_cnf_sat(phi)?, 1 << phi.num_vars),
        (AnyInstance::Bundle(_), _) => bail!("solve the members one by one, or reduce the bundle with or2path"),
        _ => return Err(unsupported()),
    };
    Ok(r)
}

/// Returns whether the answer is YES.
pub fn run(args: &SolveArgs, global: &Global, run: &mut Run) -> Result<bool> {
    let inst = parse_input(run, &args.input)?;
    let r = solve(&inst, args, global)?;
    run.write(args.out.out.as_deref(), &(to_canonical_json(&r) + "\n"), false)?;
    Ok(r.is_yes())
}
