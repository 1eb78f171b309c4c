use std::time::Instant;

use super::{solve_exact_kpath_mim, SolveResult};
use crate::error::Result;
use crate::instances::SolutionCertificate;
use crate::threshold::{bicriteria_to_exact_instances, ColorStrategy};
use crate::instances::BicriteriaInstance;

/// Decides whether `g` has a feasible s,t-path with exactly `k` internal
/// vertices by solving the generated exact instances until one is YES. The
/// certificate is the original path behind the matching absorbed path.
pub fn solve_bicriteria_kpath(g: &BicriteriaInstance, k: usize, strategy: ColorStrategy) -> Result<SolveResult> {
    let started = Instant::now();
    let mut jobs = bicriteria_to_exact_instances(g, k, strategy)?;
    let mut states = 0u64;
    for job in jobs.by_ref() {
        let job = job?;
        let r = solve_exact_kpath_mim(&job.instance)?;
        states += r.stats.states;
        if let Some(SolutionCertificate::LayeredPath { edges, .. }) = r.certificate {
            let path = SolutionCertificate::Path { edges: job.source.original_path(&edges) };
            log::debug!("k-path found in coloring {} entry {} after {:?}", job.coloring, job.entry, jobs.stats);
            return Ok(SolveResult::yes(path, states, started));
        }
    }
    log::debug!("no k-path: {:?}", jobs.stats);
    Ok(SolveResult::no(states, started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{Edge, Instance};
    use crate::solvers::brute::brute_bicriteria_k;

    #[test]
    fn chain_with_one_internal_vertex() {
        let g = BicriteriaInstance::new(3, vec![Edge::new(0, 1, 2, 1), Edge::new(1, 2, 1, 3)], 0, 2, 3, 4);
        let r = solve_bicriteria_kpath(&g, 1, ColorStrategy::default()).unwrap();
        assert_eq!(r.certificate, Some(SolutionCertificate::Path { edges: vec![0, 1] }));
        assert!(!solve_bicriteria_kpath(&g, 2, ColorStrategy::default()).unwrap().is_yes());
    }

    #[test]
    fn only_the_right_length_is_feasible() {
        // s=0 -> 1 -> t=3 is too long; s -> 1 -> 2 -> t is feasible
        let g = BicriteriaInstance::new(
            4,
            vec![Edge::new(0, 1, 1, 1), Edge::new(1, 3, 9, 1), Edge::new(1, 2, 1, 1), Edge::new(2, 3, 1, 1)],
            0,
            3,
            4,
            4,
        );
        for k in 1..=2 {
            let r = solve_bicriteria_kpath(&g, k, ColorStrategy::default()).unwrap();
            assert_eq!(r.is_yes(), brute_bicriteria_k(&g, k).unwrap().is_yes());
            if let Some(cert) = &r.certificate {
                assert!(g.check_certificate(cert).unwrap());
            }
        }
        assert!(!solve_bicriteria_kpath(&g, 1, ColorStrategy::default()).unwrap().is_yes());
        assert!(solve_bicriteria_kpath(&g, 2, ColorStrategy::default()).unwrap().is_yes());
    }
}
