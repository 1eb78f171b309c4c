//! Reference exact solvers and brute-force oracles.

mod bicriteria;
pub mod brute;
mod exact_path;
mod kpath;
mod ksum;
mod subset_sum;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::instances::SolutionCertificate;

pub use bicriteria::{solve_bicriteria_distinct_dp, solve_bicriteria_joksch, JokschAxis, DEFAULT_DISTINCT_CAP, DEFAULT_JOKSCH_CAP};
pub use exact_path::{solve_exact_bicrit_kpath_mim, solve_exact_kpath_mim};
pub use kpath::solve_bicriteria_kpath;
pub use ksum::solve_ksum;
pub use subset_sum::{solve_subset_sum_dp, solve_subset_sum_mim, DEFAULT_DP_CAP, DEFAULT_MIM_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    /// Table cells, enumerated sums or search nodes, depending on the solver.
    pub states: u64,
    pub nanos: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub answer: Answer,
    pub certificate: Option<SolutionCertificate>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub(crate) fn yes(cert: SolutionCertificate, states: u64, started: Instant) -> Self {
        SolveResult { answer: Answer::Yes, certificate: Some(cert), stats: stats(states, started) }
    }

    pub(crate) fn no(states: u64, started: Instant) -> Self {
        SolveResult { answer: Answer::No, certificate: None, stats: stats(states, started) }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }
}

fn stats(states: u64, started: Instant) -> SolveStats {
    SolveStats { states, nanos: started.elapsed().as_nanos() as u64 }
}
