use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigUint;

use super::SolveResult;
use crate::error::{Error, Result};
use crate::instances::{KSumInstance, SolutionCertificate};

const MAX_HALF_TUPLES: u128 = 1 << 24;

/// Every pick tuple over `groups` in lexicographic order, with its sum.
fn half_tuples(groups: &[Vec<BigUint>], cap: &BigUint) -> Vec<(BigUint, Vec<usize>)> {
    let mut out = vec![(BigUint::default(), Vec::new())];
    for group in groups {
        let mut next = Vec::with_capacity(out.len() * group.len());
        for (sum, picks) in &out {
            for (i, z) in group.iter().enumerate() {
                let s = sum + z;
                if &s <= cap {
                    let mut p = picks.clone();
                    p.push(i);
                    next.push((s, p));
                }
            }
        }
        out = next;
    }
    out
}

/// Meet in the middle over the first `ceil(k/2)` and last `floor(k/2)`
/// groups. Returns the lexicographically smallest solving tuple.
pub fn solve_ksum(inst: &KSumInstance) -> Result<SolveResult> {
    let started = Instant::now();
    let k = inst.k();
    let split = k.div_ceil(2);
    let (left_groups, right_groups) = inst.groups.split_at(split);
    for half in [left_groups, right_groups] {
        let size: u128 = half.iter().map(|g| g.len() as u128).product();
        if size > MAX_HALF_TUPLES {
            return Err(Error::CapExceeded(format!("{size} half-tuples")));
        }
    }
    let left = half_tuples(left_groups, &inst.target);
    let right = half_tuples(right_groups, &inst.target);
    let states = (left.len() + right.len()) as u64;

    let mut by_sum: HashMap<&BigUint, &Vec<usize>> = HashMap::new();
    for (s, p) in &right {
        by_sum.entry(s).or_insert(p);
    }
    for (s, p) in &left {
        let need = &inst.target - s;
        if let Some(rest) = by_sum.get(&need) {
            let picks = p.iter().chain(rest.iter()).copied().collect();
            return Ok(SolveResult::yes(SolutionCertificate::Tuple { picks }, states, started));
        }
    }
    Ok(SolveResult::no(states, started))
}
