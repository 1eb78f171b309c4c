use std::ops::Add;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::SolveResult;
use crate::error::{Error, Result};
use crate::instances::{SolutionCertificate, SubsetSumInstance};

/// Largest target the table-based solver accepts by default.
pub const DEFAULT_DP_CAP: u64 = 1 << 24;
/// Largest item count the meet-in-the-middle solver accepts by default.
pub const DEFAULT_MIM_CAP: usize = 50;

const NONE: u32 = u32::MAX;

/// Bellman's reachable-sums table.
///
/// `last[s]` is the largest `i` such that `s` is a subset sum of
/// `items[i..]`; since suffix sum sets shrink as `i` grows, this single
/// index answers every suffix query and yields the lexicographically
/// smallest solving index set greedily.
pub fn solve_subset_sum_dp(inst: &SubsetSumInstance, cap: u64) -> Result<SolveResult> {
    let started = Instant::now();
    let target = match inst.target.to_u64() {
        Some(t) if t <= cap => t as usize,
        _ => return Err(Error::TargetTooLarge { target: inst.target.to_string(), cap }),
    };
    let n = inst.items.len();
    if n >= NONE as usize {
        return Err(Error::CapExceeded("too many items".into()));
    }
    // items above the target can never be used
    let items: Vec<Option<usize>> = inst
        .items
        .iter()
        .map(|x| x.to_u64().filter(|&v| v <= target as u64).map(|v| v as usize))
        .collect();

    let mut last = vec![NONE; target + 1];
    last[0] = n as u32;
    for i in (0..n).rev() {
        let Some(z) = items[i] else { continue };
        for s in (z..=target).rev() {
            if last[s] == NONE && last[s - z] != NONE {
                last[s] = i as u32;
            }
        }
    }
    let states = (target + 1) as u64;
    if last[target] == NONE {
        return Ok(SolveResult::no(states, started));
    }

    let mut picks = Vec::new();
    let (mut rest, mut from) = (target, 0usize);
    while rest > 0 {
        let j = (from..n)
            .find(|&j| matches!(items[j], Some(z) if z <= rest && last[rest - z] != NONE && last[rest - z] as usize > j))
            .expect("a reachable sum has a witness");
        picks.push(j);
        rest -= items[j].expect("checked");
        from = j + 1;
    }
    Ok(SolveResult::yes(SolutionCertificate::Subset { items: picks }, states, started))
}

/// Splits the items in half, enumerates both halves' subset sums and matches
/// them against the target after sorting.
pub fn solve_subset_sum_mim(inst: &SubsetSumInstance, cap: usize) -> Result<SolveResult> {
    let started = Instant::now();
    let n = inst.items.len();
    if n > cap || n > 62 {
        return Err(Error::CapExceeded(format!("{n} items exceed the meet-in-the-middle cap {cap}")));
    }
    let total: BigUint = inst.items.iter().sum();
    let found = if total.bits() < 127 {
        let items: Vec<u128> = inst.items.iter().map(|x| x.to_u128().expect("fits")).collect();
        match inst.target.to_u128() {
            Some(t) => mim_core(&items, &t),
            None => (None, 0),
        }
    } else {
        mim_core(&inst.items, &inst.target)
    };
    Ok(match found {
        (Some(mask), states) => {
            let items = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            SolveResult::yes(SolutionCertificate::Subset { items }, states, started)
        }
        (None, states) => SolveResult::no(states, started),
    })
}

/// All `(sum, mask)` pairs of `items`, with `mask` bits offset by `shift`.
fn half_sums<T>(items: &[T], shift: usize) -> Vec<(T, u64)>
where
    T: Clone + Zero + for<'a> Add<&'a T, Output = T>,
{
    let mut sums = vec![(T::zero(), 0u64)];
    for (i, item) in items.iter().enumerate() {
        let extended: Vec<(T, u64)> =
            sums.iter().map(|(s, m)| (s.clone() + item, m | 1 << (i + shift))).collect();
        sums.extend(extended);
    }
    sums
}

fn mim_core<T>(items: &[T], target: &T) -> (Option<u64>, u64)
where
    T: Clone + Ord + Zero + for<'a> Add<&'a T, Output = T>,
{
    let mid = items.len() / 2;
    let mut left = half_sums(&items[..mid], 0);
    let mut right = half_sums(&items[mid..], mid);
    let states = (left.len() + right.len()) as u64;
    left.sort();
    right.sort();
    // two pointers: left ascending, right descending
    let (mut i, mut j) = (0usize, right.len());
    while i < left.len() && j > 0 {
        let sum = left[i].0.clone() + &right[j - 1].0;
        match sum.cmp(target) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j -= 1,
            std::cmp::Ordering::Equal => {
                // among equal right sums take the smallest mask
                let s = &right[j - 1].0;
                let first = right.partition_point(|(x, _)| x < s);
                return (Some(left[i].1 | right[first].1), states);
            }
        }
    }
    (None, states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::Instance;

    #[test]
    fn dp_examples() {
        let inst = SubsetSumInstance::from_u64(&[3, 5, 7], 12);
        let r = solve_subset_sum_dp(&inst, DEFAULT_DP_CAP).unwrap();
        assert_eq!(r.certificate, Some(SolutionCertificate::Subset { items: vec![1, 2] }));
        assert_eq!(r.stats.states, 13);
        assert!(!solve_subset_sum_dp(&SubsetSumInstance::from_u64(&[3, 5, 7], 11), DEFAULT_DP_CAP).unwrap().is_yes());
        let empty = solve_subset_sum_dp(&SubsetSumInstance::from_u64(&[], 0), DEFAULT_DP_CAP).unwrap();
        assert_eq!(empty.certificate, Some(SolutionCertificate::Subset { items: vec![] }));
    }

    #[test]
    fn dp_certificate_is_lexicographically_smallest() {
        // 1+4 = 2+3 = 5; the smaller first index wins
        let inst = SubsetSumInstance::from_u64(&[1, 2, 3, 4], 5);
        let r = solve_subset_sum_dp(&inst, DEFAULT_DP_CAP).unwrap();
        assert_eq!(r.certificate, Some(SolutionCertificate::Subset { items: vec![0, 3] }));
    }

    #[test]
    fn dp_rejects_large_target() {
        let inst = SubsetSumInstance::from_u64(&[1], 1 << 30);
        let err = solve_subset_sum_dp(&inst, DEFAULT_DP_CAP).unwrap_err();
        assert!(err.to_string().contains("target too large for DP"));
    }

    #[test]
    fn mim_examples() {
        let inst = SubsetSumInstance::from_u64(&[3, 5, 7], 12);
        let r = solve_subset_sum_mim(&inst, DEFAULT_MIM_CAP).unwrap();
        assert!(inst.check_certificate(r.certificate.as_ref().unwrap()).unwrap());
        assert!(!solve_subset_sum_mim(&SubsetSumInstance::from_u64(&[3, 5, 7], 11), DEFAULT_MIM_CAP).unwrap().is_yes());
        assert!(solve_subset_sum_mim(&SubsetSumInstance::from_u64(&[], 0), DEFAULT_MIM_CAP).unwrap().is_yes());
    }

    #[test]
    fn mim_handles_wide_numbers() {
        let big = BigUint::from(1u32) << 200u32;
        let inst = SubsetSumInstance::new(vec![big.clone(), big.clone(), BigUint::from(3u32)], &big + 3u32);
        let r = solve_subset_sum_mim(&inst, DEFAULT_MIM_CAP).unwrap();
        assert!(inst.check_certificate(r.certificate.as_ref().unwrap()).unwrap());
    }
}
