use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::instances::{KSumInstance, OrBundle, SubsetSumInstance};

/// Largest part whose subset sums are enumerated.
const MAX_PART: usize = 26;

/// All distinct subset sums of `items` that do not exceed `cap`, sorted.
pub fn subset_sums_up_to(items: &[BigUint], cap: &BigUint) -> Vec<BigUint> {
    let mut sums = BTreeSet::from([BigUint::default()]);
    for item in items {
        let shifted: Vec<BigUint> = sums.iter().map(|s| s + item).filter(|s| s <= cap).collect();
        sums.extend(shifted);
    }
    sums.into_iter().collect()
}

/// Splits the items into `k` contiguous near-equal parts (the first
/// `n mod k` parts get one extra item) and replaces each part by its subset
/// sums up to the target. Parts left empty contribute the group `{0}`.
pub fn split_to_ksum(inst: &SubsetSumInstance, k: usize) -> Result<KSumInstance> {
    if k < 2 {
        return Err(Error::InvalidParameters(format!("k-SUM needs k >= 2, got {k}")));
    }
    let n = inst.items.len();
    let (base, extra) = (n / k, n % k);
    if base + usize::from(extra > 0) > MAX_PART {
        return Err(Error::CapExceeded(format!("parts of more than {MAX_PART} items")));
    }
    let mut groups = Vec::with_capacity(k);
    let mut start = 0;
    for i in 0..k {
        let len = base + usize::from(i < extra);
        groups.push(subset_sums_up_to(&inst.items[start..start + len], &inst.target));
        start += len;
    }
    Ok(KSumInstance::new(groups, inst.target.clone()))
}

pub fn or_compose(instances: Vec<SubsetSumInstance>) -> Result<OrBundle> {
    if instances.is_empty() {
        return Err(Error::InvalidParameters("an OR-bundle needs at least one instance".into()));
    }
    Ok(OrBundle { instances })
}
