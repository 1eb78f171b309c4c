//! CSP to Subset Sum via bit blocks.
//!
//! From most to least significant, every number consists of
//!
//! ```text
//! count | pad | type bits (x_1 .. x_n, C_1 .. C_m) | pad | block(x_1) .. block(x_n)
//! ```
//!
//! Every item has a 1 in the count block and a single type bit. The target
//! holds `n + m` in the count block, all type bits, and `lambda * B` in every
//! variable block. Variable item `z(x, alpha)` puts `lambda*B - d(x)*f(alpha)`
//! in the block of `x`; constraint item `z(C, alpha_1..alpha_s)` puts
//! `f(alpha_i)` in the block of its `i`-th variable.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::avgfree::AvgFreeSet;
use crate::error::{Error, Result};
use crate::instances::{CspInstance, Instance, SolutionCertificate, SubsetSumInstance};

/// How block widths are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayoutMode {
    /// Smallest widths that provably prevent carries between blocks.
    Minimal,
    /// Caller-chosen widths, checked against the actual item multiset.
    Pinned { count_bits: u32, pad1_bits: u32, pad2_bits: u32, var_block_bits: u32 },
}

impl LayoutMode {
    /// Widths `(3, 3, 6, 3, 4)` used by the three-variable worked example.
    pub fn worked_example() -> Self {
        LayoutMode::Pinned { count_bits: 3, pad1_bits: 3, pad2_bits: 3, var_block_bits: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockLayout {
    pub count_block_bits: u32,
    pub pad1_bits: u32,
    /// One bit per variable and per constraint.
    pub type_block_bits: u32,
    pub pad2_bits: u32,
    pub var_block_bits: u32,
    pub num_vars: usize,
    pub num_constraints: usize,
    /// Largest value of `f`, the bound `B`.
    pub bound: u64,
    pub lambda: u64,
    /// `f(alpha)` for `alpha = 1 ..= 2^a`, in order.
    pub encoding: Vec<u64>,
}

impl BlockLayout {
    pub fn total_bits(&self) -> u32 {
        self.count_block_bits + self.pad1_bits + self.type_block_bits + self.pad2_bits + self.var_region_bits()
    }

    fn var_region_bits(&self) -> u32 {
        self.num_vars as u32 * self.var_block_bits
    }

    fn var_shift(&self, var: usize) -> u32 {
        (self.num_vars - 1 - var) as u32 * self.var_block_bits
    }

    /// Types are numbered variables first, then constraints; type 0 is the
    /// most significant type bit.
    fn type_shift(&self, type_index: usize) -> u32 {
        self.var_region_bits() + self.pad2_bits + self.type_block_bits - 1 - type_index as u32
    }

    fn count_shift(&self) -> u32 {
        self.var_region_bits() + self.pad2_bits + self.type_block_bits + self.pad1_bits
    }

    fn f(&self, alpha: u64) -> u64 {
        self.encoding[(alpha - 1) as usize]
    }

    /// Block-separated binary rendering: the count block without leading
    /// zeros, every other block zero-padded to its width.
    pub fn render(&self, value: &BigUint) -> String {
        let mut widths = vec![self.pad1_bits, self.type_block_bits, self.pad2_bits];
        widths.extend(std::iter::repeat_n(self.var_block_bits, self.num_vars));
        let mut parts = Vec::new();
        let mut rest = value.clone();
        for &w in widths.iter().rev() {
            let mask = (BigUint::one() << w) - 1u32;
            let block = &rest & &mask;
            parts.push(format!("{:0>width$}", block.to_str_radix(2), width = w as usize));
            rest >>= w;
        }
        parts.push(rest.to_str_radix(2));
        parts.reverse();
        parts.join("|")
    }
}

/// Where a Subset Sum item came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ItemOrigin {
    Variable { var: usize, value: u64 },
    Constraint { constraint: usize, values: Vec<u64> },
}

/// Per-item provenance, aligned with the (sorted) item list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsWitnessMap {
    pub layout: BlockLayout,
    pub origins: Vec<ItemOrigin>,
    /// Variable list of each constraint.
    pub constraint_vars: Vec<Vec<usize>>,
}

fn bits_for(x: u128) -> u32 {
    // ceil(log2(x + 1)): width that holds every value in [0, x]
    128 - x.leading_zeros()
}

/// Encodes `psi` as a Subset Sum instance whose solutions are in bijection
/// with the satisfying assignments of `psi`.
///
/// `f` maps the `i`-th universe value to the `i`-th smallest element of `set`.
/// `set` must be average-free of order at least the largest variable degree,
/// which is what cancels the constraint contributions inside a block.
pub fn csp_to_subset_sum(
    psi: &CspInstance,
    set: &AvgFreeSet,
    mode: LayoutMode,
) -> Result<(SubsetSumInstance, SsWitnessMap)> {
    let report = psi.validate();
    if let Some(v) = report.first() {
        return Err(Error::InvalidInstance(v.to_string()));
    }
    let universe = psi.universe_size();
    if (set.len() as u64) < universe {
        return Err(Error::AvgFreeTooSmall { needed: universe, have: set.len() });
    }
    if set.k < psi.degree_bound {
        return Err(Error::AvgFreeOrderTooSmall { needed: psi.degree_bound, have: set.k });
    }

    let encoding: Vec<u64> = set.elements[..universe as usize].to_vec();
    let bound = *encoding.last().expect("universe is non-empty");
    let lambda = psi.lambda() as u64;
    let lambda_b = lambda as u128 * bound as u128;
    let degrees = psi.degrees();

    let num_items = psi.num_vars as u128 * universe as u128
        + psi.constraints.iter().map(|c| c.tuples.len() as u128).sum::<u128>();
    let num_types = psi.num_vars + psi.constraints.len();

    let (count_bits, pad1, pad2, var_bits) = match mode {
        LayoutMode::Minimal => {
            let pad = bits_for(num_items);
            (bits_for(num_types as u128), pad, pad, bits_for(2 * lambda_b))
        }
        LayoutMode::Pinned { count_bits, pad1_bits, pad2_bits, var_block_bits } => {
            (count_bits, pad1_bits, pad2_bits, var_block_bits)
        }
    };
    let layout = BlockLayout {
        count_block_bits: count_bits,
        pad1_bits: pad1,
        type_block_bits: num_types as u32,
        pad2_bits: pad2,
        var_block_bits: var_bits,
        num_vars: psi.num_vars,
        num_constraints: psi.constraints.len(),
        bound,
        lambda,
        encoding,
    };
    if bits_for(num_types as u128) > count_bits || bits_for(2 * lambda_b) > var_bits {
        return Err(Error::InvalidParameters("pinned block widths are too narrow".into()));
    }

    let mut numbered: Vec<(BigUint, ItemOrigin)> = Vec::with_capacity(num_items as usize);
    let header = |type_index: usize| (BigUint::one() << layout.count_shift()) + (BigUint::one() << layout.type_shift(type_index));
    for (x, &deg) in degrees.iter().enumerate() {
        for alpha in 1..=universe {
            let block = lambda_b - deg as u128 * layout.f(alpha) as u128;
            let value = header(x) + (BigUint::from(block) << layout.var_shift(x));
            numbered.push((value, ItemOrigin::Variable { var: x, value: alpha }));
        }
    }
    for (ci, c) in psi.constraints.iter().enumerate() {
        for tuple in &c.tuples {
            let mut value = header(psi.num_vars + ci);
            for (&x, &alpha) in c.vars.iter().zip(tuple) {
                value += BigUint::from(layout.f(alpha)) << layout.var_shift(x);
            }
            numbered.push((value, ItemOrigin::Constraint { constraint: ci, values: tuple.clone() }));
        }
    }

    let mut target = BigUint::from(num_types) << layout.count_shift();
    for t in 0..num_types {
        target += BigUint::one() << layout.type_shift(t);
    }
    for x in 0..psi.num_vars {
        target += BigUint::from(lambda_b) << layout.var_shift(x);
    }

    if matches!(mode, LayoutMode::Pinned { .. }) {
        check_pads(&layout, numbered.iter().map(|(v, _)| v))?;
    }

    numbered.sort_by(|a, b| a.0.cmp(&b.0));
    let (items, origins): (Vec<_>, Vec<_>) = numbered.into_iter().unzip();
    let constraint_vars = psi.constraints.iter().map(|c| c.vars.clone()).collect();
    Ok((SubsetSumInstance::new(items, target), SsWitnessMap { layout, origins, constraint_vars }))
}

/// Both pads must absorb the carry produced when every item is summed.
fn check_pads<'a>(layout: &BlockLayout, items: impl Iterator<Item = &'a BigUint> + Clone) -> Result<()> {
    let below_pad2 = layout.var_region_bits();
    let below_pad1 = below_pad2 + layout.pad2_bits + layout.type_block_bits;
    for (width, pad) in [(below_pad2, layout.pad2_bits), (below_pad1, layout.pad1_bits)] {
        let mask = (BigUint::one() << width) - 1u32;
        let total: BigUint = items.clone().map(|v| v & &mask).sum();
        if total >> (width + pad) != BigUint::zero() {
            return Err(Error::InvalidParameters(format!("a pad of {pad} bits can overflow")));
        }
    }
    Ok(())
}

/// Reads the CSP assignment off a solving subset.
pub fn decode_ss_solution(
    inst: &SubsetSumInstance,
    cert: &SolutionCertificate,
    map: &SsWitnessMap,
) -> Result<Vec<u64>> {
    let SolutionCertificate::Subset { items } = cert else {
        return Err(Error::CertificateMismatch);
    };
    if !inst.check_certificate(cert)? {
        return Err(Error::NotASolution);
    }
    let mut values: Vec<Option<u64>> = vec![None; map.layout.num_vars];
    for &i in items {
        if let ItemOrigin::Variable { var, value } = map.origins[i] {
            if values[var].replace(value).is_some() {
                return Err(Error::NotASolution);
            }
        }
    }
    let values: Vec<u64> = values.into_iter().collect::<Option<_>>().ok_or(Error::NotASolution)?;
    // constraint items have to agree with the variable items
    let mut seen = vec![false; map.constraint_vars.len()];
    for &i in items {
        if let ItemOrigin::Constraint { constraint, values: tuple } = &map.origins[i] {
            let vars = &map.constraint_vars[*constraint];
            let agrees = vars.iter().zip(tuple).all(|(&x, &alpha)| values[x] == alpha);
            if std::mem::replace(&mut seen[*constraint], true) || !agrees {
                return Err(Error::NotASolution);
            }
        }
    }
    if seen.contains(&false) {
        return Err(Error::NotASolution);
    }
    Ok(values)
}
