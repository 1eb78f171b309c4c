use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::instances::{CnfFormula, Constraint, CspInstance, MAX_UNIVERSE_BITS};

/// Default limit on joint assignments enumerated per constraint.
pub const DEFAULT_TUPLE_CAP: u128 = 1 << 20;

/// Groups variables into super-variables of `a` bits each and clauses into
/// blocks of `a * occurrence_bound`, one constraint per block.
///
/// Super-variable `j` covers CNF variables `j*a + 1 ..= j*a + a`; its value
/// `alpha` in `[1, 2^a]` sets CNF variable `j*a + i + 1` to bit `i` of
/// `alpha - 1`. Bits beyond the last CNF variable are ignored.
pub fn group_to_csp(phi: &CnfFormula, a: u32, tuple_cap: u128) -> Result<CspInstance> {
    if a == 0 || a > MAX_UNIVERSE_BITS {
        return Err(Error::InvalidParameters(format!("block size must lie in [1, {MAX_UNIVERSE_BITS}], got {a}")));
    }
    let a_us = a as usize;
    let num_super = phi.num_vars.div_ceil(a_us);
    let gamma = (a_us * phi.occurrence_bound).max(1);

    let mut constraints = Vec::new();
    for block in phi.clauses.chunks(gamma) {
        let touched: BTreeSet<usize> = block
            .iter()
            .flatten()
            .map(|lit| (lit.unsigned_abs() as usize - 1) / a_us)
            .collect();
        let vars: Vec<usize> = touched.into_iter().collect();
        let joint_bits = a as u128 * vars.len() as u128;
        let needed = if joint_bits >= 128 { u128::MAX } else { 1u128 << joint_bits };
        if needed > tuple_cap {
            return Err(Error::ConstraintBlowUp { needed, cap: tuple_cap });
        }

        let mut tuples = Vec::new();
        let mut values = vec![1u64; vars.len()];
        for _ in 0..needed {
            let block_holds = block.iter().all(|clause| {
                clause.iter().any(|&lit| {
                    let var = lit.unsigned_abs() as usize - 1;
                    let pos = vars.binary_search(&(var / a_us)).expect("touched");
                    let bit = ((values[pos] - 1) >> (var % a_us)) & 1 == 1;
                    bit == (lit > 0)
                })
            });
            if block_holds {
                tuples.push(values.clone());
            }
            advance(&mut values, 1u64 << a);
        }
        constraints.push(Constraint::new(vars, tuples));
    }
    Ok(CspInstance::new(num_super, a, constraints))
}

/// Odometer over `[1, size]^len`, last position fastest.
fn advance(values: &mut [u64], size: u64) {
    for v in values.iter_mut().rev() {
        if *v < size {
            *v += 1;
            return;
        }
        *v = 1;
    }
}

/// Reads a CNF assignment back out of a super-variable assignment.
pub fn lift_csp_assignment(values: &[u64], a: u32, num_vars: usize) -> Vec<bool> {
    (0..num_vars)
        .map(|v| {
            let alpha = values[v / a as usize];
            ((alpha - 1) >> (v % a as usize)) & 1 == 1
        })
        .collect()
}
