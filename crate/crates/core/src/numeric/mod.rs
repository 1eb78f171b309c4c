//! The numeric chain: CNF to structured CSP, CSP to Subset Sum via
//! bit blocks, and Subset Sum to k-SUM.

mod csp;
mod encode;
mod split;

pub use csp::{group_to_csp, lift_csp_assignment, DEFAULT_TUPLE_CAP};
pub use encode::{csp_to_subset_sum, decode_ss_solution, BlockLayout, ItemOrigin, LayoutMode, SsWitnessMap};
pub use split::{or_compose, split_to_ksum, subset_sums_up_to};
