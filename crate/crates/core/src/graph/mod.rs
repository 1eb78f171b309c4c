//! Reductions that build bicriteria path instances.

mod builder;
mod digits;
mod gadgets;

use serde::{Deserialize, Serialize};

pub use digits::{digit_base, digit_expand};
pub use gadgets::{decode_ksum_path, decode_or_path, exactpath_to_bicriteria, ksum_to_multigraph, or_to_bicriteria};

/// Why an edge of a constructed graph exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EdgeOrigin {
    /// Picks item `item` of member `instance` (indices past the member's
    /// length are zero-valued padding items).
    Take { instance: usize, item: usize },
    Skip { instance: usize, item: usize },
    /// Closes the chain of `instance`, carrying `(M - T_i, T_i)`.
    Final { instance: usize },
    /// Element `element` of group `group` of a k-SUM instance.
    Element { group: usize, element: usize },
    /// Zero-weight second half of a subdivided parallel edge.
    Subdivision,
}

/// Per-edge provenance aligned with the output's sorted edge list, plus the
/// first chain vertex of each bundle member.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetTrace {
    pub origins: Vec<EdgeOrigin>,
    pub entries: Vec<usize>,
}
