//! Reduction from bicriteria s,t-path with a fixed number of internal
//! vertices to exact k-path: color coding, endpoint absorption, threshold
//! families and pair flattening.

mod color;
mod family;
mod pipeline;

pub use color::{color_code, colored_copy, colorings, ColorPartition, ColorStrategy, ColoredCopy, DEFAULT_COLORING_CAP};
pub use family::{
    cross_family, family_size_bound, pair_to_single, pair_weight, prefix, scale_thresholds, width_of, ScaledEntry,
    ThresholdEntry, ThresholdFamily,
};
pub use pipeline::{
    absorb_endpoints, bicriteria_to_exact_instances, prune, AbsorbedGraph, ExactInstances, ExactJob, PipelineStats,
};
