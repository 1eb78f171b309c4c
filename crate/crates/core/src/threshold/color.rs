use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::seeded;
use crate::instances::{BicriteriaInstance, LayeredEdge, LayeredGraph};

pub const DEFAULT_COLORING_CAP: u128 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ColorStrategy {
    /// All `k^(n-2)` colorings; fails above `cap`.
    Exhaustive { cap: u128 },
    /// `trials` random colorings, each under all `k!` class orderings.
    Randomized { trials: usize, seed: u64 },
}

impl Default for ColorStrategy {
    fn default() -> Self {
        ColorStrategy::Exhaustive { cap: DEFAULT_COLORING_CAP }
    }
}

/// Class (0-based) of each vertex; `None` exactly at `s` and `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorPartition {
    pub coloring: usize,
    pub ordering: usize,
    pub class_of: Vec<Option<usize>>,
}

/// `g` restricted to `s -> V_1 -> ... -> V_k -> t`. Layer 0 holds `s`,
/// layers `1..=k` the classes and layer `k + 1` holds `t`.
#[derive(Clone, Debug)]
pub struct ColoredCopy {
    pub partition: ColorPartition,
    pub graph: LayeredGraph<(u64, u64)>,
    /// Original id of each copy vertex.
    pub vertex: Vec<usize>,
    /// Original index of each copy edge.
    pub edge: Vec<usize>,
    pub s: usize,
    pub t: usize,
}

/// Next permutation in lexicographic order; false after the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Colorings of the internal vertices of `g` under `strategy`.
pub fn colorings(g: &BicriteriaInstance, k: usize, strategy: ColorStrategy) -> Result<Box<dyn Iterator<Item = ColorPartition>>> {
    if k == 0 {
        return Err(Error::InvalidParameters("color coding needs k >= 1".into()));
    }
    let internal: Vec<usize> = (0..g.n).filter(|&v| v != g.s && v != g.t).collect();
    let blank: Vec<Option<usize>> = vec![None; g.n];
    match strategy {
        ColorStrategy::Exhaustive { cap } => {
            let count = (k as u128).checked_pow(internal.len() as u32);
            if count.is_none_or(|c| c > cap) {
                return Err(Error::TooManyColorings { colorings: count.unwrap_or(u128::MAX), cap });
            }
            let mut digits = vec![0usize; internal.len()];
            let mut done = false;
            let mut id = 0;
            Ok(Box::new(std::iter::from_fn(move || {
                if done {
                    return None;
                }
                let mut class_of = blank.clone();
                for (&v, &c) in internal.iter().zip(&digits) {
                    class_of[v] = Some(c);
                }
                let out = ColorPartition { coloring: id, ordering: 0, class_of };
                id += 1;
                // odometer, first vertex fastest
                done = true;
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < k {
                        done = false;
                        break;
                    }
                    *d = 0;
                }
                Some(out)
            })))
        }
        ColorStrategy::Randomized { trials, seed } => {
            let mut rng = seeded(seed);
            let base: Vec<Vec<usize>> =
                (0..trials).map(|_| internal.iter().map(|_| rng.gen_range(0..k)).collect()).collect();
            Ok(Box::new(base.into_iter().enumerate().flat_map(move |(trial, colors)| {
                let internal = internal.clone();
                let blank = blank.clone();
                let mut perm: Vec<usize> = (0..k).collect();
                let mut first = true;
                let mut ordering = 0;
                std::iter::from_fn(move || {
                    if !first && !next_permutation(&mut perm) {
                        return None;
                    }
                    first = false;
                    let mut class_of = blank.clone();
                    for (&v, &c) in internal.iter().zip(&colors) {
                        class_of[v] = Some(perm[c]);
                    }
                    ordering += 1;
                    Some(ColorPartition { coloring: trial, ordering: ordering - 1, class_of })
                })
            })))
        }
    }
}

/// Keeps the vertices and the edges consistent with `partition`.
pub fn colored_copy(g: &BicriteriaInstance, k: usize, partition: ColorPartition) -> ColoredCopy {
    let layer_of_orig = |v: usize| -> usize {
        if v == g.s {
            0
        } else if v == g.t {
            k + 1
        } else {
            partition.class_of[v].expect("internal vertices are colored") + 1
        }
    };
    let vertex: Vec<usize> = (0..g.n).collect();
    let layer_of: Vec<usize> = vertex.iter().map(|&v| layer_of_orig(v)).collect();
    let mut kept: Vec<(LayeredEdge<(u64, u64)>, usize)> = g
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| layer_of[e.head] == layer_of[e.tail] + 1)
        .map(|(i, e)| (LayeredEdge { from: e.tail, to: e.head, weight: (e.length, e.cost) }, i))
        .collect();
    kept.sort();
    let (edges, edge): (Vec<_>, Vec<_>) = kept.into_iter().unzip();
    ColoredCopy {
        partition,
        graph: LayeredGraph { num_layers: k + 2, layer_of, edges },
        vertex,
        edge,
        s: g.s,
        t: g.t,
    }
}

/// Every colored copy of `g` under `strategy`, lazily.
pub fn color_code<'a>(
    g: &'a BicriteriaInstance,
    k: usize,
    strategy: ColorStrategy,
) -> Result<impl Iterator<Item = ColoredCopy> + 'a> {
    Ok(colorings(g, k, strategy)?.map(move |p| colored_copy(g, k, p)))
}
