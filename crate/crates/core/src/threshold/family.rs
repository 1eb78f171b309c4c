use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::{ExactBicritKPathInstance, ExactKPathInstance, Instance, LayeredEdge, LayeredGraph};

/// Bits needed once `w` is rounded up to a power of two.
pub fn width_of(w: u64) -> u32 {
    if w <= 1 {
        0
    } else {
        64 - (w - 1).leading_zeros()
    }
}

/// `[a]_x`: the top `x` of `width` bits of `a`. Values may exceed `width`
/// bits when `a` equals the rounded-up cap, in which case the result is
/// simply `a >> (width - x)`.
pub fn prefix(a: u64, x: u32, width: u32) -> u64 {
    debug_assert!(x <= width);
    a >> (width - x)
}

/// One weight table with its target. `x` is the prefix width (`None` for
/// the unscaled entries) and `a` the target offset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledEntry {
    pub weights: Vec<u64>,
    pub target: u64,
    pub x: Option<u32>,
    pub a: u64,
}

/// One-dimensional threshold family.
///
/// For every subset `X` of exactly `k` elements, `w(X) <= budget` iff some
/// entry has `w'(X) = T'`. The entries are `(w, budget - a)` for
/// `a in 0..=4k` and `([w]_x, [budget]_x - k - a)` for `x in 1..=width`,
/// `a in 1..=2k`. Entries with negative targets are dropped.
///
/// The argument rests on the carry bound `[S]_x - k <= sum [w_j]_x <= [S]_x`
/// for `S = sum w_j`: the shortest prefix at which `[S]_x` falls below
/// `[budget]_x` pins the scaled sum into a window of `2k` values. The window
/// of the unscaled entries starts at `a = 0` so that `w(X) = budget` is hit.
pub fn scale_thresholds(weights: &[u64], budget: u64, k: usize, cap: u64) -> Result<Vec<ScaledEntry>> {
    if budget > cap {
        return Err(Error::InvalidParameters(format!("budget {budget} exceeds the weight cap {cap}")));
    }
    if let Some(w) = weights.iter().find(|&&w| w > cap) {
        return Err(Error::InvalidParameters(format!("weight {w} exceeds the weight cap {cap}")));
    }
    let k = k as u64;
    let width = width_of(cap);
    let mut out = Vec::new();
    for a in 0..=4 * k {
        let Some(target) = budget.checked_sub(a) else { break };
        out.push(ScaledEntry { weights: weights.to_vec(), target, x: None, a });
    }
    for x in 1..=width {
        let scaled: Vec<u64> = weights.iter().map(|&w| prefix(w, x, width)).collect();
        let top = prefix(budget, x, width);
        for a in 1..=2 * k {
            let Some(target) = top.checked_sub(k + a) else { break };
            out.push(ScaledEntry { weights: scaled.clone(), target, x: Some(x), a });
        }
    }
    Ok(out)
}

/// Upper bound on the number of two-dimensional entries.
pub fn family_size_bound(k: usize, cap: u64) -> u64 {
    let side = 4 * k as u64 + 1 + width_of(cap) as u64 * 2 * k as u64;
    side * side
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdEntry {
    pub w1: Vec<u64>,
    pub w2: Vec<u64>,
    pub targets: (u64, u64),
    /// `(x, a)` of the two one-dimensional entries.
    pub meta: ((Option<u32>, u64), (Option<u32>, u64)),
}

/// Two-dimensional family: `w1(X) <= L && w2(X) <= C` iff some entry matches
/// both coordinates exactly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdFamily {
    pub entries: Vec<ThresholdEntry>,
}

impl ThresholdFamily {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Every pair of a length entry and a cost entry.
pub fn cross_family(f1: &[ScaledEntry], f2: &[ScaledEntry]) -> Result<ThresholdFamily> {
    let len = f1.first().or(f2.first()).map_or(0, |e| e.weights.len());
    if f1.iter().chain(f2).any(|e| e.weights.len() != len) {
        return Err(Error::InvalidParameters("families are over different edge sets".into()));
    }
    let entries = f1
        .iter()
        .flat_map(|e1| {
            f2.iter().map(move |e2| ThresholdEntry {
                w1: e1.weights.clone(),
                w2: e2.weights.clone(),
                targets: (e1.target, e2.target),
                meta: ((e1.x, e1.a), (e2.x, e2.a)),
            })
        })
        .collect();
    Ok(ThresholdFamily { entries })
}

/// `f(w1, w2) = w2 + w1 * 2kW`. Injective on `[0, W]^2`, and any `k` pairs
/// sum to `f(T1, T2)` iff both coordinates do, because the `w2` parts add up
/// to at most `kW < 2kW`.
pub fn pair_weight(w1: u64, w2: u64, k: usize, w: u64) -> Result<u64> {
    (2 * k as u64)
        .checked_mul(w)
        .and_then(|f| f.checked_mul(w1))
        .and_then(|x| x.checked_add(w2))
        .ok_or_else(|| Error::Overflow(format!("pair weight ({w1}, {w2}) with k = {k}, W = {w}")))
}

/// Flattens pair weights with [`pair_weight`] for paths of `k` edges. Edge
/// `i` of the output is edge `i` of the input. The weight bound becomes
/// `2kW^2 + W`.
pub fn pair_to_single(inst: &ExactBicritKPathInstance, k: usize, w: u64) -> Result<ExactKPathInstance> {
    if let Some(v) = inst.validate().first() {
        return Err(Error::InvalidInstance(v.to_string()));
    }
    if k == 0 {
        return Err(Error::InvalidParameters("pair flattening needs k >= 1".into()));
    }
    let (t1, t2) = inst.targets;
    if inst.weight_bound > w || t1 > w || t2 > w {
        return Err(Error::InvalidParameters(format!("weights and targets must lie in [0, {w}]")));
    }
    let g = &inst.graph;
    let edges = g
        .edges
        .iter()
        .map(|e| Ok(LayeredEdge { from: e.from, to: e.to, weight: pair_weight(e.weight.0, e.weight.1, k, w)? }))
        .collect::<Result<Vec<_>>>()?;
    let weight_bound = pair_weight(w, w, k, w)?;
    Ok(ExactKPathInstance {
        graph: LayeredGraph { num_layers: g.num_layers, layer_of: g.layer_of.clone(), edges },
        target: pair_weight(t1, t2, k, w)?,
        weight_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect()
    }

    #[test]
    fn prefix_operator() {
        assert_eq!(width_of(8), 3);
        assert_eq!(width_of(9), 4);
        assert_eq!(width_of(1), 0);
        assert_eq!(prefix(5, 2, 3), 2);
        assert_eq!(prefix(5, 3, 3), 5);
    }

    #[test]
    fn initial_entry_matches_equality() {
        let fam = scale_thresholds(&[3, 1], 4, 2, 8).unwrap();
        assert!(fam.iter().any(|e| e.x.is_none() && e.a == 0 && e.weights == [3, 1] && e.target == 4));
    }

    #[test]
    fn one_dimensional_property_on_random_tables() {
        let mut rng = crate::generate::seeded(3);
        use rand::Rng;
        for _ in 0..300 {
            let cap = rng.gen_range(1..=64u64);
            let n = rng.gen_range(1..=6usize);
            let k = rng.gen_range(1..=n.min(3));
            let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=cap)).collect();
            let budget = rng.gen_range(0..=cap);
            let fam = scale_thresholds(&weights, budget, k, cap).unwrap();
            for x in subsets(n, k) {
                let within = x.iter().map(|&i| weights[i]).sum::<u64>() <= budget;
                let hit = fam.iter().any(|e| x.iter().map(|&i| e.weights[i]).sum::<u64>() == e.target);
                assert_eq!(within, hit, "{weights:?} L={budget} k={k} W={cap} X={x:?}");
            }
        }
    }

    #[test]
    fn cross_product_size() {
        let f1 = scale_thresholds(&[1], 2, 1, 2).unwrap();
        let f2 = scale_thresholds(&[1], 3, 1, 4).unwrap();
        assert_eq!(cross_family(&f1[..3], &f2[..4]).unwrap().len(), 12);
        assert_eq!(cross_family(&f1, &f2).unwrap().len(), f1.len() * f2.len());
        assert!(cross_family(&f1, &scale_thresholds(&[1, 2], 3, 1, 4).unwrap()).is_err());
    }

    #[test]
    fn family_sizes_within_bound() {
        for cap in [1u64, 2, 7, 8, 33, 64] {
            for k in 1..4 {
                let f = scale_thresholds(&[0; 3], cap, k, cap).unwrap();
                let q = (f.len() * f.len()) as u64;
                assert!(q <= family_size_bound(k, cap));
            }
        }
    }

    #[test]
    fn pair_weights() {
        assert_eq!(pair_weight(0, 0, 2, 3).unwrap(), 0);
        assert_eq!(pair_weight(1, 2, 2, 3).unwrap(), 14);
        assert_eq!(pair_weight(2, 1, 2, 3).unwrap(), 25);
        assert_eq!(pair_weight(3, 3, 2, 3).unwrap(), 39);
        assert!(pair_weight(u64::MAX, 0, 2, 3).is_err());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(scale_thresholds(&[1], 9, 1, 8).is_err());
        assert!(scale_thresholds(&[9], 1, 1, 8).is_err());
    }
}
