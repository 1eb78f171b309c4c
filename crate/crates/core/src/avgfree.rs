//! k-average-free sets via the sphere construction.
//!
//! A set `S` is k-average-free when, for every `k' <= k`, the only solutions of
//! `x_1 + ... + x_k' = k' * x_{k'+1}` over `S` (repetition allowed) are the
//! constant ones. The construction takes digit vectors in `{0..M-1}^D` lying on
//! a common sphere and reads them in base `b = k*M + 1`: k-fold digitwise sums
//! never carry, so an average relation among numbers is an average relation
//! among the vectors, which strict convexity of the sphere rules out.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::format::Dec;

/// Largest digit-box `M^D` the parameter search will enumerate.
pub const ENUMERATION_CAP: u64 = 1 << 20;
const MAX_DIGITS: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BehrendParams {
    #[serde(rename = "D")]
    pub digits: u32,
    #[serde(rename = "M")]
    pub digit_range: u64,
    pub base: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvgFreeSet {
    pub k: usize,
    /// Strictly increasing.
    pub elements: Vec<u64>,
    /// Upper bound on every element implied by the construction (`b^D - 1`).
    pub bound: u64,
    pub params: Option<BehrendParams>,
}

impl AvgFreeSet {
    /// A set supplied by hand, e.g. `{1, 2}`; the bound is its maximum.
    pub fn from_elements(k: usize, mut elements: Vec<u64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let bound = elements.last().copied().unwrap_or(0);
        AvgFreeSet { k, elements, bound, params: None }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The constant `C0` with `bound = k^(C0/eps) * n^(1+eps)`.
    pub fn achieved_constant(&self, epsilon: f64) -> f64 {
        let n = self.elements.len().max(1) as f64;
        let ratio = (self.bound.max(1) as f64).ln() - (1.0 + epsilon) * n.ln();
        epsilon * ratio / (self.k as f64).ln()
    }

    /// `log(bound) / log(n)`.
    pub fn achieved_exponent(&self) -> f64 {
        let n = self.elements.len() as f64;
        if n <= 1.0 {
            return 0.0;
        }
        (self.bound.max(1) as f64).ln() / n.ln()
    }
}

#[derive(Serialize, Deserialize)]
struct AvgFreeRepr {
    k: usize,
    elements: Vec<Dec>,
    bound: Dec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<BehrendParams>,
}

impl Serialize for AvgFreeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AvgFreeRepr {
            k: self.k,
            elements: self.elements.iter().map(|&e| Dec(e.into())).collect(),
            bound: Dec(self.bound.into()),
            params: self.params,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AvgFreeSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use num_traits::ToPrimitive;
        use serde::de::Error as _;
        let r = AvgFreeRepr::deserialize(d)?;
        let to_u64 = |d: &Dec| d.0.to_u64().ok_or_else(|| D::Error::custom("element exceeds 64 bits"));
        let mut elements = r.elements.iter().map(to_u64).collect::<std::result::Result<Vec<_>, _>>()?;
        elements.sort_unstable();
        elements.dedup();
        Ok(AvgFreeSet { k: r.k, elements, bound: to_u64(&r.bound)?, params: r.params })
    }
}

/// Builds a k-average-free set of exactly `n` elements.
///
/// Among all `(D, M)` with `M^D <= ENUMERATION_CAP` whose fullest sphere holds
/// at least `n` points, the pair minimising `b^D - 1` is used (ties favour the
/// smaller `D`, then the smaller `M`). The `n` smallest numbers of the fullest
/// sphere are returned.
pub fn build_behrend_set(k: usize, epsilon: f64, n: usize) -> Result<AvgFreeSet> {
    if k < 2 {
        return Err(Error::InvalidParameters(format!("average-free order must be >= 2, got {k}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameters("requested size must be >= 1".into()));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameters(format!("epsilon must lie in (0,1), got {epsilon}")));
    }
    let (digits, digit_range) = choose_parameters(k as u64, n)?;
    let base = k as u64 * digit_range + 1;
    let bound = base.checked_pow(digits).map(|p| p - 1).ok_or_else(|| Error::Overflow(format!("{base}^{digits}")))?;

    let counts = sphere_counts(digits, digit_range);
    let radius = fullest_radius(&counts);
    let mut elements = sphere_points(digits, digit_range, radius)
        .into_iter()
        .map(|v| to_number(&v, base))
        .collect::<Vec<_>>();
    elements.sort_unstable();
    elements.truncate(n);

    let set = AvgFreeSet {
        k,
        elements,
        bound,
        params: Some(BehrendParams { digits, digit_range, base }),
    };
    log::info!(
        "average-free set: k={k} n={n} D={digits} M={digit_range} base={base} bound={bound} \
         exponent={:.3} C0(eps={epsilon})={:.3}",
        set.achieved_exponent(),
        set.achieved_constant(epsilon)
    );
    Ok(set)
}

fn choose_parameters(k: u64, n: usize) -> Result<(u32, u64)> {
    let candidate_bound = |d: u32, m: u64| (k * m + 1).checked_pow(d).map(|p| p - 1);
    let mut best: Option<(u64, u32, u64)> = None;
    for d in 2..=MAX_DIGITS {
        // With M = 2 the bound only grows with D, so nothing further can win.
        match (candidate_bound(d, 2), best) {
            (None, _) => break,
            (Some(b), Some((best_bound, _, _))) if b >= best_bound => break,
            _ => {}
        }
        let Some(m_hi) = largest_m(d, |m| {
            let within_cap = (m as u128).pow(d) <= ENUMERATION_CAP as u128;
            let beats_best = match (candidate_bound(d, m), best) {
                (None, _) => false,
                (Some(b), Some((bb, _, _))) => b < bb,
                (Some(_), None) => true,
            };
            within_cap && beats_best
        }) else {
            continue;
        };
        if max_sphere(d, m_hi) < n {
            continue;
        }
        // The fullest sphere only grows with M, so bisect for the smallest M.
        let (mut lo, mut hi) = (2u64, m_hi);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if max_sphere(d, mid) >= n {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let bound = candidate_bound(d, lo).expect("checked above");
        if best.is_none_or(|(bb, _, _)| bound < bb) {
            best = Some((bound, d, lo));
        }
    }
    best.map(|(_, d, m)| (d, m)).ok_or_else(|| {
        Error::InvalidParameters(format!("no sphere parameters within the enumeration cap reach n={n}"))
    })
}

/// Largest `M >= 2` satisfying the monotone predicate, if any.
fn largest_m(_d: u32, ok: impl Fn(u64) -> bool) -> Option<u64> {
    if !ok(2) {
        return None;
    }
    let mut lo = 2u64;
    let mut hi = 4u64;
    while ok(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// Number of points of `{0..M-1}^D` on each sphere `sum d_i^2 = r`.
fn sphere_counts(d: u32, m: u64) -> Vec<u64> {
    let max_r = d as u64 * (m - 1) * (m - 1);
    let mut counts = vec![0u64; max_r as usize + 1];
    counts[0] = 1;
    let mut reach = 0usize;
    for _ in 0..d {
        let mut next = vec![0u64; counts.len()];
        for (r, &c) in counts.iter().enumerate().take(reach + 1) {
            if c == 0 {
                continue;
            }
            for digit in 0..m {
                next[r + (digit * digit) as usize] += c;
            }
        }
        reach += ((m - 1) * (m - 1)) as usize;
        counts = next;
    }
    counts
}

fn max_sphere(d: u32, m: u64) -> usize {
    sphere_counts(d, m).into_iter().max().unwrap_or(0) as usize
}

fn fullest_radius(counts: &[u64]) -> u64 {
    let mut best = 0usize;
    for (r, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = r;
        }
    }
    best as u64
}

/// All digit vectors (least significant digit first) on the sphere of squared radius `r`.
fn sphere_points(d: u32, m: u64, r: u64) -> Vec<Vec<u64>> {
    fn go(pos: usize, remaining: u64, m: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if pos == cur.len() {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots_left = (cur.len() - pos - 1) as u64;
        for digit in 0..m {
            let sq = digit * digit;
            if sq > remaining {
                break;
            }
            // the remaining coordinates can absorb at most (M-1)^2 each
            if remaining - sq > slots_left * (m - 1) * (m - 1) {
                continue;
            }
            cur[pos] = digit;
            go(pos + 1, remaining - sq, m, cur, out);
        }
    }
    let mut out = Vec::new();
    go(0, r, m, &mut vec![0; d as usize], &mut out);
    out
}

fn to_number(digits: &[u64], base: u64) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &dg| acc * base + dg)
}

/// Base-`base` digits of `x`, least significant first.
pub fn digits_of(mut x: u64, base: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while x > 0 {
        out.push(x % base);
        x /= base;
    }
    out
}

/// Exhaustive check of the k-average-free predicate.
///
/// For each `k' <= k`, every multiset of `k'` elements is enumerated; the
/// predicate fails iff some non-constant multiset sums to `k' * x` for an
/// `x` in `S`. Constant multisets are excluded because elements are distinct.
pub fn verify_average_free(set: &[u64], k: usize) -> bool {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for order in 2..=k {
        let targets: HashSet<u128> = sorted.iter().map(|&x| x as u128 * order as u128).collect();
        let mut picks = vec![0usize; order];
        if has_nonconstant_hit(&sorted, &targets, &mut picks, 0, 0, 0) {
            return false;
        }
    }
    true
}

fn has_nonconstant_hit(
    set: &[u64],
    targets: &HashSet<u128>,
    picks: &mut [usize],
    pos: usize,
    start: usize,
    sum: u128,
) -> bool {
    if pos == picks.len() {
        return picks[0] != picks[picks.len() - 1] && targets.contains(&sum);
    }
    for i in start..set.len() {
        picks[pos] = i;
        if has_nonconstant_hit(set, targets, picks, pos + 1, i, sum + set[i] as u128) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct reading of the definition over all (k'+1)-tuples.
    fn naive_average_free(set: &[u64], k: usize) -> bool {
        fn tuples(set: &[u64], len: usize) -> Vec<Vec<u64>> {
            if len == 0 {
                return vec![vec![]];
            }
            let shorter = tuples(set, len - 1);
            shorter
                .iter()
                .flat_map(|t| set.iter().map(move |&x| [t.clone(), vec![x]].concat()))
                .collect()
        }
        (1..=k).all(|kp| {
            tuples(set, kp + 1).iter().all(|t| {
                let lhs: u64 = t[..kp].iter().sum();
                lhs != kp as u64 * t[kp] || t.iter().all(|&x| x == t[0])
            })
        })
    }

    #[test]
    fn definition_examples() {
        assert!(verify_average_free(&[1, 2], 2));
        assert!(!verify_average_free(&[1, 2, 3], 2));
        assert!(verify_average_free(&[5], 7));
        assert!(verify_average_free(&[], 3));
    }

    #[test]
    fn checker_agrees_with_naive_definition() {
        let cases: &[&[u64]] = &[&[0, 1, 3], &[0, 1, 3, 4], &[1, 2, 4, 8], &[0, 3, 4, 9], &[1, 5, 6, 10], &[2, 7, 9]];
        for set in cases {
            for k in 2..=4 {
                assert_eq!(verify_average_free(set, k), naive_average_free(set, k), "{set:?} k={k}");
            }
        }
    }

    #[test]
    fn singleton() {
        let s = build_behrend_set(2, 0.5, 1).unwrap();
        assert_eq!(s.len(), 1);
        assert!(verify_average_free(&s.elements, 2));
    }

    #[test]
    fn small_builds_are_average_free() {
        for (k, n) in [(2, 16), (4, 8), (3, 5), (5, 10)] {
            let s = build_behrend_set(k, 0.5, n).unwrap();
            assert_eq!(s.len(), n);
            assert!(verify_average_free(&s.elements, k), "k={k} n={n}: {:?}", s.elements);
            assert!(*s.elements.last().unwrap() <= s.bound);
            assert!(s.elements.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn digits_stay_below_carry_threshold() {
        for k in 2..=4 {
            let s = build_behrend_set(k, 0.5, 20).unwrap();
            let p = s.params.unwrap();
            let limit = p.base.div_ceil(k as u64);
            for &x in &s.elements {
                assert!(digits_of(x, p.base).iter().all(|&d| d < limit));
            }
        }
    }

    #[test]
    fn bound_is_monotone_in_n() {
        for k in 2..=3 {
            let bounds: Vec<u64> = (1..=40).map(|n| build_behrend_set(k, 0.5, n).unwrap().bound).collect();
            assert!(bounds.windows(2).all(|w| w[0] <= w[1]), "{bounds:?}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_behrend_set(1, 0.5, 4).is_err());
        assert!(build_behrend_set(2, 0.0, 4).is_err());
        assert!(build_behrend_set(2, 0.5, 0).is_err());
    }

    #[test]
    fn json_shape() {
        let s = build_behrend_set(2, 0.5, 2).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.starts_with(r#"{"k":2,"elements":["#));
        assert!(json.contains(r#""params":{"D":"#));
        let back: AvgFreeSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
