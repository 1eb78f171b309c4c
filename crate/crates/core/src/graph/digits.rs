use super::builder::GraphBuilder;
use super::EdgeOrigin;
use crate::error::{Error, Result};
use crate::instances::{BicriteriaInstance, Instance};

/// Upper limit on the number of unit pieces an expansion may create.
const MAX_PIECES: u64 = 50_000_000;

/// Smallest `B >= 1` with `B^tau >= t`.
pub fn digit_base(t: u64, tau: u32) -> u64 {
    let fits = |b: u64| b.checked_pow(tau).is_none_or(|p| p >= t);
    let mut b = ((t as f64).powf(1.0 / tau as f64).floor() as u64).max(1);
    while b > 1 && fits(b - 1) {
        b -= 1;
    }
    while !fits(b) {
        b += 1;
    }
    b
}

/// Digits of `x` in base `b`, low first, with all excess in the top digit.
fn digits(x: u64, b: u64, tau: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(tau as usize);
    let mut rest = x;
    for _ in 1..tau {
        if b == 1 {
            out.push(0);
        } else {
            out.push(rest % b);
            rest /= b;
        }
    }
    out.push(rest);
    out
}

/// Replaces every edge by a path of unit pieces `(B^i, 0)` and `(0, B^i)`,
/// one per unit of the `i`-th digit of its length and cost, with
/// `B = digit_base(L, tau)`. Lengths and costs of all paths are kept while
/// each takes at most `tau + 1` distinct values.
///
/// The top digit absorbs everything above `B^(tau-1)`, so it can equal `B`
/// when a weight is exactly `B^tau`.
pub fn digit_expand(g: &BicriteriaInstance, tau: u32) -> Result<BicriteriaInstance> {
    if let Some(v) = g.validate().first() {
        return Err(Error::InvalidInstance(v.to_string()));
    }
    if tau == 0 {
        return Err(Error::InvalidParameters("digit count must be at least 1".into()));
    }
    let t = g.budget_length;
    let b = digit_base(t, tau);
    let powers: Vec<u64> = (0..tau).map(|i| b.pow(i)).collect();

    let mut expansions = Vec::with_capacity(g.edges.len());
    let mut pieces = 0u64;
    for (i, e) in g.edges.iter().enumerate() {
        if e.length > t || e.cost > t {
            return Err(Error::BoundTooSmall(format!("edge {i} weight ({}, {}) exceeds {t}", e.length, e.cost)));
        }
        let (dl, dc) = (digits(e.length, b, tau), digits(e.cost, b, tau));
        let mut path = Vec::new();
        for (i, &p) in powers.iter().enumerate() {
            debug_assert!(i + 1 == tau as usize || (dl[i] < b && dc[i] < b));
            path.extend(std::iter::repeat_n((p, 0), dl[i] as usize));
            path.extend(std::iter::repeat_n((0, p), dc[i] as usize));
        }
        if path.is_empty() {
            path.push((0, 0));
        }
        pieces += path.len() as u64;
        if pieces > MAX_PIECES {
            return Err(Error::CapExceeded(format!("digit expansion needs more than {MAX_PIECES} edges")));
        }
        expansions.push(path);
    }

    let mut out = GraphBuilder::new(g.n);
    for (e, path) in g.edges.iter().zip(expansions) {
        let mut at = e.tail;
        for (j, &(l, c)) in path.iter().enumerate() {
            let next = if j + 1 == path.len() { e.head } else { out.vertex() };
            out.edge(at, next, l, c, EdgeOrigin::Subdivision);
            at = next;
        }
    }
    Ok(out.finish(g.s, g.t, g.budget_length, g.budget_cost).0)
}
