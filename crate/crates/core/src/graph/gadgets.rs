use num_bigint::BigUint;

use super::builder::GraphBuilder;
use super::{EdgeOrigin, GadgetTrace};
use crate::error::{Error, Result};
use crate::instances::{to_u64, BicriteriaInstance, ExactKPathInstance, Instance, KSumInstance, OrBundle};

fn check_valid(inst: &impl Instance) -> Result<()> {
    match inst.validate().first() {
        Some(v) => Err(Error::InvalidInstance(v.to_string())),
        None => Ok(()),
    }
}

fn at_most(value: &BigUint, bound: u64, what: impl FnOnce() -> String) -> Result<u64> {
    match to_u64(value) {
        Ok(v) if v <= bound => Ok(v),
        _ => Err(Error::BoundTooSmall(format!("{} = {value} exceeds {bound}", what()))),
    }
}

/// Builds one chain per bundle member between a shared `s = 0` and `t = 1`.
///
/// Members are padded with 0-items to a common length `K`. Item `z` gives a
/// take edge `(z, M - z)` and a skip edge `(0, M)`, and the chain closes with
/// `(M - T_i, T_i)`. With `L = M` and `C = K*M` a chain path is feasible iff
/// its taken items sum to exactly `T_i`.
pub fn or_to_bicriteria(bundle: &OrBundle, m: u64) -> Result<(BicriteriaInstance, GadgetTrace)> {
    check_valid(bundle)?;
    let k = bundle.max_len();
    let budget_cost = (k as u64)
        .checked_mul(m)
        .ok_or_else(|| Error::Overflow(format!("{k} * {m}")))?;
    let (s, t) = (0, 1);
    let mut b = GraphBuilder::new(2);
    let mut entries = Vec::with_capacity(bundle.instances.len());
    for (i, inst) in bundle.instances.iter().enumerate() {
        let target = at_most(&inst.target, m, || format!("target of member {i}"))?;
        let mut at = s;
        for j in 0..k {
            let z = match inst.items.get(j) {
                Some(z) => at_most(z, m, || format!("item {j} of member {i}"))?,
                None => 0,
            };
            let next = b.vertex();
            if j == 0 {
                entries.push(next);
            }
            b.edge(at, next, z, m - z, EdgeOrigin::Take { instance: i, item: j });
            b.edge(at, next, 0, m, EdgeOrigin::Skip { instance: i, item: j });
            at = next;
        }
        if k == 0 {
            entries.push(t);
        }
        b.edge(at, t, m - target, target, EdgeOrigin::Final { instance: i });
    }
    let (g, origins) = b.finish(s, t, m, budget_cost);
    Ok((g, GadgetTrace { origins, entries }))
}

/// Reads the member and its chosen items off a path of [`or_to_bicriteria`].
/// Padding items are dropped.
pub fn decode_or_path(bundle: &OrBundle, trace: &GadgetTrace, edges: &[usize]) -> Result<(usize, Vec<usize>)> {
    let mut member = None;
    let mut items = Vec::new();
    for &ei in edges {
        match trace.origins.get(ei) {
            Some(EdgeOrigin::Take { instance, item }) => {
                member = Some(*instance);
                if *item < bundle.instances[*instance].items.len() {
                    items.push(*item);
                }
            }
            Some(EdgeOrigin::Skip { instance, .. } | EdgeOrigin::Final { instance }) => member = Some(*instance),
            Some(_) => {}
            None => return Err(Error::NotASolution),
        }
    }
    member.map(|m| (m, items)).ok_or(Error::NotASolution)
}

/// Vertices `s = v_0, ..., v_k = t`; element `z` of group `i` is an edge
/// `v_{i-1} -> v_i` with weight `(z, T - z)`. Budgets `L = T` and
/// `C = T(k-1)` force both sums to be tight on any feasible path.
pub fn ksum_to_multigraph(inst: &KSumInstance) -> Result<(BicriteriaInstance, GadgetTrace)> {
    check_valid(inst)?;
    let k = inst.k();
    let target = to_u64(&inst.target)?;
    let budget_cost = target
        .checked_mul(k as u64 - 1)
        .ok_or_else(|| Error::Overflow(format!("{target} * {}", k - 1)))?;
    let mut b = GraphBuilder::new(k + 1);
    for (g, group) in inst.groups.iter().enumerate() {
        for (e, z) in group.iter().enumerate() {
            let z = at_most(z, target, || format!("element {e} of group {g}"))?;
            b.edge(g, g + 1, z, target - z, EdgeOrigin::Element { group: g, element: e });
        }
    }
    let (g, origins) = b.finish(0, k, target, budget_cost);
    Ok((g, GadgetTrace { origins, entries: vec![1] }))
}

/// The k-SUM tuple chosen by a path of [`ksum_to_multigraph`].
pub fn decode_ksum_path(trace: &GadgetTrace, edges: &[usize]) -> Result<Vec<usize>> {
    let mut picks = Vec::new();
    for &ei in edges {
        match trace.origins.get(ei) {
            Some(EdgeOrigin::Element { group, element }) if *group == picks.len() => picks.push(*element),
            Some(EdgeOrigin::Subdivision) => {}
            _ => return Err(Error::NotASolution),
        }
    }
    Ok(picks)
}

/// Maps a layered instance to bicriteria form: weight `x` becomes
/// `(x, W - x)`, a new `s` feeds the first layer and the last layer feeds a
/// new `t`, both through `(0, 0)` edges.
///
/// Every path has exactly `k - 1` weighted edges, so cost is
/// `(k-1)W - length` and the budgets `L = T`, `C = (k-1)W - T` are met iff
/// the length is exactly `T`. Layered vertices keep their ids; `s = n` and
/// `t = n + 1`. Returns no instance when `T > (k-1)W`, which no path reaches.
pub fn exactpath_to_bicriteria(inst: &ExactKPathInstance) -> Result<Vec<BicriteriaInstance>> {
    check_valid(inst)?;
    let g = &inst.graph;
    let k = g.num_layers;
    let w = inst.weight_bound;
    let span = (k.saturating_sub(1) as u64)
        .checked_mul(w)
        .ok_or_else(|| Error::Overflow(format!("{} * {w}", k.saturating_sub(1))))?;
    if k == 0 || inst.target > span {
        return Ok(Vec::new());
    }
    let n = g.num_vertices();
    let (s, t) = (n, n + 1);
    let mut b = GraphBuilder::new(n + 2);
    for e in &g.edges {
        b.edge(e.from, e.to, e.weight, w - e.weight, EdgeOrigin::Subdivision);
    }
    for v in g.layer(0) {
        b.edge(s, v, 0, 0, EdgeOrigin::Subdivision);
    }
    for v in g.layer(k - 1) {
        b.edge(v, t, 0, 0, EdgeOrigin::Subdivision);
    }
    let (out, _) = b.finish(s, t, inst.target, span - inst.target);
    Ok(vec![out])
}
