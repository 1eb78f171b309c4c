//! JSON wire formats.
//!
//! Big integers are written as decimal strings and accepted as either strings
//! or JSON integers. Serialization is canonical: instance constructors sort
//! items and edges, so `serialize(deserialize(s)) == s` for canonical `s`.

use num_bigint::BigUint;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use super::*;

/// A non-negative integer carried as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dec(pub BigUint);

impl Serialize for Dec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for Dec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct DecVisitor;
        impl Visitor<'_> for DecVisitor {
            type Value = Dec;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a non-negative decimal string or integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Dec, E> {
                if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(E::custom(format!("not a non-negative decimal: {v:?}")));
                }
                BigUint::parse_bytes(v.as_bytes(), 10)
                    .map(Dec)
                    .ok_or_else(|| E::custom("bad decimal"))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Dec, E> {
                Ok(Dec(BigUint::from(v)))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Dec, E> {
                u64::try_from(v)
                    .map(|v| Dec(BigUint::from(v)))
                    .map_err(|_| E::custom("negative values are not allowed"))
            }
        }
        d.deserialize_any(DecVisitor)
    }
}

fn dec_to_u64<E: de::Error>(d: &Dec) -> std::result::Result<u64, E> {
    to_u64(&d.0).map_err(E::custom)
}

pub(crate) fn bits_of(value: &BigUint) -> String {
    value.to_str_radix(2)
}

// --- Subset Sum -------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SubsetSumRepr {
    items: Vec<Dec>,
    target: Dec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target_bits: Option<String>,
}

impl SubsetSumInstance {
    fn repr(&self, with_bits: bool) -> SubsetSumRepr {
        SubsetSumRepr {
            items: self.items.iter().cloned().map(Dec).collect(),
            target: Dec(self.target.clone()),
            target_bits: with_bits.then(|| bits_of(&self.target)),
        }
    }

    /// Canonical JSON plus the `target_bits` annotation.
    pub fn to_json_with_bits(&self) -> String {
        serde_json::to_string(&self.repr(true)).expect("serializable")
    }
}

impl Serialize for SubsetSumInstance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.repr(false).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubsetSumInstance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SubsetSumRepr::deserialize(d)?;
        if let Some(bits) = &r.target_bits {
            if *bits != bits_of(&r.target.0) {
                return Err(de::Error::custom("target_bits does not match target"));
            }
        }
        Ok(SubsetSumInstance::new(r.items.into_iter().map(|d| d.0).collect(), r.target.0))
    }
}

// --- k-SUM ------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct KSumRepr {
    groups: Vec<Vec<Dec>>,
    target: Dec,
}

impl Serialize for KSumInstance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KSumRepr {
            groups: self.groups.iter().map(|g| g.iter().cloned().map(Dec).collect()).collect(),
            target: Dec(self.target.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KSumInstance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = KSumRepr::deserialize(d)?;
        Ok(KSumInstance::new(
            r.groups.into_iter().map(|g| g.into_iter().map(|d| d.0).collect()).collect(),
            r.target.0,
        ))
    }
}

// --- CSP --------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ConstraintRepr {
    vars: Vec<usize>,
    tuples: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct CspRepr {
    universe_bits: u32,
    vars: usize,
    constraints: Vec<ConstraintRepr>,
}

impl Serialize for CspInstance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CspRepr {
            universe_bits: self.universe_bits,
            vars: self.num_vars,
            constraints: self
                .constraints
                .iter()
                .map(|c| ConstraintRepr { vars: c.vars.clone(), tuples: c.tuples.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CspInstance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CspRepr::deserialize(d)?;
        if r.universe_bits > MAX_UNIVERSE_BITS {
            return Err(de::Error::custom(format!("universe_bits {} too wide", r.universe_bits)));
        }
        Ok(CspInstance::new(
            r.vars,
            r.universe_bits,
            r.constraints.into_iter().map(|c| Constraint::new(c.vars, c.tuples)).collect(),
        ))
    }
}

// --- Bicriteria graphs ------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize, u64, u64)>,
    s: usize,
    t: usize,
    #[serde(rename = "L")]
    budget_length: Dec,
    #[serde(rename = "C")]
    budget_cost: Dec,
}

impl Serialize for BicriteriaInstance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges.iter().map(|e| (e.tail, e.head, e.length, e.cost)).collect(),
            s: self.s,
            t: self.t,
            budget_length: Dec(self.budget_length.into()),
            budget_cost: Dec(self.budget_cost.into()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BicriteriaInstance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GraphRepr::deserialize(d)?;
        Ok(BicriteriaInstance::new(
            r.n,
            r.edges.into_iter().map(|(u, v, l, c)| Edge::new(u, v, l, c)).collect(),
            r.s,
            r.t,
            dec_to_u64(&r.budget_length)?,
            dec_to_u64(&r.budget_cost)?,
        ))
    }
}

// --- Exact k-path -----------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ExactRepr {
    k: usize,
    layers: Vec<usize>,
    edges: Vec<(usize, usize, u64)>,
    target: Dec,
    #[serde(rename = "W")]
    weight_bound: Dec,
}

impl Serialize for ExactKPathInstance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExactRepr {
            k: self.graph.num_layers,
            layers: self.graph.layer_of.clone(),
            edges: self.graph.edges.iter().map(|e| (e.from, e.to, e.weight)).collect(),
            target: Dec(self.target.into()),
            weight_bound: Dec(self.weight_bound.into()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactKPathInstance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ExactRepr::deserialize(d)?;
        let edges = r.edges.into_iter().map(|(from, to, weight)| LayeredEdge { from, to, weight }).collect();
        Ok(ExactKPathInstance {
            graph: LayeredGraph::new(r.k, r.layers, edges),
            target: dec_to_u64(&r.target)?,
            weight_bound: dec_to_u64(&r.weight_bound)?,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ExactBicritRepr {
    k: usize,
    layers: Vec<usize>,
    edges: Vec<(usize, usize, u64, u64)>,
    #[serde(rename = "T1")]
    target1: Dec,
    #[serde(rename = "T2")]
    target2: Dec,
    #[serde(rename = "W")]
    weight_bound: Dec,
}

impl Serialize for ExactBicritKPathInstance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExactBicritRepr {
            k: self.graph.num_layers,
            layers: self.graph.layer_of.clone(),
            edges: self.graph.edges.iter().map(|e| (e.from, e.to, e.weight.0, e.weight.1)).collect(),
            target1: Dec(self.targets.0.into()),
            target2: Dec(self.targets.1.into()),
            weight_bound: Dec(self.weight_bound.into()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactBicritKPathInstance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ExactBicritRepr::deserialize(d)?;
        let edges = r
            .edges
            .into_iter()
            .map(|(from, to, a, b)| LayeredEdge { from, to, weight: (a, b) })
            .collect();
        Ok(ExactBicritKPathInstance {
            graph: LayeredGraph::new(r.k, r.layers, edges),
            targets: (dec_to_u64(&r.target1)?, dec_to_u64(&r.target2)?),
            weight_bound: dec_to_u64(&r.weight_bound)?,
        })
    }
}

// --- Bundles and dispatch ---------------------------------------------------

/// One member instance per line.
pub fn bundle_to_jsonl(bundle: &OrBundle) -> String {
    bundle
        .instances
        .iter()
        .map(|i| serde_json::to_string(i).expect("serializable") + "\n")
        .collect()
}

pub fn bundle_from_jsonl(text: &str) -> Result<OrBundle> {
    let instances = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(OrBundle { instances })
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("instance types always serialize")
}

/// Writes an instance in the form [`parse_any`] reads back: DIMACS for CNF,
/// one member per line for bundles, canonical JSON otherwise. A bundle with a
/// single member reads back as that member.
pub fn write_any(inst: &AnyInstance) -> String {
    match inst {
        AnyInstance::Cnf(x) => super::dimacs::write_dimacs(x),
        AnyInstance::Bundle(x) => bundle_to_jsonl(x),
        AnyInstance::Csp(x) => to_canonical_json(x),
        AnyInstance::SubsetSum(x) => to_canonical_json(x),
        AnyInstance::KSum(x) => to_canonical_json(x),
        AnyInstance::Bicriteria(x) => to_canonical_json(x),
        AnyInstance::ExactKPath(x) => to_canonical_json(x),
        AnyInstance::ExactBicritKPath(x) => to_canonical_json(x),
    }
}

/// Reads an instance, guessing its type from the document's keys. DIMACS
/// text and multi-line JSON-lines bundles are recognised as well.
pub fn parse_any(text: &str) -> Result<AnyInstance> {
    let trimmed = text.trim_start();
    if !trimmed.starts_with('{') {
        return Ok(AnyInstance::Cnf(parse_dimacs(text)?));
    }
    let non_empty: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if non_empty.len() > 1 && non_empty.iter().all(|l| serde_json::from_str::<Value>(l).is_ok()) {
        return Ok(AnyInstance::Bundle(bundle_from_jsonl(text)?));
    }
    let value: Value = serde_json::from_str(text)?;
    let has = |k: &str| value.get(k).is_some();
    Ok(if has("items") {
        AnyInstance::SubsetSum(serde_json::from_value(value)?)
    } else if has("groups") {
        AnyInstance::KSum(serde_json::from_value(value)?)
    } else if has("universe_bits") {
        AnyInstance::Csp(serde_json::from_value(value)?)
    } else if has("layers") && has("T1") {
        AnyInstance::ExactBicritKPath(serde_json::from_value(value)?)
    } else if has("layers") {
        AnyInstance::ExactKPath(serde_json::from_value(value)?)
    } else if has("edges") {
        AnyInstance::Bicriteria(serde_json::from_value(value)?)
    } else {
        return Err(Error::InvalidInstance("unrecognised instance document".into()));
    })
}
