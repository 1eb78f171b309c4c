//! Canonical instance types shared by every reduction and solver.
//!
//! All types are plain data with public fields so that malformed inputs can be
//! represented and reported by [`Instance::validate`]. The constructors
//! (`new`) produce canonical values: item lists and edge lists are sorted and
//! derived statistics (occurrence, degree and arity bounds) are computed.

mod dimacs;
pub mod format;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dimacs::{parse_dimacs, write_dimacs};

/// Signed DIMACS literal: `v` or `-v` for variable `v >= 1`.
pub type Literal = i32;

pub(crate) fn to_u64(value: &BigUint) -> Result<u64> {
    value.to_u64().ok_or_else(|| Error::Overflow(value.to_string()))
}

/// One violated invariant found by [`Instance::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    LiteralOutOfRange { clause: usize, literal: Literal },
    EmptyClause { clause: usize },
    OccurrenceBoundMismatch { recorded: usize, actual: usize },
    UniverseTooWide { bits: u32 },
    VariableOutOfRange { constraint: usize, var: usize },
    RepeatedVariable { constraint: usize, var: usize },
    TupleArity { constraint: usize, tuple: usize },
    TupleValueOutOfRange { constraint: usize, tuple: usize, value: u64 },
    DegreeBoundMismatch { recorded: usize, actual: usize },
    ArityBoundMismatch { recorded: usize, actual: usize },
    TooFewGroups { groups: usize },
    SelfLoop { edge: usize },
    VertexOutOfRange { edge: usize },
    SourceEqualsSink,
    EndpointOutOfRange,
    ParallelEdge { edge: usize },
    LayeringViolated { edge: usize },
    LayerOutOfRange { vertex: usize },
    WeightAboveBound { edge: usize },
    EmptyBundle,
    Member { index: usize, violation: Box<Violation> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            LiteralOutOfRange { clause, literal } => {
                write!(f, "literal {literal} in clause {clause} is out of range")
            }
            EmptyClause { clause } => write!(f, "clause {clause} is empty"),
            OccurrenceBoundMismatch { recorded, actual } => write!(
                f,
                "occurrence bound {recorded} differs from actual maximum {actual}"
            ),
            UniverseTooWide { bits } => write!(f, "universe of {bits} bits is too wide"),
            VariableOutOfRange { constraint, var } => {
                write!(f, "constraint {constraint} references unknown variable {var}")
            }
            RepeatedVariable { constraint, var } => {
                write!(f, "constraint {constraint} lists variable {var} twice")
            }
            TupleArity { constraint, tuple } => {
                write!(f, "tuple {tuple} of constraint {constraint} has the wrong length")
            }
            TupleValueOutOfRange { constraint, tuple, value } => write!(
                f,
                "tuple {tuple} of constraint {constraint} has value {value} outside the universe"
            ),
            DegreeBoundMismatch { recorded, actual } => {
                write!(f, "degree bound {recorded} differs from actual maximum {actual}")
            }
            ArityBoundMismatch { recorded, actual } => {
                write!(f, "arity bound {recorded} differs from actual maximum {actual}")
            }
            TooFewGroups { groups } => write!(f, "k-SUM needs at least 2 groups, got {groups}"),
            SelfLoop { edge } => write!(f, "self-loop at edge {edge}"),
            VertexOutOfRange { edge } => write!(f, "edge {edge} references an unknown vertex"),
            SourceEqualsSink => write!(f, "source equals sink"),
            EndpointOutOfRange => write!(f, "source or sink is not a vertex"),
            ParallelEdge { edge } => write!(f, "edge {edge} is parallel to an earlier edge"),
            LayeringViolated { edge } => write!(f, "layering violated by edge {edge}"),
            LayerOutOfRange { vertex } => write!(f, "vertex {vertex} has no valid layer"),
            WeightAboveBound { edge } => write!(f, "edge {edge} exceeds the weight bound"),
            EmptyBundle => write!(f, "OR-bundle is empty"),
            Member { index, violation } => write!(f, "member {index}: {violation}"),
        }
    }
}

/// Witness for a YES answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SolutionCertificate {
    /// Indices into the (sorted) item list.
    Subset { items: Vec<usize> },
    /// One element index per k-SUM group.
    Tuple { picks: Vec<usize> },
    /// Edge indices of an s,t-path, in path order.
    Path { edges: Vec<usize> },
    /// Vertices (one per layer) and the edges joining them.
    LayeredPath { vertices: Vec<usize>, edges: Vec<usize> },
    /// CSP values in `[1, 2^a]`, or CNF values in `{0, 1}`.
    Assignment { values: Vec<u64> },
}

/// Shared behaviour of every instance type.
pub trait Instance {
    /// Lists violated invariants; an empty list means the instance is valid.
    fn validate(&self) -> Vec<Violation>;

    /// Replays `cert` against the instance's defining predicate.
    fn check_certificate(&self, cert: &SolutionCertificate) -> Result<bool>;

    fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

// ---------------------------------------------------------------------------
// CNF

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Literal>>,
    /// Maximum number of clauses any single variable appears in.
    pub occurrence_bound: usize,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Self {
        let mut formula = CnfFormula { num_vars, clauses, occurrence_bound: 0 };
        formula.occurrence_bound = formula.occurrences().into_iter().max().unwrap_or(0);
        formula
    }

    /// Number of clauses each variable (index `v - 1`) occurs in.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.num_vars];
        for clause in &self.clauses {
            let vars: HashSet<usize> = clause.iter().map(|l| l.unsigned_abs() as usize).collect();
            for v in vars {
                if v >= 1 && v <= self.num_vars {
                    counts[v - 1] += 1;
                }
            }
        }
        counts
    }

    /// Widest clause (the `k` of k-SAT).
    pub fn clause_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = assignment[lit.unsigned_abs() as usize - 1];
                if lit > 0 { value } else { !value }
            })
        })
    }
}

impl Instance for CnfFormula {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, clause) in self.clauses.iter().enumerate() {
            if clause.is_empty() {
                out.push(Violation::EmptyClause { clause: i });
            }
            for &lit in clause {
                let v = lit.unsigned_abs() as usize;
                if lit == 0 || v > self.num_vars {
                    out.push(Violation::LiteralOutOfRange { clause: i, literal: lit });
                }
            }
        }
        let actual = self.occurrences().into_iter().max().unwrap_or(0);
        if actual != self.occurrence_bound {
            out.push(Violation::OccurrenceBoundMismatch { recorded: self.occurrence_bound, actual });
        }
        out
    }

    fn check_certificate(&self, cert: &SolutionCertificate) -> Result<bool> {
        let SolutionCertificate::Assignment { values } = cert else {
            return Err(Error::CertificateMismatch);
        };
        if values.len() != self.num_vars || values.iter().any(|&v| v > 1) {
            return Ok(false);
        }
        let bools: Vec<bool> = values.iter().map(|&v| v == 1).collect();
        Ok(self.is_satisfied_by(&bools))
    }
}

// ---------------------------------------------------------------------------
// CSP

/// A constraint given extensionally by its satisfying tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub vars: Vec<usize>,
    /// Satisfying assignments, entries in `[1, 2^a]`, one entry per listed variable.
    pub tuples: Vec<Vec<u64>>,
}

impl Constraint {
    /// Sorts and deduplicates the tuple list.
    pub fn new(vars: Vec<usize>, mut tuples: Vec<Vec<u64>>) -> Self {
        tuples.sort();
        tuples.dedup();
        Constraint { vars, tuples }
    }

    pub fn is_satisfied_by(&self, assignment: &[u64]) -> bool {
        let probe: Vec<u64> = self.vars.iter().map(|&v| assignment[v]).collect();
        self.tuples.binary_search(&probe).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    pub num_vars: usize,
    /// The universe is `[2^universe_bits] = {1, ..., 2^universe_bits}`.
    pub universe_bits: u32,
    pub constraints: Vec<Constraint>,
    pub degree_bound: usize,
    pub arity_bound: usize,
}

/// Widest universe the toolkit accepts; values are stored as `u64`.
pub const MAX_UNIVERSE_BITS: u32 = 32;

impl CspInstance {
    pub fn new(num_vars: usize, universe_bits: u32, constraints: Vec<Constraint>) -> Self {
        let mut csp = CspInstance { num_vars, universe_bits, constraints, degree_bound: 0, arity_bound: 0 };
        csp.degree_bound = csp.degrees().into_iter().max().unwrap_or(0);
        csp.arity_bound = csp.constraints.iter().map(|c| c.vars.len()).max().unwrap_or(0);
        csp
    }

    pub fn universe_size(&self) -> u64 {
        1u64 << self.universe_bits
    }

    /// `d(x)`: number of constraints containing each variable.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.num_vars];
        for c in &self.constraints {
            let distinct: HashSet<usize> = c.vars.iter().copied().collect();
            for v in distinct {
                if v < self.num_vars {
                    deg[v] += 1;
                }
            }
        }
        deg
    }

    /// The `lambda` bounding both variable degree and constraint arity.
    pub fn lambda(&self) -> usize {
        self.degree_bound.max(self.arity_bound)
    }

    pub fn is_satisfied_by(&self, assignment: &[u64]) -> bool {
        assignment.len() == self.num_vars
            && assignment.iter().all(|&v| v >= 1 && v <= self.universe_size())
            && self.constraints.iter().all(|c| c.is_satisfied_by(assignment))
    }
}

impl Instance for CspInstance {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.universe_bits > MAX_UNIVERSE_BITS {
            out.push(Violation::UniverseTooWide { bits: self.universe_bits });
            return out;
        }
        let size = self.universe_size();
        for (ci, c) in self.constraints.iter().enumerate() {
            let mut seen = HashSet::new();
            for &v in &c.vars {
                if v >= self.num_vars {
                    out.push(Violation::VariableOutOfRange { constraint: ci, var: v });
                }
                if !seen.insert(v) {
                    out.push(Violation::RepeatedVariable { constraint: ci, var: v });
                }
            }
            for (ti, t) in c.tuples.iter().enumerate() {
                if t.len() != c.vars.len() {
                    out.push(Violation::TupleArity { constraint: ci, tuple: ti });
                }
                for &value in t {
                    if value < 1 || value > size {
                        out.push(Violation::TupleValueOutOfRange { constraint: ci, tuple: ti, value });
                    }
                }
            }
        }
        let degree = self.degrees().into_iter().max().unwrap_or(0);
        if degree != self.degree_bound {
            out.push(Violation::DegreeBoundMismatch { recorded: self.degree_bound, actual: degree });
        }
        let arity = self.constraints.iter().map(|c| c.vars.len()).max().unwrap_or(0);
        if arity != self.arity_bound {
            out.push(Violation::ArityBoundMismatch { recorded: self.arity_bound, actual: arity });
        }
        out
    }

    fn check_certificate(&self, cert: &SolutionCertificate) -> Result<bool> {
        let SolutionCertificate::Assignment { values } = cert else {
            return Err(Error::CertificateMismatch);
        };
        Ok(self.is_satisfied_by(values))
    }
}

// ---------------------------------------------------------------------------
// Subset Sum and k-SUM

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetSumInstance {
    /// Multiset of items, kept sorted.
    pub items: Vec<BigUint>,
    pub target: BigUint,
}

impl SubsetSumInstance {
    pub fn new(mut items: Vec<BigUint>, target: BigUint) -> Self {
        items.sort();
        SubsetSumInstance { items, target }
    }

    pub fn from_u64(items: &[u64], target: u64) -> Self {
        Self::new(items.iter().map(|&x| BigUint::from(x)).collect(), BigUint::from(target))
    }

    pub fn sum_of(&self, indices: &[usize]) -> BigUint {
        indices.iter().map(|&i| &self.items[i]).sum()
    }
}

fn distinct_in_range(indices: &[usize], len: usize) -> bool {
    let mut seen = HashSet::new();
    indices.iter().all(|&i| i < len && seen.insert(i))
}

impl Instance for SubsetSumInstance {
    fn validate(&self) -> Vec<Violation> {
        // BigUint is non-negative by construction.
        Vec::new()
    }

    fn check_certificate(&self, cert: &SolutionCertificate) -> Result<bool> {
        let SolutionCertificate::Subset { items } = cert else {
            return Err(Error::CertificateMismatch);
        };
        Ok(distinct_in_range(items, self.items.len()) && self.sum_of(items) == self.target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSumInstance {
    /// `Z_1, ..., Z_k`, each sorted.
    pub groups: Vec<Vec<BigUint>>,
    pub target: BigUint,
}

impl KSumInstance {
    pub fn new(groups: Vec<Vec<BigUint>>, target: BigUint) -> Self {
        let groups = groups
            .into_iter()
            .map(|mut g| {
                g.sort();
                g
            })
            .collect();
        KSumInstance { groups, target }
    }

    pub fn from_u64(groups: &[&[u64]], target: u64) -> Self {
        Self::new(
            groups.iter().map(|g| g.iter().map(|&x| BigUint::from(x)).collect()).collect(),
            BigUint::from(target),
        )
    }

    pub fn k(&self) -> usize {
        self.groups.len()
    }
}

impl Instance for KSumInstance {
    fn validate(&self) -> Vec<Violation> {
        if self.groups.len() < 2 {
            vec![Violation::TooFewGroups { groups: self.groups.len() }]
        } else {
            Vec::new()
        }
    }

    fn check_certificate(&self, cert: &SolutionCertificate) -> Result<bool> {
        let SolutionCertificate::Tuple { picks } = cert else {
            return Err(Error::CertificateMismatch);
        };
        if picks.len() != self.groups.len() {
            return Ok(false);
        }
        let mut sum = BigUint::zero();
        for (group, &pick) in self.groups.iter().zip(picks) {
            match group.get(pick) {
                Some(value) => sum += value,
                None => return Ok(false),
            }
        }
        Ok(sum == self.target)
    }
}

/// OR-composition of Subset Sum instances: YES iff some member is YES.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrBundle {
    pub instances: Vec<SubsetSumInstance>,
}

impl OrBundle {
    /// Largest item or target over all members.
    pub fn max_value(&self) -> BigUint {
        self.instances
            .iter()
            .flat_map(|inst| inst.items.iter().chain(std::iter::once(&inst.target)))
            .max()
            .cloned()
            .unwrap_or_default()
    }

    pub fn max_len(&self) -> usize {
        self.instances.iter().map(|i| i.items.len()).max().unwrap_or(0)
    }
}

impl Instance for OrBundle {
    fn validate(&self) -> Vec<Violation> {
        if self.instances.is_empty() {
            return vec![Violation::EmptyBundle];
        }
        self.instances
            .iter()
            .enumerate()
            .flat_map(|(index, inst)| {
                inst.validate()
                    .into_iter()
                    .map(move |v| Violation::Member { index, violation: Box::new(v) })
            })
            .collect()
    }

    fn check_certificate(&self, _cert: &SolutionCertificate) -> Result<bool> {
        Err(Error::CertificateMismatch)
    }
}

// ---------------------------------------------------------------------------
// Bicriteria s,t-path

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub length: u64,
    pub cost: u64,
}

impl Edge {
    pub fn new(tail: usize, head: usize, length: u64, cost: u64) -> Self {
        Edge { tail, head, length, cost }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicriteriaInstance {
    pub n: usize,
    /// Sorted by `(tail, head, length, cost)`.
    pub edges: Vec<Edge>,
    pub s: usize,
    pub t: usize,
    pub budget_length: u64,
    pub budget_cost: u64,
}

impl BicriteriaInstance {
    pub fn new(n: usize, mut edges: Vec<Edge>, s: usize, t: usize, budget_length: u64, budget_cost: u64) -> Self {
        edges.sort();
        BicriteriaInstance { n, edges, s, t, budget_length, budget_cost }
    }

    /// Outgoing edge indices per vertex, in index order.
    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            if e.tail < self.n {
                adj[e.tail].push(i);
            }
        }
        adj
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.edges.windows(2).any(|w| (w[0].tail, w[0].head) == (w[1].tail, w[1].head))
    }

    /// Number of distinct edge lengths (`lambda`) and costs (`chi`).
    pub fn distinct_weights(&self) -> (usize, usize) {
        let lengths: HashSet<u64> = self.edges.iter().map(|e| e.length).collect();
        let costs: HashSet<u64> = self.edges.iter().map(|e| e.cost).collect();
        (lengths.len(), costs.len())
    }

    /// Topological order, or `None` if the graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indegree = vec![0usize; self.n];
        for e in &self.edges {
            indegree[e.head] += 1;
        }
        let adj = self.out_edges();
        let mut stack: Vec<usize> = (0..self.n).rev().filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &ei in adj[v].iter().rev() {
                let h = self.edges[ei].head;
                indegree[h] -= 1;
                if indegree[h] == 0 {
                    stack.push(h);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// `(length, cost)` of an edge sequence, or `None` if it is not an s,t-path
    /// (walks revisiting a vertex are rejected).
    pub fn path_weight(&self, edges: &[usize]) -> Option<(u128, u128)> {
        let mut at = self.s;
        let mut seen = HashSet::from([self.s]);
        let (mut length, mut cost) = (0u128, 0u128);
        for &ei in edges {
            let e = self.edges.get(ei)?;
            if e.tail != at || !seen.insert(e.head) {
                return None;
            }
            length += e.length as u128;
            cost += e.cost as u128;
            at = e.head;
        }
        (at == self.t).then_some((length, cost))
    }
}

impl Instance for BicriteriaInstance {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.s >= self.n || self.t >= self.n {
            out.push(Violation::EndpointOutOfRange);
        }
        if self.s == self.t {
            out.push(Violation::SourceEqualsSink);
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.tail >= self.n || e.head >= self.n {
                out.push(Violation::VertexOutOfRange { edge: i });
            }
            if e.tail == e.head {
                out.push(Violation::SelfLoop { edge: i });
            }
        }
        out
    }

    fn check_certificate(&self, cert: &SolutionCertificate) -> Result<bool> {
        let SolutionCertificate::Path { edges } = cert else {
            return Err(Error::CertificateMismatch);
        };
        Ok(match self.path_weight(edges) {
            Some((l, c)) => l <= self.budget_length as u128 && c <= self.budget_cost as u128,
            None => false,
        })
    }
}

// ---------------------------------------------------------------------------
// Layered graphs and exact k-path

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LayeredEdge<W> {
    pub from: usize,
    pub to: usize,
    pub weight: W,
}

/// Graph whose vertices are split into classes `V_1, ..., V_k` (stored
/// 0-based) with edges only from one class to the next.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LayeredGraph<W> {
    pub num_layers: usize,
    pub layer_of: Vec<usize>,
    /// Sorted by `(from, to, weight)`.
    pub edges: Vec<LayeredEdge<W>>,
}

impl<W: Ord + Copy> LayeredGraph<W> {
    pub fn new(num_layers: usize, layer_of: Vec<usize>, mut edges: Vec<LayeredEdge<W>>) -> Self {
        edges.sort();
        LayeredGraph { num_layers, layer_of, edges }
    }

    pub fn num_vertices(&self) -> usize {
        self.layer_of.len()
    }

    pub fn layer(&self, i: usize) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.layer_of[v] == i).collect()
    }

    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.from].push(i);
        }
        adj
    }

    pub fn in_edges(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.to].push(i);
        }
        adj
    }

    fn structural_violations(&self, within_bound: impl Fn(&W) -> bool) -> Vec<Violation> {
        let mut out = Vec::new();
        for (v, &layer) in self.layer_of.iter().enumerate() {
            if layer >= self.num_layers {
                out.push(Violation::LayerOutOfRange { vertex: v });
            }
        }
        let n = self.num_vertices();
        for (i, e) in self.edges.iter().enumerate() {
            if e.from >= n || e.to >= n {
                out.push(Violation::VertexOutOfRange { edge: i });
                continue;
            }
            if e.from == e.to {
                out.push(Violation::SelfLoop { edge: i });
            }
            if self.layer_of[e.to] != self.layer_of[e.from] + 1 {
                out.push(Violation::LayeringViolated { edge: i });
            }
            if !within_bound(&e.weight) {
                out.push(Violation::WeightAboveBound { edge: i });
            }
        }
        out
    }

    /// Checks that `vertices`/`edges` form a path through all layers and
    /// returns the edge weights along it.
    fn replay_path(&self, vertices: &[usize], edges: &[usize]) -> Option<Vec<W>> {
        if vertices.len() != self.num_layers || edges.len() + 1 != vertices.len().max(1) {
            return None;
        }
        for (i, &v) in vertices.iter().enumerate() {
            if self.layer_of.get(v) != Some(&i) {
                return None;
            }
        }
        edges
            .iter()
            .enumerate()
            .map(|(i, &ei)| {
                let e = self.edges.get(ei)?;
                (e.from == vertices[i] && e.to == vertices[i + 1]).then_some(e.weight)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactKPathInstance {
    pub graph: LayeredGraph<u64>,
    pub target: u64,
    pub weight_bound: u64,
}

impl ExactKPathInstance {
    /// Path size `k` (number of vertices on a solution path).
    pub fn k(&self) -> usize {
        self.graph.num_layers
    }
}

impl Instance for ExactKPathInstance {
    fn validate(&self) -> Vec<Violation> {
        self.graph.structural_violations(|&w| w <= self.weight_bound)
    }

    fn check_certificate(&self, cert: &SolutionCertificate) -> Result<bool> {
        let SolutionCertificate::LayeredPath { vertices, edges } = cert else {
            return Err(Error::CertificateMismatch);
        };
        Ok(match self.graph.replay_path(vertices, edges) {
            Some(weights) => weights.iter().map(|&w| w as u128).sum::<u128>() == self.target as u128,
            None => false,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactBicritKPathInstance {
    pub graph: LayeredGraph<(u64, u64)>,
    pub targets: (u64, u64),
    pub weight_bound: u64,
}

impl ExactBicritKPathInstance {
    pub fn k(&self) -> usize {
        self.graph.num_layers
    }
}

impl Instance for ExactBicritKPathInstance {
    fn validate(&self) -> Vec<Violation> {
        self.graph
            .structural_violations(|&(a, b)| a <= self.weight_bound && b <= self.weight_bound)
    }

    fn check_certificate(&self, cert: &SolutionCertificate) -> Result<bool> {
        let SolutionCertificate::LayeredPath { vertices, edges } = cert else {
            return Err(Error::CertificateMismatch);
        };
        Ok(match self.graph.replay_path(vertices, edges) {
            Some(weights) => {
                let w1: u128 = weights.iter().map(|w| w.0 as u128).sum();
                let w2: u128 = weights.iter().map(|w| w.1 as u128).sum();
                (w1, w2) == (self.targets.0 as u128, self.targets.1 as u128)
            }
            None => false,
        })
    }
}

// ---------------------------------------------------------------------------

/// Any instance the toolkit reads or writes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyInstance {
    Cnf(CnfFormula),
    Csp(CspInstance),
    SubsetSum(SubsetSumInstance),
    KSum(KSumInstance),
    Bundle(OrBundle),
    Bicriteria(BicriteriaInstance),
    ExactKPath(ExactKPathInstance),
    ExactBicritKPath(ExactBicritKPathInstance),
}

impl AnyInstance {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyInstance::Cnf(_) => "cnf",
            AnyInstance::Csp(_) => "csp",
            AnyInstance::SubsetSum(_) => "subset-sum",
            AnyInstance::KSum(_) => "ksum",
            AnyInstance::Bundle(_) => "or-bundle",
            AnyInstance::Bicriteria(_) => "bicriteria",
            AnyInstance::ExactKPath(_) => "exact-kpath",
            AnyInstance::ExactBicritKPath(_) => "exact-bicrit-kpath",
        }
    }

    fn inner(&self) -> &dyn Instance {
        match self {
            AnyInstance::Cnf(x) => x,
            AnyInstance::Csp(x) => x,
            AnyInstance::SubsetSum(x) => x,
            AnyInstance::KSum(x) => x,
            AnyInstance::Bundle(x) => x,
            AnyInstance::Bicriteria(x) => x,
            AnyInstance::ExactKPath(x) => x,
            AnyInstance::ExactBicritKPath(x) => x,
        }
    }
}

impl Instance for AnyInstance {
    fn validate(&self) -> Vec<Violation> {
        self.inner().validate()
    }

    fn check_certificate(&self, cert: &SolutionCertificate) -> Result<bool> {
        self.inner().check_certificate(cert)
    }
}
