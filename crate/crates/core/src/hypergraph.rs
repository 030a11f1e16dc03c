//! Labeled multi-hypergraphs: degrees, uniformity and regularity, duality,
//! induced subhypergraphs, partial hypergraphs and the minimality predicates.
//!
//! Edges form an ordered list with multiset semantics. A hypergraph is
//! *proper* when every edge is nonempty and every node lies in some edge.
//! Induced subhypergraphs keep edges that become empty, so they may fail both
//! conditions; those values are marked [`Origin::Derived`].

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coalition::{Coalition, MAX_NODES};
use crate::error::{invalid, out_of_range, parse_err, Error, Result};

/// Above this node count the minimal-uniformity test switches from scanning
/// every node subset to a search over distinct incidence columns.
const SCAN_NODE_LIMIT: usize = 16;
/// Same switch for the edge side, measured as the number of sub-multisets.
const SCAN_SUBMULTISET_LIMIT: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Built through a validating constructor: spanning, no empty edges.
    Proper,
    /// Produced by a restriction; may contain empty edges or uncovered nodes.
    Derived,
}

#[derive(Clone, Debug)]
pub struct Hypergraph {
    nodes: usize,
    edges: Vec<Coalition>,
    origin: Origin,
}

/// Equality compares node count and the ordered edge list; the origin tag is
/// bookkeeping only.
impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

/// An induced subhypergraph together with the original label of each new node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subhypergraph {
    pub graph: Hypergraph,
    /// `labels[i]` is the original id of new node `i + 1`.
    pub labels: Vec<usize>,
}

impl Hypergraph {
    /// A proper hypergraph: nonempty edges that together cover `1..=nodes`.
    pub fn new(nodes: usize, edges: Vec<Coalition>) -> Result<Self> {
        let h = Self::derived(nodes, edges)?;
        if let Some(e) = h.edges.iter().find(|e| e.is_empty()) {
            return Err(invalid(format!("empty edge {e} in a proper hypergraph")));
        }
        let covered = h.edges.iter().fold(Coalition::EMPTY, |acc, e| acc.union(*e));
        if covered != h.node_set() {
            let missing = h.node_set().difference(covered);
            return Err(invalid(format!("nodes {missing} are not covered by any edge")));
        }
        Ok(Hypergraph { origin: Origin::Proper, ..h })
    }

    /// Any edge list over `1..=nodes`, empty edges and uncovered nodes allowed.
    pub fn derived(nodes: usize, edges: Vec<Coalition>) -> Result<Self> {
        if nodes == 0 || nodes > MAX_NODES {
            return Err(out_of_range(format!("node count {nodes} not in 1..={MAX_NODES}")));
        }
        if let Some(e) = edges.iter().find(|e| !e.fits(nodes)) {
            return Err(out_of_range(format!("edge {e} exceeds {nodes} nodes")));
        }
        Ok(Hypergraph { nodes, edges, origin: Origin::Derived })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[Coalition] {
        &self.edges
    }

    /// Number of edges, multiplicity counted.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn node_set(&self) -> Coalition {
        Coalition::full(self.nodes)
    }

    /// Structural check: no empty edge and every node covered.
    pub fn is_proper(&self) -> bool {
        !self.edges.is_empty()
            && self.edges.iter().all(|e| !e.is_empty())
            && self.edges.iter().fold(Coalition::EMPTY, |a, e| a.union(*e)) == self.node_set()
    }

    pub fn degree(&self, node: usize) -> Result<usize> {
        if node == 0 || node > self.nodes {
            return Err(out_of_range(format!("node {node} not in 1..={}", self.nodes)));
        }
        Ok(self.edges.iter().filter(|e| e.contains(node)).count())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.nodes];
        for e in &self.edges {
            for x in e.players() {
                d[x - 1] += 1;
            }
        }
        d
    }

    /// `Some(k)` when every node has degree `k`.
    pub fn regularity(&self) -> Option<usize> {
        all_equal(self.degrees().into_iter())
    }

    /// `Some(d)` when every edge has cardinality `d` (empty edges count as 0).
    pub fn uniformity(&self) -> Option<usize> {
        all_equal(self.edges.iter().map(|e| e.len()))
    }

    /// For each node, the set of edge indices (1-based) containing it.
    pub fn stars(&self) -> Result<Vec<Coalition>> {
        if self.edges.len() > MAX_NODES {
            return Err(out_of_range(format!("{} edges exceed {MAX_NODES}", self.edges.len())));
        }
        let mut stars = vec![0u128; self.nodes];
        for (j, e) in self.edges.iter().enumerate() {
            for x in e.players() {
                stars[x - 1] |= 1u128 << j;
            }
        }
        Ok(stars.into_iter().map(Coalition::from_bits).collect())
    }

    /// Exchanges nodes and edges: node `j` of the dual is edge `j` of `self`,
    /// and the dual's edge list is the star of each node in ascending order.
    pub fn dual(&self) -> Result<Hypergraph> {
        if !self.is_proper() {
            return Err(invalid("the dual is defined for proper hypergraphs only"));
        }
        let stars = self.stars()?;
        Hypergraph::new(self.edges.len(), stars)
    }

    /// The subhypergraph induced by the node set `a`, relabeled to
    /// `1..=|a|` in ascending order. Every edge is kept as `e ∩ a`.
    pub fn subhypergraph(&self, a: Coalition) -> Result<Subhypergraph> {
        if a.is_empty() {
            return Err(invalid("induced node set must be nonempty"));
        }
        if !a.is_subset(self.node_set()) {
            return Err(out_of_range(format!("{a} is not a subset of the {} nodes", self.nodes)));
        }
        let labels: Vec<usize> = a.players().collect();
        let edges = self.edges.iter().map(|e| compress(e.intersection(a), a)).collect();
        let graph = Hypergraph { nodes: labels.len(), edges, origin: Origin::Derived };
        Ok(Subhypergraph { graph, labels })
    }

    /// Keeps all nodes and the edge sub-multiset `x`.
    pub fn partial_hypergraph(&self, x: &[Coalition]) -> Result<Hypergraph> {
        let mut available = multiplicities(&self.edges);
        for e in x {
            match available.get_mut(e) {
                Some(m) if *m > 0 => *m -= 1,
                _ => return Err(invalid(format!("{e} is not available in the edge multiset"))),
            }
        }
        let mut h = Hypergraph { nodes: self.nodes, edges: x.to_vec(), origin: Origin::Derived };
        if h.is_proper() {
            h.origin = Origin::Proper;
        }
        Ok(h)
    }

    /// Uniform, and no nonempty proper node subset induces a uniform subhypergraph.
    pub fn is_minimally_uniform(&self) -> bool {
        let Some(k) = self.uniformity() else {
            return false;
        };
        if self.nodes == 1 {
            return true;
        }
        if self.nodes <= SCAN_NODE_LIMIT {
            let full = self.node_set().bits();
            return (1..full).all(|a| {
                let a = Coalition::from_bits(a);
                all_equal(self.edges.iter().map(|e| e.intersection(a).len())).is_none()
            });
        }
        let Ok(stars) = self.stars() else {
            return false;
        };
        // A node outside every edge induces a 0-uniform subhypergraph on its own.
        if stars.iter().any(|s| s.is_empty()) {
            return false;
        }
        !has_proper_level_submultiset(&multiplicities(&stars), self.edges.len(), k)
    }

    /// Regular, and no nonempty proper edge sub-multiset forms a regular
    /// partial hypergraph.
    pub fn is_minimally_regular(&self) -> bool {
        let Some(k) = self.regularity() else {
            return false;
        };
        if self.edges.len() <= 1 {
            return !self.edges.is_empty();
        }
        if self.edges.iter().any(|e| e.is_empty()) {
            return false;
        }
        let groups: Vec<(Coalition, usize)> = multiplicities(&self.edges).into_iter().collect();
        let combos = groups
            .iter()
            .try_fold(1u64, |acc, (_, m)| acc.checked_mul(*m as u64 + 1))
            .unwrap_or(u64::MAX);
        if combos <= SCAN_SUBMULTISET_LIMIT {
            return !scan_regular_submultisets(&groups, self.nodes);
        }
        let groups: BTreeMap<Coalition, usize> = groups.into_iter().collect();
        !has_proper_level_submultiset(&groups, self.nodes, k)
    }

    /// Same hypergraph with edges sorted in canonical order.
    pub fn canonicalize(&self) -> Hypergraph {
        let mut edges = self.edges.clone();
        edges.sort();
        Hypergraph { nodes: self.nodes, edges, origin: self.origin }
    }

    pub fn to_json(&self) -> HypergraphJson {
        HypergraphJson {
            n: self.nodes,
            edges: self.edges.iter().map(|e| e.players().collect()).collect(),
        }
    }

    /// Builds from JSON; proper when the edges allow it, derived otherwise.
    pub fn from_json(j: &HypergraphJson) -> Result<Self> {
        let edges = j
            .edges
            .iter()
            .map(|e| Coalition::from_players(j.n.min(MAX_NODES), e.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(j.n, edges)
    }

    fn from_edges(nodes: usize, edges: Vec<Coalition>) -> Result<Self> {
        let h = Self::derived(nodes, edges)?;
        if h.is_proper() {
            Ok(Hypergraph { origin: Origin::Proper, ..h })
        } else {
            Ok(h)
        }
    }
}

/// JSON form: `{"n":7,"edges":[[1,2,3,4],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl fmt::Display for Hypergraph {
    /// `n=7; edges=[{1,2,3,4},{1,5,6,7}]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; edges=[", self.nodes)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, tail) = s
            .split_once(';')
            .ok_or_else(|| parse_err(format!("expected `n=<nodes>; edges=[...]`, got {s:?}")))?;
        let nodes: usize = head
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| parse_err(format!("bad node count in {s:?}")))?;
        let list = tail
            .trim()
            .strip_prefix("edges=")
            .ok_or_else(|| parse_err(format!("missing `edges=` in {s:?}")))?;
        let edges = parse_braced_list(list)?;
        Self::from_edges(nodes, edges)
    }
}

/// Parses `[{1,2},{3}]` into coalitions.
pub fn parse_braced_list(list: &str) -> Result<Vec<Coalition>> {
    let inner = list
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| parse_err(format!("expected a bracketed list, got {list:?}")))?;
    let mut out = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let close = rest
            .find('}')
            .ok_or_else(|| parse_err(format!("unterminated set in {list:?}")))?;
        out.push(rest[..=close].parse()?);
        rest = rest[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

fn all_equal(mut it: impl Iterator<Item = usize>) -> Option<usize> {
    let first = it.next()?;
    it.all(|v| v == first).then_some(first)
}

pub(crate) fn multiplicities(items: &[Coalition]) -> BTreeMap<Coalition, usize> {
    let mut m = BTreeMap::new();
    for e in items {
        *m.entry(*e).or_insert(0) += 1;
    }
    m
}

/// Maps the members of `set` (a subset of `within`) onto `1..=|within|`.
fn compress(set: Coalition, within: Coalition) -> Coalition {
    let mut out = 0u128;
    for (i, p) in within.players().enumerate() {
        if set.contains(p) {
            out |= 1u128 << i;
        }
    }
    Coalition::from_bits(out)
}

/// Enumerates every nonempty proper sub-multiset of `groups` and reports
/// whether one of them has equal degree at every node.
fn scan_regular_submultisets(groups: &[(Coalition, usize)], nodes: usize) -> bool {
    let total: usize = groups.iter().map(|(_, m)| m).sum();
    let mut take = vec![0usize; groups.len()];
    let mut degrees = vec![0usize; nodes];
    loop {
        // Advance the mixed-radix counter.
        let mut i = 0;
        loop {
            if i == groups.len() {
                return false;
            }
            if take[i] < groups[i].1 {
                take[i] += 1;
                break;
            }
            take[i] = 0;
            i += 1;
        }
        let used: usize = take.iter().sum();
        if used == total {
            continue;
        }
        degrees.iter_mut().for_each(|d| *d = 0);
        for ((e, _), &t) in groups.iter().zip(&take) {
            for x in e.players() {
                degrees[x - 1] += t;
            }
        }
        if all_equal(degrees.iter().copied()).is_some() {
            return true;
        }
    }
}

/// Each key is a 0/1 vector over `dims` coordinates, available `mult` times.
/// Reports whether some sub-multiset sums to `c·(1,…,1)` for `1 <= c < cap`,
/// given that the whole multiset sums to `cap·(1,…,1)`.
fn has_proper_level_submultiset(groups: &BTreeMap<Coalition, usize>, dims: usize, cap: usize) -> bool {
    if cap <= 1 {
        return false;
    }
    let mut reachable: HashSet<Vec<u16>> = HashSet::new();
    reachable.insert(vec![0; dims]);
    for (v, &mult) in groups {
        let coords: Vec<usize> = v.players().map(|x| x - 1).collect();
        let mut next = reachable.clone();
        for r in &reachable {
            let mut cur = r.clone();
            for _ in 0..mult {
                if coords.iter().any(|&c| cur[c] as usize >= cap) {
                    break;
                }
                coords.iter().for_each(|&c| cur[c] += 1);
                let level = cur[0] as usize;
                if level > 0 && level < cap && cur.iter().all(|&x| x as usize == level) {
                    return true;
                }
                next.insert(cur.clone());
            }
        }
        reachable = next;
    }
    false
}
