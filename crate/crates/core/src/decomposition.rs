//! Partitions of a uniform hypergraph's nodes into blocks that each induce a
//! minimally uniform subhypergraph.
//!
//! Blocks are generated in the usual canonical way for set partitions: the
//! next block always contains the lowest unassigned node, and candidate
//! blocks are tried in ascending bitmask order.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::Serialize;

use crate::coalition::Coalition;
use crate::error::{invalid, out_of_range, Error, Result};
use crate::hypergraph::Hypergraph;

pub const DECOMPOSE_ALL_MAX_NODES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    #[serde(serialize_with = "serialize_nodes")]
    pub nodes: Coalition,
    /// Common edge size inside the block.
    pub uniformity: usize,
    /// Edge count of the induced subhypergraph (empty edges included).
    pub size: usize,
}

fn serialize_nodes<S: serde::Serializer>(c: &Coalition, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.players())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformPartition {
    pub blocks: Vec<Block>,
}

impl UniformPartition {
    pub fn node_sets(&self) -> Vec<Coalition> {
        self.blocks.iter().map(|b| b.nodes).collect()
    }

    /// Re-checks the partition against `h`: blocks are disjoint, cover every
    /// node, and each induces a minimally uniform subhypergraph of the stated
    /// uniformity and size.
    pub fn validate(&self, h: &Hypergraph) -> Result<()> {
        let mut seen = Coalition::EMPTY;
        for b in &self.blocks {
            if b.nodes.is_empty() || !b.nodes.intersection(seen).is_empty() {
                return Err(Error::Validation(format!("block {} overlaps or is empty", b.nodes)));
            }
            seen = seen.union(b.nodes);
            let sub = h.subhypergraph(b.nodes)?.graph;
            if !sub.is_minimally_uniform() || sub.uniformity() != Some(b.uniformity) || sub.size() != b.size {
                return Err(Error::Validation(format!("block {} is not minimally uniform as stated", b.nodes)));
            }
        }
        if seen != h.node_set() {
            return Err(Error::Validation("blocks do not cover every node".into()));
        }
        Ok(())
    }
}

/// The first partition in search order. Failing to find one raises
/// [`Error::Incomplete`].
pub fn decompose(h: &Hypergraph) -> Result<UniformPartition> {
    check_input(h)?;
    let search = Search::new(h);
    let mut found = None;
    search.run(h.node_set(), &mut Vec::new(), &mut |p| {
        found = Some(p);
        false
    });
    found.ok_or_else(|| Error::Incomplete(format!("no minimally uniform partition of {h}")))
}

/// Every partition, in search order (which is also lexicographic order of
/// the block bitmask sequences).
pub fn decompose_all(h: &Hypergraph) -> Result<Vec<UniformPartition>> {
    check_input(h)?;
    if h.nodes() > DECOMPOSE_ALL_MAX_NODES {
        return Err(out_of_range(format!("exhaustive decomposition limited to {DECOMPOSE_ALL_MAX_NODES} nodes")));
    }
    let search = Search::new(h);
    let mut all = Vec::new();
    search.run(h.node_set(), &mut Vec::new(), &mut |p| {
        all.push(p);
        true
    });
    if all.is_empty() {
        return Err(Error::Incomplete(format!("no minimally uniform partition of {h}")));
    }
    Ok(all)
}

fn check_input(h: &Hypergraph) -> Result<()> {
    if !h.is_proper() {
        return Err(invalid("decomposition needs a proper hypergraph"));
    }
    if h.uniformity().is_none() {
        return Err(invalid("decomposition needs a uniform hypergraph"));
    }
    Ok(())
}

struct Search<'a> {
    h: &'a Hypergraph,
    memo: RefCell<HashMap<Coalition, Option<Block>>>,
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        Search { h, memo: RefCell::new(HashMap::new()) }
    }

    fn block(&self, nodes: Coalition) -> Option<Block> {
        if let Some(b) = self.memo.borrow().get(&nodes) {
            return *b;
        }
        let sub = self.h.subhypergraph(nodes).expect("block lies inside the node set").graph;
        let b = sub
            .is_minimally_uniform()
            .then(|| Block { nodes, uniformity: sub.uniformity().unwrap_or(0), size: sub.size() });
        self.memo.borrow_mut().insert(nodes, b);
        b
    }

    /// Calls `emit` for each completed partition; stops when it returns false.
    fn run(&self, free: Coalition, blocks: &mut Vec<Block>, emit: &mut dyn FnMut(UniformPartition) -> bool) -> bool {
        let Some(first) = free.first() else {
            return emit(UniformPartition { blocks: blocks.clone() });
        };
        let lead = Coalition::singleton(first);
        // Submasks of the remaining nodes, lowest first, each joined with `lead`.
        let rest = free.difference(lead).bits();
        let mut sub: u128 = 0;
        loop {
            let nodes = Coalition::from_bits(sub).union(lead);
            if let Some(b) = self.block(nodes) {
                blocks.push(b);
                let go_on = self.run(free.difference(nodes), blocks, emit);
                blocks.pop();
                if !go_on {
                    return false;
                }
            }
            if sub == rest {
                return true;
            }
            // Next submask of `rest` in ascending numeric order.
            sub = (sub | !rest).wrapping_add(1) & rest;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests::{c, hg, seven_node_example, triangle};

    fn sets(p: &UniformPartition) -> Vec<String> {
        p.blocks.iter().map(|b| b.nodes.to_string()).collect()
    }

    #[test]
    fn triangle_is_one_block() {
        let all = decompose_all(&triangle()).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(sets(&all[0]), ["{1,2,3}"]);
        assert_eq!(decompose(&triangle()).unwrap(), all[0]);
    }

    #[test]
    fn single_edge_splits_into_singletons() {
        let h = hg(3, &[&[1, 2, 3]]);
        let p = decompose(&h).unwrap();
        assert_eq!(sets(&p), ["{1}", "{2}", "{3}"]);
        assert!(p.blocks.iter().all(|b| b.uniformity == 1 && b.size == 1));
    }

    #[test]
    fn seven_node_example_is_not_unique() {
        let h = seven_node_example();
        let all = decompose_all(&h).unwrap();
        let node_sets: Vec<Vec<Coalition>> = all.iter().map(|p| p.node_sets()).collect();
        assert!(node_sets.contains(&vec![c(&[1, 3, 6]), c(&[2, 4, 5, 7])]));
        assert!(node_sets.contains(&vec![c(&[1, 3, 4, 5, 7]), c(&[2, 6])]));
        for p in &all {
            p.validate(&h).unwrap();
        }
        let first = decompose(&h).unwrap();
        assert_eq!(first, all[0]);
        // Mixed block degrees are allowed.
        let two = all.iter().find(|p| p.node_sets().contains(&c(&[2, 6]))).unwrap();
        let degrees: Vec<usize> = two.blocks.iter().map(|b| b.uniformity).collect();
        assert_eq!(degrees, [3, 1]);
    }

    #[test]
    fn two_triangles() {
        // Restricting to one triangle leaves the other's edges empty, so the
        // two-block split is not uniform; the whole graph is the only block.
        let h = hg(6, &[&[1, 2], &[1, 3], &[2, 3], &[4, 5], &[4, 6], &[5, 6]]);
        let all = decompose_all(&h).unwrap();
        let brute: Vec<Coalition> = (1..64u128)
            .map(Coalition::from_bits)
            .filter(|a| h.subhypergraph(*a).unwrap().graph.uniformity().is_some())
            .collect();
        assert_eq!(brute, [c(&[1, 2, 3, 4, 5, 6])]);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].node_sets(), [c(&[1, 2, 3, 4, 5, 6])]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(decompose(&hg(2, &[&[1], &[1, 2]])).is_err());
        let big = hg(11, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]]);
        assert!(decompose_all(&big).is_err());
        assert!(decompose(&big).is_ok());
    }
}
