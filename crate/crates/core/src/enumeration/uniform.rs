//! Labeled enumeration of `k`-uniform multi-hypergraphs.

use crate::coalition::{Coalition, MAX_NODES};
use crate::error::{out_of_range, Result};
use crate::hypergraph::Hypergraph;

/// All `k`-subsets of `{1..n}` in ascending numeric order.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Coalition> {
    if k == 0 || k > n {
        return Vec::new();
    }
    let limit: u128 = if n == MAX_NODES { u128::MAX } else { 1u128 << n };
    let mut out = Vec::new();
    let mut cur: u128 = if k == MAX_NODES { u128::MAX } else { (1u128 << k) - 1 };
    loop {
        out.push(Coalition::from_bits(cur));
        let low = cur & cur.wrapping_neg();
        let Some(ripple) = cur.checked_add(low) else { break };
        if ripple == 0 {
            break;
        }
        let next = (((ripple ^ cur) >> 2) / low) | ripple;
        if n < MAX_NODES && next >= limit {
            break;
        }
        cur = next;
    }
    out
}

/// Every multiset of `p` edges drawn from the `k`-subsets of `{1..n}`,
/// listed with non-decreasing canonical edge order. With `spanning`, only
/// hypergraphs covering all nodes are kept (and those are proper).
pub fn enumerate_uniform(n: usize, k: usize, p: usize, spanning: bool) -> Result<Vec<Hypergraph>> {
    if n == 0 || n > MAX_NODES {
        return Err(out_of_range(format!("node count {n} not in 1..={MAX_NODES}")));
    }
    if k == 0 || k > n {
        return Err(out_of_range(format!("edge size {k} not in 1..={n}")));
    }
    if p == 0 {
        return Err(out_of_range("hypergraph size must be at least 1"));
    }
    let edges = k_subsets(n, k);
    let full = Coalition::full(n);
    let mut out = Vec::new();
    if spanning && k * p < n {
        return Ok(out);
    }
    let mut idx = vec![0usize; p];
    loop {
        let chosen: Vec<Coalition> = idx.iter().map(|&i| edges[i]).collect();
        let covered = chosen.iter().fold(Coalition::EMPTY, |a, e| a.union(*e));
        if covered == full {
            out.push(Hypergraph::new(n, chosen)?);
        } else if !spanning {
            out.push(Hypergraph::derived(n, chosen)?);
        }
        // Next non-decreasing index sequence.
        let Some(pos) = (0..p).rev().find(|&i| idx[i] + 1 < edges.len()) else {
            break;
        };
        let v = idx[pos] + 1;
        idx[pos..].iter_mut().for_each(|x| *x = v);
    }
    Ok(out)
}

/// Spanning `k`-uniform hypergraphs of size `p` that are minimally uniform.
pub fn enumerate_minimally_uniform(n: usize, k: usize, p: usize) -> Result<Vec<Hypergraph>> {
    Ok(enumerate_uniform(n, k, p, true)?
        .into_iter()
        .filter(Hypergraph::is_minimally_uniform)
        .collect())
}
