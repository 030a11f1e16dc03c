//! Minimal balanced collections through hypergraph duality.
//!
//! A `k`-uniform hypergraph with `n` labeled edges is described, up to
//! renaming its nodes, by the multiset of node stars (the set of edges
//! through each node): every edge index appears in exactly `k` stars.
//! Listing star multisets in non-decreasing order therefore enumerates the
//! `k`-uniform hypergraphs of size `n` once per node relabeling class, which
//! is all the duality route needs because relabeling nodes only permutes the
//! dual's edges.
//!
//! A node subset induces a uniform subhypergraph exactly when its stars sum
//! to a constant vector, so the search tracks, as a bit set over count
//! vectors, every sum reachable by a sub-multiset of the stars chosen so
//! far, and abandons a branch as soon as a constant vector below `k` becomes
//! reachable. Survivors are rebuilt as hypergraphs, confirmed minimally
//! uniform, dualized into `k`-regular hypergraphs on `n` nodes and read as
//! balanced collections.

use std::collections::BTreeMap;

use crate::balanced::{from_regular_hypergraph, BalancedCollection};
use crate::catalog::{MbcCatalog, Method};
use crate::coalition::{Coalition, MAX_NODES};
use crate::error::{out_of_range, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::EchelonBasis;

pub const DUALITY_MAX_PLAYERS: usize = 6;

/// `⌈(n+1)^((n+1)/2) / 2^n⌉`, the Hadamard bound on the determinant of an
/// `n × n` 0/1 matrix. Balancing weights of a minimal collection share a
/// denominator dividing such a determinant, so this bounds the regularity
/// needed to realize every minimal balanced collection.
pub fn duality_bound(n: usize) -> usize {
    let x: u128 = (n as u128 + 1).pow(n as u32 + 1);
    let y: u128 = 1u128 << n;
    (1..).find(|&q: &u128| (q * y) * (q * y) >= x).expect("bound exists") as usize
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub catalog: MbcCatalog,
    pub k_max: usize,
    /// Minimally uniform hypergraphs found, per uniformity degree.
    pub hypergraphs_per_k: BTreeMap<usize, usize>,
    /// Hypergraphs whose dual reads as a balanced but non-minimal collection.
    pub non_minimal: usize,
    /// How many hypergraphs produced each distinct collection: multiplicity → collections.
    pub multiplicity_histogram: BTreeMap<usize, usize>,
}

pub fn mbc_via_duality(n: usize, k_max: usize) -> Result<MbcCatalog> {
    Ok(mbc_via_duality_report(n, k_max, false)?.catalog)
}

/// Runs the duality route and keeps its diagnostics.
///
/// Distinct stars of the hypergraph become the coalitions of the dual's
/// collection, so unless `exhaustive` is set the search drops any branch
/// whose distinct stars are linearly dependent: those can only yield
/// non-minimal collections. With `exhaustive`, every minimally uniform
/// hypergraph is built and the non-minimal duals are counted instead.
pub fn mbc_via_duality_report(n: usize, k_max: usize, exhaustive: bool) -> Result<DualityReport> {
    if !(2..=DUALITY_MAX_PLAYERS).contains(&n) {
        return Err(out_of_range(format!("duality route needs 2 <= n <= {DUALITY_MAX_PLAYERS}")));
    }
    if k_max == 0 || k_max * n > MAX_NODES {
        return Err(out_of_range(format!("k_max must be in 1..={}", MAX_NODES / n)));
    }
    let mut found: BTreeMap<Vec<Coalition>, (BalancedCollection, usize)> = BTreeMap::new();
    let mut per_k = BTreeMap::new();
    let mut non_minimal = 0;
    for k in 1..=k_max {
        let mut star_sets = Vec::new();
        StarSearch::new(n, k, !exhaustive).run(&mut star_sets);
        let mut count = 0;
        for stars in star_sets {
            let h = hypergraph_from_stars(n, &stars)?;
            if h.uniformity() != Some(k) || !h.is_minimally_uniform() {
                continue;
            }
            count += 1;
            let b = from_regular_hypergraph(&h.dual()?)?;
            if !b.is_minimal() {
                non_minimal += 1;
                continue;
            }
            found
                .entry(b.coalitions().to_vec())
                .and_modify(|e| e.1 += 1)
                .or_insert((b, 1));
        }
        per_k.insert(k, count);
    }
    let mut histogram = BTreeMap::new();
    for (_, m) in found.values() {
        *histogram.entry(*m).or_insert(0) += 1;
    }
    let collections = found.into_values().map(|(b, _)| b).collect();
    Ok(DualityReport {
        catalog: MbcCatalog::new(n, Method::Duality, collections)?,
        k_max,
        hypergraphs_per_k: per_k,
        non_minimal,
        multiplicity_histogram: histogram,
    })
}

/// The hypergraph on `stars.len()` nodes whose edge `j` holds the nodes
/// whose star contains player `j`.
fn hypergraph_from_stars(n: usize, stars: &[u32]) -> Result<Hypergraph> {
    let edges = (0..n)
        .map(|j| {
            let bits = stars
                .iter()
                .enumerate()
                .filter(|(_, s)| *s >> j & 1 == 1)
                .fold(0u128, |acc, (x, _)| acc | 1u128 << x);
            Coalition::from_bits(bits)
        })
        .collect();
    Hypergraph::new(stars.len(), edges)
}

struct StarSearch {
    n: usize,
    k: usize,
    /// Mixed-radix place value of each player's count.
    place: Vec<usize>,
    /// Place-value offset of each star mask.
    offset: Vec<usize>,
    /// Indices of the constant vectors `c·(1..1)` for `1 <= c < k`.
    forbidden: Vec<usize>,
    words: usize,
    independent: bool,
}

impl StarSearch {
    fn new(n: usize, k: usize, independent: bool) -> Self {
        let radix = k + 1;
        let place: Vec<usize> = (0..n).map(|j| radix.pow(j as u32)).collect();
        let offset = (0..1u32 << n)
            .map(|s| (0..n).filter(|j| s >> j & 1 == 1).map(|j| place[j]).sum())
            .collect();
        let ones: usize = place.iter().sum();
        let forbidden = (1..k).map(|c| c * ones).collect();
        let words = radix.pow(n as u32).div_ceil(64);
        StarSearch { n, k, place, offset, forbidden, words, independent }
    }

    fn run(&self, out: &mut Vec<Vec<u32>>) {
        let mut reach = Bits::new(self.words);
        reach.data[0] = 1;
        reach.dirty = 1;
        let mut counts = vec![0usize; self.n];
        let mut stars = Vec::new();
        let mut pool = Vec::new();
        let mut basis = EchelonBasis::new(self.n);
        self.dfs(1, &mut counts, &reach, &mut stars, &mut basis, &mut pool, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        from: u32,
        counts: &mut [usize],
        reach: &Bits,
        stars: &mut Vec<u32>,
        basis: &mut EchelonBasis,
        pool: &mut Vec<Bits>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let full = (1u32 << self.n) - 1;
        let saturated: u32 = (0..self.n).filter(|&j| counts[j] == self.k).fold(0, |a, j| a | 1 << j);
        let top: usize = counts.iter().zip(&self.place).map(|(c, p)| c * p).sum();
        let mut next = pool.pop().unwrap_or_else(|| Bits::new(self.words));
        for s in from..=full {
            if s & saturated != 0 {
                continue;
            }
            let fresh = self.independent && stars.last() != Some(&s);
            if fresh && !basis.insert(Coalition::from_bits(s as u128)) {
                continue;
            }
            let off = self.offset[s as usize];
            let new_top = top + off;
            next.shift_or(reach, off, new_top / 64 + 1);
            if self.forbidden.iter().any(|&i| i <= new_top && next.data[i / 64] >> (i % 64) & 1 == 1) {
                if fresh {
                    basis.pop();
                }
                continue;
            }
            for (j, c) in counts.iter_mut().enumerate() {
                *c += (s >> j & 1) as usize;
            }
            stars.push(s);
            if counts.iter().all(|&c| c == self.k) {
                out.push(stars.clone());
            } else {
                self.dfs(s, counts, &next, stars, basis, pool, out);
            }
            if fresh {
                basis.pop();
            }
            stars.pop();
            for (j, c) in counts.iter_mut().enumerate() {
                *c -= (s >> j & 1) as usize;
            }
        }
        pool.push(next);
    }
}

/// A bit set over count vectors. Words at `dirty` and beyond are zero, so
/// only the live prefix is rewritten when a buffer is reused.
struct Bits {
    data: Vec<u64>,
    dirty: usize,
}

impl Bits {
    fn new(words: usize) -> Self {
        Bits { data: vec![0; words], dirty: 0 }
    }

    /// `self = src | (src << off)` over the first `words` words.
    fn shift_or(&mut self, src: &Bits, off: usize, words: usize) {
        let words = words.min(self.data.len());
        let (ws, bs) = (off / 64, off % 64);
        let s = &src.data;
        for w in 0..words {
            let mut v = s[w];
            if w >= ws {
                let i = w - ws;
                v |= s[i] << bs;
                if bs > 0 && i >= 1 {
                    v |= s[i - 1] >> (64 - bs);
                }
            }
            self.data[w] = v;
        }
        if self.dirty > words {
            self.data[words..self.dirty].iter_mut().for_each(|x| *x = 0);
        }
        self.dirty = words;
    }
}
