//! Balanced collections: exact balancing weights, minimality, and the
//! correspondence with regular hypergraphs.
//!
//! A collection `B` of coalitions is balanced when some strictly positive
//! weights make every player's memberships sum to one. Strict positivity is
//! decided with the linear program
//!
//! ```text
//! maximize t  subject to  Σ_{S ∋ i} λ(S) = 1 for every player i,  λ(S) >= t >= 0
//! ```
//!
//! which is balanced exactly when its optimum is positive.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{format_rational, lcm_of_denominators, parse_rational, Rational};
use crate::coalition::{check_players, Coalition};
use crate::error::{invalid, out_of_range, parse_err, Error, Result};
use crate::games::Game;
use crate::hypergraph::{multiplicities, Hypergraph};
use crate::linalg;
use crate::simplex::{self, Problem};

/// Distinct nonempty coalitions (canonically sorted) with positive weights
/// satisfying the per-player balancing identity exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BalancedCollection {
    n: usize,
    coalitions: Vec<Coalition>,
    weights: Vec<Rational>,
}

impl BalancedCollection {
    /// Validates and sorts the pairs.
    pub fn new(n: usize, mut pairs: Vec<(Coalition, Rational)>) -> Result<Self> {
        check_players(n)?;
        pairs.sort_by_key(|a| a.0);
        let coalitions: Vec<Coalition> = pairs.iter().map(|p| p.0).collect();
        check_coalitions(n, &coalitions)?;
        if let Some((c, w)) = pairs.iter().find(|(_, w)| !w.is_positive()) {
            return Err(Error::Validation(format!("weight {w} of {c} is not positive")));
        }
        for i in 1..=n {
            let s: Rational = pairs.iter().filter(|(c, _)| c.contains(i)).map(|(_, w)| w).sum();
            if !s.is_one() {
                return Err(Error::Validation(format!("player {i} has total weight {s}, not 1")));
            }
        }
        let weights = pairs.into_iter().map(|p| p.1).collect();
        Ok(BalancedCollection { n, coalitions, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coalitions(&self) -> &[Coalition] {
        &self.coalitions
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.coalitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coalitions.is_empty()
    }

    pub fn weight(&self, c: Coalition) -> Option<&Rational> {
        self.coalitions.binary_search(&c).ok().map(|i| &self.weights[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Coalition, &Rational)> + '_ {
        self.coalitions.iter().copied().zip(&self.weights)
    }

    /// Least common multiple of the weight denominators; the regularity of
    /// the smallest regular hypergraph realizing this collection.
    pub fn denominator_lcm(&self) -> BigInt {
        lcm_of_denominators(&self.weights)
    }

    pub fn is_minimal(&self) -> bool {
        linalg::rank(self.n, &self.coalitions) == self.coalitions.len()
    }
}

impl PartialOrd for BalancedCollection {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: player count, then the sorted coalition lists lexicographically.
impl Ord for BalancedCollection {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.coalitions.cmp(&other.coalitions))
            .then_with(|| self.weights.cmp(&other.weights))
    }
}

impl fmt::Display for BalancedCollection {
    /// `n=3; [{1,2}:1/2, {1,3}:1/2, {2,3}:1/2]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; [", self.n)?;
        for (i, (c, w)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}:{}", format_rational(w))?;
        }
        f.write_str("]")
    }
}

impl FromStr for BalancedCollection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, tail) = s
            .split_once(';')
            .ok_or_else(|| parse_err(format!("expected `n=<players>; [...]`, got {s:?}")))?;
        let n: usize = head
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| parse_err(format!("bad player count in {s:?}")))?;
        let inner = tail
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| parse_err(format!("expected a bracketed list in {s:?}")))?;
        let mut pairs = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let close = rest
                .find('}')
                .ok_or_else(|| parse_err(format!("unterminated coalition in {s:?}")))?;
            let c: Coalition = rest[..=close].parse()?;
            let after = rest[close + 1..]
                .trim_start()
                .strip_prefix(':')
                .ok_or_else(|| parse_err(format!("missing weight after {c} in {s:?}")))?;
            let end = after.find(',').unwrap_or(after.len());
            let w = parse_rational(&after[..end])?;
            pairs.push((c, w));
            rest = after[end..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        BalancedCollection::new(n, pairs)
    }
}

fn check_coalitions(n: usize, coalitions: &[Coalition]) -> Result<()> {
    if coalitions.is_empty() {
        return Err(invalid("a collection needs at least one coalition"));
    }
    for c in coalitions {
        if c.is_empty() {
            return Err(invalid("coalitions must be nonempty"));
        }
        if !c.fits(n) {
            return Err(out_of_range(format!("{c} is not a coalition of {n} players")));
        }
    }
    let mut sorted = coalitions.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("coalitions must be distinct"));
    }
    Ok(())
}

/// Strictly positive weights balancing `coalitions`, if any exist.
///
/// The weights returned maximize the smallest weight; among such optima the
/// simplex pivoting rule picks one deterministically.
pub fn find_balancing_weights(n: usize, coalitions: &[Coalition]) -> Result<Option<BalancedCollection>> {
    check_players(n)?;
    check_coalitions(n, coalitions)?;
    let covered = coalitions.iter().fold(Coalition::EMPTY, |a, c| a.union(*c));
    if covered != Coalition::full(n) {
        return Ok(None);
    }

    let m = coalitions.len();
    // Variables: μ_S = λ_S - t (m of them), then t.
    let a: Vec<Vec<Rational>> = (1..=n)
        .map(|i| {
            let mut row: Vec<Rational> = coalitions
                .iter()
                .map(|c| if c.contains(i) { Rational::one() } else { Rational::zero() })
                .collect();
            let deg = coalitions.iter().filter(|c| c.contains(i)).count();
            row.push(Rational::from_integer(BigInt::from(deg)));
            row
        })
        .collect();
    let mut c = vec![Rational::zero(); m + 1];
    c[m] = Rational::one();
    let problem = Problem { a, b: vec![Rational::one(); n], c };
    let Some(sol) = simplex::maximize(&problem, None).optimal() else {
        return Ok(None);
    };
    let t = &sol.x[m];
    if !t.is_positive() {
        return Ok(None);
    }
    let pairs = coalitions.iter().zip(&sol.x).map(|(c, mu)| (*c, mu + t)).collect();
    BalancedCollection::new(n, pairs).map(Some)
}

pub fn is_balanced(n: usize, coalitions: &[Coalition]) -> Result<bool> {
    Ok(find_balancing_weights(n, coalitions)?.is_some())
}

/// Balanced with linearly independent incidence vectors (equivalently,
/// unique balancing weights).
pub fn is_minimal_balanced(n: usize, coalitions: &[Coalition]) -> Result<bool> {
    if !is_balanced(n, coalitions)? {
        return Ok(false);
    }
    Ok(linalg::rank(n, coalitions) == coalitions.len())
}

/// Largest player count the subset-scanning oracle accepts.
pub const ORACLE_MAX_PLAYERS: usize = 5;

/// Balanced, and no nonempty proper subcollection is balanced. Scans
/// subcollections by increasing size with an LP per candidate.
pub fn is_minimal_balanced_oracle(n: usize, coalitions: &[Coalition]) -> Result<bool> {
    if n > ORACLE_MAX_PLAYERS {
        return Err(out_of_range(format!("oracle limited to n <= {ORACLE_MAX_PLAYERS}, got {n}")));
    }
    if !is_balanced(n, coalitions)? {
        return Ok(false);
    }
    let m = coalitions.len();
    let full = Coalition::full(n);
    let mut subset = Vec::with_capacity(m);
    for size in 1..m {
        for mask in KSubsets::new(m, size) {
            subset.clear();
            subset.extend((0..m).filter(|i| mask >> i & 1 == 1).map(|i| coalitions[i]));
            let covered = subset.iter().fold(Coalition::EMPTY, |a, c| a.union(*c));
            if covered == full && is_balanced(n, &subset)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Gosper's hack over `m`-bit masks with exactly `k` bits set.
struct KSubsets {
    next: u64,
    limit: u64,
}

impl KSubsets {
    fn new(m: usize, k: usize) -> Self {
        assert!(m < 64 && k >= 1 && k <= m);
        KSubsets { next: (1u64 << k) - 1, limit: 1u64 << m }
    }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next;
        if cur >= self.limit {
            return None;
        }
        let low = cur & cur.wrapping_neg();
        let ripple = cur + low;
        self.next = (((ripple ^ cur) >> 2) / low) | ripple;
        Some(cur)
    }
}

/// Reads a proper `k`-regular hypergraph as a balanced collection: each
/// distinct edge gets weight `multiplicity / k`.
pub fn from_regular_hypergraph(h: &Hypergraph) -> Result<BalancedCollection> {
    if !h.is_proper() {
        return Err(invalid("hypergraph must be proper"));
    }
    let k = h.regularity().ok_or_else(|| invalid("hypergraph is not regular"))?;
    let pairs = multiplicities(h.edges())
        .into_iter()
        .map(|(c, m)| (c, Rational::new(BigInt::from(m), BigInt::from(k))))
        .collect();
    BalancedCollection::new(h.nodes(), pairs)
}

/// The smallest regular hypergraph realizing `b`: regularity is the lcm of
/// the weight denominators, edges listed canonically with multiplicity.
pub fn to_regular_hypergraph(b: &BalancedCollection) -> Hypergraph {
    let k = Rational::from_integer(b.denominator_lcm());
    let mut edges = Vec::new();
    for (c, w) in b.iter() {
        let mult = (w * &k).to_integer().to_usize().expect("multiplicity fits in usize");
        edges.extend(std::iter::repeat_n(c, mult));
    }
    Hypergraph::new(b.n(), edges).expect("a balanced collection covers every player")
}

/// Weighted worth `Σ λ(S) v(S)` of the collection under `g`.
pub fn efficiency(b: &BalancedCollection, g: &Game) -> Result<Rational> {
    if b.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), actual: b.n() });
    }
    Ok(b.iter().map(|(c, w)| w * g.worth(c)).sum())
}
