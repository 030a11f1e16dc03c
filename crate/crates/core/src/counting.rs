//! Labeled counts of uniform multi-hypergraphs.
//!
//! Every multiset of `p` edges chosen from the `k`-subsets of an `n`-set
//! spans exactly one subset of the nodes, which gives
//!
//! ```text
//! total(n, k, p) = Σ_i C(n, i) · spanning(i, k, p)
//! ```
//!
//! and binomial inversion turns this around into the alternating sum used
//! by [`count_spanning`].

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{binomial, factorial, multiset_coefficient, rising_factorial};
use crate::error::{out_of_range, Result};

pub const EGF_MAX_NODES: usize = 30;
pub const GRAPH_MAX_NODES: usize = 64;

/// Multisets of `p` edges drawn from the `k`-subsets of `{1..n}`, spanning
/// or not.
pub fn count_total(n: u64, k: u64, p: u64) -> BigUint {
    multiset_coefficient(&binomial(n, k), p)
}

/// Multisets of `p` edges drawn from the `k`-subsets of `{1..n}` whose union
/// is all of `{1..n}`.
pub fn count_spanning(n: u64, k: u64, p: u64) -> BigUint {
    let p_fact = BigInt::from(factorial(p));
    let mut sum = BigInt::zero();
    for i in 0..=n {
        let term = BigInt::from(binomial(n, i)) * BigInt::from(rising_factorial(&binomial(i, k), p));
        if (n - i).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, r) = (&sum / &p_fact, &sum % &p_fact);
    debug_assert!(r.is_zero());
    q.to_biguint().expect("spanning counts are nonnegative")
}

/// `Σ_{n=k}^{n_max} count_spanning(n, k, p)`: the spanning coefficients
/// added up as they stand, not weighted by how many node subsets of size `n`
/// an `n_max`-set has.
pub fn count_cumulative(n_max: u64, k: u64, p: u64) -> BigUint {
    (k..=n_max).map(|n| count_spanning(n, k, p)).sum()
}

/// Labeled simple graphs on `n` nodes, `2^C(n,2)`.
pub fn count_graphs(n: u64) -> Result<BigUint> {
    if n as usize > GRAPH_MAX_NODES {
        return Err(out_of_range(format!("graph count limited to n <= {GRAPH_MAX_NODES}")));
    }
    Ok(BigUint::one() << (n * n.saturating_sub(1) / 2))
}

/// Coefficients `a_n = count_spanning(n, k, p)` of the exponential
/// generating series `Σ a_n x^n / n!`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EgfTable {
    pub k: u64,
    pub p: u64,
    #[serde(serialize_with = "serialize_counts")]
    pub counts: Vec<BigUint>,
}

fn serialize_counts<S: serde::Serializer>(counts: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(counts.iter().map(|c| c.to_string()))
}

impl EgfTable {
    /// CSV with header `n,count`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

pub fn egf_table(k: u64, p: u64, n_max: usize) -> Result<EgfTable> {
    if n_max > EGF_MAX_NODES {
        return Err(out_of_range(format!("tables limited to n <= {EGF_MAX_NODES}")));
    }
    let counts = (0..=n_max as u64).map(|n| count_spanning(n, k, p)).collect();
    Ok(EgfTable { k, p, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::enumerate_uniform;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn worked_example() {
        assert_eq!(count_total(3, 2, 3), big(10));
        assert_eq!(count_total(2, 2, 3), big(1));
        assert_eq!(count_total(5, 3, 0), big(1));
        assert_eq!(count_spanning(2, 2, 3), big(1));
        assert_eq!(count_spanning(3, 2, 3), big(7));
        assert_eq!(count_cumulative(3, 2, 3), big(8));
        assert_eq!(count_cumulative(2, 2, 3), big(1));
        assert_eq!(count_cumulative(1, 2, 3), big(0));
    }

    #[test]
    fn boundary_conventions() {
        assert_eq!(count_spanning(0, 2, 0), big(1));
        assert_eq!(count_spanning(0, 0, 0), big(1));
        for n in 1..6 {
            assert_eq!(count_spanning(n, 1, 0), big(0));
        }
        for p in 1..8 {
            assert_eq!(count_spanning(1, 1, p), big(1));
        }
    }

    #[test]
    fn four_nodes_two_edges() {
        let listed = enumerate_uniform(4, 2, 2, true).unwrap().len() as u64;
        // Two disjoint pairs, three ways.
        assert_eq!(listed, 3);
        assert_eq!(count_spanning(4, 2, 2), big(listed));
    }

    #[test]
    fn inversion_identity() {
        for n in 0..=6u64 {
            for k in 0..=n {
                for p in 0..=4 {
                    let rhs: BigUint = (0..=n).map(|i| binomial(n, i) * count_spanning(i, k, p)).sum();
                    assert_eq!(count_total(n, k, p), rhs, "n={n} k={k} p={p}");
                }
            }
        }
    }

    #[test]
    fn graphs() {
        assert_eq!(count_graphs(1).unwrap(), big(1));
        assert_eq!(count_graphs(3).unwrap(), big(8));
        assert_eq!(count_graphs(4).unwrap(), big(64));
        assert_eq!(count_graphs(0).unwrap(), big(1));
        assert!(count_graphs(65).is_err());
    }

    #[test]
    fn table_rows() {
        let t = egf_table(2, 3, 3).unwrap();
        assert_eq!(t.counts, vec![big(0), big(0), big(1), big(7)]);
        assert_eq!(t.to_csv(), "n,count\n0,0\n1,0\n2,1\n3,7\n");
        assert!(egf_table(2, 3, 31).is_err());
    }
}
