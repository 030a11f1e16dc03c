//! Generators: minimal balanced collections by three independent routes, and
//! labeled uniform hypergraphs.

mod direct;
mod duality;
mod uniform;

use num_bigint::BigInt;

use crate::arith::Rational;
use crate::balanced::{find_balancing_weights, is_minimal_balanced_oracle, BalancedCollection, ORACLE_MAX_PLAYERS};
use crate::catalog::{MbcCatalog, Method};
use crate::coalition::{coalitions_of, Coalition};
use crate::error::{out_of_range, Error, Result};

pub use direct::MAX_DIRECT_PLAYERS;
pub use duality::{duality_bound, mbc_via_duality, mbc_via_duality_report, DualityReport, DUALITY_MAX_PLAYERS};
pub use uniform::{enumerate_minimally_uniform, enumerate_uniform};

/// All minimal balanced collections on `n` players by depth-first search.
///
/// Runs on the current rayon pool. `n = 7` works but is a long job (well
/// over a hundred million collections).
pub fn enumerate_mbc(n: usize) -> Result<MbcCatalog> {
    if !(2..=MAX_DIRECT_PLAYERS).contains(&n) {
        return Err(out_of_range(format!("direct enumeration needs 2 <= n <= {MAX_DIRECT_PLAYERS}")));
    }
    let collections = direct::search(n)
        .into_iter()
        .map(|raw| {
            let den = BigInt::from(raw.denominator);
            let pairs = raw
                .masks
                .iter()
                .zip(&raw.numerators)
                .map(|(&m, &num)| (Coalition::from_bits(m as u128), Rational::new(BigInt::from(num), den.clone())))
                .collect();
            BalancedCollection::new(n, pairs)
        })
        .collect::<Result<Vec<_>>>()?;
    MbcCatalog::new(n, Method::Direct, collections)
}

/// Brute force: every set of at most `n` coalitions that passes the literal
/// "no balanced proper subcollection" test.
pub fn enumerate_mbc_oracle(n: usize) -> Result<MbcCatalog> {
    if !(2..=ORACLE_MAX_PLAYERS).contains(&n) {
        return Err(out_of_range(format!("oracle enumeration needs 2 <= n <= {ORACLE_MAX_PLAYERS}")));
    }
    let all = coalitions_of(n)?;
    let mut collections = Vec::new();
    let mut chosen = Vec::with_capacity(n);
    oracle_dfs(n, &all, 0, Coalition::EMPTY, &mut chosen, &mut collections)?;
    MbcCatalog::new(n, Method::Oracle, collections)
}

fn oracle_dfs(
    n: usize,
    all: &[Coalition],
    from: usize,
    covered: Coalition,
    chosen: &mut Vec<Coalition>,
    out: &mut Vec<BalancedCollection>,
) -> Result<()> {
    if covered == Coalition::full(n) && is_minimal_balanced_oracle(n, chosen)? {
        let b = find_balancing_weights(n, chosen)?
            .ok_or_else(|| Error::Validation("oracle accepted an unbalanced collection".into()))?;
        out.push(b);
    }
    if chosen.len() == n {
        return Ok(());
    }
    for i in from..all.len() {
        chosen.push(all[i]);
        oracle_dfs(n, all, i + 1, covered.union(all[i]), chosen, out)?;
        chosen.pop();
    }
    Ok(())
}
