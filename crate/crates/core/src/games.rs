//! Transferable-utility games and two independent core-nonemptiness tests:
//! the linear program over payment vectors, and the scan of a catalog of
//! minimal balanced collections.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::balanced::{efficiency, BalancedCollection};
use crate::catalog::MbcCatalog;
use crate::coalition::{check_players, Coalition};
use crate::error::{invalid, out_of_range, parse_err, Error, Result};
use crate::rng::SplitMix64;
use crate::simplex::{self, Problem};

/// Largest player count for [`core_lp`]; the program has `2^n - 2` columns.
pub const CORE_LP_MAX_PLAYERS: usize = 12;
pub const RANDOM_GAME_MAX_PLAYERS: usize = 10;
pub const DEFAULT_MAGNITUDE: u64 = 100;

/// A game `(N, v)` with `v(∅) = 0`, worths indexed by coalition bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    n: usize,
    worths: Vec<Rational>,
}

impl Game {
    /// `worths[mask]` is the worth of the coalition with bitmask `mask`.
    pub fn new(n: usize, worths: Vec<Rational>) -> Result<Self> {
        check_players(n)?;
        if worths.len() != 1 << n {
            return Err(invalid(format!("expected {} worths, got {}", 1usize << n, worths.len())));
        }
        if !worths[0].is_zero() {
            return Err(invalid("the empty coalition must have worth 0"));
        }
        Ok(Game { n, worths })
    }

    pub fn from_fn(n: usize, mut v: impl FnMut(Coalition) -> Rational) -> Result<Self> {
        check_players(n)?;
        let mut worths = vec![Rational::zero()];
        worths.extend((1..1u128 << n).map(|b| v(Coalition::from_bits(b))));
        Game::new(n, worths)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn worth(&self, c: Coalition) -> &Rational {
        &self.worths[c.bits() as usize]
    }

    pub fn grand_worth(&self) -> &Rational {
        &self.worths[self.worths.len() - 1]
    }

    /// `{"n":3,"v":{"{1}":0,...,"{1,2,3}":1}}`; integral worths are JSON
    /// numbers, others `"num/den"` strings.
    pub fn to_json(&self) -> Value {
        let mut v = Map::new();
        for bits in 1..1u128 << self.n {
            let c = Coalition::from_bits(bits);
            let w = self.worth(c);
            let val = match (w.is_integer(), w.to_integer().to_i64()) {
                (true, Some(i)) => Value::from(i),
                _ => Value::from(format_rational(w)),
            };
            v.insert(c.to_string(), val);
        }
        let mut root = Map::new();
        root.insert("n".into(), Value::from(self.n));
        root.insert("v".into(), Value::Object(v));
        Value::Object(root)
    }

    /// Parses the JSON form; every nonempty coalition must be listed once.
    pub fn from_json(value: &Value) -> Result<Self> {
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| parse_err("game JSON needs an integer field \"n\""))? as usize;
        check_players(n)?;
        let v = value
            .get("v")
            .and_then(Value::as_object)
            .ok_or_else(|| parse_err("game JSON needs an object field \"v\""))?;
        let mut worths: BTreeMap<u128, Rational> = BTreeMap::new();
        for (key, val) in v {
            let c: Coalition = key.parse()?;
            if c.is_empty() || !c.fits(n) {
                return Err(parse_err(format!("{key} is not a coalition of {n} players")));
            }
            let w = match val {
                Value::Number(num) => match num.as_i64() {
                    Some(i) => Rational::from_integer(BigInt::from(i)),
                    None => return Err(parse_err(format!("worth of {key} must be an integer or \"num/den\""))),
                },
                Value::String(s) => parse_rational(s)?,
                _ => return Err(parse_err(format!("worth of {key} must be a number or string"))),
            };
            if worths.insert(c.bits(), w).is_some() {
                return Err(parse_err(format!("{key} listed twice")));
            }
        }
        if worths.len() != (1usize << n) - 1 {
            return Err(parse_err(format!(
                "expected {} coalitions, got {}",
                (1usize << n) - 1,
                worths.len()
            )));
        }
        let mut all = vec![Rational::zero()];
        all.extend(worths.into_values());
        Game::new(n, all)
    }
}

/// Outcome of a core test together with a checkable certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoreVerdict {
    /// A payment vector in the core, one entry per player.
    Nonempty { point: Vec<Rational> },
    /// A minimal balanced collection more efficient than the grand coalition.
    Empty { collection: BalancedCollection, efficiency: Rational },
}

impl CoreVerdict {
    pub fn is_nonempty(&self) -> bool {
        matches!(self, CoreVerdict::Nonempty { .. })
    }

    /// Re-checks the certificate against `g` exactly.
    pub fn validate(&self, g: &Game) -> Result<()> {
        match self {
            CoreVerdict::Nonempty { point } => {
                if point.len() != g.n() {
                    return Err(Error::DimensionMismatch { expected: g.n(), actual: point.len() });
                }
                for bits in 1..1u128 << g.n() {
                    let c = Coalition::from_bits(bits);
                    let paid: Rational = c.players().map(|i| &point[i - 1]).sum();
                    let full = bits == (1u128 << g.n()) - 1;
                    if full && paid != *g.grand_worth() {
                        return Err(Error::Validation(format!("payments sum to {paid}, not v(N)")));
                    }
                    if paid < *g.worth(c) {
                        return Err(Error::Validation(format!("{c} receives {paid} < {}", g.worth(c))));
                    }
                }
                Ok(())
            }
            CoreVerdict::Empty { collection, efficiency: e } => {
                let actual = efficiency(collection, g)?;
                if actual != *e {
                    return Err(Error::Validation(format!("stated efficiency {e}, actual {actual}")));
                }
                if actual <= *g.grand_worth() {
                    return Err(Error::Validation("collection does not beat v(N)".into()));
                }
                if !collection.is_minimal() {
                    return Err(Error::Validation("violating collection is not minimal".into()));
                }
                Ok(())
            }
        }
    }
}

/// Decides core nonemptiness by linear programming.
///
/// Solves `max Σ y(S) v(S)` over `y >= 0` with `Σ_{S ∋ i} y(S) = 1`, `S ≠ N`,
/// starting from the singleton basis. Its row prices form the cheapest
/// payment `x` with `x(S) >= v(S)` for every `S ≠ N`. The core is nonempty
/// iff that cost is at most `v(N)`; the surplus is then split equally. When
/// the core is empty, the optimal basic `y` is itself the certificate.
pub fn core_lp(g: &Game) -> Result<CoreVerdict> {
    let n = g.n();
    if n > CORE_LP_MAX_PLAYERS {
        return Err(out_of_range(format!("core LP limited to {CORE_LP_MAX_PLAYERS} players")));
    }
    if n == 1 {
        return Ok(CoreVerdict::Nonempty { point: vec![g.grand_worth().clone()] });
    }
    let columns: Vec<Coalition> = (1..(1u128 << n) - 1).map(Coalition::from_bits).collect();
    let a: Vec<Vec<Rational>> = (1..=n)
        .map(|i| {
            columns
                .iter()
                .map(|c| if c.contains(i) { Rational::from_integer(1.into()) } else { Rational::zero() })
                .collect()
        })
        .collect();
    let c: Vec<Rational> = columns.iter().map(|s| g.worth(*s).clone()).collect();
    let start: Vec<usize> = (0..n).map(|i| (1usize << i) - 1).collect();
    let problem = Problem { a, b: vec![Rational::from_integer(1.into()); n], c };
    let sol = simplex::maximize(&problem, Some(&start))
        .optimal()
        .ok_or_else(|| Error::Validation("core LP failed to reach an optimum".into()))?;

    let cheapest = &sol.value;
    let grand = g.grand_worth();
    if cheapest <= grand {
        let share = (grand - cheapest) / Rational::from_integer(BigInt::from(n));
        let point = sol.duals.iter().map(|x| x + &share).collect();
        return Ok(CoreVerdict::Nonempty { point });
    }
    let pairs = columns
        .iter()
        .zip(&sol.x)
        .filter(|(_, y)| y.is_positive())
        .map(|(c, y)| (*c, y.clone()))
        .collect();
    let collection = BalancedCollection::new(n, pairs)?;
    Ok(CoreVerdict::Empty { collection, efficiency: cheapest.clone() })
}

/// Decides core nonemptiness by comparing every catalog collection's
/// efficiency with `v(N)`. An empty verdict carries the first most efficient
/// collection in catalog order; a nonempty verdict takes its payment vector
/// from [`core_lp`].
pub fn core_mbc(g: &Game, catalog: &MbcCatalog) -> Result<CoreVerdict> {
    if catalog.n() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), actual: catalog.n() });
    }
    let mut best: Option<(&BalancedCollection, Rational)> = None;
    for b in catalog.collections() {
        let e = efficiency(b, g)?;
        if best.as_ref().is_none_or(|(_, be)| e > *be) {
            best = Some((b, e));
        }
    }
    if let Some((b, e)) = best {
        if e > *g.grand_worth() {
            return Ok(CoreVerdict::Empty { collection: b.clone(), efficiency: e });
        }
    }
    match core_lp(g)? {
        v @ CoreVerdict::Nonempty { .. } => Ok(v),
        CoreVerdict::Empty { .. } => Err(Error::Validation(
            "no catalog collection beats v(N) but the LP finds the core empty".into(),
        )),
    }
}

/// Integer worths drawn uniformly from `0..=magnitude`, one SplitMix64 draw
/// sequence per seed, coalitions visited in canonical order.
pub fn random_game(n: usize, seed: u64, magnitude: u64) -> Result<Game> {
    if n == 0 || n > RANDOM_GAME_MAX_PLAYERS {
        return Err(out_of_range(format!("random games need 1..={RANDOM_GAME_MAX_PLAYERS} players")));
    }
    let mut rng = SplitMix64::new(seed);
    Game::from_fn(n, |_| Rational::from_integer(BigInt::from(rng.up_to(magnitude))))
}
