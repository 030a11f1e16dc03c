//! Bit-indexed player and node sets.
//!
//! Player `i` (1-based) lives in bit `i - 1`, so the numeric order of the
//! underlying word is the canonical order used everywhere for sorting and
//! serialization.

use std::fmt;
use std::str::FromStr;

use crate::error::{out_of_range, parse_err, Error, Result};

/// Largest player count accepted for games and coalition enumeration.
pub const MAX_PLAYERS: usize = 20;

/// Largest node count a hypergraph may carry (width of the bit set).
pub const MAX_NODES: usize = 128;

/// A set of players (or hypergraph nodes) encoded as bits.
///
/// Games and collections only ever hold nonempty coalitions; the empty value
/// exists for edges of derived subhypergraphs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(u128);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub const fn from_bits(bits: u128) -> Self {
        Coalition(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_NODES, "at most {MAX_NODES} elements");
        if n == MAX_NODES {
            Coalition(u128::MAX)
        } else {
            Coalition((1u128 << n) - 1)
        }
    }

    pub fn singleton(player: usize) -> Self {
        assert!((1..=MAX_NODES).contains(&player), "player ids are 1-based");
        Coalition(1u128 << (player - 1))
    }

    /// Builds a coalition from 1-based ids, rejecting ids outside `1..=n`.
    pub fn from_players<I>(n: usize, players: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = 0u128;
        for p in players {
            if p == 0 || p > n || p > MAX_NODES {
                return Err(out_of_range(format!("player {p} not in 1..={n}")));
            }
            bits |= 1u128 << (p - 1);
        }
        Ok(Coalition(bits))
    }

    pub fn contains(self, player: usize) -> bool {
        (1..=MAX_NODES).contains(&player) && self.0 >> (player - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// True when every member lies in `1..=n`.
    pub fn fits(self, n: usize) -> bool {
        n >= MAX_NODES || self.0 >> n == 0
    }

    pub fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Coalition) -> Coalition {
        Coalition(self.0 & other.0)
    }

    pub fn difference(self, other: Coalition) -> Coalition {
        Coalition(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending order, 1-based.
    pub fn players(self) -> Players {
        Players(self.0)
    }

    /// The lowest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }
}

/// Iterator over the members of a [`Coalition`].
#[derive(Clone)]
pub struct Players(u128);

impl Iterator for Players {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Players {}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.players().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Coalition {
    type Err = Error;

    /// Parses `{1,3,4}`; whitespace is ignored and `{}` is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| parse_err(format!("coalition must be braced: {s:?}")))?;
        let mut bits = 0u128;
        for tok in inner.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let p: usize = tok
                .parse()
                .map_err(|_| parse_err(format!("bad player id {tok:?} in {s:?}")))?;
            if p == 0 || p > MAX_NODES {
                return Err(parse_err(format!("player id {p} out of range in {s:?}")));
            }
            bits |= 1u128 << (p - 1);
        }
        Ok(Coalition(bits))
    }
}

/// All `2^n - 1` nonempty coalitions of `{1..n}` in canonical order.
pub fn coalitions_of(n: usize) -> Result<Vec<Coalition>> {
    check_players(n)?;
    Ok((1..1u128 << n).map(Coalition).collect())
}

pub(crate) fn check_players(n: usize) -> Result<()> {
    if (1..=MAX_PLAYERS).contains(&n) {
        Ok(())
    } else {
        Err(out_of_range(format!("player count {n} not in 1..={MAX_PLAYERS}")))
    }
}
