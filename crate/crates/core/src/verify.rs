//! Self-check suites run by `balanced-forge verify <suite>`.
//!
//! Each suite recomputes known values or cross-checks two independent
//! routes and reports one line per check.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::coalition::{coalitions_of, Coalition};
use crate::counting::{count_cumulative, count_spanning};
use crate::decomposition::{decompose, decompose_all};
use crate::enumeration::{enumerate_mbc, enumerate_minimally_uniform, enumerate_uniform};
use crate::error::{parse_err, Error, Result};
use crate::games::{core_lp, core_mbc, random_game, Game, DEFAULT_MAGNITUDE};
use crate::hypergraph::Hypergraph;

/// Number of minimal balanced collections on `n` players, `n = 2..=7`.
pub const KNOWN_MBC_COUNTS: [(usize, u64); 6] =
    [(2, 2), (3, 6), (4, 42), (5, 1_292), (6, 200_214), (7, 132_422_036)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Catalog sizes against the known counts.
    Table1,
    /// The three-node, three-edge 2-uniform counts.
    Example8,
    /// Minimal uniformity of a hypergraph against minimal regularity of its dual.
    Prop1,
    /// Every small uniform hypergraph splits into minimally uniform blocks.
    Prop2,
    /// Core verdicts from the LP against verdicts from the catalog.
    SharpBs,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Table1, Suite::Example8, Suite::Prop1, Suite::Prop2, Suite::SharpBs];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Example8 => "example8",
            Suite::Prop1 => "prop1",
            Suite::Prop2 => "prop2",
            Suite::SharpBs => "sharpbs",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| parse_err(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Largest player count (table1: default 5; sharpbs: default 4).
    pub max_n: Option<usize>,
    /// Largest node count (prop1: default 5; prop2: default 6).
    pub max_nodes: Option<usize>,
    /// Random games per player count for sharpbs (default 1000).
    pub games: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Report { suite, passed, checks }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail)?;
        }
        write!(f, "suite {} {}", self.suite, if self.passed { "passed" } else { "FAILED" })
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

pub fn run(suite: Suite, opts: &Options) -> Result<Report> {
    let checks = match suite {
        Suite::Table1 => table1(opts.max_n.unwrap_or(5))?,
        Suite::Example8 => example8()?,
        Suite::Prop1 => prop1(opts.max_nodes.unwrap_or(5), 4)?,
        Suite::Prop2 => prop2(opts.max_nodes.unwrap_or(6))?,
        Suite::SharpBs => sharpbs(opts.max_n.unwrap_or(4), opts.games.unwrap_or(1000))?,
    };
    Ok(Report::new(suite, checks))
}

fn table1(max_n: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &(n, want) in KNOWN_MBC_COUNTS.iter().filter(|(n, _)| *n <= max_n) {
        let start = Instant::now();
        let got = enumerate_mbc(n)?.len() as u64;
        let secs = start.elapsed().as_secs_f64();
        out.push(check(format!("mbc count n={n}"), got == want, format!("{got} (want {want}, {secs:.2}s)")));
    }
    Ok(out)
}

fn example8() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut num = |name: &str, got: u64, want: u64| {
        out.push(check(name, got == want, format!("{got} (want {want})")));
    };
    let as_u64 = |b: num_bigint::BigUint| u64::try_from(b).unwrap_or(u64::MAX);
    num("count_spanning(2,2,3)", as_u64(count_spanning(2, 2, 3)), 1);
    num("count_spanning(3,2,3)", as_u64(count_spanning(3, 2, 3)), 7);
    num("count_cumulative(3,2,3)", as_u64(count_cumulative(3, 2, 3)), 8);
    num("enumerate_uniform(2,2,3,spanning)", enumerate_uniform(2, 2, 3, true)?.len() as u64, 1);
    num("enumerate_uniform(3,2,3,spanning)", enumerate_uniform(3, 2, 3, true)?.len() as u64, 7);
    let minimal = enumerate_minimally_uniform(3, 2, 3)?;
    let tri = "n=3; edges=[{1,2},{1,3},{2,3}]";
    let found: Vec<String> = minimal.iter().map(|h| h.to_string()).collect();
    out.push(check("minimally uniform (3,2,3)", found == [tri], format!("{found:?}")));
    Ok(out)
}

/// Calls `f` on every proper hypergraph with `n` nodes and `p` edges,
/// edges listed in non-decreasing canonical order.
pub(crate) fn for_each_proper(n: usize, p: usize, mut f: impl FnMut(Hypergraph) -> Result<()>) -> Result<()> {
    let all = coalitions_of(n)?;
    let full = Coalition::full(n);
    let mut idx = vec![0usize; p];
    loop {
        let edges: Vec<Coalition> = idx.iter().map(|&i| all[i]).collect();
        if edges.iter().fold(Coalition::EMPTY, |a, e| a.union(*e)) == full {
            f(Hypergraph::new(n, edges)?)?;
        }
        let Some(pos) = (0..p).rev().find(|&i| idx[i] + 1 < all.len()) else {
            return Ok(());
        };
        let v = idx[pos] + 1;
        idx[pos..].iter_mut().for_each(|x| *x = v);
    }
}

fn prop1(max_nodes: usize, max_edges: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=max_nodes {
        let (mut total, mut involution, mut forward, mut backward, mut minimal) = (0, 0, 0, 0, 0);
        for p in 1..=max_edges {
            for_each_proper(n, p, |h| {
                total += 1;
                let d = h.dual()?;
                involution += (d.dual()? == h) as usize;
                let mu = h.is_minimally_uniform();
                minimal += mu as usize;
                forward += (mu == d.is_minimally_regular()) as usize;
                backward += (h.is_minimally_regular() == d.is_minimally_uniform()) as usize;
                Ok(())
            })?;
        }
        let ok = involution == total && forward == total && backward == total;
        out.push(check(
            format!("duality n={n} p<={max_edges}"),
            ok,
            format!(
                "{total} hypergraphs ({minimal} minimally uniform); involution {involution}, \
                 uniform/regular {forward}, regular/uniform {backward}"
            ),
        ));
    }
    Ok(out)
}

fn prop2(max_nodes: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=max_nodes {
        let (mut total, mut good) = (0usize, 0usize);
        let mut failure = None;
        for k in 1..=n.min(3) {
            for p in 1..=4 {
                for h in enumerate_uniform(n, k, p, true)? {
                    total += 1;
                    match decompose(&h).and_then(|part| part.validate(&h)) {
                        Ok(()) => good += 1,
                        Err(e) => failure = failure.or(Some(format!("{h}: {e}"))),
                    }
                }
            }
        }
        out.push(check(
            format!("decomposition n={n} k<=3 p<=4"),
            good == total,
            failure.unwrap_or_else(|| format!("{good}/{total} decomposed")),
        ));
    }
    let h: Hypergraph = "n=7; edges=[{1,2,3,4},{1,5,6,7},{3,4,5,6},{3,4,6,7}]".parse()?;
    let all = decompose_all(&h)?;
    let wanted: [Vec<Coalition>; 2] = [
        vec!["{1,3,6}".parse()?, "{2,4,5,7}".parse()?],
        vec!["{1,3,4,5,7}".parse()?, "{2,6}".parse()?],
    ];
    let listed: Vec<String> = all
        .iter()
        .map(|p| p.node_sets().iter().map(|c| c.to_string()).collect::<Vec<_>>().join("|"))
        .collect();
    let has_both = wanted.iter().all(|w| all.iter().any(|p| p.node_sets() == *w));
    out.push(check("seven-node example partitions", has_both, listed.join(" ; ")));
    Ok(out)
}

fn sharpbs(max_n: usize, games: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let catalog = enumerate_mbc(n)?;
        let (mut agree, mut certified, mut empty) = (0, 0, 0);
        let mut boundary_ok = 0;
        for seed in 0..games as u64 {
            let g = random_game(n, seed, DEFAULT_MAGNITUDE)?;
            let a = core_lp(&g)?;
            let b = core_mbc(&g, &catalog)?;
            agree += (a.is_nonempty() == b.is_nonempty()) as usize;
            certified += (a.validate(&g).is_ok() && b.validate(&g).is_ok()) as usize;
            empty += (!a.is_nonempty()) as usize;
            // Lower or raise v(N) to the cheapest coalition-feasible payment:
            // the core then sits exactly on the boundary.
            let tight = at_boundary(&g)?;
            let (a, b) = (core_lp(&tight)?, core_mbc(&tight, &catalog)?);
            boundary_ok += (a.is_nonempty() && b.is_nonempty() && a.validate(&tight).is_ok()) as usize;
        }
        out.push(check(
            format!("core verdicts n={n}"),
            agree == games && certified == games,
            format!("{games} games, {empty} empty cores, agree {agree}, certificates {certified}"),
        ));
        out.push(check(
            format!("boundary games n={n}"),
            boundary_ok == games,
            format!("{boundary_ok}/{games} nonempty at the tightest v(N)"),
        ));
    }
    Ok(out)
}

/// `g` with `v(N)` replaced by the largest efficiency over all balanced
/// collections of proper coalitions, read off the LP.
fn at_boundary(g: &Game) -> Result<Game> {
    let n = g.n();
    let grand = Coalition::full(n);
    let floor = crate::arith::integer(-1_000_000);
    let probe = Game::from_fn(n, |c| if c == grand { floor.clone() } else { g.worth(c).clone() })?;
    let cheapest = match core_lp(&probe)? {
        crate::games::CoreVerdict::Empty { efficiency, .. } => efficiency,
        crate::games::CoreVerdict::Nonempty { .. } => {
            return Err(Error::Validation("probe game unexpectedly has a core".into()))
        }
    };
    Game::from_fn(n, |c| if c == grand { cheapest.clone() } else { g.worth(c).clone() })
}
