//! Acceptance criteria. Runs without the libtest harness so that every
//! `criterion N: PASS|FAIL ...` line reaches stdout; exits nonzero on any FAIL.
//!
//! Reference values are recomputed here by brute force wherever the library
//! result could otherwise only be checked against itself.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use balanced_forge::arith::{binomial, Rational};
use balanced_forge::balanced::efficiency;
use balanced_forge::enumeration::duality_bound;
use balanced_forge::rng::SplitMix64;
use balanced_forge::{
    coalitions_of, core_lp, core_mbc, count_cumulative, count_spanning, count_total, decompose, decompose_all,
    enumerate_mbc, enumerate_mbc_oracle, enumerate_minimally_uniform, enumerate_uniform, find_balancing_weights,
    is_minimal_balanced, is_minimal_balanced_oracle, mbc_via_duality, random_game, Coalition, CoreVerdict,
    Hypergraph, MbcCatalog,
};
use num_bigint::{BigInt, BigUint};

fn main() {
    let criteria: [fn() -> bool; 10] = [
        criterion_01_mbc_counts,
        criterion_02_oracle_agreement,
        criterion_03_duality_agreement,
        criterion_04_three_node_example,
        criterion_05_inversion_identity,
        criterion_06_counting_vs_enumeration,
        criterion_07_duality_and_minimality,
        criterion_08_decompositions,
        criterion_09_core_routes_agree,
        criterion_10_minimality_criteria_agree,
    ];
    let failed = criteria.iter().filter(|c| !c()).count();
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn report(id: u32, outcome: Result<String, String>) -> bool {
    match outcome {
        Ok(detail) => {
            println!("criterion {id}: PASS {detail}");
            true
        }
        Err(detail) => {
            println!("criterion {id}: FAIL {detail}");
            false
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn keys(c: &MbcCatalog) -> BTreeSet<Vec<Coalition>> {
    c.keys()
}

// Brute-force predicates, written against the definitions only.

/// Edge sizes inside `a`, or None if they differ.
fn induced_uniformity(h: &Hypergraph, a: Coalition) -> Option<usize> {
    let sizes: BTreeSet<usize> = h.edges().iter().map(|e| e.intersection(a).len()).collect();
    (sizes.len() == 1).then(|| *sizes.iter().next().unwrap())
}

fn brute_min_uniform_on(h: &Hypergraph, nodes: Coalition) -> bool {
    if induced_uniformity(h, nodes).is_none() {
        return false;
    }
    let members: Vec<usize> = nodes.players().collect();
    (1..(1u32 << members.len()) - 1).all(|mask| {
        let a = members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(Coalition::EMPTY, |acc, (_, &x)| acc.union(Coalition::singleton(x)));
        induced_uniformity(h, a).is_none()
    })
}

fn degrees_of(n: usize, edges: &[Coalition]) -> Vec<usize> {
    (1..=n).map(|x| edges.iter().filter(|e| e.contains(x)).count()).collect()
}

fn brute_min_regular(h: &Hypergraph) -> bool {
    let n = h.nodes();
    let p = h.edges().len();
    let regular = |edges: &[Coalition]| degrees_of(n, edges).windows(2).all(|w| w[0] == w[1]);
    if !regular(h.edges()) {
        return false;
    }
    (1..(1u32 << p) - 1).all(|mask| {
        let part: Vec<Coalition> = (0..p).filter(|i| mask >> i & 1 == 1).map(|i| h.edges()[i]).collect();
        !regular(&part)
    })
}

/// Every proper hypergraph with `n` nodes and `p` edges (edge lists in
/// non-decreasing canonical order).
fn proper_hypergraphs(n: usize, p: usize) -> Vec<Hypergraph> {
    let all: Vec<Coalition> = (1..1u128 << n).map(Coalition::from_bits).collect();
    let full = Coalition::full(n);
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Vec::<Coalition>::new())];
    while let Some((from, edges)) = stack.pop() {
        if edges.len() == p {
            if edges.iter().fold(Coalition::EMPTY, |a, e| a.union(*e)) == full {
                out.push(Hypergraph::new(n, edges).unwrap());
            }
            continue;
        }
        for i in (from..all.len()).rev() {
            let mut next = edges.clone();
            next.push(all[i]);
            stack.push((i, next));
        }
    }
    out
}

/// Spanning `k`-uniform multisets of `p` edges on `n` nodes, by nested
/// counting over `k`-subsets.
fn brute_spanning(n: usize, k: usize, p: usize) -> u64 {
    let subsets: Vec<u32> = (1..1u32 << n).filter(|m| m.count_ones() as usize == k).collect();
    fn go(subsets: &[u32], from: usize, left: usize, acc: u32, full: u32) -> u64 {
        if left == 0 {
            return (acc == full) as u64;
        }
        (from..subsets.len()).map(|i| go(subsets, i, left - 1, acc | subsets[i], full)).sum()
    }
    go(&subsets, 0, p, 0, (1u32 << n) - 1)
}

fn criterion_01_mbc_counts() -> bool {
    let known = [(2, 2), (3, 6), (4, 42), (5, 1_292), (6, 200_214)];
    let mut detail = Vec::new();
    let outcome = (|| {
        for (n, want) in known {
            let start = Instant::now();
            let catalog = enumerate_mbc(n).map_err(|e| e.to_string())?;
            let took = start.elapsed();
            let got = catalog.len();
            // Smallest regularity needed by the duality route stays within its bound.
            let cap = BigInt::from(duality_bound(n));
            let worst = catalog.collections().iter().map(|b| b.denominator_lcm()).max().unwrap();
            ensure(worst <= cap, || format!("n={n}: denominator lcm {worst} exceeds {cap}"))?;
            detail.push(format!("n={n}:{got} in {:.2}s (max lcm {worst})", took.as_secs_f64()));
            ensure(got == want, || format!("n={n}: {got} != {want}"))?;
            let limit = if n <= 5 { Duration::from_secs(60) } else { Duration::from_secs(30 * 60) };
            ensure(took < limit, || format!("n={n} took {took:?}"))?;
        }
        Ok(detail.join(", "))
    })();
    report(1, outcome)
}

fn criterion_02_oracle_agreement() -> bool {
    let outcome = (|| {
        let mut detail = Vec::new();
        for n in 2..=5 {
            let direct = enumerate_mbc(n).map_err(|e| e.to_string())?;
            let oracle = enumerate_mbc_oracle(n).map_err(|e| e.to_string())?;
            ensure(keys(&direct) == keys(&oracle), || format!("n={n}: coalition sets differ"))?;
            ensure(direct.same_collections(&oracle), || format!("n={n}: weights differ"))?;
            detail.push(format!("n={n}:{}", direct.len()));
        }
        Ok(detail.join(", "))
    })();
    report(2, outcome)
}

fn criterion_03_duality_agreement() -> bool {
    let outcome = (|| {
        let mut detail = Vec::new();
        for n in 2..=5 {
            let k_max = duality_bound(n);
            let dual = mbc_via_duality(n, k_max).map_err(|e| e.to_string())?;
            let direct = enumerate_mbc(n).map_err(|e| e.to_string())?;
            ensure(dual.same_collections(&direct), || {
                format!("n={n} k_max={k_max}: {} vs {}", dual.len(), direct.len())
            })?;
            detail.push(format!("n={n} k_max={k_max}:{}", dual.len()));
        }
        Ok(detail.join(", "))
    })();
    report(3, outcome)
}

fn criterion_04_three_node_example() -> bool {
    let outcome = (|| {
        let b = |v: u64| BigUint::from(v);
        ensure(count_spanning(2, 2, 3) == b(1), || "count_spanning(2,2,3) != 1".into())?;
        ensure(count_spanning(3, 2, 3) == b(7), || "count_spanning(3,2,3) != 7".into())?;
        ensure(count_cumulative(3, 2, 3) == b(8), || "count_cumulative(3,2,3) != 8".into())?;
        // Total splits by support: C(3,2)*1 + C(3,3)*7.
        let by_support = binomial(3, 2) * b(1) + binomial(3, 3) * b(7);
        ensure(by_support == b(10), || format!("support split gives {by_support}"))?;
        ensure(count_total(3, 2, 3) == b(10), || "count_total(3,2,3) != 10".into())?;
        let e2 = enumerate_uniform(2, 2, 3, true).map_err(|e| e.to_string())?.len();
        let e3 = enumerate_uniform(3, 2, 3, true).map_err(|e| e.to_string())?.len();
        ensure(e2 == 1 && e3 == 7, || format!("enumerated {e2} and {e3}"))?;
        ensure(brute_spanning(3, 2, 3) == 7, || "brute force disagrees".into())?;
        let minimal = enumerate_minimally_uniform(3, 2, 3).map_err(|e| e.to_string())?;
        let triangle: Hypergraph = "n=3; edges=[{1,2},{1,3},{2,3}]".parse().unwrap();
        ensure(minimal == [triangle], || format!("minimal list {minimal:?}"))?;
        Ok("1 + 7 = 8 spanning; 10 total on 3 nodes; triangle is the only minimal one".into())
    })();
    report(4, outcome)
}

fn criterion_05_inversion_identity() -> bool {
    let outcome = (|| {
        let mut cases = 0;
        for n in 0..=6u64 {
            for k in 0..=n {
                for p in 0..=4u64 {
                    let rhs: BigUint = (0..=n).map(|i| binomial(n, i) * count_spanning(i, k, p)).sum();
                    ensure(count_total(n, k, p) == rhs, || format!("n={n} k={k} p={p}"))?;
                    cases += 1;
                }
            }
        }
        Ok(format!("{cases} (n,k,p) triples"))
    })();
    report(5, outcome)
}

fn criterion_06_counting_vs_enumeration() -> bool {
    let outcome = (|| {
        let mut cases = 0;
        for n in 1..=5usize {
            for k in 1..=n {
                for p in 1..=3usize {
                    let formula = count_spanning(n as u64, k as u64, p as u64);
                    let listed = enumerate_uniform(n, k, p, true).map_err(|e| e.to_string())?.len() as u64;
                    let brute = brute_spanning(n, k, p);
                    ensure(formula == BigUint::from(listed) && listed == brute, || {
                        format!("n={n} k={k} p={p}: formula {formula}, listed {listed}, brute {brute}")
                    })?;
                    cases += 1;
                }
            }
        }
        Ok(format!("{cases} (n,k,p) triples"))
    })();
    report(6, outcome)
}

fn criterion_07_duality_and_minimality() -> bool {
    let outcome = (|| {
        let (mut total, mut minimal) = (0, 0);
        for n in 1..=5 {
            for p in 1..=4 {
                for h in proper_hypergraphs(n, p) {
                    let d = h.dual().map_err(|e| e.to_string())?;
                    ensure(d.dual().map_err(|e| e.to_string())? == h, || format!("involution fails on {h}"))?;
                    let mu = h.is_minimally_uniform();
                    ensure(mu == brute_min_uniform_on(&h, h.node_set()), || format!("minimal uniformity of {h}"))?;
                    ensure(d.is_minimally_regular() == brute_min_regular(&d), || format!("minimal regularity of {d}"))?;
                    ensure(mu == d.is_minimally_regular(), || format!("uniform/regular mismatch on {h}"))?;
                    ensure(h.is_minimally_regular() == d.is_minimally_uniform(), || {
                        format!("regular/uniform mismatch on {h}")
                    })?;
                    total += 1;
                    minimal += mu as usize;
                }
            }
        }
        Ok(format!("{total} proper hypergraphs, {minimal} minimally uniform"))
    })();
    report(7, outcome)
}

fn criterion_08_decompositions() -> bool {
    let outcome = (|| {
        let mut total = 0;
        for n in 1..=6 {
            for k in 1..=n.min(3) {
                for p in 1..=4 {
                    for h in enumerate_uniform(n, k, p, true).map_err(|e| e.to_string())? {
                        let part = decompose(&h).map_err(|e| format!("{h}: {e}"))?;
                        let mut seen = Coalition::EMPTY;
                        for b in &part.blocks {
                            ensure(b.nodes.intersection(seen).is_empty(), || format!("{h}: overlapping blocks"))?;
                            seen = seen.union(b.nodes);
                            ensure(brute_min_uniform_on(&h, b.nodes), || format!("{h}: block {} not minimal", b.nodes))?;
                            ensure(b.size == h.edges().len(), || format!("{h}: block size"))?;
                        }
                        ensure(seen == h.node_set(), || format!("{h}: blocks miss nodes"))?;
                        total += 1;
                    }
                }
            }
        }
        let h: Hypergraph = "n=7; edges=[{1,2,3,4},{1,5,6,7},{3,4,5,6},{3,4,6,7}]".parse().unwrap();
        let all = decompose_all(&h).map_err(|e| e.to_string())?;
        let sets: Vec<BTreeSet<Coalition>> =
            all.iter().map(|p| p.node_sets().into_iter().collect()).collect();
        let want = |blocks: &[&str]| blocks.iter().map(|s| s.parse().unwrap()).collect::<BTreeSet<Coalition>>();
        ensure(sets.contains(&want(&["{1,3,6}", "{2,4,5,7}"])), || "first partition missing".into())?;
        ensure(sets.contains(&want(&["{2,6}", "{1,3,4,5,7}"])), || "second partition missing".into())?;
        Ok(format!("{total} uniform hypergraphs decomposed; seven-node example has {} partitions", all.len()))
    })();
    report(8, outcome)
}

fn criterion_09_core_routes_agree() -> bool {
    let outcome = (|| {
        let mut detail = Vec::new();
        for n in 2..=4 {
            let catalog = enumerate_mbc(n).map_err(|e| e.to_string())?;
            let members = keys(&catalog);
            let mut empty = 0;
            for seed in 0..1000u64 {
                let g = random_game(n, seed, 100).map_err(|e| e.to_string())?;
                let a = core_lp(&g).map_err(|e| e.to_string())?;
                let b = core_mbc(&g, &catalog).map_err(|e| e.to_string())?;
                ensure(a.is_nonempty() == b.is_nonempty(), || format!("n={n} seed={seed}: verdicts differ"))?;
                for v in [&a, &b] {
                    match v {
                        CoreVerdict::Nonempty { point } => {
                            for s in coalitions_of(n).unwrap() {
                                let paid: Rational = s.players().map(|i| &point[i - 1]).sum();
                                ensure(paid >= *g.worth(s), || format!("n={n} seed={seed}: {s} blocks"))?;
                            }
                            let total: Rational = point.iter().sum();
                            ensure(total == *g.grand_worth(), || format!("n={n} seed={seed}: not efficient"))?;
                        }
                        CoreVerdict::Empty { collection, efficiency: e } => {
                            let recomputed: Rational = collection.iter().map(|(c, w)| w * g.worth(c)).sum();
                            ensure(recomputed == *e && recomputed > *g.grand_worth(), || {
                                format!("n={n} seed={seed}: certificate does not beat v(N)")
                            })?;
                            ensure(members.contains(collection.coalitions()), || {
                                format!("n={n} seed={seed}: certificate not in catalog")
                            })?;
                        }
                    }
                }
                if !a.is_nonempty() {
                    empty += 1;
                    // The catalog certificate is a most efficient collection.
                    let CoreVerdict::Empty { efficiency: best, .. } = &b else { unreachable!() };
                    for m in catalog.collections() {
                        ensure(efficiency(m, &g).unwrap() <= *best, || format!("n={n} seed={seed}: not maximal"))?;
                    }
                }
            }
            detail.push(format!("n={n}: 1000 games, {empty} empty"));
        }
        Ok(detail.join(", "))
    })();
    report(9, outcome)
}

fn criterion_10_minimality_criteria_agree() -> bool {
    let outcome = (|| {
        let mut detail = Vec::new();
        for n in 1..=4usize {
            let all = coalitions_of(n).unwrap();
            let (mut balanced, mut minimal) = (0, 0);
            for mask in 1u32..1 << all.len() {
                let set: Vec<Coalition> = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
                if find_balancing_weights(n, &set).unwrap().is_none() {
                    continue;
                }
                balanced += 1;
                let fast = is_minimal_balanced(n, &set).unwrap();
                let slow = is_minimal_balanced_oracle(n, &set).unwrap();
                ensure(fast == slow, || format!("n={n} {set:?}: rank says {fast}, oracle {slow}"))?;
                minimal += fast as usize;
            }
            detail.push(format!("n={n}: {balanced} balanced, {minimal} minimal"));
        }

        // n = 5: half random small collections, half catalog members with
        // extra coalitions thrown in.
        let n = 5;
        let all = coalitions_of(n).unwrap();
        let catalog = enumerate_mbc(n).unwrap();
        let mut rng = SplitMix64::new(20_240_601);
        let (mut samples, mut minimal) = (0, 0);
        while samples < 10_000 {
            let mut set: BTreeSet<Coalition> = if samples % 2 == 0 {
                let size = 1 + rng.up_to(6) as usize;
                (0..size).map(|_| all[rng.up_to(30) as usize]).collect()
            } else {
                let base = &catalog.collections()[rng.up_to(catalog.len() as u64 - 1) as usize];
                base.coalitions().iter().copied().collect()
            };
            if samples % 2 == 1 {
                for _ in 0..rng.up_to(2) {
                    set.insert(all[rng.up_to(30) as usize]);
                }
            }
            let set: Vec<Coalition> = set.into_iter().collect();
            if find_balancing_weights(n, &set).unwrap().is_none() {
                continue;
            }
            let fast = is_minimal_balanced(n, &set).unwrap();
            let slow = is_minimal_balanced_oracle(n, &set).unwrap();
            ensure(fast == slow, || format!("n=5 {set:?}: rank says {fast}, oracle {slow}"))?;
            samples += 1;
            minimal += fast as usize;
        }
        detail.push(format!("n=5: {samples} balanced samples, {minimal} minimal"));
        Ok(detail.join(", "))
    })();
    report(10, outcome)
}
