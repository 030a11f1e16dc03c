//! Depth-first search for minimal balanced collections.
//!
//! Coalitions are added in canonical order while their incidence vectors stay
//! linearly independent. Alongside the echelon rows the search carries the
//! all-ones vector reduced against them; once that residue vanishes, the
//! all-ones vector lies in the span, its coordinates are the unique balancing
//! weights, and the collection is minimal balanced exactly when they are all
//! positive. No extension of such a collection can be minimal, so the branch
//! stops there either way.
//!
//! Rows are fixed-width integer arrays kept primitive by gcd division. Each
//! row stores the vector part followed by its coefficients over the all-ones
//! vector and over the chosen coalitions, so the weights fall out of the
//! reduction directly.

use num_integer::Integer;
use rayon::prelude::*;

/// Engine limit: `n` vector entries, one all-ones coefficient and `n`
/// coalition coefficients must fit in a row.
pub const MAX_DIRECT_PLAYERS: usize = 7;
const WIDTH: usize = 2 * MAX_DIRECT_PLAYERS + 2;

type Row = [i64; WIDTH];

/// A found collection: coalition masks and weights `num[j] / den`.
#[derive(Clone, Debug)]
pub(crate) struct RawCollection {
    pub masks: Vec<u32>,
    pub numerators: Vec<i64>,
    pub denominator: i64,
}

struct Search {
    n: usize,
    candidates: Vec<u32>,
}

struct Frame {
    rows: [Row; MAX_DIRECT_PLAYERS],
    pivots: [usize; MAX_DIRECT_PLAYERS],
    chosen: [u32; MAX_DIRECT_PLAYERS],
}

pub(crate) fn search(n: usize) -> Vec<RawCollection> {
    assert!((1..=MAX_DIRECT_PLAYERS).contains(&n));
    let s = Search { n, candidates: (1..1u32 << n).collect() };
    let mut target = [0i64; WIDTH];
    target[..n].iter_mut().for_each(|x| *x = 1);
    target[n] = 1;

    // Split on the first two coalitions so the work spreads across threads.
    let count = s.candidates.len();
    let prefixes: Vec<(usize, Option<usize>)> = (0..count)
        .flat_map(|i| std::iter::once((i, None)).chain((i + 1..count).map(move |j| (i, Some(j)))))
        .collect();
    let mut parts: Vec<Vec<RawCollection>> = prefixes
        .par_iter()
        .map(|&(i, j)| {
            let mut out = Vec::new();
            let mut frame = Frame {
                rows: [[0; WIDTH]; MAX_DIRECT_PLAYERS],
                pivots: [0; MAX_DIRECT_PLAYERS],
                chosen: [0; MAX_DIRECT_PLAYERS],
            };
            match s.step(&mut frame, 0, i, &target, &mut out) {
                Step::Extend(t1) => match j {
                    // The prefix (i) alone was already recorded by the (i, None) job.
                    None => {}
                    Some(j) => {
                        if let Step::Extend(t2) = s.step(&mut frame, 1, j, &t1, &mut out) {
                            if 2 < n {
                                s.dfs(&mut frame, 2, j + 1, &t2, &mut out);
                            }
                        }
                    }
                },
                Step::Stop if j.is_some() => out.clear(),
                Step::Stop => {}
            }
            out
        })
        .collect();
    // Jobs are in preorder of their prefixes, so concatenation keeps canonical order.
    let mut all = Vec::new();
    for p in parts.iter_mut() {
        all.append(p);
    }
    all
}

enum Step {
    /// Independent, ones-vector not yet in span: the branch continues.
    Extend(Row),
    /// Dependent, or the ones-vector is in the span (recorded if positive).
    Stop,
}

impl Search {
    fn dfs(&self, frame: &mut Frame, depth: usize, from: usize, target: &Row, out: &mut Vec<RawCollection>) {
        for idx in from..self.candidates.len() {
            if let Step::Extend(t) = self.step(frame, depth, idx, target, out) {
                if depth + 1 < self.n {
                    self.dfs(frame, depth + 1, idx + 1, &t, out);
                }
            }
        }
    }

    /// Tries candidate `idx` at position `depth`. On success the new row is
    /// left in `frame` at `depth`.
    #[inline]
    fn step(&self, frame: &mut Frame, depth: usize, idx: usize, target: &Row, out: &mut Vec<RawCollection>) -> Step {
        let n = self.n;
        let len = n + 2 + depth;
        let mask = self.candidates[idx];
        let mut v: Row = [0; WIDTH];
        for (i, x) in v.iter_mut().enumerate().take(n) {
            *x = (mask >> i & 1) as i64;
        }
        v[n + 1 + depth] = 1;
        for r in 0..depth {
            let p = frame.pivots[r];
            let f = v[p];
            if f != 0 {
                combine(&mut v, &frame.rows[r], p, f, len);
            }
        }
        let Some(p) = v[..n].iter().position(|&x| x != 0) else {
            return Step::Stop;
        };
        let mut t = *target;
        let f = t[p];
        if f != 0 {
            combine(&mut t, &v, p, f, len);
        }
        frame.rows[depth] = v;
        frame.pivots[depth] = p;
        frame.chosen[depth] = mask;
        if t[..n].iter().any(|&x| x != 0) {
            return Step::Extend(t);
        }
        // 0 = a·1 + Σ g_j b_j, so the weights are -g_j / a.
        let a = t[n];
        let coeffs = &t[n + 1..n + 2 + depth];
        if coeffs.iter().all(|&g| g != 0 && g.signum() == -a.signum()) {
            let sign = -a.signum();
            let numerators: Vec<i64> = coeffs.iter().map(|&g| g * sign).collect();
            let den = a.abs();
            let g = numerators.iter().fold(den, |acc, &x| acc.gcd(&x));
            out.push(RawCollection {
                masks: frame.chosen[..=depth].to_vec(),
                numerators: numerators.iter().map(|x| x / g).collect(),
                denominator: den / g,
            });
        }
        Step::Stop
    }
}

/// `v ← v·row[p] − f·row`, then divide out the content of `v`.
#[inline]
fn combine(v: &mut Row, row: &Row, p: usize, f: i64, len: usize) {
    let g = row[p];
    let mut content = 0i64;
    for k in 0..len {
        let x = v[k] * g - f * row[k];
        v[k] = x;
        content = content.gcd(&x);
    }
    if content > 1 {
        for x in v[..len].iter_mut() {
            *x /= content;
        }
    }
}
