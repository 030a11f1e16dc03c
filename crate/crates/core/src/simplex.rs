//! Exact rational simplex method with Bland's anti-cycling rule.
//!
//! Solves `maximize c·x subject to A x = b, x >= 0`. Phase one uses
//! artificial variables unless the caller names a starting basis whose
//! columns already form an identity matrix. Every pivot decision is an exact
//! sign test, and the pivoting rule is deterministic, so identical inputs
//! always produce the identical optimal vertex.

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// A linear program in equality standard form (maximization).
#[derive(Clone, Debug)]
pub struct Problem {
    /// Constraint rows, each of length `c.len()`.
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub x: Vec<Rational>,
    pub value: Rational,
    /// Row prices `y` with `yᵀ A_B = c_B`; zero on rows found to be redundant.
    pub duals: Vec<Rational>,
    /// Basic column per surviving row, in row order.
    pub basis: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Optimal(Solution),
    Infeasible,
    Unbounded,
}

impl Outcome {
    pub fn optimal(self) -> Option<Solution> {
        match self {
            Outcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

struct Tableau {
    /// rows × (cols + 1); the last entry of each row is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Original row index of each tableau row.
    row_ids: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, j: usize, obj: &mut [Rational]) {
        let p = self.rows[r][j].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            eliminate(row, &pivot_row, j);
        }
        eliminate(obj, &pivot_row, j);
        self.rows[r] = pivot_row;
        self.basis[r] = j;
    }

    /// Runs simplex iterations on `obj` (reduced costs `z_j - c_j`, last entry
    /// the objective value) over the columns `0..allowed`. Returns false when
    /// the objective is unbounded.
    fn run(&mut self, obj: &mut [Rational], allowed: usize) -> bool {
        loop {
            // Bland: lowest-index improving column.
            let Some(j) = (0..allowed).find(|&j| obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, j, obj);
        }
    }
}

fn eliminate(row: &mut [Rational], pivot_row: &[Rational], j: usize) {
    let f = row[j].clone();
    if f.is_zero() {
        return;
    }
    for (v, p) in row.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *v -= &f * p;
        }
    }
}

fn reduced_costs(t: &Tableau, c: &[Rational]) -> Vec<Rational> {
    let mut obj: Vec<Rational> = (0..=t.cols)
        .map(|j| if j < c.len() { -c[j].clone() } else { Rational::zero() })
        .collect();
    for (i, row) in t.rows.iter().enumerate() {
        let cb = match c.get(t.basis[i]) {
            Some(v) if !v.is_zero() => v,
            _ => continue,
        };
        for (o, v) in obj.iter_mut().zip(row) {
            if !v.is_zero() {
                *o += cb * v;
            }
        }
    }
    obj
}

/// Maximizes `c·x` over `{x >= 0 : A x = b}`.
///
/// `start` may name, for each row, a column equal to the corresponding unit
/// vector; phase one is then skipped. Rows with negative right-hand side are
/// negated first (and must not be combined with `start`).
pub fn maximize(problem: &Problem, start: Option<&[usize]>) -> Outcome {
    let m = problem.b.len();
    let n = problem.c.len();
    debug_assert!(problem.a.iter().all(|r| r.len() == n));

    let mut sign = vec![false; m];
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, b)) in problem.a.iter().zip(&problem.b).enumerate() {
        let mut r: Vec<Rational> = row.clone();
        let mut rhs = b.clone();
        if rhs.is_negative() {
            sign[i] = true;
            r.iter_mut().for_each(|v| *v = -v.clone());
            rhs = -rhs;
        }
        r.push(rhs);
        rows.push(r);
    }

    let mut t = match start {
        Some(basis) => {
            assert_eq!(basis.len(), m, "one starting column per row");
            debug_assert!(!sign.iter().any(|&s| s));
            Tableau { rows, basis: basis.to_vec(), row_ids: (0..m).collect(), cols: n }
        }
        None => match phase_one(rows, n) {
            Some(t) => t,
            None => return Outcome::Infeasible,
        },
    };

    let mut obj = reduced_costs(&t, &problem.c);
    if !t.run(&mut obj, n) {
        return Outcome::Unbounded;
    }

    let mut x = vec![Rational::zero(); n];
    for (i, &j) in t.basis.iter().enumerate() {
        x[j] = t.rhs(i).clone();
    }
    let value = obj[n].clone();
    let duals = basis_duals(problem, &t, &sign);
    Outcome::Optimal(Solution { x, value, duals, basis: t.basis })
}

fn phase_one(rows: Vec<Vec<Rational>>, n: usize) -> Option<Tableau> {
    let m = rows.len();
    // Columns n..n+m are artificials; the rhs column moves to the end.
    let rows: Vec<Vec<Rational>> = rows
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            let rhs = r.pop().expect("rhs present");
            r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            r.push(rhs);
            r
        })
        .collect();
    let mut t = Tableau { rows, basis: (n..n + m).collect(), row_ids: (0..m).collect(), cols: n + m };
    let c1: Vec<Rational> = (0..n + m)
        .map(|j| if j < n { Rational::zero() } else { -Rational::one() })
        .collect();
    let mut obj = reduced_costs(&t, &c1);
    let bounded = t.run(&mut obj, n + m);
    debug_assert!(bounded, "phase one is bounded by zero");
    if obj[n + m].is_negative() {
        return None;
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j, &mut obj);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    t.row_ids.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    for r in t.rows.iter_mut() {
        let rhs = r.pop().expect("rhs present");
        r.truncate(n);
        r.push(rhs);
    }
    t.cols = n;
    Some(t)
}

/// Solves `yᵀ A_B = c_B` on the surviving rows by exact elimination.
fn basis_duals(problem: &Problem, t: &Tableau, sign: &[bool]) -> Vec<Rational> {
    let k = t.basis.len();
    let m = problem.b.len();
    // Augmented system: unknown y over surviving rows; equation per basic column j:
    // sum_r A[row_r][j] * s_r * y_r = c_j.
    let mut sys: Vec<Vec<Rational>> = t
        .basis
        .iter()
        .map(|&j| {
            let mut eq: Vec<Rational> = t
                .row_ids
                .iter()
                .map(|&r| {
                    let v = problem.a[r][j].clone();
                    if sign[r] {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            eq.push(problem.c[j].clone());
            eq
        })
        .collect();
    let sol = solve_square(&mut sys, k).expect("basis matrix is nonsingular");
    let mut y = vec![Rational::zero(); m];
    for (idx, &r) in t.row_ids.iter().enumerate() {
        // Undo the row negation applied before solving.
        y[r] = if sign[r] { -sol[idx].clone() } else { sol[idx].clone() };
    }
    y
}

/// Gauss-Jordan on a `k × (k+1)` augmented system; `None` when singular.
pub(crate) fn solve_square(sys: &mut [Vec<Rational>], k: usize) -> Option<Vec<Rational>> {
    for col in 0..k {
        let p = (col..k).find(|&r| !sys[r][col].is_zero())?;
        sys.swap(col, p);
        let pv = sys[col][col].clone();
        for v in sys[col].iter_mut() {
            *v /= &pv;
        }
        let prow = sys[col].clone();
        for (r, row) in sys.iter_mut().enumerate() {
            if r != col {
                eliminate(row, &prow, col);
            }
        }
    }
    Some(sys.iter().map(|r| r[k].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{integer, rational};

    fn q(v: i64) -> Rational {
        integer(v)
    }

    #[test]
    fn small_maximization() {
        // max x + y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let p = Problem {
            a: vec![
                vec![q(1), q(2), q(1), q(0)],
                vec![q(3), q(1), q(0), q(1)],
            ],
            b: vec![q(4), q(6)],
            c: vec![q(1), q(1), q(0), q(0)],
        };
        for start in [None, Some(&[2usize, 3][..])] {
            let s = maximize(&p, start).optimal().unwrap();
            assert_eq!(s.value, rational(14, 5));
            assert_eq!(s.x[0], rational(8, 5));
            assert_eq!(s.x[1], rational(6, 5));
            // Strong duality: y·b = value.
            let yb: Rational = s.duals.iter().zip(&p.b).map(|(y, b)| y * b).sum();
            assert_eq!(yb, s.value);
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x + y = -1 with x, y >= 0 is infeasible.
        let p = Problem { a: vec![vec![q(1), q(1)]], b: vec![q(-1)], c: vec![q(0), q(0)] };
        assert!(matches!(maximize(&p, None), Outcome::Infeasible));
        // max x s.t. x - y = 0 is unbounded.
        let p = Problem { a: vec![vec![q(1), q(-1)]], b: vec![q(0)], c: vec![q(1), q(0)] };
        assert!(matches!(maximize(&p, None), Outcome::Unbounded));
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let p = Problem {
            a: vec![vec![q(1), q(1)], vec![q(2), q(2)]],
            b: vec![q(1), q(2)],
            c: vec![q(1), q(0)],
        };
        let s = maximize(&p, None).optimal().unwrap();
        assert_eq!(s.value, q(1));
        assert_eq!(s.basis.len(), 1);
    }

    #[test]
    fn negative_rhs_duals_keep_orientation() {
        // max -x s.t. -x = -3  =>  x = 3, value -3, y = 1.
        let p = Problem { a: vec![vec![q(-1)]], b: vec![q(-3)], c: vec![q(-1)] };
        let s = maximize(&p, None).optimal().unwrap();
        assert_eq!(s.x[0], q(3));
        assert_eq!(s.duals[0], q(1));
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Beale's classic cycling example (equality form with slacks).
        let r = |n, d| rational(n, d);
        let p = Problem {
            a: vec![
                vec![r(1, 4), q(-60), r(-1, 25), q(9), q(1), q(0), q(0)],
                vec![r(1, 2), q(-90), r(-1, 50), q(3), q(0), q(1), q(0)],
                vec![q(0), q(0), q(1), q(0), q(0), q(0), q(1)],
            ],
            b: vec![q(0), q(0), q(1)],
            c: vec![r(3, 4), q(-150), r(1, 50), q(-6), q(0), q(0), q(0)],
        };
        let s = maximize(&p, Some(&[4, 5, 6])).optimal().unwrap();
        assert_eq!(s.value, r(1, 20));
    }
}
