//! Fraction-free integer elimination on incidence vectors.

use num_integer::Integer;

use crate::coalition::Coalition;

/// Incremental row-echelon basis over the rationals, stored as primitive
/// integer rows.
#[derive(Clone, Debug, Default)]
pub(crate) struct EchelonBasis {
    rows: Vec<(usize, Vec<i128>)>,
    dim: usize,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { rows: Vec::new(), dim }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Drops the most recently inserted vector.
    pub fn pop(&mut self) {
        self.rows.pop();
    }

    /// Adds the incidence vector of `c`; returns false (and leaves the basis
    /// unchanged) when it is already in the span.
    pub fn insert(&mut self, c: Coalition) -> bool {
        let mut v: Vec<i128> = (1..=self.dim).map(|i| c.contains(i) as i128).collect();
        for (p, row) in &self.rows {
            let f = v[*p];
            if f != 0 {
                let g = row[*p];
                for (x, r) in v.iter_mut().zip(row) {
                    *x = *x * g - f * r;
                }
                normalize(&mut v);
            }
        }
        match v.iter().position(|&x| x != 0) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

/// Rank over the rationals of the incidence vectors of `coalitions` in `R^n`.
pub(crate) fn rank(n: usize, coalitions: &[Coalition]) -> usize {
    let mut basis = EchelonBasis::new(n);
    for c in coalitions {
        basis.insert(*c);
        if basis.rank() == n {
            break;
        }
    }
    basis.rank()
}
