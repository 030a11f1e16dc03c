//! Exact integer and rational arithmetic.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{parse_err, Result};

/// Exact rational number; always stored reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Formats as `num/den`, including integers (`1/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || parse_err(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // Each prefix product is itself a binomial coefficient, so the division is exact.
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `n (n+1) ... (n+p-1)`: exactly `p` factors, `1` when `p = 0`.
pub fn rising_factorial(n: &BigUint, p: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut f = n.clone();
    for _ in 0..p {
        acc *= &f;
        f += 1u32;
    }
    acc
}

pub fn factorial(p: u64) -> BigUint {
    (1..=p).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Number of `p`-multisets drawn from `m` items, `C(m + p - 1, p)`.
pub fn multiset_coefficient(m: &BigUint, p: u64) -> BigUint {
    rising_factorial(m, p) / factorial(p)
}

/// Least common multiple of the denominators of `values`.
pub fn lcm_of_denominators<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a Rational>,
{
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn pascal(rows: usize) -> Vec<Vec<u64>> {
        let mut t = vec![vec![1u64]];
        for n in 1..=rows {
            let prev = &t[n - 1];
            let mut row = vec![1u64; n + 1];
            for k in 1..n {
                row[k] = prev[k - 1] + prev[k];
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(3, 2), u(3));
        assert_eq!(binomial(2, 2), u(1));
        assert_eq!(binomial(7, 4), u(pascal(7)[7][4]));
        assert_eq!(binomial(7, 4), u(35));
        assert_eq!(binomial(2, 3), u(0));
        assert_eq!(binomial(0, 0), u(1));
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let t = pascal(30);
        for n in 0..=30u64 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), u(t[n as usize][k as usize]), "C({n},{k})");
            }
        }
    }

    #[test]
    fn rising_factorial_uses_p_factors() {
        assert_eq!(rising_factorial(&u(3), 3), u(60));
        assert_eq!(rising_factorial(&u(1), 3), u(6));
        assert_eq!(rising_factorial(&u(9), 0), u(1));
        assert_eq!(rising_factorial(&u(0), 2), u(0));
    }

    #[test]
    fn multiset_examples() {
        assert_eq!(multiset_coefficient(&u(3), 3), u(10));
        assert_eq!(multiset_coefficient(&u(1), 3), u(1));
        assert_eq!(multiset_coefficient(&u(5), 0), u(1));
        assert_eq!(multiset_coefficient(&u(0), 0), u(1));
        assert_eq!(multiset_coefficient(&u(0), 2), u(0));
    }

    #[test]
    fn rising_factorial_is_p_factorial_times_multisets() {
        for n in 0..=30u64 {
            for p in 0..=10u64 {
                let lhs = rising_factorial(&u(n), p);
                let rhs = factorial(p) * multiset_coefficient(&u(n), p);
                assert_eq!(lhs, rhs);
                if n >= 1 {
                    assert_eq!(multiset_coefficient(&u(n), p), binomial(n + p - 1, p));
                }
            }
        }
    }

    #[test]
    fn rational_text_form() {
        let r = rational(2, 4);
        assert_eq!(format_rational(&r), "1/2");
        assert_eq!(format_rational(&integer(1)), "1/1");
        assert_eq!(parse_rational(" 3/6 ").unwrap(), r);
        assert_eq!(parse_rational("-7").unwrap(), integer(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
