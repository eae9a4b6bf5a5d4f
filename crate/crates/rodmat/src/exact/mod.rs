//! Exact arithmetic kernel: arbitrary-precision rationals, dense univariate
//! polynomials, rational functions, Laurent tails at infinity and pole analysis.
//!
//! Everything here is immutable value types and pure functions; all identities
//! downstream (determinant checks, node passing, inverse-problem solving) rely
//! on this arithmetic being exact.

mod laurent;
mod polynomial;
mod ratfun;

pub use laurent::LaurentTail;
pub use polynomial::Polynomial;
pub use ratfun::{rational_roots, Pole, PoleLocation, PoleReport, RationalFunction};

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::str::FromStr;
use thiserror::Error;

/// Exact coefficient type for the whole crate. `num::BigRational` keeps the
/// gcd/positive-denominator invariants for us.
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("malformed rational literal `{0}`")]
    BadRationalLiteral(String),
}

/// Shorthand for small rational constants.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_i(p: i64) -> Rational {
    Rational::from(BigInt::from(p))
}

/// Serializes a rational as `p/q`, omitting `/q` when the denominator is 1.
pub fn rat_to_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` (q > 0 after normalization).
pub fn rat_from_str(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::BadRationalLiteral(s.to_string());
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s.trim()).map_err(|_| bad())?;
            Ok(Rational::from(n))
        }
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Exact square root of a non-negative rational, when it is a perfect square.
pub fn rat_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}

/// Nearest rational with denominator 10^10 — for carrying numerically
/// determined quantities (e.g. isolated real roots) into exact containers
/// with a readable, deterministic representation.
pub fn rat_approx(x: f64) -> Rational {
    let scale = 1e10;
    let n = (x * scale).round() as i64;
    Rational::new(BigInt::from(n), BigInt::from(10_000_000_000i64))
}

pub fn rat_to_f64(x: &Rational) -> f64 {
    // good enough for the magnitudes in this crate
    let n = big_to_f64(x.numer());
    let d = big_to_f64(x.denom());
    n / d
}

fn big_to_f64(x: &BigInt) -> f64 {
    let (sign, digits) = x.to_u64_digits();
    let mut v = 0.0f64;
    for d in digits.iter().rev() {
        v = v * 1.8446744073709552e19 + *d as f64;
    }
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

/// All divisors of |n|, in no particular order. Intended for the small
/// integers that appear as extreme polynomial coefficients.
pub(crate) fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    assert!(!n.is_zero());
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if !n.is_one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["3", "-7/2", "0", "25/4"] {
            let x = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&x), s);
        }
        // non-canonical input normalizes
        assert_eq!(rat_to_string(&rat_from_str("4/6").unwrap()), "2/3");
        assert_eq!(rat_to_string(&rat_from_str("3/-6").unwrap()), "-1/2");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(rat_sqrt(&rat(25, 4)), Some(rat(5, 2)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
        assert_eq!(rat_sqrt(&rat(-4, 1)), None);
        assert_eq!(rat_sqrt(&rat(0, 1)), Some(rat(0, 1)));
    }

    #[test]
    fn divisor_enumeration() {
        let mut d = divisors(&BigInt::from(12));
        d.sort();
        let expect: Vec<BigInt> = [1, 2, 3, 4, 6, 12].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(d, expect);
    }
}
