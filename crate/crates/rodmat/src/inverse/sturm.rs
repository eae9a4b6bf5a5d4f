//! Exact real-root counting and isolation via Sturm chains, with rational
//! bisection refinement. All interval endpoints stay rational, so root counts
//! are certificates rather than floating-point estimates.

use crate::exact::{rat_i, rat_to_f64, Polynomial, Rational};
use num::{One, Signed, Zero};

/// An interval (lo, hi] certified to contain exactly one real root.
#[derive(Clone, Debug)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat_i(2)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

fn sturm_chain(p: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        chain.push(-&r);
    }
    chain.pop();
    chain
}

fn sign_changes(chain: &[Polynomial], x: &Rational) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for q in chain {
        let v = q.eval(x);
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(prev) = last {
            if prev != s {
                changes += 1;
            }
        }
        last = Some(s);
    }
    changes
}

/// Number of distinct real roots of `p` in the half-open interval (lo, hi].
pub fn count_real_roots_in(p: &Polynomial, lo: &Rational, hi: &Rational) -> usize {
    assert!(lo < hi);
    let sf = p.squarefree();
    if sf.degree().map_or(true, |d| d == 0) {
        return 0;
    }
    let chain = sturm_chain(&sf);
    sign_changes(&chain, lo) - sign_changes(&chain, hi)
}

/// Disjoint rational intervals, ascending, each containing exactly one
/// distinct real root of `p`, refined until narrower than `width`.
pub fn isolate_real_roots_exact(p: &Polynomial, width: &Rational) -> Vec<RootInterval> {
    let sf = p.squarefree();
    if sf.degree().map_or(true, |d| d == 0) {
        return Vec::new();
    }
    let chain = sturm_chain(&sf);
    let bound = sf.root_bound() + Rational::one();
    let mut work = vec![(-bound.clone(), bound)];
    let mut found = Vec::new();
    while let Some((lo, hi)) = work.pop() {
        let n = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
        match n {
            0 => {}
            1 => {
                let (mut lo, mut hi) = (lo, hi);
                while &(&hi - &lo) > width {
                    let mid = (&lo + &hi) / rat_i(2);
                    if sign_changes(&chain, &lo) - sign_changes(&chain, &mid) == 1 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                found.push(RootInterval { lo, hi });
            }
            _ => {
                let mid = (&lo + &hi) / rat_i(2);
                // a root exactly at the split point stays in the left half
                work.push((lo, mid.clone()));
                work.push((mid, hi));
            }
        }
    }
    found.sort_by(|a, b| a.lo.cmp(&b.lo));
    found
}

/// Distinct real roots of `p` as floats, ascending, accurate to ~1e-12 of the
/// root magnitude scale.
pub fn isolate_real_roots(p: &Polynomial) -> Vec<f64> {
    let scale = rat_to_f64(&p.root_bound()).abs().max(1.0);
    let width = crate::exact::rat_approx(1e-13 * scale).max(Rational::new(
        num::BigInt::one(),
        num::BigInt::from(u64::MAX),
    ));
    isolate_real_roots_exact(p, &width)
        .iter()
        .map(|iv| rat_to_f64(&iv.midpoint()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| rat_i(c)).collect())
    }

    #[test]
    fn counts_roots_of_cubic() {
        // (x-1)(x-2)(x-3)
        let p = poly(&[-6, 11, -6, 1]);
        assert_eq!(count_real_roots_in(&p, &rat_i(0), &rat_i(4)), 3);
        assert_eq!(count_real_roots_in(&p, &rat(3, 2), &rat(5, 2)), 1);
        assert_eq!(count_real_roots_in(&p, &rat_i(4), &rat_i(9)), 0);
        // half-open convention: root at the upper endpoint counts
        assert_eq!(count_real_roots_in(&p, &rat_i(0), &rat_i(1)), 1);
    }

    #[test]
    fn isolates_irrational_roots() {
        // x² - 2
        let p = poly(&[-2, 0, 1]);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] + 2.0_f64.sqrt()).abs() < 1e-10);
        assert!((roots[1] - 2.0_f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn handles_repeated_and_complex_roots() {
        // (x-1)²(x²+1): distinct real roots = {1}
        let p = &poly(&[1, -2, 1]) * &poly(&[1, 0, 1]);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn quartic_with_rational_roots() {
        // (x+2)(x+1)(x-1)(x-3)
        let p = poly(&[6, 1, -7, -1, 1]);
        let roots = isolate_real_roots(&p);
        assert_eq!(roots.len(), 4);
        for (got, want) in roots.iter().zip([-2.0, -1.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-10, "{} vs {}", got, want);
        }
    }
}
