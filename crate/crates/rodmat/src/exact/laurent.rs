use super::{rat_to_string, Rational};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Truncated Laurent expansion Σ cₖ z^k as z→∞: the coefficients for
/// k in [k_max − depth, k_max], nonzero entries only.
///
/// `k_max` is deg(num) − deg(den) of the source rational function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTail {
    coeffs: BTreeMap<i64, Rational>,
    k_max: i64,
    k_min: i64,
}

impl LaurentTail {
    pub fn new(coeffs: BTreeMap<i64, Rational>, k_max: i64, k_min: i64) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LaurentTail { coeffs, k_max, k_min }
    }

    /// Coefficient of z^k. Zero inside the truncation window when absent;
    /// panics below the window, where the value is unknown.
    pub fn coeff(&self, k: i64) -> Rational {
        assert!(k >= self.k_min, "coefficient below truncation depth");
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn k_max(&self) -> i64 {
        self.k_max
    }

    pub fn k_min(&self) -> i64 {
        self.k_min
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Truncated product: valid down to the depth both factors support.
    pub fn mul_truncated(&self, other: &LaurentTail) -> LaurentTail {
        let k_max = self.k_max + other.k_max;
        // a term z^{i+j} is complete iff all contributing pairs are in-window
        let k_min = (self.k_min + other.k_max).max(self.k_max + other.k_min);
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let k = i + j;
                if k < k_min {
                    continue;
                }
                let v = coeffs.entry(k).or_insert_with(Rational::zero);
                *v += a * b;
            }
        }
        LaurentTail::new(coeffs, k_max, k_min)
    }
}

impl fmt::Display for LaurentTail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", rat_to_string(c))?,
                _ => write!(f, "{}*z^{}", rat_to_string(c), k)?,
            }
        }
        Ok(())
    }
}
