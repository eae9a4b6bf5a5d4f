use super::{rat_to_string, Rational};
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial over exact rationals, coefficients ascending in
/// degree with trailing zeros stripped. The zero polynomial has no
/// coefficients. Degrees in this crate stay small (~10), so dense is fine.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial c·z^k.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    /// z − a
    pub fn linear_root(a: &Rational) -> Self {
        Polynomial::new(vec![-a.clone(), Rational::one()])
    }

    /// Π (z − aᵢ)
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots
            .iter()
            .fold(Polynomial::one(), |acc, a| &acc * &Polynomial::linear_root(a))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of z^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from(num::BigInt::from(k)))
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Leading coefficient made one. Panics on the zero polynomial.
    pub fn monic(&self) -> Polynomial {
        let lead = self.leading().expect("monic of zero polynomial");
        self.scale(&lead.recip())
    }

    /// p(z − shift), i.e. translate the variable so a node moves to the origin.
    pub fn compose_shift(&self, shift: &Rational) -> Polynomial {
        // Horner in (z + s) where s = −shift... we want q(w) = p(w + shift).
        let mut acc = Polynomial::zero();
        let w_plus = Polynomial::new(vec![shift.clone(), Rational::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &w_plus) + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// Multiply by z^k.
    pub fn shift_up(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Euclidean division: self = q·d + r with deg r < deg d.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let dl = d.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let k = rd - dd;
            let c = rem.leading().unwrap() / &dl;
            rem = &rem - &d.scale(&c).shift_up(k);
            quot[k] = c;
        }
        (Polynomial::new(quot), rem)
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Square-free part (p / gcd(p, p')).
    pub fn squarefree(&self) -> Polynomial {
        if self.is_zero() || self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Clears denominators and common integer content: returns integer-content
    /// primitive coefficients as BigInt, same roots.
    pub fn integer_primitive(&self) -> Vec<num::BigInt> {
        use num::BigInt;
        use num::Integer;
        if self.is_zero() {
            return vec![];
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Cauchy bound: all real roots lie in [−b, b].
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading().expect("root bound of zero polynomial").abs();
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len() - 1)
            .map(|c| c.abs())
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        Rational::one() + max / lead
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{}", rat_to_string(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", rat_to_string(&a))?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Polynomial::new(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &coeffs[i + j] + &(a * b);
                coeffs[i + j] = v;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_i};

    fn p(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| rat_i(c)).collect())
    }

    #[test]
    fn division_with_remainder() {
        let a = p(&[-7, 6, 1]); // z^2 + 6z - 7
        let d = p(&[-1, 1]); // z - 1
        let (q, r) = a.div_rem(&d);
        assert_eq!(q, p(&[7, 1]));
        assert!(r.is_zero());

        let a = p(&[1, 0, 1]);
        let d = p(&[1, 1]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn gcd_cancellation() {
        // gcd(z^2-1, z-1) = z-1
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        // coprime pair from the spec example: z^2+6z-7 vs z^2-25
        assert!(p(&[-7, 6, 1]).gcd(&p(&[-25, 0, 1])).is_constant());
    }

    #[test]
    fn shift_moves_roots() {
        // p(z) = (z-5)(z+5); p(w+5) must vanish at w=0
        let q = p(&[-25, 0, 1]).compose_shift(&rat_i(5));
        assert!(q.eval(&rat_i(0)).is_zero());
        assert_eq!(q.eval(&rat_i(-10)), p(&[-25, 0, 1]).eval(&rat_i(-5)));
    }

    #[test]
    fn from_roots_and_eval() {
        let q = Polynomial::from_roots(&[rat_i(1), rat_i(-1)]);
        assert_eq!(q, p(&[-1, 0, 1]));
        assert_eq!(q.eval(&rat(1, 2)), rat(-3, 4));
    }
}
