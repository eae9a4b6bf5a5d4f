use super::{divisors, ExactError, LaurentTail, Polynomial, Rational};
use num::{BigInt, One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Rational function num/den in canonical form: coprime, monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoleLocation {
    /// Exact rational pole position.
    Rational(Rational),
    /// Leftover denominator factor with no rational roots; reported by degree,
    /// never factored numerically.
    Irreducible { factor: Polynomial, degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pole {
    pub location: PoleLocation,
    pub order: usize,
    /// Residue, for simple poles at exact locations.
    pub residue: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleReport {
    pub poles: Vec<Pole>,
}

impl PoleReport {
    pub fn rational_poles(&self) -> impl Iterator<Item = (&Rational, usize)> {
        self.poles.iter().filter_map(|p| match &p.location {
            PoleLocation::Rational(a) => Some((a, p.order)),
            _ => None,
        })
    }
}

impl RationalFunction {
    /// Canonicalizes num/den: cancels the gcd, makes the denominator monic.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction { num, den: Polynomial::one() });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading().unwrap().clone();
        Ok(RationalFunction { num: num.scale(&lead.recip()), den: den.monic() })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Polynomial::one())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Value at an exact point; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// deg num − deg den as z-powers; `None` for the zero function.
    pub fn degree_at_infinity(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    /// Substitute z → z − shift (translate nodes).
    pub fn translate(&self, shift: &Rational) -> Self {
        RationalFunction::new(self.num.compose_shift(shift), self.den.compose_shift(shift))
            .expect("translation preserves nonzero denominator")
    }

    /// Laurent expansion at infinity: coefficients of z^k for
    /// k in [k_max − depth, k_max] with k_max = deg num − deg den.
    pub fn series_at_infinity(&self, depth: usize) -> LaurentTail {
        let k_max = match self.degree_at_infinity() {
            None => return LaurentTail::new(BTreeMap::new(), 0, -(depth as i64)),
            Some(d) => d,
        };
        // In w = 1/z: f = z^{k_max} · N(w)/D(w) with D(0) = 1 (monic den).
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let n_rev: Vec<Rational> = (0..=dn).rev().map(|k| self.num.coeff(k)).collect();
        let d_rev: Vec<Rational> = (0..=dd).rev().map(|k| self.den.coeff(k)).collect();
        // power-series division N/D to order `depth` in w
        let mut series = vec![Rational::zero(); depth + 1];
        for j in 0..=depth {
            let mut acc = n_rev.get(j).cloned().unwrap_or_else(Rational::zero);
            for i in 0..j {
                if let Some(dc) = d_rev.get(j - i) {
                    acc -= &series[i] * dc;
                }
            }
            series[j] = acc / &d_rev[0];
        }
        let mut coeffs = BTreeMap::new();
        for (j, c) in series.into_iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(k_max - j as i64, c);
            }
        }
        LaurentTail::new(coeffs, k_max, k_max - depth as i64)
    }

    /// Every rational root of the denominator with multiplicity and (for
    /// simple poles) residue; any remaining denominator factor is flagged as
    /// irreducible-over-ℚ with its degree.
    pub fn pole_analysis(&self) -> PoleReport {
        let mut poles = Vec::new();
        if self.den.is_constant() {
            return PoleReport { poles };
        }
        let roots = rational_roots(&self.den);
        let mut rest = self.den.clone();
        let dden = self.den.derivative();
        for root in roots {
            let lin = Polynomial::linear_root(&root);
            let mut order = 0;
            loop {
                let (q, r) = rest.div_rem(&lin);
                if r.is_zero() {
                    rest = q;
                    order += 1;
                } else {
                    break;
                }
            }
            debug_assert!(order >= 1);
            let residue = if order == 1 {
                Some(self.num.eval(&root) / dden.eval(&root))
            } else {
                None
            };
            poles.push(Pole { location: PoleLocation::Rational(root), order, residue });
        }
        if !rest.is_constant() {
            let degree = rest.degree().unwrap();
            poles.push(Pole {
                location: PoleLocation::Irreducible { factor: rest.monic(), degree },
                order: 1,
                residue: None,
            });
        }
        PoleReport { poles }
    }

    /// Residue at an exact simple pole; `None` if z=a is not a simple pole.
    pub fn residue_at(&self, a: &Rational) -> Option<Rational> {
        if !self.den.eval(a).is_zero() {
            return None;
        }
        let d = self.den.derivative().eval(a);
        if d.is_zero() {
            None // pole of order >= 2
        } else {
            Some(self.num.eval(a) / d)
        }
    }

    /// Order of the pole at z=a (0 when regular there).
    pub fn pole_order_at(&self, a: &Rational) -> usize {
        let lin = Polynomial::linear_root(a);
        let mut rest = self.den.clone();
        let mut order = 0;
        loop {
            let (q, r) = rest.div_rem(&lin);
            if r.is_zero() {
                rest = q;
                order += 1;
            } else {
                break;
            }
        }
        order
    }
}

/// All rational roots of p, found by exhausting divisors of the extreme
/// coefficients of the integer-primitive form.
pub fn rational_roots(p: &Polynomial) -> Vec<Rational> {
    if p.is_zero() || p.is_constant() {
        return vec![];
    }
    let ints = p.integer_primitive();
    // strip z^k factor
    let k0 = ints.iter().position(|c| !c.is_zero()).unwrap();
    let mut roots = Vec::new();
    if k0 > 0 {
        roots.push(Rational::zero());
    }
    let trailing = &ints[k0];
    let leading = ints.last().unwrap();
    if ints.len() - k0 == 1 {
        return roots;
    }
    let ps = divisors(trailing);
    let qs = divisors(leading);
    for pn in &ps {
        for qd in &qs {
            for sign in [1i64, -1] {
                let cand = Rational::new(pn * BigInt::from(sign), qd.clone());
                if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominators")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominators")
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
            .expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_i};

    fn poly(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| rat_i(c)).collect())
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn normalize_cancels_common_factor() {
        // (z^2-1)/(z-1) -> z+1
        let f = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(f.num(), &poly(&[1, 1]));
        assert!(f.is_polynomial());
    }

    #[test]
    fn normalize_scalar() {
        // (2z+4)/2 -> z+2
        let f = rf(&[4, 2], &[2]);
        assert_eq!(f.num(), &poly(&[2, 1]));
        assert_eq!(f.den(), &Polynomial::one());
    }

    #[test]
    fn normalize_already_coprime() {
        // (z^2+6z-7)/(z^2-25) unchanged (gcd = 1 by Euclid by hand)
        let f = rf(&[-7, 6, 1], &[-25, 0, 1]);
        assert_eq!(f.num(), &poly(&[-7, 6, 1]));
        assert_eq!(f.den(), &poly(&[-25, 0, 1]));
    }

    #[test]
    fn normalize_is_idempotent() {
        let f = rf(&[-7, 6, 1], &[-25, 0, 1]);
        let g = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(poly(&[1]), Polynomial::zero()).unwrap_err(),
            ExactError::DivisionByZero
        );
    }

    #[test]
    fn series_long_division() {
        // (z^2+6z-7)/(z^2-25) = 1 + 6/z + 18/z^2 + 150/z^3 + ...
        let t = rf(&[-7, 6, 1], &[-25, 0, 1]).series_at_infinity(3);
        assert_eq!(t.coeff(0), rat_i(1));
        assert_eq!(t.coeff(-1), rat_i(6));
        assert_eq!(t.coeff(-2), rat_i(18));
        assert_eq!(t.coeff(-3), rat_i(150));
    }

    #[test]
    fn series_geometric() {
        // 8z/(z^2-9) = 8/z + 0/z^2 + 72/z^3 + ...
        let t = rf(&[0, 8], &[-9, 0, 1]).series_at_infinity(3);
        assert_eq!(t.k_max(), -1);
        assert_eq!(t.coeff(-1), rat_i(8));
        assert_eq!(t.coeff(-2), rat_i(0));
        assert_eq!(t.coeff(-3), rat_i(72));
    }

    #[test]
    fn series_monomial() {
        // 1/(2z): single Laurent term
        let t = rf(&[1], &[0, 2]).series_at_infinity(2);
        assert_eq!(t.coeff(-1), rat(1, 2));
        assert_eq!(t.coeff(-2), rat_i(0));
        assert_eq!(t.coeffs().len(), 1);
    }

    #[test]
    fn poles_with_residues() {
        // residue = num/den' at the pole
        let r = rf(&[-7, 6, 1], &[-25, 0, 1]).pole_analysis();
        assert_eq!(r.poles.len(), 2);
        let at = |a: i64| {
            r.poles
                .iter()
                .find(|p| p.location == PoleLocation::Rational(rat_i(a)))
                .unwrap()
        };
        assert_eq!(at(5).order, 1);
        assert_eq!(at(5).residue, Some(rat(24, 5)));
        assert_eq!(at(-5).residue, Some(rat(6, 5)));
    }

    #[test]
    fn double_pole_reported() {
        let r = rf(&[1], &[0, 0, 1]).pole_analysis();
        assert_eq!(r.poles.len(), 1);
        assert_eq!(r.poles[0].order, 2);
        assert_eq!(r.poles[0].residue, None);
    }

    #[test]
    fn irreducible_factor_flagged() {
        // (z+1)/(z^2+1): complex pole pair, no rational roots
        let r = rf(&[1, 1], &[1, 0, 1]).pole_analysis();
        assert_eq!(r.poles.len(), 1);
        match &r.poles[0].location {
            PoleLocation::Irreducible { degree, .. } => assert_eq!(*degree, 2),
            other => panic!("expected irreducible factor, got {:?}", other),
        }
    }

    #[test]
    fn residue_sum_matches_laurent_c_minus_1() {
        // proper function, all-simple rational poles
        let f = rf(&[3, 2], &[-25, 0, 1]);
        let report = f.pole_analysis();
        let sum: Rational = report
            .poles
            .iter()
            .map(|p| p.residue.clone().unwrap())
            .fold(Rational::zero(), |a, b| a + b);
        assert_eq!(sum, f.series_at_infinity(2).coeff(-1));
    }

    #[test]
    fn exact_field_arithmetic() {
        let f = rf(&[-7, 6, 1], &[-25, 0, 1]);
        let g = rf(&[1, 3], &[2, 0, 5]);
        assert_eq!(&(&f * &g) / &g, f);
        let t = (&f * &g).series_at_infinity(2);
        let tt = f.series_at_infinity(2).mul_truncated(&g.series_at_infinity(2));
        for k in [tt.k_max(), tt.k_max() - 1, tt.k_min()] {
            assert_eq!(t.coeff(k), tt.coeff(k));
        }
    }
}
