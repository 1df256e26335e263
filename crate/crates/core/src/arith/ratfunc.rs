//! Rational functions over ℚ: reduced fractions of polynomials in x with
//! monic denominator.

use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Polynomial,
    den: Polynomial,
}

impl RatFunc {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: Polynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).unwrap();
        let mut den = den.div_exact(&g).unwrap();
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RatFunc {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::from_poly(Polynomial::constant(r.clone()))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
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

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::reduced(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        RatFunc::reduced(
            &(&self.num * &o.den) - &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::reduced(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    /// deg num − deg den; the order of vanishing at infinity is its negative.
    pub fn degree(&self) -> Option<i64> {
        let n = self.num.degree()? as i64;
        Some(n - self.den.degree().unwrap() as i64)
    }

    /// Writes self = s²·r and returns s when self is a square in ℚ(x).
    pub fn sqrt(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return Some(RatFunc::zero());
        }
        let lc = self.num.leading_coeff();
        let s_lc = super::quadext::sqrt_rational(&lc)?;
        let num_monic = self.num.monic();
        let sn = num_monic.sqrt_monic()?;
        let sd = self.den.sqrt_monic()?;
        let root = RatFunc::reduced(sn.scale(&s_lc), sd);
        (&root.mul(&root) == self).then_some(root)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_monic_denominator() {
        // (2x² - 2) / (4x - 4) = (x+1)/2
        let r = RatFunc::new(
            Polynomial::from_ints(&[-2, 0, 2]),
            Polynomial::from_ints(&[-4, 4]),
        )
        .unwrap();
        assert!(r.is_polynomial());
        assert_eq!(
            r.num(),
            &Polynomial::new(vec![Rational::from_frac(1, 2), Rational::from_frac(1, 2)])
        );
    }

    #[test]
    fn field_ops() {
        let x = RatFunc::x();
        let inv = x.inv().unwrap();
        assert_eq!(x.mul(&inv), RatFunc::one());
        assert_eq!(x.sub(&x), RatFunc::zero());
    }

    #[test]
    fn sqrt_of_square() {
        let p = RatFunc::new(
            Polynomial::from_ints(&[0, 0, 4]),
            Polynomial::from_ints(&[1, 2, 1]),
        )
        .unwrap();
        let s = p.sqrt().unwrap();
        assert_eq!(s.mul(&s), p);
        assert!(RatFunc::x().sqrt().is_none());
    }
}
