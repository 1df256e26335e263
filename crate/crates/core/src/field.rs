//! A closed tower of exact fields: ℚ, ℚ(√d), ℚ(x), and the conic function
//! field F. Generic form and linear-algebra code is written against this
//! trait; nothing else implements it.

use crate::arith::{QuadExt, RatFunc, Rational};
use crate::error::Result;
use std::fmt::{Debug, Display};

/// Exact commutative field operations. `zero`/`one`/`embed_rational` take
/// `&self` as a context carrier (moduli, conic constants).
pub trait Field: Clone + PartialEq + Debug + Display {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn embed_rational(&self, r: &Rational) -> Self;

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    fn double(&self) -> Self {
        self.add(self)
    }

    fn halve(&self) -> Self {
        self.mul(&self.embed_rational(&Rational::from_frac(1, 2)))
    }
}

impl Field for Rational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        Rational::inv(self)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn zero(&self) -> Self {
        Rational::zero()
    }
    fn one(&self) -> Self {
        Rational::one()
    }
    fn embed_rational(&self, r: &Rational) -> Self {
        r.clone()
    }
}

impl Field for QuadExt {
    fn add(&self, o: &Self) -> Self {
        QuadExt::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        QuadExt::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        QuadExt::mul(self, o)
    }
    fn neg(&self) -> Self {
        QuadExt::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        QuadExt::inv(self)
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn zero(&self) -> Self {
        QuadExt::zero(&self.modulus)
    }
    fn one(&self) -> Self {
        QuadExt::one(&self.modulus)
    }
    fn embed_rational(&self, r: &Rational) -> Self {
        QuadExt::from_rational(r, &self.modulus)
    }
}

impl Field for RatFunc {
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        RatFunc::inv(self)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn zero(&self) -> Self {
        RatFunc::zero()
    }
    fn one(&self) -> Self {
        RatFunc::one()
    }
    fn embed_rational(&self, r: &Rational) -> Self {
        RatFunc::from_rational(r)
    }
}
