//! Quadratic field extensions ℚ(√d).
//!
//! Elements are `base + ext·t` with t² = d. The modulus d may be any nonsquare
//! rational; decision procedures canonicalize to a squarefree integer first.

use super::intfactor::factor_bigint;
use super::rational::Rational;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;

/// Element of ℚ(√d).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub base: Rational,
    pub ext: Rational,
    pub modulus: Rational,
}

impl QuadExt {
    pub fn new(base: Rational, ext: Rational, modulus: Rational) -> Self {
        QuadExt { base, ext, modulus }
    }

    pub fn from_rational(r: &Rational, modulus: &Rational) -> Self {
        QuadExt {
            base: r.clone(),
            ext: Rational::zero(),
            modulus: modulus.clone(),
        }
    }

    /// The generator t with t² = d.
    pub fn generator(modulus: &Rational) -> Self {
        QuadExt {
            base: Rational::zero(),
            ext: Rational::one(),
            modulus: modulus.clone(),
        }
    }

    pub fn zero(modulus: &Rational) -> Self {
        Self::from_rational(&Rational::zero(), modulus)
    }

    pub fn one(modulus: &Rational) -> Self {
        Self::from_rational(&Rational::one(), modulus)
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.ext.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.ext.is_zero()
    }

    /// The rational part, when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.base.clone())
    }

    fn check(&self, o: &QuadExt) {
        assert_eq!(
            self.modulus, o.modulus,
            "mixed quadratic field moduli: {} vs {}",
            self.modulus, o.modulus
        );
    }

    pub fn add(&self, o: &QuadExt) -> QuadExt {
        self.check(o);
        QuadExt::new(&self.base + &o.base, &self.ext + &o.ext, self.modulus.clone())
    }

    pub fn sub(&self, o: &QuadExt) -> QuadExt {
        self.check(o);
        QuadExt::new(&self.base - &o.base, &self.ext - &o.ext, self.modulus.clone())
    }

    pub fn mul(&self, o: &QuadExt) -> QuadExt {
        self.check(o);
        let base = &(&self.base * &o.base) + &(&(&self.ext * &o.ext) * &self.modulus);
        let ext = &(&self.base * &o.ext) + &(&self.ext * &o.base);
        QuadExt::new(base, ext, self.modulus.clone())
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt::new(-&self.base, -&self.ext, self.modulus.clone())
    }

    pub fn scale(&self, c: &Rational) -> QuadExt {
        QuadExt::new(&self.base * c, &self.ext * c, self.modulus.clone())
    }

    /// Galois conjugate t ↦ -t.
    pub fn conj(&self) -> QuadExt {
        QuadExt::new(self.base.clone(), -&self.ext, self.modulus.clone())
    }

    /// Field norm to ℚ.
    pub fn norm(&self) -> Rational {
        &(&self.base * &self.base) - &(&(&self.ext * &self.ext) * &self.modulus)
    }

    /// Field trace to ℚ.
    pub fn trace(&self) -> Rational {
        &self.base + &self.base
    }

    pub fn inv(&self) -> Result<QuadExt> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.inv()?))
    }

    pub fn pow(&self, e: u32) -> QuadExt {
        let mut acc = QuadExt::one(&self.modulus);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Square root within the same field, if it exists.
    pub fn sqrt(&self) -> Option<QuadExt> {
        let d = &self.modulus;
        if self.is_zero() {
            return Some(QuadExt::zero(d));
        }
        if self.ext.is_zero() {
            let u = &self.base;
            if let Some(s) = sqrt_rational(u) {
                return Some(QuadExt::from_rational(&s, d));
            }
            if let Some(s) = sqrt_rational(&(u / d)) {
                // (s·t)² = s²·d = u
                return Some(QuadExt::new(Rational::zero(), s, d.clone()));
            }
            return None;
        }
        // (s + w·t)² = s² + w²d + 2sw·t: s² solves z² - u·z + d·v²/4 = 0
        // with u = base, v = ext.
        let u = &self.base;
        let v = &self.ext;
        let n = self.norm();
        let sqrt_n = sqrt_rational(&n)?;
        let half = Rational::from_frac(1, 2);
        for sgn in [1i64, -1] {
            let s2 = &(u + &(&sqrt_n * &Rational::from_int(sgn))) * &half;
            if s2.is_zero() {
                continue;
            }
            if let Some(s) = sqrt_rational(&s2) {
                if s.is_zero() {
                    continue;
                }
                let w = &(v * &half) / &s;
                let cand = QuadExt::new(s, w, d.clone());
                if cand.mul(&cand) == *self {
                    return Some(cand);
                }
            }
        }
        None
    }

    /// Re-presents the element over the squarefree canonical modulus:
    /// returns (element over d₀, d₀) with d = s²·d₀ and t ↦ s·t₀.
    pub fn to_squarefree(&self) -> (QuadExt, Rational) {
        let (d0, s) = squarefree_part(&self.modulus);
        let elem = QuadExt::new(self.base.clone(), &self.ext * &s, d0.clone());
        (elem, d0)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ext.is_zero() {
            return write!(f, "{}", self.base);
        }
        let root = format!("sqrt({})", self.modulus);
        let ext_part = if self.ext.is_one() {
            root
        } else if self.ext == Rational::from_int(-1) {
            format!("-{root}")
        } else {
            format!("{}*{root}", self.ext)
        };
        if self.base.is_zero() {
            write!(f, "{ext_part}")
        } else if ext_part.starts_with('-') {
            write!(f, "{} - {}", self.base, &ext_part[1..])
        } else {
            write!(f, "{} + {}", self.base, ext_part)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exact square root in ℚ, if it exists.
pub fn sqrt_rational(r: &Rational) -> Option<Rational> {
    if r.is_zero() {
        return Some(Rational::zero());
    }
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::new(sn, sd).unwrap())
    } else {
        None
    }
}

pub fn is_square_rational(r: &Rational) -> bool {
    sqrt_rational(r).is_some()
}

/// Writes r = s²·d with d a squarefree integer; returns (d as Rational, s).
pub fn squarefree_part(r: &Rational) -> (Rational, Rational) {
    assert!(!r.is_zero(), "squarefree part of zero");
    // r = num/den = num·den / den², so factor num·den.
    let n = r.numer() * r.denom();
    let f = factor_bigint(&n);
    let mut d = BigInt::one();
    let mut s_num = BigInt::one();
    for (p, e) in &f {
        if e % 2 == 1 {
            d *= p;
        }
        for _ in 0..e / 2 {
            s_num *= p;
        }
    }
    if r.is_negative() {
        d = -d;
    }
    let s = Rational::new(s_num, r.denom().clone()).unwrap();
    debug_assert_eq!(
        &(&s * &s) * &Rational::from_bigint(d.clone()),
        r.clone()
    );
    (Rational::from_bigint(d), s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(b: i64, e: i64) -> QuadExt {
        QuadExt::new(
            Rational::from_int(b),
            Rational::from_int(e),
            Rational::from_int(-1),
        )
    }

    #[test]
    fn gaussian_arithmetic() {
        let i = QuadExt::generator(&Rational::from_int(-1));
        assert_eq!(i.mul(&i), gauss(-1, 0));
        let z = gauss(1, 2);
        assert_eq!(z.norm(), Rational::from_int(5));
        assert_eq!(z.mul(&z.inv().unwrap()), gauss(1, 0));
    }

    #[test]
    fn sqrt_in_field() {
        // -1 is a square in ℚ(i)
        let m = Rational::from_int(-1);
        let minus_one = QuadExt::from_rational(&Rational::from_int(-1), &m);
        let s = minus_one.sqrt().unwrap();
        assert_eq!(s.mul(&s), minus_one);
        // 2i = (1+i)^2
        let z = gauss(0, 2);
        let s = z.sqrt().unwrap();
        assert_eq!(s.mul(&s), z);
        // 2 is not a square in ℚ(i)
        assert!(gauss(2, 0).sqrt().is_none());
    }

    #[test]
    fn squarefree_normalization() {
        let (d, s) = squarefree_part(&Rational::from_frac(-8, 9));
        assert_eq!(d, Rational::from_int(-2));
        assert_eq!(s, Rational::from_frac(2, 3));
        // element over modulus -4 maps to modulus -1
        let z = QuadExt::new(
            Rational::from_int(3),
            Rational::from_int(1),
            Rational::from_int(-4),
        );
        let (w, d0) = z.to_squarefree();
        assert_eq!(d0, Rational::from_int(-1));
        assert_eq!(w.ext, Rational::from_int(2));
        assert_eq!(z.norm(), w.norm());
    }
}
