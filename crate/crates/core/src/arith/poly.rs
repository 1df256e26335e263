//! Univariate polynomials over the rationals, lowest degree first.

use super::rational::Rational;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable over ℚ. The zero polynomial has no coefficients;
/// otherwise the last (leading) coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
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

    /// The monomial c·x^n.
    pub fn monomial(c: Rational, n: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        Polynomial { coeffs }
    }

    pub fn x() -> Self {
        Polynomial::monomial(Rational::one(), 1)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.inv().expect("nonzero leading coefficient"))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * &Rational::from_int(n as i64))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: self = q·d + r with deg r < deg d.
    pub fn divrem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.degree().unwrap();
        let lc_inv = d.leading_coeff().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() * &lc_inv;
            if !factor.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let t = &rem[k + i] - &(dc * &factor);
                    rem[k + i] = t;
                }
                quot[k] = factor;
            }
            rem.pop();
        }
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Parse("inexact polynomial division".into()))
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Writes self = unit · primitive with primitive in ℤ[x], content 1,
    /// positive leading coefficient. Returns (unit, primitive int coeffs).
    pub fn primitive_integer(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), vec![]);
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &scaled {
            content = content.gcd(c);
        }
        if scaled.last().unwrap().is_negative() {
            content = -content;
        }
        let prim: Vec<BigInt> = scaled.iter().map(|c| c / &content).collect();
        let unit = Rational::new(content, den).expect("nonzero denominator");
        (unit, prim)
    }

    /// Squarefree factorization (Yun): self = unit · Π part_i^i with each part
    /// monic squarefree, pairwise coprime. Returns (unit, [(part, multiplicity)]).
    pub fn squarefree_decomposition(&self) -> (Rational, Vec<(Polynomial, u32)>) {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let unit = self.leading_coeff();
        let f = self.monic();
        if f.degree() == Some(0) {
            return (unit, vec![]);
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = df.div_exact(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1u32;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).unwrap();
            c = d.div_exact(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        (unit, out)
    }

    /// Exact square root of a monic polynomial, if one exists.
    pub fn sqrt_monic(&self) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if !self.is_monic() {
            return None;
        }
        let (_, parts) = self.squarefree_decomposition();
        let mut root = Polynomial::one();
        for (p, m) in parts {
            if m % 2 != 0 {
                return None;
            }
            root = &root * &p.pow(m / 2);
        }
        if &(&root * &root) == self {
            Some(root)
        } else {
            None
        }
    }

    /// Deterministic ordering: by degree, then coefficients from the leading end.
    pub fn cmp_deterministic(&self, other: &Polynomial) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Renders with variable name `var`, e.g. "x^2 - 1/2*x + 3".
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match n {
                0 => mag.to_string(),
                1 if mag.is_one() => var.to_string(),
                1 => format!("{mag}*{var}"),
                _ if mag.is_one() => format!("{var}^{n}"),
                _ => format!("{mag}*{var}^{n}"),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {body}", if c.is_negative() { "-" } else { "+" }));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) + &rhs.coeff(i));
        }
        Polynomial::new(out)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) - &rhs.coeff(i));
        }
        Polynomial::new(out)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = &out[i + j] + &(a * b);
                out[i + j] = t;
            }
        }
        Polynomial::new(out)
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

    #[test]
    fn divrem_exact() {
        let p = Polynomial::from_ints(&[-1, 0, 1]); // x^2 - 1
        let d = Polynomial::from_ints(&[-1, 1]); // x - 1
        let (q, r) = p.divrem(&d).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, Polynomial::from_ints(&[1, 1]));
    }

    #[test]
    fn gcd_of_common_factor() {
        let a = &Polynomial::from_ints(&[-1, 1]) * &Polynomial::from_ints(&[1, 1]);
        let b = &Polynomial::from_ints(&[-1, 1]) * &Polynomial::from_ints(&[2, 1]);
        assert_eq!(a.gcd(&b), Polynomial::from_ints(&[-1, 1]));
    }

    #[test]
    fn squarefree_of_square() {
        // (x^2+1)^2 = x^4 + 2x^2 + 1
        let p = Polynomial::from_ints(&[1, 0, 2, 0, 1]);
        let (unit, parts) = p.squarefree_decomposition();
        assert!(unit.is_one());
        assert_eq!(parts, vec![(Polynomial::from_ints(&[1, 0, 1]), 2)]);
    }

    #[test]
    fn sqrt_monic_works() {
        let p = Polynomial::from_ints(&[1, 2, 1]); // (x+1)^2
        assert_eq!(p.sqrt_monic().unwrap(), Polynomial::from_ints(&[1, 1]));
        assert!(Polynomial::from_ints(&[1, 1]).sqrt_monic().is_none());
    }

    #[test]
    fn display_readable() {
        let p = Polynomial::new(vec![
            Rational::from_int(3),
            Rational::from_frac(-1, 2),
            Rational::from_int(1),
        ]);
        assert_eq!(p.to_string(), "x^2 - 1/2*x + 3");
    }
}
