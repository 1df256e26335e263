//! The function field F = k(x)(y) of the affine conic y² = ax² + b.
//!
//! Elements are g + h·y with g, h rational functions in x; y² reduces to
//! ax² + b. Each element carries the conic constants so arithmetic is
//! self-contained.

use crate::arith::{Polynomial, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::field::Field;
use std::fmt;

/// The conic y² = ax² + b for a division algebra (a, b). Construct through
/// `make_conic`, which rejects split algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicInstance {
    pub a: Rational,
    pub b: Rational,
}

impl ConicInstance {
    /// x as an element of F.
    pub fn x(&self) -> FnFieldElem {
        FnFieldElem::from_parts(self, RatFunc::x(), RatFunc::zero())
    }

    /// y as an element of F.
    pub fn y(&self) -> FnFieldElem {
        FnFieldElem::from_parts(self, RatFunc::zero(), RatFunc::one())
    }

    pub fn scalar(&self, r: &Rational) -> FnFieldElem {
        FnFieldElem::from_parts(self, RatFunc::from_rational(r), RatFunc::zero())
    }

    pub fn zero_f(&self) -> FnFieldElem {
        self.scalar(&Rational::zero())
    }

    pub fn one_f(&self) -> FnFieldElem {
        self.scalar(&Rational::one())
    }

    /// The defining polynomial ax² + b of y².
    pub fn y_squared(&self) -> Polynomial {
        Polynomial::new(vec![self.b.clone(), Rational::zero(), self.a.clone()])
    }

    /// The modulus of k(∞) = ℚ((y/x)(∞)); the generator squares to a.
    pub fn infinity_modulus(&self) -> Rational {
        self.a.clone()
    }
}

/// Element g + h·y of the conic function field.
#[derive(Clone, PartialEq, Eq)]
pub struct FnFieldElem {
    pub g: RatFunc,
    pub h: RatFunc,
    pub a: Rational,
    pub b: Rational,
}

impl FnFieldElem {
    pub fn from_parts(conic: &ConicInstance, g: RatFunc, h: RatFunc) -> Self {
        FnFieldElem {
            g,
            h,
            a: conic.a.clone(),
            b: conic.b.clone(),
        }
    }

    pub fn conic(&self) -> ConicInstance {
        ConicInstance {
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    fn check(&self, o: &FnFieldElem) {
        assert!(
            self.a == o.a && self.b == o.b,
            "mixed conics: ({}, {}) vs ({}, {})",
            self.a,
            self.b,
            o.a,
            o.b
        );
    }

    fn y2(&self) -> RatFunc {
        RatFunc::from_poly(Polynomial::new(vec![
            self.b.clone(),
            Rational::zero(),
            self.a.clone(),
        ]))
    }

    /// The nontrivial automorphism of F over k(x): g + h·y ↦ g − h·y.
    pub fn conj(&self) -> FnFieldElem {
        FnFieldElem {
            g: self.g.clone(),
            h: self.h.neg(),
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    /// Norm to k(x): self · conj(self) = g² − h²(ax² + b).
    pub fn norm(&self) -> RatFunc {
        self.g
            .mul(&self.g)
            .sub(&self.h.mul(&self.h).mul(&self.y2()))
    }

    /// True when the element lies in O_af = k[x, y].
    pub fn is_integral(&self) -> bool {
        self.g.is_polynomial() && self.h.is_polynomial()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.h.is_zero() {
            self.g.as_rational()
        } else {
            None
        }
    }

    /// Clears denominators: returns (u, w) with self = u/w, u ∈ O_af and
    /// w ∈ ℚ[x] monic-free (w is the lcm of the coordinate denominators).
    pub fn clear_denominators(&self) -> (FnFieldElem, Polynomial) {
        let dg = self.g.den();
        let dh = self.h.den();
        let g = dg.gcd(dh);
        let lcm = &dg.div_exact(&g).unwrap() * dh;
        let gn = self.g.num() * &lcm.div_exact(dg).unwrap();
        let hn = self.h.num() * &lcm.div_exact(dh).unwrap();
        (
            FnFieldElem {
                g: RatFunc::from_poly(gn),
                h: RatFunc::from_poly(hn),
                a: self.a.clone(),
                b: self.b.clone(),
            },
            lcm,
        )
    }

    pub fn scale_rat(&self, c: &Rational) -> FnFieldElem {
        let cf = RatFunc::from_rational(c);
        FnFieldElem {
            g: self.g.mul(&cf),
            h: self.h.mul(&cf),
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<FnFieldElem> {
        let mut base = if e < 0 { Field::inv(self)? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Field::one(self);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        Ok(acc)
    }

    /// Square root in F, when one exists.
    pub fn sqrt(&self) -> Option<FnFieldElem> {
        if Field::is_zero(self) {
            return Some(Field::zero(self));
        }
        if self.h.is_zero() {
            // Either g is a square in k(x) or g/(ax²+b) is.
            if let Some(s) = self.g.sqrt() {
                return Some(FnFieldElem {
                    g: s,
                    h: RatFunc::zero(),
                    a: self.a.clone(),
                    b: self.b.clone(),
                });
            }
            if let Some(s) = self.g.div(&self.y2()).ok()?.sqrt() {
                return Some(FnFieldElem {
                    g: RatFunc::zero(),
                    h: s,
                    a: self.a.clone(),
                    b: self.b.clone(),
                });
            }
            return None;
        }
        // (g' + h'y)² = g'² + h'²(ax²+b) + 2g'h'y; solve t² − g·t + h²(ax²+b)/4 = 0
        // for t = g'².
        let n = self.norm();
        let sqrt_n = n.sqrt()?;
        let half = RatFunc::from_rational(&Rational::from_frac(1, 2));
        for sgn in [1i64, -1] {
            let signed = sqrt_n.mul(&RatFunc::from_rational(&Rational::from_int(sgn)));
            let t = self.g.add(&signed).mul(&half);
            if t.is_zero() {
                continue;
            }
            if let Some(gp) = t.sqrt() {
                if gp.is_zero() {
                    continue;
                }
                let hp = self.h.mul(&half).div(&gp).ok()?;
                let cand = FnFieldElem {
                    g: gp,
                    h: hp,
                    a: self.a.clone(),
                    b: self.b.clone(),
                };
                if cand.mul(&cand) == *self {
                    return Some(cand);
                }
            }
        }
        None
    }
}

impl Field for FnFieldElem {
    fn add(&self, o: &Self) -> Self {
        self.check(o);
        FnFieldElem {
            g: self.g.add(&o.g),
            h: self.h.add(&o.h),
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        FnFieldElem {
            g: self.g.sub(&o.g),
            h: self.h.sub(&o.h),
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let y2 = self.y2();
        FnFieldElem {
            g: self.g.mul(&o.g).add(&self.h.mul(&o.h).mul(&y2)),
            h: self.g.mul(&o.h).add(&self.h.mul(&o.g)),
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    fn neg(&self) -> Self {
        FnFieldElem {
            g: self.g.neg(),
            h: self.h.neg(),
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ninv = n.inv()?;
        let c = self.conj();
        Ok(FnFieldElem {
            g: c.g.mul(&ninv),
            h: c.h.mul(&ninv),
            a: self.a.clone(),
            b: self.b.clone(),
        })
    }

    fn is_zero(&self) -> bool {
        self.g.is_zero() && self.h.is_zero()
    }

    fn zero(&self) -> Self {
        FnFieldElem {
            g: RatFunc::zero(),
            h: RatFunc::zero(),
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    fn one(&self) -> Self {
        FnFieldElem {
            g: RatFunc::one(),
            h: RatFunc::zero(),
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    fn embed_rational(&self, r: &Rational) -> Self {
        FnFieldElem {
            g: RatFunc::from_rational(r),
            h: RatFunc::zero(),
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }
}

impl fmt::Display for FnFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.h.is_zero() {
            return write!(f, "{}", self.g);
        }
        let ypart = if self.h == RatFunc::one() {
            "y".to_string()
        } else {
            format!("({})*y", self.h)
        };
        if self.g.is_zero() {
            write!(f, "{ypart}")
        } else {
            write!(f, "{} + {}", self.g, ypart)
        }
    }
}

impl fmt::Debug for FnFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamilton() -> ConicInstance {
        ConicInstance {
            a: Rational::from_int(-1),
            b: Rational::from_int(-1),
        }
    }

    #[test]
    fn y_squared_reduces() {
        let c = hamilton();
        let y = c.y();
        let y2 = y.mul(&y);
        assert!(y2.h.is_zero());
        assert_eq!(y2.g, RatFunc::from_poly(Polynomial::from_ints(&[-1, 0, -1])));
    }

    #[test]
    fn conj_is_involution_and_norm_in_kx() {
        let c = hamilton();
        let f = c.x().add(&c.y()); // x + y
        assert_eq!(f.conj().conj(), f);
        let n = f.norm();
        // (x+y)(x-y) = x² − (−x²−1) = 2x² + 1
        assert_eq!(n, RatFunc::from_poly(Polynomial::from_ints(&[1, 0, 2])));
    }

    #[test]
    fn inverse_round_trip() {
        let c = hamilton();
        let f = c.x().add(&c.y()).add(&c.one_f());
        let inv = Field::inv(&f).unwrap();
        assert_eq!(f.mul(&inv), c.one_f());
    }

    #[test]
    fn sqrt_in_function_field() {
        let c = hamilton();
        let f = c.x().add(&c.y());
        let sq = f.mul(&f);
        let s = sq.sqrt().unwrap();
        assert_eq!(s.mul(&s), sq);
        assert!(c.x().sqrt().is_none());
        // y² = -x²-1 has the square root y
        let y2 = c.y().mul(&c.y());
        let s = y2.sqrt().unwrap();
        assert_eq!(s.mul(&s), y2);
    }
}
