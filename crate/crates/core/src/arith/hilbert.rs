//! Hilbert symbols and Hasse invariants over ℚ.

use super::intfactor::{factor_bigint, legendre};
use super::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// A place of ℚ: the real place or a finite prime.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PlaceQ {
    Real,
    Prime(BigInt),
}

impl fmt::Display for PlaceQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceQ::Real => write!(f, "real"),
            PlaceQ::Prime(p) => write!(f, "p={p}"),
        }
    }
}

/// v_p of a nonzero rational.
pub fn valuation_at(r: &Rational, p: &BigInt) -> i64 {
    assert!(!r.is_zero());
    let count = |mut n: BigInt| -> i64 {
        let mut v = 0;
        n = n.abs();
        while (&n % p).is_zero() {
            n /= p;
            v += 1;
        }
        v
    };
    count(r.numer().clone()) - count(r.denom().clone())
}

/// The unit part u with r = p^v · u.
pub fn unit_part_at(r: &Rational, p: &BigInt) -> Rational {
    let v = valuation_at(r, p);
    let pr = Rational::from_bigint(p.clone());
    let pv = pr.pow(v).expect("prime power");
    r / &pv
}

fn eps_mod2(u: &BigInt) -> u32 {
    // (u-1)/2 mod 2 for odd u
    let m = u.mod_floor(&BigInt::from(4u32));
    if m == BigInt::one() {
        0
    } else {
        1
    }
}

fn omega_mod2(u: &BigInt) -> u32 {
    // (u^2-1)/8 mod 2 for odd u
    let m = u.mod_floor(&BigInt::from(8u32));
    if m == BigInt::one() || m == BigInt::from(7u32) {
        0
    } else {
        1
    }
}

/// Odd part of a rational as an integer representative of its square class
/// at p: returns an integer u coprime to p with u ≡ unit part mod squares.
fn unit_as_int(r: &Rational, p: &BigInt) -> BigInt {
    // unit part num/den; multiply by den² to clear: num·den stays in the class.
    let u = unit_part_at(r, p);
    u.numer() * u.denom()
}

/// Classical Hilbert symbol (α, β)_v over ℚ. Both arguments nonzero.
pub fn hilbert_symbol_q(alpha: &Rational, beta: &Rational, place: &PlaceQ) -> i32 {
    assert!(!alpha.is_zero() && !beta.is_zero());
    match place {
        PlaceQ::Real => {
            if alpha.is_negative() && beta.is_negative() {
                -1
            } else {
                1
            }
        }
        PlaceQ::Prime(p) if p == &BigInt::from(2u32) => {
            let a = valuation_at(alpha, p) as u32 & 1;
            let b = valuation_at(beta, p) as u32 & 1;
            let u = unit_as_int(alpha, p);
            let v = unit_as_int(beta, p);
            let e = eps_mod2(&u) * eps_mod2(&v) + a * omega_mod2(&v) + b * omega_mod2(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        PlaceQ::Prime(p) => {
            // Tame formula: (α,β)_p = legendre((-1)^{ab} u^b v^a, p).
            let a = valuation_at(alpha, p);
            let b = valuation_at(beta, p);
            let u = unit_as_int(alpha, p);
            let v = unit_as_int(beta, p);
            let mut val = BigInt::one();
            if (a & 1) == 1 && (b & 1) == 1 {
                val = -val;
            }
            if (b & 1) == 1 {
                val *= &u;
            }
            if (a & 1) == 1 {
                val *= &v;
            }
            legendre(&val, p)
        }
    }
}

/// All places where (α, β) could be nontrivial: real, 2, and odd primes
/// dividing either argument.
pub fn relevant_places(values: &[&Rational]) -> Vec<PlaceQ> {
    let mut primes: BTreeSet<BigInt> = BTreeSet::new();
    primes.insert(BigInt::from(2u32));
    for r in values {
        assert!(!r.is_zero());
        for n in [r.numer().clone(), r.denom().clone()] {
            for (p, _) in factor_bigint(&n) {
                primes.insert(p);
            }
        }
    }
    let mut out = vec![PlaceQ::Real];
    out.extend(primes.into_iter().map(PlaceQ::Prime));
    out
}

/// Hasse-Witt invariant of a diagonal form at a place: Π_{s<t} (a_s, a_t)_v.
pub fn hasse_invariant_q(diag: &[Rational], place: &PlaceQ) -> i32 {
    let mut h = 1;
    for s in 0..diag.len() {
        for t in s + 1..diag.len() {
            h *= hilbert_symbol_q(&diag[s], &diag[t], place);
        }
    }
    h
}

/// Signature (p - q) of a diagonal form over ℚ at the real place.
pub fn signature_q(diag: &[Rational]) -> i64 {
    diag.iter().map(|c| c.sign() as i64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn minus_one_minus_one() {
        // (-1,-1) is nontrivial exactly at 2 and the real place.
        assert_eq!(hilbert_symbol_q(&r(-1), &r(-1), &PlaceQ::Real), -1);
        assert_eq!(
            hilbert_symbol_q(&r(-1), &r(-1), &PlaceQ::Prime(BigInt::from(2))),
            -1
        );
        assert_eq!(
            hilbert_symbol_q(&r(-1), &r(-1), &PlaceQ::Prime(BigInt::from(5))),
            1
        );
    }

    #[test]
    fn one_is_always_trivial() {
        for place in [
            PlaceQ::Real,
            PlaceQ::Prime(BigInt::from(2)),
            PlaceQ::Prime(BigInt::from(7)),
        ] {
            assert_eq!(hilbert_symbol_q(&r(1), &r(-5), &place), 1);
        }
    }

    /// Independent oracle at 2 for odd units: z² = αx² + βy² has a primitive
    /// solution mod 8 iff the symbol is +1.
    fn dyadic_unit_oracle(alpha: i64, beta: i64) -> i32 {
        for x in 0..8i64 {
            for y in 0..8i64 {
                for z in 0..8i64 {
                    if x % 2 == 0 && y % 2 == 0 && z % 2 == 0 {
                        continue;
                    }
                    if (z * z - alpha * x * x - beta * y * y).rem_euclid(8) == 0 {
                        return 1;
                    }
                }
            }
        }
        -1
    }

    #[test]
    fn dyadic_symbol_matches_oracle_on_units() {
        let two = PlaceQ::Prime(BigInt::from(2));
        for &alpha in &[1i64, -1, 3, -3, 5, -5, 7, -7] {
            for &beta in &[1i64, -1, 3, -3, 5, -5, 7, -7] {
                assert_eq!(
                    hilbert_symbol_q(&r(alpha), &r(beta), &two),
                    dyadic_unit_oracle(alpha, beta),
                    "(α,β) = ({alpha},{beta})"
                );
            }
        }
    }

    #[test]
    fn product_formula_samples() {
        let pairs = [
            (r(3), r(5)),
            (r(-2), r(15)),
            (Rational::from_frac(3, 7), r(-10)),
            (r(6), r(-6)),
        ];
        for (a, b) in &pairs {
            let places = relevant_places(&[a, b]);
            let prod: i32 = places.iter().map(|v| hilbert_symbol_q(a, b, v)).product();
            assert_eq!(prod, 1, "product formula for ({a}, {b})");
        }
    }

    #[test]
    fn bilinearity_samples() {
        let v = PlaceQ::Prime(BigInt::from(3));
        let (a, b1, b2) = (r(6), r(-2), Rational::from_frac(5, 3));
        assert_eq!(
            hilbert_symbol_q(&a, &(&b1 * &b2), &v),
            hilbert_symbol_q(&a, &b1, &v) * hilbert_symbol_q(&a, &b2, &v)
        );
    }
}
