//! Places of a quadratic field ℚ(√d) and Hilbert symbols over them.
//!
//! d is canonicalized to a squarefree integer. Odd places are handled by the
//! tame symbol formula over the residue field; the dyadic symbol is recovered
//! from the product formula whenever 2 does not split (d ≢ 1 mod 8), which is
//! the only configuration this library decides.

use super::intfactor::{factor_bigint, hensel_sqrt, legendre, mod_inverse, sqrt_mod_p};
use super::quadext::{squarefree_part, QuadExt};
use super::rational::Rational;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// The field ℚ(√d) with d a squarefree integer, d ≠ 0, 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadField {
    pub d: BigInt,
}

/// How an odd rational prime sits in ℚ(√d).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OddKind {
    Ramified,
    Inert,
    /// Split place labelled by the chosen square root of d mod p (0 < root < p).
    Split { root: BigInt },
}

/// A place of ℚ(√d).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum QuadPlace {
    /// Real embedding with t ↦ +√d (only when d > 0).
    RealPlus,
    /// Real embedding with t ↦ -√d (only when d > 0).
    RealMinus,
    /// A place above an odd prime.
    Odd { p: BigInt, kind: OddKind },
    /// The unique place above 2 (rejected when 2 splits).
    Dyadic,
}

impl fmt::Display for QuadPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadPlace::RealPlus => write!(f, "real+"),
            QuadPlace::RealMinus => write!(f, "real-"),
            QuadPlace::Odd { p, kind } => match kind {
                OddKind::Ramified => write!(f, "p={p} (ramified)"),
                OddKind::Inert => write!(f, "p={p} (inert)"),
                OddKind::Split { root } => write!(f, "p={p} (split, t={root})"),
            },
            QuadPlace::Dyadic => write!(f, "dyadic"),
        }
    }
}

impl QuadField {
    /// Builds the field from any nonsquare rational modulus.
    pub fn new(modulus: &Rational) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::UnsupportedField("modulus zero".into()));
        }
        let (d, _) = squarefree_part(modulus);
        let d = d.numer().clone();
        if d.is_one() {
            return Err(Error::UnsupportedField(
                "modulus is a square; not a quadratic field".into(),
            ));
        }
        Ok(QuadField { d })
    }

    pub fn modulus(&self) -> Rational {
        Rational::from_bigint(self.d.clone())
    }

    /// True when the dyadic prime splits, i.e. d ≡ 1 mod 8.
    pub fn dyadic_splits(&self) -> bool {
        self.d.mod_floor(&BigInt::from(8u32)) == BigInt::one()
    }

    pub fn has_real_places(&self) -> bool {
        self.d.is_positive()
    }

    /// The place(s) above an odd prime p.
    pub fn places_above_odd(&self, p: &BigInt) -> Vec<QuadPlace> {
        debug_assert!(p > &BigInt::from(2u32));
        if (&self.d % p).is_zero() {
            return vec![QuadPlace::Odd {
                p: p.clone(),
                kind: OddKind::Ramified,
            }];
        }
        match legendre(&self.d, p) {
            -1 => vec![QuadPlace::Odd {
                p: p.clone(),
                kind: OddKind::Inert,
            }],
            1 => {
                let r = sqrt_mod_p(&self.d.mod_floor(p), p);
                let r2 = p - &r;
                let (lo, hi) = if r < r2 { (r, r2) } else { (r2, r) };
                vec![
                    QuadPlace::Odd {
                        p: p.clone(),
                        kind: OddKind::Split { root: lo },
                    },
                    QuadPlace::Odd {
                        p: p.clone(),
                        kind: OddKind::Split { root: hi },
                    },
                ]
            }
            _ => unreachable!("legendre of a unit"),
        }
    }

    /// Canonicalizes an element into this field; errors on modulus mismatch.
    pub fn adapt(&self, z: &QuadExt) -> Result<QuadExt> {
        let (w, d0) = z.to_squarefree();
        if d0.numer() != &self.d || !d0.is_integer() {
            return Err(Error::UnsupportedField(format!(
                "element of Q(sqrt {}) used in Q(sqrt {})",
                d0, self.d
            )));
        }
        Ok(w)
    }
}

fn vp_big(n: &BigInt, p: &BigInt) -> i64 {
    let mut m = n.abs();
    let mut v = 0;
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

fn vp_rat(r: &Rational, p: &BigInt) -> i64 {
    if r.is_zero() {
        return i64::MAX;
    }
    vp_big(r.numer(), p) - vp_big(r.denom(), p)
}

/// Value of a p-integral rational in 𝔽_p.
fn rational_mod_p(r: &Rational, p: &BigInt) -> BigInt {
    debug_assert!(vp_rat(r, p) >= 0);
    let inv = mod_inverse(&r.denom().mod_floor(p), p).expect("denominator unit mod p");
    (r.numer().mod_floor(p) * inv).mod_floor(p)
}

/// Valuation of z at an odd place, plus the quadratic character of its unit
/// part in the residue field (±1).
pub fn odd_valuation_and_char(
    field: &QuadField,
    z: &QuadExt,
    p: &BigInt,
    kind: &OddKind,
) -> (i64, i32) {
    assert!(!z.is_zero());
    let d = &field.d;
    let u = &z.base;
    let v = &z.ext;
    match kind {
        OddKind::Inert => {
            let m = vp_rat(u, p).min(vp_rat(v, p));
            let scale = Rational::from_bigint(p.clone()).pow(-m).unwrap();
            let (u0, v0) = (u * &scale, v * &scale);
            // χ over 𝔽_{p²} via the norm to 𝔽_p.
            let nu = rational_mod_p(&u0, p);
            let nv = rational_mod_p(&v0, p);
            let norm = (&nu * &nu - d * &nv * &nv).mod_floor(p);
            (m, legendre(&norm, p))
        }
        OddKind::Ramified => {
            let vu = if u.is_zero() { i64::MAX } else { 2 * vp_rat(u, p) };
            let vv = if v.is_zero() { i64::MAX } else { 1 + 2 * vp_rat(v, p) };
            let dprime = d / p; // d = p·d', p ∤ d'
            if vu <= vv {
                // Even valuation 2m: residue is u/(p^m·d'^m).
                let m = vu / 2;
                let scale = Rational::from_bigint(p.clone()).pow(-m).unwrap();
                let r0 = rational_mod_p(&(u * &scale), p);
                let dinv = mod_inverse(&dprime.mod_floor(p), p).unwrap();
                let mut res = r0;
                for _ in 0..m.rem_euclid(2) {
                    // character only needs d'^m mod squares
                    res = (res * &dinv).mod_floor(p);
                }
                (vu, legendre(&res, p))
            } else {
                // Odd valuation 2m+1: residue is v/(p^m·d'^m).
                let m = (vv - 1) / 2;
                let scale = Rational::from_bigint(p.clone()).pow(-m).unwrap();
                let r0 = rational_mod_p(&(v * &scale), p);
                let dinv = mod_inverse(&dprime.mod_floor(p), p).unwrap();
                let mut res = r0;
                for _ in 0..m.rem_euclid(2) {
                    res = (res * &dinv).mod_floor(p);
                }
                (vv, legendre(&res, p))
            }
        }
        OddKind::Split { root } => {
            let w0 = vp_rat(u, p).min(vp_rat(v, p));
            let scale = Rational::from_bigint(p.clone()).pow(-w0).unwrap();
            let (u0, v0) = (u * &scale, v * &scale);
            // Bound the extra valuation by v_p of the norm of (u0 + v0 t).
            let n0 = &(&u0 * &u0) - &(&(&v0 * &v0) * &Rational::from_bigint(d.clone()));
            let bound = if n0.is_zero() { 0 } else { vp_rat(&n0, p).max(0) };
            let k = (bound + 2) as u32;
            let rk = hensel_sqrt(d, p, root, k);
            let pk = p.pow(k);
            // c = u0 + v0·r_k mod p^k, with p-unit denominators.
            let den = u0.denom().lcm(v0.denom());
            let den_inv = mod_inverse(&den.mod_floor(&pk), &pk).expect("unit denominator");
            let num = (u0.numer() * (&den / u0.denom())
                + v0.numer() * (&den / v0.denom()) * &rk)
                .mod_floor(&pk);
            let c = (num * den_inv).mod_floor(&pk);
            let vextra = if c.is_zero() { bound } else { vp_big(&c, p).min(bound) };
            let unit = (&c / p.pow(vextra as u32)).mod_floor(p);
            debug_assert!(!unit.is_zero());
            (w0 + vextra, legendre(&unit, p))
        }
    }
}

/// Exact sign of z under a real embedding (d > 0).
pub fn real_sign(field: &QuadField, z: &QuadExt, plus_embedding: bool) -> i32 {
    assert!(field.has_real_places());
    assert!(!z.is_zero());
    let u = &z.base;
    let v = if plus_embedding { z.ext.clone() } else { -&z.ext };
    if v.is_zero() {
        return u.sign();
    }
    if u.is_zero() {
        return v.sign();
    }
    if u.is_positive() && v.is_positive() {
        return 1;
    }
    if u.is_negative() && v.is_negative() {
        return -1;
    }
    // Mixed signs: compare u² with d·v².
    let u2 = u * u;
    let dv2 = &(&v * &v) * &field.modulus();
    if u.is_positive() {
        if u2 > dv2 {
            1
        } else {
            -1
        }
    } else if dv2 > u2 {
        1
    } else {
        -1
    }
}

fn chi_minus_one(p: &BigInt, kind: &OddKind) -> i32 {
    match kind {
        // Residue field 𝔽_{p²}: -1 is always a square there.
        OddKind::Inert => 1,
        _ => legendre(&BigInt::from(-1), p),
    }
}

/// Hilbert symbol over the completion of ℚ(√d) at the given place.
pub fn hilbert_symbol_quadfield(
    field: &QuadField,
    alpha: &QuadExt,
    beta: &QuadExt,
    place: &QuadPlace,
) -> Result<i32> {
    assert!(!alpha.is_zero() && !beta.is_zero());
    let a = field.adapt(alpha)?;
    let b = field.adapt(beta)?;
    match place {
        QuadPlace::RealPlus | QuadPlace::RealMinus => {
            if !field.has_real_places() {
                return Err(Error::UnsupportedField(
                    "imaginary quadratic field has no real places".into(),
                ));
            }
            let plus = place == &QuadPlace::RealPlus;
            Ok(if real_sign(field, &a, plus) < 0 && real_sign(field, &b, plus) < 0 {
                -1
            } else {
                1
            })
        }
        QuadPlace::Odd { p, kind } => {
            let (m, chi_a) = odd_valuation_and_char(field, &a, p, kind);
            let (n, chi_b) = odd_valuation_and_char(field, &b, p, kind);
            let mut sym = 1i32;
            if (m & 1) == 1 && (n & 1) == 1 {
                sym *= chi_minus_one(p, kind);
            }
            if (n & 1) == 1 {
                sym *= chi_a;
            }
            if (m & 1) == 1 {
                sym *= chi_b;
            }
            Ok(sym)
        }
        QuadPlace::Dyadic => {
            if field.dyadic_splits() {
                return Err(Error::UnsupportedField(format!(
                    "2 splits in Q(sqrt {}): dyadic symbols not decided",
                    field.d
                )));
            }
            // Product formula: the dyadic symbol is the product of all others.
            let mut prod = 1i32;
            for place in nondyadic_places(field, &[&a, &b]) {
                prod *= hilbert_symbol_quadfield(field, &a, &b, &place)?;
            }
            Ok(prod)
        }
    }
}

/// All non-dyadic places where the symbol of elements built from the given
/// values could be nontrivial.
pub fn nondyadic_places(field: &QuadField, values: &[&QuadExt]) -> Vec<QuadPlace> {
    let mut primes: BTreeSet<BigInt> = BTreeSet::new();
    for (p, _) in factor_bigint(&field.d) {
        if p != BigInt::from(2u32) {
            primes.insert(p);
        }
    }
    for z in values {
        let mut ints: Vec<BigInt> = Vec::new();
        for r in [&z.base, &z.ext] {
            if !r.is_zero() {
                ints.push(r.numer().clone());
                ints.push(r.denom().clone());
            }
        }
        let n = z.norm();
        if !n.is_zero() {
            ints.push(n.numer().clone());
            ints.push(n.denom().clone());
        }
        for i in ints {
            for (p, _) in factor_bigint(&i) {
                if p != BigInt::from(2u32) {
                    primes.insert(p);
                }
            }
        }
    }
    let mut out = Vec::new();
    if field.has_real_places() {
        out.push(QuadPlace::RealPlus);
        out.push(QuadPlace::RealMinus);
    }
    for p in primes {
        out.extend(field.places_above_odd(&p));
    }
    out
}

/// True iff c is a square in the quadratic field (any modulus presentation).
pub fn is_square_quadfield(c: &QuadExt) -> bool {
    c.sqrt().is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> QuadField {
        QuadField::new(&Rational::from_int(-1)).unwrap()
    }

    fn qi(b: i64, e: i64) -> QuadExt {
        QuadExt::new(
            Rational::from_int(b),
            Rational::from_int(e),
            Rational::from_int(-1),
        )
    }

    #[test]
    fn splitting_types() {
        let k = gaussian();
        assert_eq!(
            k.places_above_odd(&BigInt::from(3)),
            vec![QuadPlace::Odd {
                p: BigInt::from(3),
                kind: OddKind::Inert
            }]
        );
        assert_eq!(k.places_above_odd(&BigInt::from(5)).len(), 2);
        let k7 = QuadField::new(&Rational::from_int(-7)).unwrap();
        assert_eq!(
            k7.places_above_odd(&BigInt::from(7)),
            vec![QuadPlace::Odd {
                p: BigInt::from(7),
                kind: OddKind::Ramified
            }]
        );
    }

    #[test]
    fn split_valuations() {
        let k = gaussian();
        // 2+i has valuation 1 at one place above 5 and 0 at the other.
        let z = qi(2, 1);
        let places = k.places_above_odd(&BigInt::from(5));
        let vals: Vec<i64> = places
            .iter()
            .map(|pl| match pl {
                QuadPlace::Odd { p, kind } => odd_valuation_and_char(&k, &z, p, kind).0,
                _ => unreachable!(),
            })
            .collect();
        let mut sorted = vals.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1]);
        // (2+i)/(2-i) has norm 1 but valuations ±1.
        let w = z.mul(&qi(2, -1).inv().unwrap());
        let vals: Vec<i64> = places
            .iter()
            .map(|pl| match pl {
                QuadPlace::Odd { p, kind } => odd_valuation_and_char(&k, &w, p, kind).0,
                _ => unreachable!(),
            })
            .collect();
        let mut sorted = vals;
        sorted.sort();
        assert_eq!(sorted, vec![-1, 1]);
    }

    #[test]
    fn inert_and_ramified_valuations() {
        let k = gaussian();
        let three = BigInt::from(3);
        let (v, _) = odd_valuation_and_char(&k, &qi(3, 6), &three, &OddKind::Inert);
        assert_eq!(v, 1);
        let k2 = QuadField::new(&Rational::from_int(-2)).unwrap();
        // t has valuation 1 at the ramified place above 2... use p=3 analog:
        let k3 = QuadField::new(&Rational::from_int(3)).unwrap();
        let t = QuadExt::generator(&Rational::from_int(3));
        let (v, _) = odd_valuation_and_char(&k3, &t, &BigInt::from(3), &OddKind::Ramified);
        assert_eq!(v, 1);
        let (v, _) = odd_valuation_and_char(
            &k2,
            &QuadExt::from_rational(&Rational::from_int(5), &Rational::from_int(-2)),
            &BigInt::from(5),
            &OddKind::Inert,
        );
        assert_eq!(v, 1);
    }

    #[test]
    fn real_signs_exact() {
        let k = QuadField::new(&Rational::from_int(2)).unwrap();
        // 3 - 2√2 > 0 (since 9 > 8), 1 - √2 < 0.
        let z = QuadExt::new(
            Rational::from_int(3),
            Rational::from_int(-2),
            Rational::from_int(2),
        );
        assert_eq!(real_sign(&k, &z, true), 1);
        assert_eq!(real_sign(&k, &z, false), 1);
        let w = QuadExt::new(
            Rational::from_int(1),
            Rational::from_int(-1),
            Rational::from_int(2),
        );
        assert_eq!(real_sign(&k, &w, true), -1);
        assert_eq!(real_sign(&k, &w, false), 1);
    }

    #[test]
    fn trivial_symbols() {
        let k = gaussian();
        let one = qi(1, 0);
        for place in nondyadic_places(&k, &[&qi(3, 1), &one]) {
            assert_eq!(hilbert_symbol_quadfield(&k, &one, &qi(3, 1), &place).unwrap(), 1);
        }
    }

    /// Rational entries split every quaternion algebra over a quadratic
    /// extension of ℚ₂, so the dyadic symbol must be +1 for rational pairs.
    #[test]
    fn dyadic_by_product_on_rational_pairs() {
        for d in [-1i64, -2, 5, -5, 3] {
            let field = QuadField::new(&Rational::from_int(d)).unwrap();
            let dr = Rational::from_int(d);
            for (a, b) in [(-1i64, -1), (-1, 3), (2, -3), (6, 10), (-2, -5)] {
                let alpha = QuadExt::from_rational(&Rational::from_int(a), &dr);
                let beta = QuadExt::from_rational(&Rational::from_int(b), &dr);
                let sym =
                    hilbert_symbol_quadfield(&field, &alpha, &beta, &QuadPlace::Dyadic).unwrap();
                assert_eq!(sym, 1, "d={d}, (α,β)=({a},{b})");
            }
        }
    }

    #[test]
    fn dyadic_split_rejected() {
        let field = QuadField::new(&Rational::from_int(17)).unwrap();
        let one = QuadExt::one(&Rational::from_int(17));
        assert!(matches!(
            hilbert_symbol_quadfield(&field, &one, &one, &QuadPlace::Dyadic),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn product_formula_random_pairs() {
        // Product over all places is +1; with the dyadic symbol defined via
        // the product this checks the remaining symbols are mutually
        // consistent for elements of ℚ(i) with genuinely dyadic support.
        let k = gaussian();
        let pairs = [
            (qi(1, 1), qi(1, 1)),   // (1+i)² = 2i: ramified at 2
            (qi(1, 1), qi(3, 0)),
            (qi(2, 1), qi(1, -2)),
            (qi(0, 2), qi(5, 1)),
        ];
        for (a, b) in &pairs {
            let dy = hilbert_symbol_quadfield(&k, a, b, &QuadPlace::Dyadic).unwrap();
            let mut prod = dy;
            for place in nondyadic_places(&k, &[a, b]) {
                prod *= hilbert_symbol_quadfield(&k, a, b, &place).unwrap();
            }
            assert_eq!(prod, 1);
        }
    }
}

#[cfg(test)]
mod oracle_tests {
    use super::*;

    /// Brute force at an odd split place: a unit conic z² = αx² + βy² over
    /// the residue field 𝔽_p has a smooth point, which lifts; so the symbol
    /// of units is +1 exactly when the reduced conic has a nonzero point.
    #[test]
    fn split_place_unit_symbol_matches_residue_conic() {
        let k = QuadField::new(&Rational::from_int(-1)).unwrap();
        let i = QuadExt::generator(&Rational::from_int(-1));
        let places = k.places_above_odd(&BigInt::from(5));
        for place in &places {
            let QuadPlace::Odd { p, kind } = place else { unreachable!() };
            let OddKind::Split { root } = kind else { panic!("5 splits in Q(i)") };
            let sym = hilbert_symbol_quadfield(&k, &i, &i, place).unwrap();
            // Reduce i at this place and search 𝔽_5³ for a nonzero solution.
            let r = root.clone();
            let p5: i64 = 5;
            let ri: i64 = (&r % p).to_string().parse().unwrap();
            let mut solvable = false;
            'search: for x in 0..p5 {
                for y in 0..p5 {
                    for z in 0..p5 {
                        if x == 0 && y == 0 && z == 0 {
                            continue;
                        }
                        if (z * z - ri * x * x - ri * y * y).rem_euclid(p5) == 0 {
                            solvable = true;
                            break 'search;
                        }
                    }
                }
            }
            assert_eq!(sym == 1, solvable);
            assert_eq!(sym, 1);
        }
    }
}
