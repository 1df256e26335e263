//! Valuations at closed points, evaluation into residue fields, and supports
//! of divisors.
//!
//! Membership and quotients in O_af go through conjugate-and-norm division:
//! u/π = u·conj(π)/N(π) with exact polynomial division in both coordinates.

use super::function_field::{ConicInstance, FnFieldElem};
use super::point::{AffinePoint, AffineResidue, ClosedPoint};
use crate::arith::{Polynomial, QuadExt, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::field::Field;

/// Value of a function in a residue field.
#[derive(Clone, Debug, PartialEq)]
pub enum ResidueValue {
    Quad(QuadExt),
    /// Coefficients on the θ-power basis of a higher-degree residue field.
    Higher(Vec<Rational>),
}

impl ResidueValue {
    pub fn is_zero(&self) -> bool {
        match self {
            ResidueValue::Quad(z) => z.is_zero(),
            ResidueValue::Higher(v) => v.iter().all(Rational::is_zero),
        }
    }

    pub fn as_quad(&self) -> Option<&QuadExt> {
        match self {
            ResidueValue::Quad(z) => Some(z),
            ResidueValue::Higher(_) => None,
        }
    }
}

/// Normalized valuation at infinity: v_∞(g + h·y) = min(−deg g, −1 − deg h)
/// for polynomial coordinates, extended to quotients by subtraction.
pub fn v_infty(f: &FnFieldElem) -> i64 {
    assert!(!Field::is_zero(f), "valuation of zero");
    let (u, den) = f.clear_denominators();
    v_infty_integral(&u) + den.degree().unwrap() as i64
}

fn v_infty_integral(u: &FnFieldElem) -> i64 {
    debug_assert!(u.is_integral());
    let vg = u.g.as_polynomial().unwrap().degree().map(|d| -(d as i64));
    let vh = u
        .h
        .as_polynomial()
        .unwrap()
        .degree()
        .map(|d| -1 - d as i64);
    match (vg, vh) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => unreachable!("zero handled by caller"),
    }
}

/// Leading value at infinity of an integral element u with v_∞(u) = −m:
/// the image of u/x^m in k(∞), namely g_m + h_{m−1}·(y/x)(∞).
pub fn lead_at_infty(conic: &ConicInstance, u: &FnFieldElem) -> QuadExt {
    debug_assert!(u.is_integral() && !Field::is_zero(u));
    let m = (-v_infty_integral(u)) as usize;
    let g = u.g.as_polynomial().unwrap();
    let h = u.h.as_polynomial().unwrap();
    let base = g.coeff(m);
    let ext = if m == 0 {
        Rational::zero()
    } else {
        h.coeff(m - 1)
    };
    QuadExt::new(base, ext, conic.infinity_modulus())
}

/// Evaluates an integral element at an affine point.
pub fn eval_integral(p: &AffinePoint, u: &FnFieldElem) -> ResidueValue {
    debug_assert!(u.is_integral());
    let g = u.g.as_polynomial().unwrap();
    let h = u.h.as_polynomial().unwrap();
    match &p.residue {
        AffineResidue::Quad { x, y } => {
            let gx = eval_poly_quad(g, x);
            let hx = eval_poly_quad(h, x);
            ResidueValue::Quad(gx.add(&hx.mul(y)))
        }
        AffineResidue::Higher {
            min_poly,
            x_coords,
            y_coords,
        } => {
            let n = min_poly.degree().unwrap();
            let x = HigherElem::new(x_coords.clone(), min_poly.clone());
            let y = HigherElem::new(y_coords.clone(), min_poly.clone());
            let mut acc = HigherElem::zero(min_poly.clone(), n);
            for i in (0..=g.degree().unwrap_or(0)).rev() {
                acc = acc.mul(&x).add_scalar(&g.coeff(i));
            }
            let mut acc_h = HigherElem::zero(min_poly.clone(), n);
            for i in (0..=h.degree().unwrap_or(0)).rev() {
                acc_h = acc_h.mul(&x).add_scalar(&h.coeff(i));
            }
            ResidueValue::Higher(acc.add(&acc_h.mul(&y)).coords)
        }
    }
}

fn eval_poly_quad(p: &Polynomial, x: &QuadExt) -> QuadExt {
    let mut acc = QuadExt::zero(&x.modulus);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&QuadExt::from_rational(c, &x.modulus));
    }
    acc
}

/// Arithmetic in ℚ[θ]/(m(θ)) for higher-degree residue fields.
#[derive(Clone, Debug)]
struct HigherElem {
    coords: Vec<Rational>,
    min_poly: Polynomial,
}

impl HigherElem {
    fn new(coords: Vec<Rational>, min_poly: Polynomial) -> Self {
        HigherElem { coords, min_poly }
    }

    fn zero(min_poly: Polynomial, n: usize) -> Self {
        HigherElem {
            coords: vec![Rational::zero(); n],
            min_poly,
        }
    }

    fn add(&self, o: &Self) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(a, b)| a + b)
            .collect();
        HigherElem::new(coords, self.min_poly.clone())
    }

    fn add_scalar(&self, c: &Rational) -> Self {
        let mut coords = self.coords.clone();
        coords[0] = &coords[0] + c;
        HigherElem::new(coords, self.min_poly.clone())
    }

    fn mul(&self, o: &Self) -> Self {
        let pa = Polynomial::new(self.coords.clone());
        let pb = Polynomial::new(o.coords.clone());
        let (_, r) = (&pa * &pb).divrem(&self.min_poly).unwrap();
        let n = self.min_poly.degree().unwrap();
        let mut coords = vec![Rational::zero(); n];
        for (i, c) in coords.iter_mut().enumerate() {
            *c = r.coeff(i);
        }
        HigherElem::new(coords, self.min_poly.clone())
    }
}

/// One division step: u/π for an integral u divisible by π at p.
fn divide_once(p: &AffinePoint, u: &FnFieldElem) -> FnFieldElem {
    let prod = u.mul(&p.pi.conj());
    let norm = p.pi.norm();
    let norm_poly = norm.as_polynomial().expect("uniformizer norm in k[x]");
    let g = prod
        .g
        .as_polynomial()
        .unwrap()
        .div_exact(norm_poly)
        .expect("exact division after divisibility check");
    let h = prod
        .h
        .as_polynomial()
        .unwrap()
        .div_exact(norm_poly)
        .expect("exact division after divisibility check");
    FnFieldElem {
        g: RatFunc::from_poly(g),
        h: RatFunc::from_poly(h),
        a: u.a.clone(),
        b: u.b.clone(),
    }
}

/// Valuation of an integral element at an affine point, with the reduced
/// cofactor u/π^v.
pub fn valuation_integral(p: &AffinePoint, u: &FnFieldElem) -> (i64, FnFieldElem) {
    debug_assert!(u.is_integral() && !Field::is_zero(u));
    let mut v = 0i64;
    let mut cur = u.clone();
    while eval_integral(p, &cur).is_zero() {
        cur = divide_once(p, &cur);
        v += 1;
    }
    (v, cur)
}

/// v_p(f) for a nonzero f and affine p.
pub fn valuation(f: &FnFieldElem, point: &ClosedPoint) -> i64 {
    assert!(!Field::is_zero(f), "valuation of zero");
    match point {
        ClosedPoint::Infinity(_) => v_infty(f),
        ClosedPoint::Affine(p) => {
            let (u, den) = f.clear_denominators();
            let (vu, _) = valuation_integral(p, &u);
            let den_f = FnFieldElem {
                g: RatFunc::from_poly(den),
                h: RatFunc::zero(),
                a: f.a.clone(),
                b: f.b.clone(),
            };
            let vw = if den_f.g == RatFunc::one() {
                0
            } else {
                valuation_integral(p, &den_f).0
            };
            vu - vw
        }
    }
}

/// Evaluates f at a closed point; requires v_p(f) ≥ 0. At infinity the value
/// is computed by the leading-coefficient rule.
pub fn evaluate(f: &FnFieldElem, point: &ClosedPoint) -> Result<ResidueValue> {
    assert!(!Field::is_zero(f), "evaluate zero explicitly");
    match point {
        ClosedPoint::Infinity(conic) => {
            let v = v_infty(f);
            if v < 0 {
                return Err(Error::PoleAtPoint { valuation: v });
            }
            if v > 0 {
                return Ok(ResidueValue::Quad(QuadExt::zero(&conic.infinity_modulus())));
            }
            let (u, den) = f.clear_denominators();
            let den_f = FnFieldElem {
                g: RatFunc::from_poly(den),
                h: RatFunc::zero(),
                a: f.a.clone(),
                b: f.b.clone(),
            };
            let lu = lead_at_infty(conic, &u);
            let lw = lead_at_infty(conic, &den_f);
            Ok(ResidueValue::Quad(lu.mul(&lw.inv()?)))
        }
        ClosedPoint::Affine(p) => {
            let (u, den) = f.clear_denominators();
            let den_f = FnFieldElem {
                g: RatFunc::from_poly(den),
                h: RatFunc::zero(),
                a: f.a.clone(),
                b: f.b.clone(),
            };
            let (vu, u_red) = valuation_integral(p, &u);
            let (vw, w_red) = if den_f.g == RatFunc::one() {
                (0, den_f)
            } else {
                valuation_integral(p, &den_f)
            };
            let v = vu - vw;
            if v < 0 {
                return Err(Error::PoleAtPoint { valuation: v });
            }
            if v > 0 {
                return Ok(match &p.residue {
                    AffineResidue::Quad { x, .. } => {
                        ResidueValue::Quad(QuadExt::zero(&x.modulus))
                    }
                    AffineResidue::Higher { min_poly, .. } => {
                        ResidueValue::Higher(vec![
                            Rational::zero();
                            min_poly.degree().unwrap()
                        ])
                    }
                });
            }
            let uv = eval_integral(p, &u_red);
            let wv = eval_integral(p, &w_red);
            residue_div(p, &uv, &wv)
        }
    }
}

fn residue_div(p: &AffinePoint, num: &ResidueValue, den: &ResidueValue) -> Result<ResidueValue> {
    match (num, den) {
        (ResidueValue::Quad(n), ResidueValue::Quad(d)) => Ok(ResidueValue::Quad(n.mul(&d.inv()?))),
        (ResidueValue::Higher(n), ResidueValue::Higher(d)) => {
            let min_poly = match &p.residue {
                AffineResidue::Higher { min_poly, .. } => min_poly.clone(),
                _ => unreachable!(),
            };
            let ne = HigherElem::new(n.clone(), min_poly.clone());
            let dp = Polynomial::new(d.clone());
            let inv = poly_inverse_mod(&dp, &min_poly)?;
            let iv = HigherElem::new(
                (0..min_poly.degree().unwrap()).map(|i| inv.coeff(i)).collect(),
                min_poly,
            );
            Ok(ResidueValue::Higher(ne.mul(&iv).coords))
        }
        _ => unreachable!("mismatched residue presentations"),
    }
}

/// Inverse of a polynomial modulo an irreducible modulus via extended gcd.
fn poly_inverse_mod(a: &Polynomial, modulus: &Polynomial) -> Result<Polynomial> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (mut r0, mut r1) = (modulus.clone(), a.clone());
    let (mut s0, mut s1) = (Polynomial::zero(), Polynomial::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1).unwrap();
        let s = &s0 - &(&q * &s1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 = gcd is a nonzero constant for irreducible modulus.
    let c = r0
        .coeffs()
        .first()
        .cloned()
        .ok_or(Error::DivisionByZero)?;
    debug_assert!(r0.is_constant());
    let (_, rem) = s0.scale(&c.inv()?).divrem(modulus).unwrap();
    Ok(rem)
}

/// All points with nonzero valuation, including infinity, with multiplicities.
/// Found by factoring the norms of the cleared numerator and denominator.
pub fn support(f: &FnFieldElem) -> Result<Vec<(ClosedPoint, i64)>> {
    assert!(!Field::is_zero(f), "support of zero");
    let conic = f.conic();
    let (u, den) = f.clear_denominators();
    let mut candidate_polys: Vec<Polynomial> = Vec::new();
    let nu = u.norm();
    candidate_polys.push(nu.as_polynomial().unwrap().clone());
    if !den.is_constant() {
        candidate_polys.push(den.clone());
    }
    let mut points = Vec::new();
    for poly in &candidate_polys {
        points.extend(super::point::points_over_poly(&conic, poly)?);
    }
    points.sort_by(|p, q| p.cmp_deterministic(q));
    points.dedup();
    let mut out = Vec::new();
    for p in points {
        let v = valuation(f, &p);
        if v != 0 {
            out.push((p, v));
        }
    }
    let vi = v_infty(f);
    if vi != 0 {
        out.push((ClosedPoint::Infinity(conic), vi));
    }
    debug_assert_eq!(
        out.iter().map(|(p, v)| p.degree() as i64 * v).sum::<i64>(),
        0,
        "principal divisors have degree zero"
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::point::{make_conic, points_from_linear};

    fn hamilton() -> ConicInstance {
        make_conic(Rational::from_int(-1), Rational::from_int(-1)).unwrap()
    }

    fn p0(c: &ConicInstance) -> ClosedPoint {
        points_from_linear(c, &Rational::zero(), &Rational::one(), &Rational::zero())
    }

    #[test]
    fn v_infty_basics() {
        let c = hamilton();
        assert_eq!(v_infty(&c.x()), -1);
        assert_eq!(v_infty(&c.y()), -1);
        // (x² + y)/x → min(−2, −2) − (−1) = −1
        let f = c.x().mul(&c.x()).add(&c.y()).mul(&Field::inv(&c.x()).unwrap());
        assert_eq!(v_infty(&f), -1);
    }

    #[test]
    fn valuation_at_p0() {
        let c = hamilton();
        let p = p0(&c);
        assert_eq!(valuation(&c.x(), &p), 1);
        let unit = c.one_f().add(&c.y()); // 1 + y does not vanish at p0
        assert_eq!(valuation(&unit, &p), 0);
        let f = c.x().mul(&unit);
        assert_eq!(valuation(&f, &p), 1);
        assert_eq!(valuation(&Field::inv(&c.x()).unwrap(), &p), -1);
    }

    #[test]
    fn evaluate_y_over_x_at_infinity() {
        let c = hamilton();
        let f = c.y().mul(&Field::inv(&c.x()).unwrap());
        let v = evaluate(&f, &ClosedPoint::Infinity(c.clone())).unwrap();
        assert_eq!(
            v,
            ResidueValue::Quad(QuadExt::generator(&Rational::from_int(-1)))
        );
    }

    #[test]
    fn evaluate_pole_rejected() {
        let c = hamilton();
        // (x²+y)/x has a pole at infinity (valuation −1)
        let f = c.x().mul(&c.x()).add(&c.y()).mul(&Field::inv(&c.x()).unwrap());
        assert!(matches!(
            evaluate(&f, &ClosedPoint::Infinity(c.clone())),
            Err(Error::PoleAtPoint { valuation: -1 })
        ));
        // its x²-normalized form evaluates to 1
        let g = c.x().mul(&c.x()).add(&c.y())
            .mul(&Field::inv(&c.x().mul(&c.x())).unwrap());
        let v = evaluate(&g, &ClosedPoint::Infinity(c.clone())).unwrap();
        assert_eq!(
            v,
            ResidueValue::Quad(QuadExt::one(&Rational::from_int(-1)))
        );
    }

    #[test]
    fn evaluate_constant_everywhere() {
        let c = hamilton();
        let f = c.scalar(&Rational::from_frac(3, 7));
        let p = p0(&c);
        match evaluate(&f, &p).unwrap() {
            ResidueValue::Quad(z) => {
                assert_eq!(z.as_rational().unwrap(), Rational::from_frac(3, 7))
            }
            _ => panic!(),
        }
    }

    #[test]
    fn support_of_x() {
        let c = hamilton();
        let s = support(&c.x()).unwrap();
        // div(x) = p0 − ∞
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].0, p0(&c));
        assert_eq!(s[0].1, 1);
        assert!(s[1].0.is_infinity());
        assert_eq!(s[1].1, -1);
    }

    #[test]
    fn support_of_y_and_constants() {
        let c = hamilton();
        let s = support(&c.y()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].1, 1);
        assert_eq!(s[0].0.as_affine().unwrap().pi, c.y());
        assert!(s[1].0.is_infinity());
        assert!(support(&c.scalar(&Rational::from_int(5))).unwrap().is_empty());
    }

    #[test]
    fn valuation_is_multiplicative() {
        let c = hamilton();
        let p = p0(&c);
        let f = c.x().mul(&c.x()).mul(&c.one_f().add(&c.y()));
        let g = c.x().add(&c.y());
        assert_eq!(
            valuation(&f.mul(&g), &p),
            valuation(&f, &p) + valuation(&g, &p)
        );
    }
}
