//! The residue functional at infinity, local components of the differential
//! dx/2y, Riemann-Roch spaces, and coherent uniformizer/functional pairs.

use super::function_field::{ConicInstance, FnFieldElem};
use super::point::{AffinePoint, ClosedPoint};
use super::valuation::{evaluate, support, v_infty, ResidueValue};
use crate::arith::{QuadExt, Rational};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;

/// The functional ω_∞ on k(∞): kills 1, sends (y/x)(∞) to −1.
pub fn omega_infty(conic: &ConicInstance, c: &QuadExt) -> Rational {
    assert_eq!(
        c.modulus,
        conic.infinity_modulus(),
        "value must lie in k(infinity)"
    );
    -&c.ext
}

/// ℚ-basis of { u ∈ O_af : v_∞(u) ≥ v_∞(π_p) }: the monomials x^α (α ≤ n)
/// and x^β·y (β ≤ n−1) with n = deg(p)/2. Dimension 1 + deg p.
pub fn riemann_roch_space(point: &ClosedPoint) -> Vec<FnFieldElem> {
    let p = point.as_affine().expect("affine point");
    let conic = &p.conic;
    let n = p.degree / 2;
    let mut basis = Vec::with_capacity(1 + p.degree);
    let x = conic.x();
    let y = conic.y();
    let mut xpow = conic.one_f();
    for alpha in 0..=n {
        basis.push(xpow.clone());
        if alpha < n {
            xpow = xpow.mul(&x);
        }
    }
    let mut xpow = conic.one_f();
    for beta in 0..n {
        basis.push(xpow.mul(&y));
        if beta + 1 < n {
            xpow = xpow.mul(&x);
        }
    }
    basis
}

/// The local component ω_p(f) = −ω_∞(f(∞)) for a representative f with
/// v_p(f) ≥ −1, regular at every other point.
pub fn omega_p(f: &FnFieldElem, point: &ClosedPoint) -> Result<Rational> {
    let p = point.as_affine().expect("affine point");
    let conic = &p.conic;
    if Field::is_zero(f) {
        return Ok(Rational::zero());
    }
    if v_infty(f) < 0 {
        return Err(Error::BadRepresentative(format!(
            "v_infinity = {} < 0",
            v_infty(f)
        )));
    }
    for (q, v) in support(f)? {
        if v >= 0 {
            continue;
        }
        match &q {
            ClosedPoint::Affine(ap) if ap.pi == p.pi => {
                if v < -1 {
                    return Err(Error::BadRepresentative(format!(
                        "v_p = {v} < -1 at the target point"
                    )));
                }
            }
            _ => {
                return Err(Error::BadRepresentative(format!(
                    "pole of order {} at {q}",
                    -v
                )))
            }
        }
    }
    let value = evaluate(f, &ClosedPoint::Infinity(conic.clone()))?;
    match value {
        ResidueValue::Quad(z) => Ok(-&omega_infty(conic, &z)),
        ResidueValue::Higher(_) => unreachable!("infinity has a quadratic residue field"),
    }
}

/// A coherent uniformizer/functional pair at a degree-2 affine point:
/// s_p is stored by its values on the basis (1, θ) of k(p).
#[derive(Clone, Debug, PartialEq)]
pub struct CoherentPair {
    pub point: ClosedPoint,
    pub s_on_one: Rational,
    pub s_on_theta: Rational,
}

impl CoherentPair {
    /// Applies s_p to a residue-field element.
    pub fn apply(&self, c: &QuadExt) -> Rational {
        let p = self.point.as_affine().expect("affine");
        let modulus = p.quad_modulus().expect("degree-2 point");
        assert_eq!(c.modulus, modulus, "value not in k(p)");
        &(&c.base * &self.s_on_one) + &(&c.ext * &self.s_on_theta)
    }

    /// The functional coherent with the rescaled uniformizer c·π_p:
    /// s′(z) = s(z)/c for a scalar unit c.
    pub fn rescaled(&self, c: &Rational) -> CoherentPair {
        let inv = c.inv().expect("nonzero unit");
        CoherentPair {
            point: self.point.clone(),
            s_on_one: &self.s_on_one * &inv,
            s_on_theta: &self.s_on_theta * &inv,
        }
    }
}

/// Computes the unique functional s_p coherent with the point's uniformizer:
/// for each basis value c of k(p), solve u(p) = c in the Riemann-Roch space
/// and set s_p(c) = ω_p(u/π_p) = −ω_∞((u/π_p)(∞)).
pub fn coherent_functional(point: &ClosedPoint) -> Result<CoherentPair> {
    let p = point.as_affine().expect("affine point");
    if p.degree != 2 {
        return Err(Error::UnsupportedField(format!(
            "coherent functionals are computed at degree-2 points, got degree {}",
            p.degree
        )));
    }
    let modulus = p.quad_modulus().unwrap();
    let one = QuadExt::one(&modulus);
    let theta = QuadExt::generator(&modulus);
    let s1 = coherent_value(p, point, &one)?;
    let st = coherent_value(p, point, &theta)?;
    Ok(CoherentPair {
        point: point.clone(),
        s_on_one: s1,
        s_on_theta: st,
    })
}

fn coherent_value(p: &AffinePoint, point: &ClosedPoint, c: &QuadExt) -> Result<Rational> {
    let basis = riemann_roch_space(point);
    // Solve Σ λ_i u_i(p) = c over ℚ (two residue-field coordinates).
    let mut rows = vec![Vec::new(), Vec::new()];
    for u in &basis {
        let val = super::valuation::eval_integral(p, u);
        let z = val.as_quad().expect("degree-2 residue field");
        rows[0].push(z.base.clone());
        rows[1].push(z.ext.clone());
    }
    let rhs = vec![c.base.clone(), c.ext.clone()];
    let lambda = linalg::solve(&rows, &rhs).expect("Riemann-Roch space surjects onto k(p)");
    let mut u = p.conic.zero_f();
    for (l, ub) in lambda.iter().zip(&basis) {
        u = u.add(&ub.scale_rat(l));
    }
    let f = u.mul(&Field::inv(&p.pi)?);
    omega_p(&f, point)
}

/// μ_{π_p}(f) = (f·π_p)(p), the residue image used in the coherence triangle.
pub fn mu_pi(point: &ClosedPoint, f: &FnFieldElem) -> Result<QuadExt> {
    let p = point.as_affine().expect("affine point");
    let prod = f.mul(&p.pi);
    match evaluate(&prod, point)? {
        ResidueValue::Quad(z) => Ok(z),
        ResidueValue::Higher(_) => Err(Error::UnsupportedField(
            "coherence checks limited to degree-2 points".into(),
        )),
    }
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
    fn omega_infty_values() {
        let c = hamilton();
        let m = c.infinity_modulus();
        assert_eq!(omega_infty(&c, &QuadExt::one(&m)), Rational::zero());
        assert_eq!(
            omega_infty(&c, &QuadExt::generator(&m)),
            Rational::from_int(-1)
        );
        // linearity: q + r·θ ↦ −r
        let z = QuadExt::new(Rational::from_int(7), Rational::from_frac(2, 3), m);
        assert_eq!(omega_infty(&c, &z), Rational::from_frac(-2, 3));
    }

    #[test]
    fn riemann_roch_dimension_and_valuations() {
        let c = hamilton();
        let p = p0(&c);
        let basis = riemann_roch_space(&p);
        assert_eq!(basis.len(), 3); // 1 + deg p
        let bound = v_infty(&p.as_affine().unwrap().pi);
        for u in &basis {
            assert!(v_infty(u) >= bound);
        }
    }

    #[test]
    fn omega_p_examples() {
        let c = hamilton();
        let p = p0(&c);
        // f = y/x: ω_p(f) = −ω_∞(θ) = 1
        let f = c.y().mul(&Field::inv(&c.x()).unwrap());
        assert_eq!(omega_p(&f, &p).unwrap(), Rational::from_int(1));
        // f = 1/x vanishes at infinity: ω_p = 0
        let f = Field::inv(&c.x()).unwrap();
        assert_eq!(omega_p(&f, &p).unwrap(), Rational::zero());
        // constants are killed
        assert_eq!(
            omega_p(&c.scalar(&Rational::from_int(9)), &p).unwrap(),
            Rational::zero()
        );
        // a pole at a different point is rejected
        let other = points_from_linear(
            &c,
            &Rational::from_int(-1),
            &Rational::from_int(1),
            &Rational::zero(),
        );
        let bad = Field::inv(&other.as_affine().unwrap().pi).unwrap();
        assert!(omega_p(&bad, &p).is_err());
    }

    #[test]
    fn coherent_functional_at_p0() {
        let c = hamilton();
        let p = p0(&c);
        let s = coherent_functional(&p).unwrap();
        assert_eq!(s.s_on_one, Rational::zero());
        assert_eq!(s.s_on_theta, Rational::from_int(1));
    }

    #[test]
    fn coherence_triangle_on_spanning_set() {
        let c = hamilton();
        let p = p0(&c);
        let s = coherent_functional(&p).unwrap();
        // Spanning set of m_p^{-1}/O_p: u/π for u in the RR space.
        let pi_inv = Field::inv(&p.as_affine().unwrap().pi).unwrap();
        for u in riemann_roch_space(&p) {
            let f = u.mul(&pi_inv);
            let lhs = s.apply(&mu_pi(&p, &f).unwrap());
            let rhs = omega_p(&f, &p).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[cfg(test)]
mod degree_four_tests {
    use super::*;
    use crate::arith::Polynomial;
    use crate::conic::point::{make_conic, points_over_irreducible};

    #[test]
    fn riemann_roch_basis_for_degree_four() {
        let c = make_conic(Rational::from_int(-1), Rational::from_int(-1)).unwrap();
        let q = Polynomial::from_ints(&[-2, 0, 1]); // inert: degree-4 point
        let p = points_over_irreducible(&c, &q).unwrap().remove(0);
        assert_eq!(p.degree(), 4);
        let basis = riemann_roch_space(&p);
        // {1, x, x², y, x·y}: dimension 1 + deg p = 5
        assert_eq!(basis.len(), 5);
        let expected = vec![
            c.one_f(),
            c.x(),
            c.x().mul(&c.x()),
            c.y(),
            c.x().mul(&c.y()),
        ];
        assert_eq!(basis, expected);
    }
}
