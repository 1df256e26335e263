//! Closed points of the conic: the point at infinity and affine points with
//! normalized irreducible uniformizers.

use super::function_field::{ConicInstance, FnFieldElem};
use crate::arith::{
    hilbert_symbol_q, poly_factor_q, relevant_places, Polynomial, QuadExt, RatFunc, Rational,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Validates the conic instance: (a, b) must be a division algebra over ℚ,
/// equivalently ⟨1, −a, −b⟩ anisotropic.
pub fn make_conic(a: Rational, b: Rational) -> Result<ConicInstance> {
    assert!(!a.is_zero() && !b.is_zero(), "a, b must be nonzero");
    let places = relevant_places(&[&a, &b]);
    let division = places.iter().any(|v| hilbert_symbol_q(&a, &b, v) == -1);
    if division {
        return Ok(ConicInstance { a, b });
    }
    // Split: report an isotropic vector of ⟨1, −a, −b⟩ if a small one exists.
    let detail = match isotropic_vector_ternary(&a, &b, 20) {
        Some((z, x, y)) => format!("isotropic vector (z, x, y) = ({z}, {x}, {y})"),
        None => "all Hilbert symbols (a,b)_v are trivial".to_string(),
    };
    Err(Error::SplitAlgebra {
        a: a.to_string(),
        b: b.to_string(),
        detail,
    })
}

/// Small search for z² = a·x² + b·y² with (z, x, y) ≠ 0.
fn isotropic_vector_ternary(a: &Rational, b: &Rational, bound: i64) -> Option<(i64, i64, i64)> {
    for z in 0..=bound {
        for x in -bound..=bound {
            for y in -bound..=bound {
                if z == 0 && x == 0 && y == 0 {
                    continue;
                }
                let lhs = Rational::from_int(z * z);
                let rhs = &(a * &Rational::from_int(x * x)) + &(b * &Rational::from_int(y * y));
                if lhs == rhs {
                    return Some((z, x, y));
                }
            }
        }
    }
    None
}

/// Residue-field data of an affine point.
#[derive(Clone, Debug, PartialEq)]
pub enum AffineResidue {
    /// Degree-2 point: k(p) = ℚ(√modulus) with explicit coordinates.
    Quad { x: QuadExt, y: QuadExt },
    /// Higher-degree point presented by the minimal polynomial of a primitive
    /// element θ; coordinates are coefficient vectors on the θ-power basis.
    Higher {
        min_poly: Polynomial,
        x_coords: Vec<Rational>,
        y_coords: Vec<Rational>,
    },
}

/// An affine closed point with its normalized uniformizer.
#[derive(Clone, Debug, PartialEq)]
pub struct AffinePoint {
    pub conic: ConicInstance,
    pub pi: FnFieldElem,
    pub degree: usize,
    pub residue: AffineResidue,
}

impl AffinePoint {
    /// The modulus d with k(p) = ℚ(√d), for degree-2 points.
    pub fn quad_modulus(&self) -> Option<Rational> {
        match &self.residue {
            AffineResidue::Quad { x, .. } => Some(x.modulus.clone()),
            AffineResidue::Higher { .. } => None,
        }
    }

    pub fn coordinates_quad(&self) -> Option<(QuadExt, QuadExt)> {
        match &self.residue {
            AffineResidue::Quad { x, y } => Some((x.clone(), y.clone())),
            AffineResidue::Higher { .. } => None,
        }
    }
}

/// A closed point of the conic.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedPoint {
    Infinity(ConicInstance),
    Affine(AffinePoint),
}

impl ClosedPoint {
    pub fn conic(&self) -> ConicInstance {
        match self {
            ClosedPoint::Infinity(c) => c.clone(),
            ClosedPoint::Affine(p) => p.conic.clone(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Infinity(_) => 2,
            ClosedPoint::Affine(p) => p.degree,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ClosedPoint::Infinity(_))
    }

    pub fn as_affine(&self) -> Option<&AffinePoint> {
        match self {
            ClosedPoint::Affine(p) => Some(p),
            ClosedPoint::Infinity(_) => None,
        }
    }

    /// The residue-field modulus: a for ∞, else the point's quadratic modulus.
    pub fn residue_modulus(&self) -> Option<Rational> {
        match self {
            ClosedPoint::Infinity(c) => Some(c.infinity_modulus()),
            ClosedPoint::Affine(p) => p.quad_modulus(),
        }
    }

    /// (y/x)(∞) as an element of k(∞).
    pub fn theta_infinity(conic: &ConicInstance) -> QuadExt {
        QuadExt::generator(&conic.infinity_modulus())
    }

    /// Deterministic ordering key: affines by (degree, uniformizer), ∞ last.
    pub fn sort_key(&self) -> (u8, usize, String) {
        match self {
            ClosedPoint::Affine(p) => (0, p.degree, format!("{}", p.pi)),
            ClosedPoint::Infinity(_) => (1, 2, String::new()),
        }
    }

    pub fn cmp_deterministic(&self, other: &ClosedPoint) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Infinity(_) => write!(f, "infinity"),
            ClosedPoint::Affine(p) => write!(f, "point(pi = {})", p.pi),
        }
    }
}

/// Normalizes line coefficients to primitive integers with the first nonzero
/// entry among (c2, c3) positive.
fn normalize_line(c1: &Rational, c2: &Rational, c3: &Rational) -> (BigInt, BigInt, BigInt) {
    let d1 = c1.denom();
    let d2 = c2.denom();
    let d3 = c3.denom();
    let lcm = d1.lcm(d2).lcm(d3);
    let n1 = c1.numer() * (&lcm / d1);
    let n2 = c2.numer() * (&lcm / d2);
    let n3 = c3.numer() * (&lcm / d3);
    let mut g = n1.gcd(&n2).gcd(&n3);
    if g.is_zero() {
        g = BigInt::from(1);
    }
    let (mut n1, mut n2, mut n3) = (&n1 / &g, &n2 / &g, &n3 / &g);
    let flip = if !n2.is_zero() {
        n2.is_negative()
    } else {
        n3.is_negative()
    };
    if flip {
        n1 = -n1;
        n2 = -n2;
        n3 = -n3;
    }
    (n1, n2, n3)
}

/// The degree-2 closed point cut on the conic by c1 + c2·x + c3·y = 0.
/// Requires (c2, c3) ≠ (0, 0).
pub fn points_from_linear(
    conic: &ConicInstance,
    c1: &Rational,
    c2: &Rational,
    c3: &Rational,
) -> ClosedPoint {
    assert!(
        !c2.is_zero() || !c3.is_zero(),
        "need (c2, c3) != (0, 0) to cut the conic"
    );
    let (n1, n2, n3) = normalize_line(c1, c2, c3);
    let (c1, c2, c3) = (
        Rational::from_bigint(n1),
        Rational::from_bigint(n2),
        Rational::from_bigint(n3),
    );
    let pi = {
        let xv = conic.x();
        let yv = conic.y();
        conic
            .scalar(&c1)
            .add(&xv.scale_rat(&c2))
            .add(&yv.scale_rat(&c3))
    };
    let (x, y) = if c3.is_zero() {
        // Vertical line x = -c1/c2.
        let x0 = -&(&c1 / &c2);
        let v = &(&conic.a * &(&x0 * &x0)) + &conic.b;
        assert!(
            !v.is_zero() && !crate::arith::is_square_rational(&v),
            "line meets the conic in a rational point; algebra would be split"
        );
        (
            QuadExt::from_rational(&x0, &v),
            QuadExt::generator(&v),
        )
    } else {
        // Substitute y = -(c1 + c2 x)/c3: (c2² − a c3²)x² + 2c1c2·x + (c1² − b c3²) = 0.
        let qa = &(&c2 * &c2) - &(&conic.a * &(&c3 * &c3));
        let qb = &(&c1 * &c2) + &(&c1 * &c2);
        let qc = &(&c1 * &c1) - &(&conic.b * &(&c3 * &c3));
        assert!(!qa.is_zero(), "a is a nonsquare, so c2² − a·c3² ≠ 0");
        let disc = &(&qb * &qb) - &(&Rational::from_int(4) * &(&qa * &qc));
        assert!(
            !disc.is_zero() && !crate::arith::is_square_rational(&disc),
            "line tangent or split over ℚ; impossible on a pointless conic"
        );
        let t = QuadExt::generator(&disc);
        let two_a = &Rational::from_int(2) * &qa;
        let x = t
            .add(&QuadExt::from_rational(&-&qb, &disc))
            .scale(&two_a.inv().unwrap());
        let c3inv = c3.inv().unwrap();
        let y = x
            .scale(&c2)
            .add(&QuadExt::from_rational(&c1, &disc))
            .scale(&-&c3inv);
        (x, y)
    };
    debug_assert!({
        let lhs = y.mul(&y);
        let rhs = x
            .mul(&x)
            .scale(&conic.a)
            .add(&QuadExt::from_rational(&conic.b, &x.modulus));
        lhs == rhs
    });
    ClosedPoint::Affine(AffinePoint {
        conic: conic.clone(),
        pi,
        degree: 2,
        residue: AffineResidue::Quad { x, y },
    })
}

/// Recovers the unique line through a degree-2 residue pair (x, y) and builds
/// the normalized point.
fn point_from_coordinates(conic: &ConicInstance, x: &QuadExt, y: &QuadExt) -> ClosedPoint {
    // Solve c1 + c2·x + c3·y = 0 over ℚ: one relation among {1, x, y}.
    let rows = vec![
        vec![Rational::one(), x.base.clone(), y.base.clone()],
        vec![Rational::zero(), x.ext.clone(), y.ext.clone()],
    ];
    let ker = linalg::kernel(&rows);
    assert_eq!(ker.len(), 1, "degree-2 point has a unique cutting line");
    let v = &ker[0];
    points_from_linear(conic, &v[0], &v[1], &v[2])
}

/// All closed points of the conic lying over a monic irreducible q(x) of the
/// affine line (the fiber of X_af → 𝔸¹ above q).
pub fn points_over_irreducible(conic: &ConicInstance, q: &Polynomial) -> Result<Vec<ClosedPoint>> {
    let deg = q.degree().expect("nonconstant q");
    assert!(deg >= 1 && q.is_monic());
    // Ramified fiber: q ~ ax² + b, the point y = 0.
    if deg == 2 && *q == conic.y_squared().monic() {
        return Ok(vec![points_from_linear(
            conic,
            &Rational::zero(),
            &Rational::zero(),
            &Rational::one(),
        )]);
    }
    match deg {
        1 => {
            // x(p) = root of q; k(p) = ℚ(√(a·x² + b)).
            let c = -&q.coeff(0);
            Ok(vec![points_from_linear(
                conic,
                &-&c,
                &Rational::one(),
                &Rational::zero(),
            )])
        }
        2 => {
            let qb = q.coeff(1);
            let qc = q.coeff(0);
            let disc = &(&qb * &qb) - &(&Rational::from_int(4) * &qc);
            debug_assert!(!crate::arith::is_square_rational(&disc), "q irreducible");
            let t = QuadExt::generator(&disc);
            let half = Rational::from_frac(1, 2);
            let xbar = t.add(&QuadExt::from_rational(&-&qb, &disc)).scale(&half);
            let w = xbar
                .mul(&xbar)
                .scale(&conic.a)
                .add(&QuadExt::from_rational(&conic.b, &disc));
            debug_assert!(!w.is_zero());
            match w.sqrt() {
                Some(root) => {
                    // Split: two degree-2 points y = ±root.
                    let mut pts = vec![
                        point_from_coordinates(conic, &xbar, &root),
                        point_from_coordinates(conic, &xbar, &root.neg()),
                    ];
                    pts.sort_by(|p, q| p.cmp_deterministic(q));
                    Ok(pts)
                }
                None => higher_inert_point(conic, q).map(|p| vec![p]),
            }
        }
        3 | 4 => higher_inert_point(conic, q).map(|p| vec![p]),
        _ => Err(Error::UnsupportedField(format!(
            "residue fields over degree-{deg} base points are not presented"
        ))),
    }
}

/// Builds the inert point above q: k(p) = (ℚ[x]/q)(y), of degree 2·deg q,
/// presented by the minimal polynomial of a primitive element y + c·x.
fn higher_inert_point(conic: &ConicInstance, q: &Polynomial) -> Result<ClosedPoint> {
    let d = q.degree().unwrap();
    let n = 2 * d;
    // Algebra A = ℚ[x, y]/(q(x), y² − (ax²+b)) with basis x^i, x^i·y.
    let y2 = {
        let (_, r) = conic.y_squared().divrem(q).unwrap();
        r
    };
    let mul_basis = |e: &(Polynomial, Polynomial), f: &(Polynomial, Polynomial)| {
        let gg = &(&e.0 * &f.0) + &(&(&e.1 * &f.1) * &y2);
        let gh = &(&e.0 * &f.1) + &(&e.1 * &f.0);
        let (_, g) = gg.divrem(q).unwrap();
        let (_, h) = gh.divrem(q).unwrap();
        (g, h)
    };
    let coords = |e: &(Polynomial, Polynomial)| -> Vec<Rational> {
        let mut v = Vec::with_capacity(n);
        for i in 0..d {
            v.push(e.0.coeff(i));
        }
        for i in 0..d {
            v.push(e.1.coeff(i));
        }
        v
    };
    for c in 0..8i64 {
        // θ = y + c·x
        let theta = (
            Polynomial::monomial(Rational::from_int(c), 1),
            Polynomial::one(),
        );
        let mut pows: Vec<(Polynomial, Polynomial)> =
            vec![(Polynomial::one(), Polynomial::zero())];
        for _ in 0..n {
            let last = pows.last().unwrap();
            pows.push(mul_basis(last, &theta));
        }
        // First linear dependency among 1, θ, ..., θ^n.
        let cols: Vec<Vec<Rational>> = pows.iter().map(coords).collect();
        let mut matrix = vec![vec![Rational::zero(); n + 1]; n];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                matrix[i][j] = col[i].clone();
            }
        }
        let ker = linalg::kernel(&matrix);
        // Primitive iff the only dependency involves θ^n.
        if ker.len() == 1 && !ker[0][n].is_zero() {
            let scale = ker[0][n].inv().unwrap();
            let min_poly = Polynomial::new(ker[0].iter().map(|c| c * &scale).collect());
            if !crate::arith::factor::is_irreducible(&min_poly)? {
                return Err(Error::UnsupportedField(format!(
                    "fiber above {q} splits into conjugate points of degree {d}; not presented"
                )));
            }
            // Express x and y on the θ-power basis.
            let pow_matrix: Vec<Vec<Rational>> = (0..n)
                .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
                .collect();
            let x_elem = coords(&(Polynomial::x(), Polynomial::zero()));
            let y_elem = coords(&(Polynomial::zero(), Polynomial::one()));
            let x_coords = linalg::solve(&pow_matrix, &x_elem).expect("primitive basis");
            let y_coords = linalg::solve(&pow_matrix, &y_elem).expect("primitive basis");
            let pi = FnFieldElem::from_parts(conic, RatFunc::from_poly(q.clone()), RatFunc::zero());
            return Ok(ClosedPoint::Affine(AffinePoint {
                conic: conic.clone(),
                pi,
                degree: n,
                residue: AffineResidue::Higher {
                    min_poly,
                    x_coords,
                    y_coords,
                },
            }));
        }
    }
    Err(Error::UnsupportedField(format!(
        "no primitive element y + c·x found above {q}"
    )))
}

/// The support machinery needs the fiber above every irreducible factor of a
/// polynomial in x; this is the dispatch.
pub fn points_over_poly(conic: &ConicInstance, f: &Polynomial) -> Result<Vec<ClosedPoint>> {
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let fact = poly_factor_q(f)?;
    for (q, _) in &fact.factors {
        out.extend(points_over_irreducible(conic, q)?);
    }
    out.sort_by(|p, q| p.cmp_deterministic(q));
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamilton() -> ConicInstance {
        make_conic(Rational::from_int(-1), Rational::from_int(-1)).unwrap()
    }

    #[test]
    fn make_conic_validates() {
        assert!(make_conic(Rational::from_int(-1), Rational::from_int(-1)).is_ok());
        assert!(make_conic(Rational::from_int(-1), Rational::from_int(-7)).is_ok());
        match make_conic(Rational::from_int(1), Rational::from_int(1)) {
            Err(Error::SplitAlgebra { detail, .. }) => {
                assert!(detail.contains("isotropic"), "{detail}");
            }
            other => panic!("expected SplitAlgebra, got {other:?}"),
        }
    }

    #[test]
    fn p0_coordinates() {
        let c = hamilton();
        let p = points_from_linear(&c, &Rational::zero(), &Rational::one(), &Rational::zero());
        let ap = p.as_affine().unwrap();
        let (x, y) = ap.coordinates_quad().unwrap();
        assert!(x.is_zero());
        assert_eq!(y, QuadExt::generator(&Rational::from_int(-1)));
        assert_eq!(ap.pi, c.x());
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn p1_coordinates() {
        let c = hamilton();
        let p = points_from_linear(&c, &Rational::zero(), &Rational::zero(), &Rational::one());
        let ap = p.as_affine().unwrap();
        let (x, y) = ap.coordinates_quad().unwrap();
        assert!(y.is_zero());
        // x² = −b/a = −1
        assert_eq!(x.mul(&x), QuadExt::from_rational(&Rational::from_int(-1), &x.modulus));
        assert_eq!(ap.pi, c.y());
    }

    #[test]
    fn general_line_satisfies_conic() {
        let c = hamilton();
        let p = points_from_linear(&c, &Rational::from_int(1), &Rational::from_int(2), &Rational::from_int(1));
        let ap = p.as_affine().unwrap();
        let (x, y) = ap.coordinates_quad().unwrap();
        let lhs = y.mul(&y);
        let rhs = x.mul(&x).scale(&c.a).add(&QuadExt::from_rational(&c.b, &x.modulus));
        assert_eq!(lhs, rhs);
        // the line evaluates to zero at (x, y)
        let lin = x
            .scale(&Rational::from_int(2))
            .add(&y)
            .add(&QuadExt::from_rational(&Rational::from_int(1), &x.modulus));
        assert!(lin.is_zero());
    }

    #[test]
    fn fiber_over_linear_q() {
        let c = hamilton();
        // q = x - 1: point with x(p) = 1, y² = -2
        let q = Polynomial::from_ints(&[-1, 1]);
        let pts = points_over_irreducible(&c, &q).unwrap();
        assert_eq!(pts.len(), 1);
        let ap = pts[0].as_affine().unwrap();
        let (x, y) = ap.coordinates_quad().unwrap();
        assert_eq!(x.as_rational().unwrap(), Rational::from_int(1));
        assert_eq!(
            y.mul(&y).as_rational().unwrap(),
            Rational::from_int(-2)
        );
    }

    #[test]
    fn fiber_over_ramified_q() {
        let c = hamilton();
        let q = Polynomial::from_ints(&[1, 0, 1]); // x² + 1 = monic(ax²+b)
        let pts = points_over_irreducible(&c, &q).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].as_affine().unwrap().pi, c.y());
    }

    #[test]
    fn fiber_inert_degree_four() {
        let c = hamilton();
        // q = x² - 2: x̄ = √2, w = -x̄² - 1 = -3 not a square in ℚ(√2)
        let q = Polynomial::from_ints(&[-2, 0, 1]);
        let pts = points_over_irreducible(&c, &q).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].degree(), 4);
        match &pts[0].as_affine().unwrap().residue {
            AffineResidue::Higher { min_poly, .. } => {
                assert_eq!(min_poly.degree(), Some(4));
            }
            _ => panic!("expected higher presentation"),
        }
    }

    #[test]
    fn fiber_split_degree_two() {
        // Over (a,b) = (-1,-10): q = x²+2: x̄² = -2, w = -x̄²-10 = -8 = (2x̄)²·...
        // w = -8, x̄ = √-2: (2x̄)² = -8 ✓ split into two degree-2 points.
        let c = make_conic(Rational::from_int(-1), Rational::from_int(-10)).unwrap();
        let q = Polynomial::from_ints(&[2, 0, 1]);
        let pts = points_over_irreducible(&c, &q).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert_eq!(p.degree(), 2);
        }
        assert_ne!(pts[0], pts[1]);
    }
}

#[cfg(test)]
mod higher_degree_tests {
    use super::*;

    #[test]
    fn fiber_over_cubic_is_a_degree_six_point() {
        let c = make_conic(Rational::from_int(-1), Rational::from_int(-1)).unwrap();
        let q = Polynomial::from_ints(&[-2, 0, 0, 1]); // x³ − 2
        let pts = points_over_irreducible(&c, &q).unwrap();
        assert_eq!(pts.len(), 1);
        let p = &pts[0];
        assert_eq!(p.degree(), 6);
        match &p.as_affine().unwrap().residue {
            AffineResidue::Higher { min_poly, .. } => {
                assert_eq!(min_poly.degree(), Some(6));
            }
            _ => panic!("expected a minimal-polynomial presentation"),
        }
        // The divisibility loop works there: v_p(q) = 1 in O_af.
        let qf = FnFieldElem::from_parts(&c, RatFunc::from_poly(q), RatFunc::zero());
        assert_eq!(crate::conic::valuation(&qf, p), 1);
        // Degree sum over the full divisor of q(x): 6·1 + 2·v_∞ = 0.
        assert_eq!(crate::conic::v_infty(&qf), -3);
    }
}
