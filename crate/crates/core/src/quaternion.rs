//! The quaternion algebra (a, b) over any field of the tower: i² = a, j² = b,
//! ji = −ij. Includes the generic ideal element e = b·i + a·x·j + y·ij of the
//! conic function field and its fibers at closed points.

use crate::arith::{QuadExt, Rational};
use crate::conic::{evaluate, ClosedPoint, ConicInstance, FnFieldElem, ResidueValue};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use std::fmt;

/// Element w0 + w1·i + w2·j + w3·ij with coefficients in a tower field S.
/// The algebra constants are carried as promoted scalars.
#[derive(Clone, PartialEq)]
pub struct Quaternion<S: Field> {
    pub coeffs: [S; 4],
    pub a: S,
    pub b: S,
}

impl<S: Field> Quaternion<S> {
    pub fn new(coeffs: [S; 4], a: S, b: S) -> Self {
        Quaternion { coeffs, a, b }
    }

    pub fn zero_like(&self) -> Self {
        let z = self.a.zero();
        Quaternion {
            coeffs: [z.clone(), z.clone(), z.clone(), z],
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    pub fn scalar_like(&self, s: S) -> Self {
        let z = self.a.zero();
        Quaternion {
            coeffs: [s, z.clone(), z.clone(), z],
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    /// True when only the scalar coordinate is nonzero.
    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(Field::is_zero)
    }

    pub fn is_pure(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    fn check(&self, o: &Self) {
        assert!(
            self.a == o.a && self.b == o.b,
            "mixed quaternion algebras"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let c = &self.coeffs;
        let d = &o.coeffs;
        Quaternion {
            coeffs: [
                c[0].add(&d[0]),
                c[1].add(&d[1]),
                c[2].add(&d[2]),
                c[3].add(&d[3]),
            ],
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let c = &self.coeffs;
        Quaternion {
            coeffs: [c[0].neg(), c[1].neg(), c[2].neg(), c[3].neg()],
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        let c = &self.coeffs;
        Quaternion {
            coeffs: [c[0].mul(s), c[1].mul(s), c[2].mul(s), c[3].mul(s)],
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    /// Product per the table i² = a, j² = b, ij = −ji.
    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let [p0, p1, p2, p3] = &self.coeffs;
        let [q0, q1, q2, q3] = &o.coeffs;
        let a = &self.a;
        let b = &self.b;
        let ab = a.mul(b);
        // 1:  p0q0 + a p1q1 + b p2q2 − ab p3q3
        let w0 = p0
            .mul(q0)
            .add(&a.mul(&p1.mul(q1)))
            .add(&b.mul(&p2.mul(q2)))
            .sub(&ab.mul(&p3.mul(q3)));
        // i:  p0q1 + p1q0 − b p2q3 + b p3q2
        let w1 = p0
            .mul(q1)
            .add(&p1.mul(q0))
            .sub(&b.mul(&p2.mul(q3)))
            .add(&b.mul(&p3.mul(q2)));
        // j:  p0q2 + p2q0 + a p1q3 − a p3q1
        let w2 = p0
            .mul(q2)
            .add(&p2.mul(q0))
            .add(&a.mul(&p1.mul(q3)))
            .sub(&a.mul(&p3.mul(q1)));
        // ij: p0q3 + p3q0 + p1q2 − p2q1
        let w3 = p0
            .mul(q3)
            .add(&p3.mul(q0))
            .add(&p1.mul(q2))
            .sub(&p2.mul(q1));
        Quaternion {
            coeffs: [w0, w1, w2, w3],
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    /// Quaternion conjugation.
    pub fn conj(&self) -> Self {
        let c = &self.coeffs;
        Quaternion {
            coeffs: [c[0].clone(), c[1].neg(), c[2].neg(), c[3].neg()],
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    /// Reduced trace 2·w0.
    pub fn trd(&self) -> S {
        self.coeffs[0].double()
    }

    /// Reduced norm w0² − a·w1² − b·w2² + ab·w3².
    pub fn nrd(&self) -> S {
        let [w0, w1, w2, w3] = &self.coeffs;
        let ab = self.a.mul(&self.b);
        w0.mul(w0)
            .sub(&self.a.mul(&w1.mul(w1)))
            .sub(&self.b.mul(&w2.mul(w2)))
            .add(&ab.mul(&w3.mul(w3)))
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.nrd();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.inv()?))
    }
}

impl<S: Field> fmt::Display for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let units = ["", "i", "j", "ij"];
        let mut parts = Vec::new();
        for (c, u) in self.coeffs.iter().zip(units) {
            if c.is_zero() {
                continue;
            }
            if u.is_empty() {
                parts.push(format!("{c}"));
            } else {
                parts.push(format!("({c})*{u}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<S: Field> fmt::Debug for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Constructors for D over a given field context (zero/one of the scalar
/// field plus the promoted constants a, b).
pub struct QuaternionAlgebra<S: Field> {
    pub a: S,
    pub b: S,
}

impl<S: Field> QuaternionAlgebra<S> {
    pub fn new(a: S, b: S) -> Self {
        QuaternionAlgebra { a, b }
    }

    pub fn zero(&self) -> Quaternion<S> {
        let z = self.a.zero();
        Quaternion::new([z.clone(), z.clone(), z.clone(), z], self.a.clone(), self.b.clone())
    }

    pub fn scalar(&self, s: &S) -> Quaternion<S> {
        let mut q = self.zero();
        q.coeffs[0] = s.clone();
        q
    }

    pub fn one(&self) -> Quaternion<S> {
        self.scalar(&self.a.one())
    }

    pub fn i(&self) -> Quaternion<S> {
        let mut q = self.zero();
        q.coeffs[1] = self.a.one();
        q
    }

    pub fn j(&self) -> Quaternion<S> {
        let mut q = self.zero();
        q.coeffs[2] = self.a.one();
        q
    }

    pub fn ij(&self) -> Quaternion<S> {
        let mut q = self.zero();
        q.coeffs[3] = self.a.one();
        q
    }

    pub fn from_coeffs(&self, w: [&S; 4]) -> Quaternion<S> {
        Quaternion::new(
            [w[0].clone(), w[1].clone(), w[2].clone(), w[3].clone()],
            self.a.clone(),
            self.b.clone(),
        )
    }

    pub fn pure(&self, w1: &S, w2: &S, w3: &S) -> Quaternion<S> {
        let z = self.a.zero();
        self.from_coeffs([&z, w1, w2, w3])
    }
}

/// D over ℚ for the conic's constants.
pub fn algebra_q(conic: &ConicInstance) -> QuaternionAlgebra<Rational> {
    QuaternionAlgebra::new(conic.a.clone(), conic.b.clone())
}

/// D over F.
pub fn algebra_f(conic: &ConicInstance) -> QuaternionAlgebra<FnFieldElem> {
    QuaternionAlgebra::new(conic.scalar(&conic.a), conic.scalar(&conic.b))
}

/// D over k(p) for a degree-2 point (or k(∞)).
pub fn algebra_residue(conic: &ConicInstance, modulus: &Rational) -> QuaternionAlgebra<QuadExt> {
    QuaternionAlgebra::new(
        QuadExt::from_rational(&conic.a, modulus),
        QuadExt::from_rational(&conic.b, modulus),
    )
}

/// Promotes a rational quaternion into D ⊗ S.
pub fn promote<S: Field>(q: &Quaternion<Rational>, alg: &QuaternionAlgebra<S>) -> Quaternion<S> {
    let ctx = alg.a.clone();
    let c = |r: &Rational| ctx.embed_rational(r);
    alg.from_coeffs([&c(&q.coeffs[0]), &c(&q.coeffs[1]), &c(&q.coeffs[2]), &c(&q.coeffs[3])])
}

/// The generic ideal element e = b·i + a·x·j + y·ij over F, with the basis
/// (je, ije) of T = D_F·e.
pub struct GenericIdealData {
    pub e: Quaternion<FnFieldElem>,
    pub je: Quaternion<FnFieldElem>,
    pub ije: Quaternion<FnFieldElem>,
}

pub fn generic_ideal(conic: &ConicInstance) -> GenericIdealData {
    let alg = algebra_f(conic);
    let x = conic.x();
    let y = conic.y();
    let a = conic.scalar(&conic.a);
    let b = conic.scalar(&conic.b);
    let e = alg.pure(&b, &a.mul(&x), &y);
    let je = alg.j().mul(&e);
    let ije = alg.ij().mul(&e);
    GenericIdealData { e, je, ije }
}

/// The fiber of the ideal at a closed point: e_p for affine p, and the image
/// of e·x⁻¹ at infinity.
pub struct FiberIdealData {
    pub point: ClosedPoint,
    pub e_p: Quaternion<QuadExt>,
}

pub fn fiber_e(point: &ClosedPoint) -> Result<FiberIdealData> {
    let conic = point.conic();
    match point {
        ClosedPoint::Infinity(_) => {
            let m = conic.infinity_modulus();
            let alg = algebra_residue(&conic, &m);
            let theta = ClosedPoint::theta_infinity(&conic);
            // e_∞ = a·j + (y/x)(∞)·ij
            let a = QuadExt::from_rational(&conic.a, &m);
            let e_p = alg.pure(&QuadExt::zero(&m), &a, &theta);
            Ok(FiberIdealData {
                point: point.clone(),
                e_p,
            })
        }
        ClosedPoint::Affine(p) => {
            let modulus = p.quad_modulus().ok_or_else(|| {
                Error::UnsupportedField("fiber data limited to degree-2 points".into())
            })?;
            let (x, y) = p.coordinates_quad().unwrap();
            let alg = algebra_residue(&conic, &modulus);
            let b = QuadExt::from_rational(&conic.b, &modulus);
            let ax = x.scale(&conic.a);
            let e_p = alg.pure(&b, &ax, &y);
            Ok(FiberIdealData {
                point: point.clone(),
                e_p,
            })
        }
    }
}

impl FiberIdealData {
    pub fn modulus(&self) -> Rational {
        self.e_p.a.modulus.clone()
    }

    /// The unique d ∈ D (rational coefficients) with e_p·c = e_p·d, for
    /// c ∈ k(p). Well defined because right multiplication by D on e_p is
    /// injective.
    pub fn intertwine(&self, c: &QuadExt) -> Quaternion<Rational> {
        let target = self.e_p.scale(c);
        // e_p·(d0 + d1 i + d2 j + d3 ij) is linear in d; solve 8 rational
        // equations (4 coordinates × 2 components) in 4 unknowns.
        let conic = self.point.conic();
        let alg = algebra_residue(&conic, &self.modulus());
        let units = [alg.one(), alg.i(), alg.j(), alg.ij()];
        let mut rows = vec![vec![Rational::zero(); 4]; 8];
        for (col, u) in units.iter().enumerate() {
            let img = self.e_p.mul(u);
            for coord in 0..4 {
                rows[2 * coord][col] = img.coeffs[coord].base.clone();
                rows[2 * coord + 1][col] = img.coeffs[coord].ext.clone();
            }
        }
        let mut rhs = Vec::with_capacity(8);
        for coord in 0..4 {
            rhs.push(target.coeffs[coord].base.clone());
            rhs.push(target.coeffs[coord].ext.clone());
        }
        let d = linalg::solve(&rows, &rhs).expect("intertwiner exists");
        let qalg = algebra_q(&conic);
        qalg.from_coeffs([&d[0], &d[1], &d[2], &d[3]])
    }
}

/// Splits q ∈ D into its components along D = K ⊕ j·K: q = f + j·g with
/// f = w0 + w1·i and g = w2 − w3·i, as elements of K = ℚ(i), i² = a.
pub fn split_components(conic: &ConicInstance, q: &Quaternion<Rational>) -> (QuadExt, QuadExt) {
    let m = conic.a.clone();
    let [w0, w1, w2, w3] = &q.coeffs;
    let f = QuadExt::new(w0.clone(), w1.clone(), m.clone());
    let g = QuadExt::new(w2.clone(), -w3, m);
    (f, g)
}

/// Embeds a K-element α + β·i into D over ℚ.
pub fn k_into_d(conic: &ConicInstance, z: &QuadExt) -> Quaternion<Rational> {
    assert_eq!(z.modulus, conic.a, "K is presented with modulus a");
    let alg = algebra_q(conic);
    let zero = Rational::zero();
    alg.from_coeffs([&z.base, &z.ext, &zero, &zero])
}

/// Report from the fiber identity check at one point.
#[derive(Debug, Clone)]
pub struct FiberIdentityReport {
    pub trials: usize,
    pub failures: Vec<String>,
}

/// Verifies λ² = 0, conj(λ) = −λ, and λμλ = Trd(λμ)·λ for λ ∈ k(p)·e_p and
/// random μ ∈ D(p), exactly.
pub fn check_fiber_identities<R: FnMut() -> QuadExt>(
    fiber: &FiberIdealData,
    trials: usize,
    mut rand_scalar: R,
) -> FiberIdentityReport {
    let mut failures = Vec::new();
    let conic = fiber.point.conic();
    let alg = algebra_residue(&conic, &fiber.modulus());
    for trial in 0..trials {
        let c = rand_scalar();
        let lambda = fiber.e_p.scale(&c);
        let mu = alg.from_coeffs([&rand_scalar(), &rand_scalar(), &rand_scalar(), &rand_scalar()]);
        if !lambda.mul(&lambda).is_zero() {
            failures.push(format!("trial {trial}: lambda^2 != 0"));
        }
        if lambda.conj() != lambda.neg() {
            failures.push(format!("trial {trial}: conj(lambda) != -lambda"));
        }
        let lhs = lambda.mul(&mu).mul(&lambda);
        let rhs = lambda.scale(&lambda.mul(&mu).trd());
        if lhs != rhs {
            failures.push(format!("trial {trial}: lambda*mu*lambda != Trd(lambda*mu)*lambda"));
        }
    }
    FiberIdentityReport { trials, failures }
}

/// Checks the generic relations of e over F; returns the offending identity
/// names (empty when everything holds).
pub fn generic_relations_violations(conic: &ConicInstance) -> Vec<&'static str> {
    let data = generic_ideal(conic);
    let alg = algebra_f(conic);
    let x = conic.x();
    let y = conic.y();
    let a = conic.scalar(&conic.a);
    let b = conic.scalar(&conic.b);
    let mut bad = Vec::new();
    if !data.e.mul(&data.e).is_zero() {
        bad.push("e^2 = 0");
    }
    if data.e.conj() != data.e.neg() {
        bad.push("conj(e) = -e");
    }
    let rel = alg
        .i()
        .scale(&b)
        .mul(&data.e)
        .add(&alg.j().scale(&a.mul(&x)).mul(&data.e))
        .add(&alg.ij().scale(&y).mul(&data.e));
    if !rel.is_zero() {
        bad.push("b·i·e + a·x·j·e + y·ij·e = 0");
    }
    // e·y = e·j − e·i·x in the conjugated module
    let lhs = data.e.scale(&y);
    let rhs = data.e.mul(&alg.j()).sub(&data.e.mul(&alg.i()).scale(&x));
    if lhs != rhs {
        bad.push("e·y = e·j - e·i·x");
    }
    // (je, ije) spans T: e and i·e must be F-combinations of them.
    for target in [&data.e, &alg.i().mul(&data.e)] {
        if solve_in_basis(target, &data.je, &data.ije).is_none() {
            bad.push("(je, ije) is an F-basis of T");
            break;
        }
    }
    bad
}

/// Solves target = je·c1 + ije·c2 over F.
fn solve_in_basis(
    target: &Quaternion<FnFieldElem>,
    je: &Quaternion<FnFieldElem>,
    ije: &Quaternion<FnFieldElem>,
) -> Option<(FnFieldElem, FnFieldElem)> {
    let rows: Vec<Vec<FnFieldElem>> = (0..4)
        .map(|k| vec![je.coeffs[k].clone(), ije.coeffs[k].clone()])
        .collect();
    let rhs: Vec<FnFieldElem> = (0..4).map(|k| target.coeffs[k].clone()).collect();
    let sol = linalg::solve(&rows, &rhs)?;
    Some((sol[0].clone(), sol[1].clone()))
}

/// Extracts the unique c ∈ F with u = e·c, for u in the line L = e·F.
pub fn ideal_line_coefficient(
    conic: &ConicInstance,
    e: &Quaternion<FnFieldElem>,
    u: &Quaternion<FnFieldElem>,
) -> Result<FnFieldElem> {
    if !u.coeffs[0].is_zero() {
        return Err(Error::BadRepresentative(
            "element has nonzero scalar part; not in e·F".into(),
        ));
    }
    let b = conic.scalar(&conic.b);
    // e = (0, b, a·x, y): read c from the i-coordinate and check the rest.
    let c = u.coeffs[1].div(&b)?;
    let recomposed = e.scale(&c);
    if &recomposed != u {
        return Err(Error::BadRepresentative(
            "element is not a multiple of e".into(),
        ));
    }
    Ok(c)
}

/// Evaluates a quaternion over F coordinatewise at a degree-2 point.
pub fn evaluate_quaternion(
    q: &Quaternion<FnFieldElem>,
    point: &ClosedPoint,
) -> Result<Quaternion<QuadExt>> {
    let conic = point.conic();
    let modulus = point
        .residue_modulus()
        .ok_or_else(|| Error::UnsupportedField("degree-2 points only".into()))?;
    let alg = algebra_residue(&conic, &modulus);
    let mut coeffs = Vec::with_capacity(4);
    for c in &q.coeffs {
        if Field::is_zero(c) {
            coeffs.push(QuadExt::zero(&modulus));
            continue;
        }
        match evaluate(c, point)? {
            ResidueValue::Quad(z) => coeffs.push(z),
            ResidueValue::Higher(_) => {
                return Err(Error::UnsupportedField("degree-2 points only".into()))
            }
        }
    }
    Ok(alg.from_coeffs([&coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3]]))
}
