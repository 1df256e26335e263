//! Maps between the Witt groups attached to D and its maximal subfield K:
//! the octagon maps π₁, π₂, σ₁, σ₂, the scalar extension and trace maps, the
//! identification γ of k(∞) with K, the auxiliary isomorphisms Ψ and Θ, and
//! the rank-2 realization ρ of skew-hermitian classes inside W(F).

use crate::arith::{QuadExt, Rational};
use crate::conic::{ConicInstance, FnFieldElem};
use crate::error::{Error, Result};
use crate::forms::{DMat, HermDForm, HermKForm, KMat, SymmetricForm};
use crate::quaternion::{
    algebra_f, algebra_q, generic_ideal, ideal_line_coefficient, k_into_d, promote,
    split_components, Quaternion,
};

/// The six distinct groups in the octagon, in cycle order starting from
/// hermitian forms over D. The cycle visits W⁺(D) and W⁻(D) twice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OctagonNode {
    WPlusD,
    WMinusK,
    WPlusKBar,
    WMinusD,
    WPlusK,
    WMinusKBar,
}

impl std::fmt::Display for OctagonNode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OctagonNode::WPlusD => "W+(D)",
            OctagonNode::WMinusK => "W-(K)",
            OctagonNode::WPlusKBar => "W+(K,bar)",
            OctagonNode::WMinusD => "W-(D)",
            OctagonNode::WPlusK => "W+(K)",
            OctagonNode::WMinusKBar => "W-(K,bar)",
        };
        write!(f, "{s}")
    }
}

/// The eight-step cycle: (source node, map applied at that node).
pub const OCTAGON_CYCLE: [(OctagonNode, &str); 8] = [
    (OctagonNode::WPlusD, "pi2"),
    (OctagonNode::WMinusK, "sigma2"),
    (OctagonNode::WPlusD, "pi1"),
    (OctagonNode::WPlusKBar, "sigma1"),
    (OctagonNode::WMinusD, "pi2"),
    (OctagonNode::WPlusK, "sigma2"),
    (OctagonNode::WMinusD, "pi1"),
    (OctagonNode::WMinusKBar, "sigma1"),
];

// ---------------------------------------------------------------------------
// π₁ and π₂: restriction along D = K ⊕ jK on the doubled basis (v, v·j).

/// π₁(h): the K-component of h on the K-basis (v₁, v₁j, v₂, v₂j, …);
/// ε is preserved.
pub fn pi1(conic: &ConicInstance, h: &HermDForm) -> HermKForm {
    let gram = doubled_gram(conic, h, true);
    HermKForm::new(h.epsilon, gram)
}

/// The j-component of h on the doubled basis: a (−ε)-symmetric bilinear
/// matrix over K.
pub fn pi2_doubled(conic: &ConicInstance, h: &HermDForm) -> KMat {
    doubled_gram(conic, h, false)
}

/// π₂ on a skew-hermitian form via the closed rank-1 formula
/// ⟨q₁⟩·⟨1, −q²⟩ (empty when q₁ = 0), summed over a diagonalization.
pub fn pi2(conic: &ConicInstance, h: &HermDForm) -> Result<SymmetricForm<QuadExt>> {
    assert_eq!(h.epsilon, -1, "closed formula applies to skew-hermitian h");
    let mut acc = SymmetricForm::new(vec![]);
    if h.is_empty() {
        return Ok(acc);
    }
    let (diag, _) = h.diagonalize()?;
    for q in &diag {
        acc = acc.perp(&pi2_rank_one(conic, q));
    }
    Ok(acc)
}

/// ⟨q⟩ ↦ ⟨q₁⟩⟨1, −q²⟩ for pure q = i·q₀ + j·q₁.
pub fn pi2_rank_one(conic: &ConicInstance, q: &Quaternion<Rational>) -> SymmetricForm<QuadExt> {
    assert!(q.is_pure(), "pure quaternion expected");
    let (f, g) = split_components(conic, q);
    debug_assert!(f.ext == f.ext); // f = i·q0 has zero base part
    let q1 = g;
    if q1.is_zero() {
        return SymmetricForm::new(vec![]);
    }
    let q_squared = q.mul(q);
    debug_assert!(q_squared.is_scalar());
    let c = q_squared.coeffs[0].clone();
    let m = conic.a.clone();
    let _one = QuadExt::one(&m);
    let minus_q2 = QuadExt::from_rational(&-&c, &m);
    SymmetricForm::from_diagonal(&[q1.clone(), q1.mul(&minus_q2)])
}

fn doubled_gram(conic: &ConicInstance, h: &HermDForm, take_f: bool) -> KMat {
    let n = h.dim();
    let alg = algebra_q(conic);
    let units = [alg.one(), alg.j()];
    let m = 2 * n;
    let zero = QuadExt::zero(&conic.a);
    let mut out = vec![vec![zero; m]; m];
    for s in 0..n {
        for (ls, lam) in units.iter().enumerate() {
            for t in 0..n {
                for (mt, mu) in units.iter().enumerate() {
                    let val = lam.conj().mul(&h.gram[s][t]).mul(mu);
                    let (f, g) = split_components(conic, &val);
                    out[2 * s + ls][2 * t + mt] = if take_f { f } else { g };
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// σ₁ and σ₂: scaled base change from K to D; ε flips.

/// σ₁(f): h(u, u′) = f(u, u′)·i on U ⊗_K D.
pub fn sigma1(conic: &ConicInstance, f: &HermKForm) -> HermDForm {
    let alg = algebra_q(conic);
    let gram: DMat = f
        .gram
        .iter()
        .map(|row| {
            row.iter()
                .map(|z| k_into_d(conic, z).mul(&alg.i()))
                .collect()
        })
        .collect();
    HermDForm::new(-f.epsilon, gram)
}

/// σ₂(g): h′(u, u′) = ij·g(u, u′) on U ⊗_K D, for a symmetric g over K.
pub fn sigma2(conic: &ConicInstance, g: &SymmetricForm<QuadExt>) -> HermDForm {
    sigma2_kmat(conic, &g.gram, 1)
}

/// σ₂ on a (±1)-symmetric K-valued Gram matrix.
pub fn sigma2_kmat(conic: &ConicInstance, g: &KMat, symmetry: i32) -> HermDForm {
    let alg = algebra_q(conic);
    let gram: DMat = g
        .iter()
        .map(|row| {
            row.iter()
                .map(|z| alg.ij().mul(&k_into_d(conic, z)))
                .collect()
        })
        .collect();
    HermDForm::new(-symmetry, gram)
}

// ---------------------------------------------------------------------------
// Scalar extension to D and the auxiliary identifications.

/// ext_D: a symmetric form over k read as a hermitian form over (D, bar).
pub fn ext_d(conic: &ConicInstance, phi: &SymmetricForm<Rational>) -> HermDForm {
    let alg = algebra_q(conic);
    let gram: DMat = phi
        .gram
        .iter()
        .map(|row| row.iter().map(|c| alg.scalar(c)).collect())
        .collect();
    HermDForm::new(1, gram)
}

/// γ: k(∞) → K, (y/x)(∞) ↦ i. Both sides are presented with modulus a,
/// so the map is the identity on coordinates.
pub fn gamma_apply(conic: &ConicInstance, c: &QuadExt) -> QuadExt {
    assert_eq!(c.modulus, conic.a, "argument must lie in k(infinity)");
    c.clone()
}

/// Ψ: W(k(∞)) → W(K), ⟨g⟩ ↦ ⟨−conj(γ(g))⟩ on diagonal entries.
pub fn psi(conic: &ConicInstance, form: &SymmetricForm<QuadExt>) -> Result<SymmetricForm<QuadExt>> {
    if form.is_empty() {
        return Ok(form.clone());
    }
    let (diag, _) = form.diagonalize()?;
    let mapped: Vec<QuadExt> = diag
        .iter()
        .map(|g| gamma_apply(conic, g).conj().neg())
        .collect();
    Ok(SymmetricForm::from_diagonal(&mapped))
}

/// Θ: W(k)/J → W⁻(K, bar), φ ↦ ⟨b·i⟩·φ over K.
pub fn theta(conic: &ConicInstance, phi: &SymmetricForm<Rational>) -> HermKForm {
    let m = conic.a.clone();
    let gram: KMat = phi
        .gram
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| QuadExt::new(Rational::zero(), &conic.b * c, m.clone()))
                .collect()
        })
        .collect();
    HermKForm::new(-1, gram)
}

// ---------------------------------------------------------------------------
// ρ: skew-hermitian forms over D realized as rank-2 symmetric forms over F.

/// ρ(⟨q₁, …, q_r⟩): for each pure q the symmetric rank-2 form over F on the
/// basis (je, ije) of T = D_F·e, with entries the e-coordinates of
/// conj(d·t)·t′ where d = −q; orthogonal sum over the diagonal.
pub fn rho(conic: &ConicInstance, h: &HermDForm) -> Result<SymmetricForm<FnFieldElem>> {
    assert_eq!(h.epsilon, -1, "rho is defined on skew-hermitian forms");
    let mut acc = SymmetricForm::new(vec![]);
    if h.is_empty() {
        return Ok(acc);
    }
    let (diag, _) = h.diagonalize()?;
    for q in &diag {
        acc = acc.perp(&rho_rank_one(conic, q)?);
    }
    Ok(acc)
}

fn rho_rank_one(
    conic: &ConicInstance,
    q: &Quaternion<Rational>,
) -> Result<SymmetricForm<FnFieldElem>> {
    assert!(q.is_pure());
    let data = generic_ideal(conic);
    let alg = algebra_f(conic);
    let d = promote(&q.neg(), &alg);
    let basis = [&data.je, &data.ije];
    let mut gram = vec![vec![conic.zero_f(); 2]; 2];
    for (s, ts) in basis.iter().enumerate() {
        for (t, tt) in basis.iter().enumerate() {
            let u = d.mul(ts).conj().mul(tt);
            gram[s][t] = ideal_line_coefficient(conic, &data.e, &u)?;
        }
    }
    if gram[0][1] != gram[1][0] {
        return Err(Error::BadRepresentative(
            "rho produced a non-symmetric Gram matrix".into(),
        ));
    }
    Ok(SymmetricForm::new(gram))
}

// ---------------------------------------------------------------------------
// Canonical Lagrangians for the vanishing octagon composites into W±(D).

/// The kernel of the multiplication map U ⊗_K D → V on the doubled basis:
/// per source basis vector, the column (−j, 1) in its 2×1 block. This is the
/// canonical totally isotropic half of σ₁∘π₁ and σ₂∘π₂ images; callers must
/// still verify isotropy against the composite Gram.
pub fn doubling_mult_kernel(conic: &ConicInstance, r: usize) -> DMat {
    let alg = algebra_q(conic);
    let mut basis = vec![vec![alg.zero(); r]; 2 * r];
    for t in 0..r {
        basis[2 * t][t] = alg.j().neg();
        basis[2 * t + 1][t] = alg.one();
    }
    basis
}

#[cfg(test)]
mod tests {
    use crate::field::Field;
    use super::*;
    use crate::conic::make_conic;
    use crate::forms::{witt_zero_quadfield, witt_zero_skewhermitian_d};

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn hamilton() -> ConicInstance {
        make_conic(r(-1), r(-1)).unwrap()
    }

    #[test]
    fn pi1_of_scalar_hermitian() {
        let c = hamilton();
        let h = HermDForm::rank_one_scalar(&c, &r(5));
        let f = pi1(&c, &h);
        assert_eq!(f.epsilon, 1);
        assert_eq!(f.dim(), 2);
        // Oracle: split of h(u, u') over the basis (1, j) computed directly.
        let alg = algebra_q(&c);
        let five = alg.scalar(&r(5));
        let units = [alg.one(), alg.j()];
        for (s, lam) in units.iter().enumerate() {
            for (t, mu) in units.iter().enumerate() {
                let (expected, _) = split_components(&c, &lam.conj().mul(&five).mul(mu));
                assert_eq!(f.gram[s][t], expected);
            }
        }
        // Entries: diag(5, −b·5) = diag(5, 5) for b = −1
        assert_eq!(f.gram[0][0].as_rational().unwrap(), r(5));
        assert_eq!(f.gram[1][1].as_rational().unwrap(), r(5));
        assert!(f.gram[0][1].is_zero());
    }

    #[test]
    fn pi2_closed_formula_examples() {
        let c = hamilton();
        let alg = algebra_q(&c);
        // ⟨i⟩ → 0
        assert!(pi2_rank_one(&c, &alg.i()).is_empty());
        // ⟨j⟩ → ⟨1⟩⟨1, −b⟩ = ⟨1, 1⟩ over ℚ(i): Witt-zero there
        let f = pi2_rank_one(&c, &alg.j());
        assert_eq!(f.dim(), 2);
        assert!(witt_zero_quadfield(&f).unwrap().is_zero());
        // ⟨i+j⟩ → ⟨1, 2⟩
        let f = pi2_rank_one(&c, &alg.i().add(&alg.j()));
        let (diag, _) = f.diagonalize().unwrap();
        assert_eq!(diag[0].as_rational().unwrap(), r(1));
        assert_eq!(diag[1].as_rational().unwrap(), r(2));
    }

    #[test]
    fn pi2_closed_formula_matches_doubling() {
        let c = hamilton();
        let alg = algebra_q(&c);
        for q in [
            alg.j(),
            alg.i().add(&alg.j()),
            alg.pure(&r(2), &r(-3), &r(1)),
        ] {
            let h = HermDForm::from_diagonal(-1, &[q.clone()]);
            let closed = pi2(&c, &h).unwrap();
            let doubled = SymmetricForm::new(pi2_doubled(&c, &h));
            assert!(
                crate::forms::witt_equal_quadfield(&closed, &doubled).unwrap(),
                "closed formula disagrees with the splitting for {q}"
            );
        }
    }

    #[test]
    fn sigma_maps() {
        let c = hamilton();
        let m = c.a.clone();
        // σ₁⟨1⟩ = ⟨i⟩ skew
        let f = HermKForm::from_diagonal(1, &[QuadExt::one(&m)]);
        let h = sigma1(&c, &f);
        assert_eq!(h.epsilon, -1);
        assert_eq!(h.gram[0][0], algebra_q(&c).i());
        // σ₂⟨1⟩ = ⟨ij⟩
        let g = SymmetricForm::from_diagonal(&[QuadExt::one(&m)]);
        let h = sigma2(&c, &g);
        assert_eq!(h.epsilon, -1);
        assert_eq!(h.gram[0][0], algebra_q(&c).ij());
        // σ₂⟨1, −1⟩ is Witt-zero with certificate
        let g2 = SymmetricForm::from_diagonal(&[
            QuadExt::one(&m),
            QuadExt::from_rational(&r(-1), &m),
        ]);
        let h2 = sigma2(&c, &g2);
        let v = witt_zero_skewhermitian_d(&c, &h2, 3).unwrap();
        assert!(v.is_zero(), "{}", v.summary());
    }

    #[test]
    fn theta_and_psi() {
        let c = hamilton();
        let phi = SymmetricForm::from_diagonal(&[r(1)]);
        let th = theta(&c, &phi);
        // ⟨b·i⟩ = ⟨−i⟩
        assert_eq!(th.gram[0][0], QuadExt::new(r(0), r(-1), c.a.clone()));
        assert_eq!(th.epsilon, -1);
        // Ψ⟨1⟩ = ⟨−1⟩; Ψ⟨θ⟩ = ⟨−conj(i)⟩ = ⟨i⟩
        let m = c.infinity_modulus();
        let g = SymmetricForm::from_diagonal(&[QuadExt::one(&m)]);
        let p = psi(&c, &g).unwrap();
        assert_eq!(p.gram[0][0].as_rational().unwrap(), r(-1));
        let g = SymmetricForm::from_diagonal(&[QuadExt::generator(&m)]);
        let p = psi(&c, &g).unwrap();
        assert_eq!(p.gram[0][0], QuadExt::generator(&m));
    }

    #[test]
    fn ext_d_composed_with_trace() {
        let c = hamilton();
        let phi = SymmetricForm::from_diagonal(&[r(2), r(3)]);
        let h = ext_d(&c, &phi);
        let t = crate::forms::s_d_trace_form(&c, &h).unwrap();
        // ⟨2,3⟩⊗⟨1,−a,−b,ab⟩ = ⟨2,3⟩⊗⟨1,1,1,1⟩: eight positive entries
        let (diag, _) = t.diagonalize().unwrap();
        let mut sorted: Vec<Rational> = diag;
        sorted.sort();
        assert_eq!(
            sorted,
            vec![r(2), r(2), r(2), r(2), r(3), r(3), r(3), r(3)]
        );
    }

    #[test]
    fn rho_rank_one_gram() {
        let c = hamilton();
        let alg = algebra_q(&c);
        let f = rho(&c, &HermDForm::from_diagonal(-1, &[alg.i()])).unwrap();
        assert_eq!(f.dim(), 2);
        // B(je, je) = 2 for q = i over (−1, −1); frozen from the expansion
        // of conj(−i·je)·je in the e-line.
        assert_eq!(f.gram[0][0], c.scalar(&r(2)));
        // symmetric and nondegenerate
        assert_eq!(f.gram[0][1], f.gram[1][0]);
        assert!(!f.determinant().is_zero());
        // Discriminant: det(ρ⟨q⟩) = 4·Nrd(q) exactly on rank-1 generators.
        for q in [alg.i(), alg.j(), alg.ij(), alg.i().add(&alg.j()), alg.pure(&r(2), &r(-1), &r(3))] {
            let form = rho(&c, &HermDForm::from_diagonal(-1, &[q.clone()])).unwrap();
            let expected = c.scalar(&(&r(4) * &q.nrd()));
            assert_eq!(form.determinant(), expected, "det(rho<{q}>)");
        }
    }

    #[test]
    fn rho_of_hyperbolic_is_hyperbolic() {
        let c = hamilton();
        let alg = algebra_q(&c);
        let q = alg.ij();
        let h = HermDForm::from_diagonal(-1, &[q.clone(), q.neg()]);
        let f = rho(&c, &h).unwrap();
        assert_eq!(f.dim(), 4);
        // Witt-zero over F: diagonalize and pair up square classes.
        let (diag, _) = f.diagonalize().unwrap();
        // ⟨d1,d2,d3,d4⟩ hyperbolic iff ⟨d1,d2⟩ and ⟨d3,d4⟩ are (after
        // reordering); verify via sqrt of −d_s·d_t products.
        let neg_prod01 = diag[0].mul(&diag[1]).neg();
        let neg_prod23 = diag[2].mul(&diag[3]).neg();
        let direct = neg_prod01.sqrt().is_some() && neg_prod23.sqrt().is_some();
        let cross = diag[0].mul(&diag[2]).neg().sqrt().is_some()
            && diag[1].mul(&diag[3]).neg().sqrt().is_some();
        let cross2 = diag[0].mul(&diag[3]).neg().sqrt().is_some()
            && diag[1].mul(&diag[2]).neg().sqrt().is_some();
        assert!(direct || cross || cross2, "rho of hyperbolic not split");
    }

    #[test]
    fn octagon_kernel_is_isotropic_for_composites() {
        let c = hamilton();
        let alg = algebra_q(&c);
        // σ₁∘π₁ from W⁺(D), rank 2
        let h = HermDForm::from_diagonal(1, &[alg.scalar(&r(1)), alg.scalar(&r(-3))]);
        let comp = sigma1(&c, &pi1(&c, &h));
        let kernel = doubling_mult_kernel(&c, 2);
        assert!(comp.verify_lagrangian(&kernel));
        // σ₂∘π₂ from W⁻(D), rank 2
        let hskew = HermDForm::from_diagonal(-1, &[alg.i(), alg.pure(&r(1), &r(2), &r(0))]);
        let g = pi2_doubled(&c, &hskew);
        let comp = sigma2_kmat(&c, &g, 1);
        assert!(comp.verify_lagrangian(&kernel));
    }
}
