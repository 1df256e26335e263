//! Constructive hyperbolic splitting over the conic function field: from one
//! isotropic vector of a 4-dimensional form, complete to a full Lagrangian
//! using exact square roots in F.

use super::symmetric::SymmetricForm;
use crate::conic::FnFieldElem;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};

/// Completes an isotropic vector of a nondegenerate 4-dimensional form over F
/// to a 2-dimensional totally isotropic subspace (columns of the result).
pub fn lagrangian_from_isotropic(
    form: &SymmetricForm<FnFieldElem>,
    v: &[FnFieldElem],
) -> Result<Matrix<FnFieldElem>> {
    let n = form.dim();
    assert_eq!(n, 4, "four-dimensional splitting");
    assert_eq!(v.len(), n);
    if !form.apply(v).is_zero() {
        return Err(Error::BadRepresentative("vector is not isotropic".into()));
    }
    let ctx = v[0].clone();
    // Hyperbolic partner: u with B(v, u) ≠ 0, then normalize and correct.
    let mut partner = None;
    for idx in 0..n {
        let mut e = vec![ctx.zero(); n];
        e[idx] = ctx.one();
        if !form.pairing(v, &e).is_zero() {
            partner = Some(e);
            break;
        }
    }
    let u = partner.ok_or(Error::DegenerateForm)?;
    let scale = form.pairing(v, &u).inv()?;
    let fprime: Vec<FnFieldElem> = u.iter().map(|c| c.mul(&scale)).collect();
    let half_q = form.apply(&fprime).halve();
    let f: Vec<FnFieldElem> = fprime
        .iter()
        .zip(v)
        .map(|(fc, vc)| fc.sub(&vc.mul(&half_q)))
        .collect();
    debug_assert!(form.apply(&f).is_zero());
    debug_assert!(form.pairing(v, &f) == ctx.one());
    // Orthogonal complement of span(v, f).
    let rows = vec![
        (0..n).map(|idx| pairing_basis(form, v, idx)).collect::<Vec<_>>(),
        (0..n).map(|idx| pairing_basis(form, &f, idx)).collect::<Vec<_>>(),
    ];
    let comp = linalg::kernel(&rows);
    if comp.len() != 2 {
        return Err(Error::DegenerateForm);
    }
    // Restricted 2×2 Gram; its isotropic vector comes from a square root.
    let g11 = form.pairing(&comp[0], &comp[0]);
    let g12 = form.pairing(&comp[0], &comp[1]);
    let g22 = form.pairing(&comp[1], &comp[1]);
    let w = complement_isotropic(&ctx, &g11, &g12, &g22)?;
    let z: Vec<FnFieldElem> = (0..n)
        .map(|idx| comp[0][idx].mul(&w.0).add(&comp[1][idx].mul(&w.1)))
        .collect();
    debug_assert!(form.apply(&z).is_zero());
    let mut basis = vec![vec![ctx.zero(); 2]; n];
    for idx in 0..n {
        basis[idx][0] = v[idx].clone();
        basis[idx][1] = z[idx].clone();
    }
    if !form.verify_lagrangian(&basis) {
        return Err(Error::BadRepresentative(
            "constructed subspace is not a verified Lagrangian".into(),
        ));
    }
    Ok(basis)
}

fn pairing_basis(
    form: &SymmetricForm<FnFieldElem>,
    v: &[FnFieldElem],
    idx: usize,
) -> FnFieldElem {
    let n = form.dim();
    let ctx = v[0].clone();
    let mut e = vec![ctx.zero(); n];
    e[idx] = ctx.one();
    form.pairing(v, &e)
}

/// Isotropic coordinates for the binary form [[g11, g12], [g12, g22]] over F,
/// found through an exact square root of the negated determinant ratio.
fn complement_isotropic(
    ctx: &FnFieldElem,
    g11: &FnFieldElem,
    g12: &FnFieldElem,
    g22: &FnFieldElem,
) -> Result<(FnFieldElem, FnFieldElem)> {
    if g11.is_zero() {
        return Ok((ctx.one(), ctx.zero()));
    }
    if g22.is_zero() {
        return Ok((ctx.zero(), ctx.one()));
    }
    // Diagonalize: d2 = g22 − g12²/g11; entries ⟨g11, d2⟩ in the basis
    // (e1, e2 − e1·g12/g11). Isotropic needs s with s² = −d2/g11.
    let ratio = g12.div(g11)?;
    let d2 = g22.sub(&g12.mul(&ratio));
    if d2.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let target = d2.div(g11)?.neg();
    let s = target.sqrt().ok_or_else(|| {
        Error::BadRepresentative("complement of the split plane is anisotropic".into())
    })?;
    // z = e1·s + (e2 − e1·g12/g11): coordinates (s − g12/g11, 1).
    Ok((s.sub(&ratio), ctx.one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::conic::make_conic;
    use crate::forms::decide::{norm_form_diag, scalar_extension};

    #[test]
    fn norm_form_over_f_splits() {
        let c = make_conic(Rational::from_int(-1), Rational::from_int(-1)).unwrap();
        let diag = norm_form_diag(&c);
        let form_q = SymmetricForm::from_diagonal(&diag);
        let form = scalar_extension(&form_q, &c.one_f());
        let v = vec![c.y(), c.x(), c.one_f(), c.zero_f()];
        let basis = lagrangian_from_isotropic(&form, &v).unwrap();
        assert!(form.verify_lagrangian(&basis));
    }

    #[test]
    fn other_constants_split_too() {
        let c = make_conic(Rational::from_int(-2), Rational::from_int(-5)).unwrap();
        let diag = norm_form_diag(&c);
        let form = scalar_extension(&SymmetricForm::from_diagonal(&diag), &c.one_f());
        let v = vec![c.y(), c.x(), c.one_f(), c.zero_f()];
        let basis = lagrangian_from_isotropic(&form, &v).unwrap();
        assert!(form.verify_lagrangian(&basis));
    }
}
