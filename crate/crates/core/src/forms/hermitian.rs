//! ε-hermitian forms over (K, bar) and over the quaternion algebra (D, bar),
//! with conjugate-congruence diagonalization and exact witnesses.

use crate::arith::{QuadExt, Rational};
use crate::conic::ConicInstance;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::quaternion::{algebra_q, Quaternion, QuaternionAlgebra};
use std::fmt;

pub type DMat = Vec<Vec<Quaternion<Rational>>>;
pub type KMat = Vec<Vec<QuadExt>>;

/// ε-hermitian form over (K, bar), K = k(i) with the conjugation involution.
#[derive(Clone, PartialEq)]
pub struct HermKForm {
    pub epsilon: i32,
    pub gram: KMat,
}

/// ε-hermitian form over (D, bar).
#[derive(Clone, PartialEq)]
pub struct HermDForm {
    pub epsilon: i32,
    pub gram: DMat,
}

impl HermKForm {
    pub fn new(epsilon: i32, gram: KMat) -> Self {
        Self::try_new(epsilon, gram).expect("epsilon-hermitian Gram matrix required")
    }

    /// Fallible constructor for externally supplied matrices.
    pub fn try_new(epsilon: i32, gram: KMat) -> Result<Self> {
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::Parse("epsilon must be 1 or -1".into()));
        }
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(Error::Parse("Gram matrix must be square".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut rhs = gram[j][i].conj();
                if epsilon == -1 {
                    rhs = rhs.neg();
                }
                if gram[i][j] != rhs {
                    return Err(Error::Parse(format!(
                        "Gram matrix is not {epsilon}-hermitian"
                    )));
                }
            }
        }
        Ok(HermKForm { epsilon, gram })
    }

    pub fn from_diagonal(epsilon: i32, diag: &[QuadExt]) -> Self {
        let n = diag.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            diag[i].clone()
                        } else {
                            QuadExt::zero(&diag[0].modulus)
                        }
                    })
                    .collect()
            })
            .collect();
        HermKForm::new(epsilon, gram)
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gram.is_empty()
    }

    pub fn perp(&self, other: &HermKForm) -> HermKForm {
        assert_eq!(self.epsilon, other.epsilon);
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let z = self.gram[0][0].zero();
        let n = self.dim();
        let m = other.dim();
        let mut gram = vec![vec![z; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                gram[n + i][n + j] = other.gram[i][j].clone();
            }
        }
        HermKForm {
            epsilon: self.epsilon,
            gram,
        }
    }

    pub fn neg(&self) -> HermKForm {
        HermKForm {
            epsilon: self.epsilon,
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(QuadExt::neg).collect())
                .collect(),
        }
    }

    /// Conjugate-congruence diagonalization: (diag, P) with P̄ᵀ·G·P diagonal.
    pub fn diagonalize(&self) -> Result<(Vec<QuadExt>, KMat)> {
        let n = self.dim();
        if n == 0 {
            return Ok((vec![], vec![]));
        }
        let ctx = self.gram[0][0].clone();
        let mut g = self.gram.clone();
        let mut p: KMat = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { ctx.one() } else { ctx.zero() })
                    .collect()
            })
            .collect();
        for step in 0..n {
            if g[step][step].is_zero() {
                if let Some(t) = (step + 1..n).find(|&t| !g[t][t].is_zero()) {
                    swap_herm_k(&mut g, &mut p, step, t);
                } else {
                    let mut found = None;
                    'outer: for s in step..n {
                        for t in s + 1..n {
                            if !g[s][t].is_zero() {
                                found = Some((s, t));
                                break 'outer;
                            }
                        }
                    }
                    let Some((s, t)) = found else {
                        return Err(Error::DegenerateForm);
                    };
                    // λ with c·λ + ε·conj(c·λ) ≠ 0.
                    let c = g[s][t].clone();
                    let lambda = if self.epsilon == 1 {
                        c.conj()
                    } else {
                        c.conj().mul(&QuadExt::generator(&c.modulus))
                    };
                    add_col_row_herm_k(&mut g, &mut p, s, t, &lambda);
                    if s != step {
                        swap_herm_k(&mut g, &mut p, step, s);
                    }
                }
            }
            let pivot_inv = g[step][step].inv().expect("nonzero pivot");
            for t in step + 1..n {
                if g[step][t].is_zero() {
                    continue;
                }
                let lambda = pivot_inv.mul(&g[step][t]).neg();
                add_col_row_herm_k(&mut g, &mut p, t, step, &lambda);
            }
        }
        let diag: Vec<QuadExt> = (0..n).map(|i| g[i][i].clone()).collect();
        if diag.iter().any(QuadExt::is_zero) {
            return Err(Error::DegenerateForm);
        }
        debug_assert!(self.verify_congruence(&diag, &p));
        Ok((diag, p))
    }

    pub fn verify_congruence(&self, diag: &[QuadExt], p: &KMat) -> bool {
        let n = self.dim();
        for u in 0..n {
            for v in 0..n {
                let mut acc = self.gram[0][0].zero();
                for s in 0..n {
                    for t in 0..n {
                        acc = acc.add(&p[s][u].conj().mul(&self.gram[s][t]).mul(&p[t][v]));
                    }
                }
                let expect = if u == v {
                    diag[u].clone()
                } else {
                    self.gram[0][0].zero()
                };
                if acc != expect {
                    return false;
                }
            }
        }
        true
    }

    /// h(v, w) = Σ conj(v_s)·G[s][t]·w_t.
    pub fn pairing(&self, v: &[QuadExt], w: &[QuadExt]) -> QuadExt {
        let n = self.dim();
        let mut acc = self.gram[0][0].zero();
        for s in 0..n {
            for t in 0..n {
                acc = acc.add(&v[s].conj().mul(&self.gram[s][t]).mul(&w[t]));
            }
        }
        acc
    }
}

fn swap_herm_k(g: &mut KMat, p: &mut KMat, s: usize, t: usize) {
    let n = g.len();
    for row in g.iter_mut() {
        row.swap(s, t);
    }
    g.swap(s, t);
    for i in 0..n {
        p[i].swap(s, t);
    }
}

/// col_t += col_s·λ; row_t += conj(λ)·row_s.
fn add_col_row_herm_k(g: &mut KMat, p: &mut KMat, t: usize, s: usize, lambda: &QuadExt) {
    let n = g.len();
    for i in 0..n {
        let add = g[i][s].mul(lambda);
        g[i][t] = g[i][t].add(&add);
    }
    let lc = lambda.conj();
    for j in 0..n {
        let add = lc.mul(&g[s][j]);
        g[t][j] = g[t][j].add(&add);
    }
    for i in 0..n {
        let add = p[i][s].mul(lambda);
        p[i][t] = p[i][t].add(&add);
    }
}

impl HermDForm {
    pub fn new(epsilon: i32, gram: DMat) -> Self {
        Self::try_new(epsilon, gram).expect("epsilon-hermitian Gram matrix required")
    }

    /// Fallible constructor for externally supplied matrices.
    pub fn try_new(epsilon: i32, gram: DMat) -> Result<Self> {
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::Parse("epsilon must be 1 or -1".into()));
        }
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(Error::Parse("Gram matrix must be square".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut rhs = gram[j][i].conj();
                if epsilon == -1 {
                    rhs = rhs.neg();
                }
                if gram[i][j] != rhs {
                    return Err(Error::Parse(format!(
                        "Gram matrix is not {epsilon}-hermitian"
                    )));
                }
            }
        }
        Ok(HermDForm { epsilon, gram })
    }

    pub fn from_diagonal(epsilon: i32, diag: &[Quaternion<Rational>]) -> Self {
        let n = diag.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            diag[i].clone()
                        } else {
                            diag[0].zero_like()
                        }
                    })
                    .collect()
            })
            .collect();
        HermDForm::new(epsilon, gram)
    }

    /// Rank-1 hermitian ⟨c⟩ with c rational.
    pub fn rank_one_scalar(conic: &ConicInstance, c: &Rational) -> Self {
        let alg = algebra_q(conic);
        HermDForm::new(1, vec![vec![alg.scalar(c)]])
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gram.is_empty()
    }

    pub fn perp(&self, other: &HermDForm) -> HermDForm {
        assert_eq!(self.epsilon, other.epsilon);
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let z = self.gram[0][0].zero_like();
        let n = self.dim();
        let m = other.dim();
        let mut gram = vec![vec![z; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                gram[n + i][n + j] = other.gram[i][j].clone();
            }
        }
        HermDForm {
            epsilon: self.epsilon,
            gram,
        }
    }

    pub fn neg(&self) -> HermDForm {
        HermDForm {
            epsilon: self.epsilon,
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(Quaternion::neg).collect())
                .collect(),
        }
    }

    /// h(v, w) = Σ conj(v_s)·G[s][t]·w_t.
    pub fn pairing(
        &self,
        v: &[Quaternion<Rational>],
        w: &[Quaternion<Rational>],
    ) -> Quaternion<Rational> {
        let n = self.dim();
        let mut acc = self.gram[0][0].zero_like();
        for s in 0..n {
            for t in 0..n {
                acc = acc.add(&v[s].conj().mul(&self.gram[s][t]).mul(&w[t]));
            }
        }
        acc
    }

    /// Conjugate-congruence diagonalization over D (noncommutative):
    /// returns (diag, P) with P̄ᵀ·G·P diagonal.
    pub fn diagonalize(&self) -> Result<(Vec<Quaternion<Rational>>, DMat)> {
        let n = self.dim();
        if n == 0 {
            return Ok((vec![], vec![]));
        }
        let alg = QuaternionAlgebra::new(
            self.gram[0][0].a.clone(),
            self.gram[0][0].b.clone(),
        );
        let mut g = self.gram.clone();
        let mut p: DMat = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { alg.one() } else { alg.zero() })
                    .collect()
            })
            .collect();
        for step in 0..n {
            if g[step][step].is_zero() {
                if let Some(t) = (step + 1..n).find(|&t| !g[t][t].is_zero()) {
                    swap_herm_d(&mut g, &mut p, step, t);
                } else {
                    let mut found = None;
                    'outer: for s in step..n {
                        for t in s + 1..n {
                            if !g[s][t].is_zero() {
                                found = Some((s, t));
                                break 'outer;
                            }
                        }
                    }
                    let Some((s, t)) = found else {
                        return Err(Error::DegenerateForm);
                    };
                    let c = g[s][t].clone();
                    // λ with c·λ + ε·conj(c·λ) ≠ 0: conj(c) for ε = +1,
                    // conj(c)·i for ε = −1 (value 2·Nrd(c)·i).
                    let lambda = if self.epsilon == 1 {
                        c.conj()
                    } else {
                        c.conj().mul(&alg.i())
                    };
                    add_col_row_herm_d(&mut g, &mut p, s, t, &lambda);
                    if s != step {
                        swap_herm_d(&mut g, &mut p, step, s);
                    }
                }
            }
            let pivot_inv = g[step][step].inv().expect("nonzero pivot");
            for t in step + 1..n {
                if g[step][t].is_zero() {
                    continue;
                }
                let lambda = pivot_inv.mul(&g[step][t]).neg();
                add_col_row_herm_d(&mut g, &mut p, t, step, &lambda);
            }
        }
        let diag: Vec<Quaternion<Rational>> = (0..n).map(|i| g[i][i].clone()).collect();
        if diag.iter().any(|d| d.is_zero()) {
            return Err(Error::DegenerateForm);
        }
        debug_assert!(self.verify_congruence(&diag, &p));
        Ok((diag, p))
    }

    pub fn verify_congruence(&self, diag: &[Quaternion<Rational>], p: &DMat) -> bool {
        let n = self.dim();
        for u in 0..n {
            for v in 0..n {
                let mut acc = self.gram[0][0].zero_like();
                for s in 0..n {
                    for t in 0..n {
                        acc = acc.add(&p[s][u].conj().mul(&self.gram[s][t]).mul(&p[t][v]));
                    }
                }
                let expect = if u == v {
                    diag[u].clone()
                } else {
                    self.gram[0][0].zero_like()
                };
                if acc != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Checks that the columns of `basis` (n × k, k = n/2) span a totally
    /// isotropic right-D-subspace of rank k.
    pub fn verify_lagrangian(&self, basis: &DMat) -> bool {
        let n = self.dim();
        if n % 2 != 0 {
            return false;
        }
        let k = n / 2;
        if basis.len() != n || basis.iter().any(|r| r.len() != k) {
            return false;
        }
        if d_column_rank(basis) != k {
            return false;
        }
        let cols: Vec<Vec<Quaternion<Rational>>> = (0..k)
            .map(|j| (0..n).map(|i| basis[i][j].clone()).collect())
            .collect();
        for v in &cols {
            for w in &cols {
                if !self.pairing(v, w).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn swap_herm_d(g: &mut DMat, p: &mut DMat, s: usize, t: usize) {
    let n = g.len();
    for row in g.iter_mut() {
        row.swap(s, t);
    }
    g.swap(s, t);
    for i in 0..n {
        p[i].swap(s, t);
    }
}

/// col_t += col_s·λ (right multiplication); row_t += conj(λ)·row_s (left).
fn add_col_row_herm_d(g: &mut DMat, p: &mut DMat, t: usize, s: usize, lambda: &Quaternion<Rational>) {
    let n = g.len();
    for i in 0..n {
        let add = g[i][s].mul(lambda);
        g[i][t] = g[i][t].add(&add);
    }
    let lc = lambda.conj();
    for j in 0..n {
        let add = lc.mul(&g[s][j]);
        g[t][j] = g[t][j].add(&add);
    }
    for i in 0..n {
        let add = p[i][s].mul(lambda);
        p[i][t] = p[i][t].add(&add);
    }
}

/// Rank of the column span of a matrix over D as a right D-module
/// (noncommutative Gaussian elimination; row operations are left
/// multiplications, which preserve right-linear column relations).
pub fn d_column_rank(m: &DMat) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut a = m.clone();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = a[row][col].inv().expect("nonzero entry in division ring");
        for j in 0..cols {
            a[row][j] = inv.mul(&a[row][j]);
        }
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..cols {
                    let t = a[i][j].sub(&f.mul(&a[row][j]));
                    a[i][j] = t;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Right kernel of a matrix over D: basis of {w : M·w = 0}.
pub fn d_right_kernel(m: &DMat) -> Vec<Vec<Quaternion<Rational>>> {
    if m.is_empty() {
        return vec![];
    }
    let rows = m.len();
    let cols = m[0].len();
    let one = {
        let q = &m[0][0];
        QuaternionAlgebra::new(q.a.clone(), q.b.clone()).one()
    };
    let zero = one.zero_like();
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = a[row][col].inv().expect("division ring");
        for j in 0..cols {
            a[row][j] = inv.mul(&a[row][j]);
        }
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..cols {
                    let t = a[i][j].sub(&f.mul(&a[row][j]));
                    a[i][j] = t;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![zero.clone(); cols];
        v[free] = one.clone();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = a[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

impl fmt::Debug for HermDForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HermDForm(eps={})[", self.epsilon)?;
        for (i, row) in self.gram.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|c| format!("{c}")).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for HermKForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HermKForm(eps={})[", self.epsilon)?;
        for (i, row) in self.gram.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|c| format!("{c}")).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::make_conic;

    fn hamilton() -> ConicInstance {
        make_conic(Rational::from_int(-1), Rational::from_int(-1)).unwrap()
    }

    #[test]
    fn herm_d_diagonalize_skew() {
        let c = hamilton();
        let alg = algebra_q(&c);
        // Gram [[ij, 1+...], ...]: build a skew-hermitian 2×2 with off-diagonal
        let q = alg.ij();
        let off = alg.one().add(&alg.i());
        let gram = vec![
            vec![q.clone(), off.clone()],
            vec![off.conj().neg(), q.neg()],
        ];
        let h = HermDForm::new(-1, gram);
        let (diag, p) = h.diagonalize().unwrap();
        assert!(h.verify_congruence(&diag, &p));
        for d in &diag {
            assert!(d.is_pure());
        }
    }

    #[test]
    fn herm_d_hyperbolic_lagrangian() {
        let c = hamilton();
        let alg = algebra_q(&c);
        // ⟨q, −q⟩ has the Lagrangian (1, 1).
        let q = alg.ij();
        let h = HermDForm::from_diagonal(-1, &[q.clone(), q.neg()]);
        let basis = vec![vec![alg.one()], vec![alg.one()]];
        assert!(h.verify_lagrangian(&basis));
        let bad = vec![vec![alg.one()], vec![alg.i()]];
        assert!(!h.verify_lagrangian(&bad));
    }

    #[test]
    fn herm_k_diagonalize() {
        let c = hamilton();
        let m = c.infinity_modulus();
        let i = QuadExt::generator(&m);
        // skew-hermitian over (K, bar): diagonal entries in i·k
        let gram = vec![
            vec![i.clone(), QuadExt::one(&m)],
            vec![QuadExt::one(&m).neg(), i.scale(&Rational::from_int(-2))],
        ];
        let h = HermKForm::new(-1, gram);
        let (diag, p) = h.diagonalize().unwrap();
        assert!(h.verify_congruence(&diag, &p));
        for d in &diag {
            assert!(d.base.is_zero(), "skew diagonal lies in i·k: {d}");
        }
    }

    #[test]
    fn d_rank_and_kernel() {
        let c = hamilton();
        let alg = algebra_q(&c);
        // M = [1, j] has right kernel spanned by (−j·?, 1): 1·w1 + j·w2 = 0.
        let m = vec![vec![alg.one(), alg.j()]];
        let k = d_right_kernel(&m);
        assert_eq!(k.len(), 1);
        let w = &k[0];
        let img = alg.one().mul(&w[0]).add(&alg.j().mul(&w[1]));
        assert!(img.is_zero());
        assert_eq!(d_column_rank(&m), 1);
    }
}
