//! Symmetric bilinear forms over a tower field, with congruence
//! diagonalization and exact isometry witnesses.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct SymmetricForm<S: Field> {
    pub gram: Matrix<S>,
}

impl<S: Field> SymmetricForm<S> {
    pub fn new(gram: Matrix<S>) -> Self {
        Self::try_new(gram).expect("symmetric square Gram matrix required")
    }

    /// Fallible constructor for externally supplied matrices.
    pub fn try_new(gram: Matrix<S>) -> Result<Self> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(Error::Parse("Gram matrix must be square".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Parse("Gram matrix must be symmetric".into()));
                }
            }
        }
        Ok(SymmetricForm { gram })
    }

    pub fn from_diagonal(diag: &[S]) -> Self {
        let n = diag.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { diag[i].clone() } else { diag[i].zero() })
                    .collect()
            })
            .collect();
        SymmetricForm { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gram.is_empty()
    }

    /// Orthogonal sum.
    pub fn perp(&self, other: &SymmetricForm<S>) -> SymmetricForm<S> {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let z = self.gram[0][0].zero();
        let n = self.dim();
        let m = other.dim();
        let mut gram = vec![vec![z.clone(); n + m]; n + m];
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
        SymmetricForm { gram }
    }

    /// ⟨c⟩·form.
    pub fn scale(&self, c: &S) -> SymmetricForm<S> {
        SymmetricForm {
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(|g| g.mul(c)).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> SymmetricForm<S> {
        SymmetricForm {
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(Field::neg).collect())
                .collect(),
        }
    }

    /// B(v, w).
    pub fn pairing(&self, v: &[S], w: &[S]) -> S {
        let n = self.dim();
        let mut acc = self.gram[0][0].zero();
        for i in 0..n {
            for j in 0..n {
                acc = acc.add(&v[i].mul(&self.gram[i][j]).mul(&w[j]));
            }
        }
        acc
    }

    pub fn apply(&self, v: &[S]) -> S {
        self.pairing(v, v)
    }

    pub fn determinant(&self) -> S {
        linalg::determinant(&self.gram)
    }

    /// Congruence diagonalization: returns (diagonal entries, P) with
    /// Pᵀ·G·P equal to the diagonal matrix, all exact. Errors on degenerate
    /// forms. Pivots: first nonzero diagonal entry; otherwise the
    /// lexicographically first nonzero off-diagonal pair is folded in.
    pub fn diagonalize(&self) -> Result<(Vec<S>, Matrix<S>)> {
        let n = self.dim();
        if n == 0 {
            return Ok((vec![], vec![]));
        }
        let ctx = self.gram[0][0].clone();
        let mut g = self.gram.clone();
        let mut p = linalg::identity(&ctx, n);
        for step in 0..n {
            if g[step][step].is_zero() {
                // Prefer a later nonzero diagonal entry.
                if let Some(t) = (step + 1..n).find(|&t| !g[t][t].is_zero()) {
                    swap_sym(&mut g, &mut p, step, t);
                } else {
                    // All remaining diagonal entries vanish: fold in the
                    // lexicographically first nonzero off-diagonal pair.
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
                    // col_s += col_t, row_s += row_t: diagonal becomes 2·G[s][t].
                    add_col_row_sym(&mut g, &mut p, s, t, &ctx.one());
                    if s != step {
                        swap_sym(&mut g, &mut p, step, s);
                    }
                }
            }
            let pivot = g[step][step].clone();
            let pivot_inv = pivot.inv().expect("nonzero pivot");
            for t in step + 1..n {
                if g[step][t].is_zero() {
                    continue;
                }
                let lambda = g[step][t].mul(&pivot_inv).neg();
                add_col_row_sym(&mut g, &mut p, t, step, &lambda);
            }
        }
        let diag: Vec<S> = (0..n).map(|i| g[i][i].clone()).collect();
        if diag.iter().any(Field::is_zero) {
            return Err(Error::DegenerateForm);
        }
        debug_assert!(self.verify_congruence(&diag, &p));
        Ok((diag, p))
    }

    /// Checks Pᵀ·G·P = diag exactly.
    pub fn verify_congruence(&self, diag: &[S], p: &Matrix<S>) -> bool {
        let pt = linalg::transpose(p);
        let m = linalg::mat_mul(&pt, &linalg::mat_mul(&self.gram, p));
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j {
                    diag[i].clone()
                } else {
                    diag[0].zero()
                };
                if m[i][j] != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Checks that the column span of `basis` (dim n × k) is totally
    /// isotropic of rank k.
    pub fn verify_lagrangian(&self, basis: &Matrix<S>) -> bool {
        let n = self.dim();
        if n % 2 != 0 {
            return false;
        }
        let k = n / 2;
        if basis.len() != n || basis.iter().any(|r| r.len() != k) {
            return false;
        }
        if linalg::rank(basis) != k {
            return false;
        }
        let cols: Vec<Vec<S>> = (0..k)
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

fn swap_sym<S: Field>(g: &mut Matrix<S>, p: &mut Matrix<S>, s: usize, t: usize) {
    let n = g.len();
    for row in g.iter_mut() {
        row.swap(s, t);
    }
    g.swap(s, t);
    for i in 0..n {
        p[i].swap(s, t);
    }
}

/// col_t += col_s·λ and row_t += λ·row_s (symmetric congruence).
fn add_col_row_sym<S: Field>(g: &mut Matrix<S>, p: &mut Matrix<S>, t: usize, s: usize, lambda: &S) {
    let n = g.len();
    for i in 0..n {
        let add = g[i][s].mul(lambda);
        g[i][t] = g[i][t].add(&add);
    }
    for j in 0..n {
        let add = g[s][j].mul(lambda);
        g[t][j] = g[t][j].add(&add);
    }
    for i in 0..n {
        let add = p[i][s].mul(lambda);
        p[i][t] = p[i][t].add(&add);
    }
}

impl<S: Field> fmt::Debug for SymmetricForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricForm[")?;
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
    use crate::arith::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn hyperbolic_plane_diagonalizes() {
        let form = SymmetricForm::new(vec![vec![r(0), r(1)], vec![r(1), r(0)]]);
        let (diag, p) = form.diagonalize().unwrap();
        assert!(form.verify_congruence(&diag, &p));
        // ⟨2, −1/2⟩ up to the fix-up convention; Witt-equivalent to ⟨1,−1⟩
        assert_eq!(diag.len(), 2);
        let prod = &diag[0] * &diag[1];
        assert!(prod.is_negative());
    }

    #[test]
    fn already_diagonal_is_fixed() {
        let form = SymmetricForm::from_diagonal(&[r(2), r(3)]);
        let (diag, p) = form.diagonalize().unwrap();
        assert_eq!(diag, vec![r(2), r(3)]);
        assert_eq!(p, crate::linalg::identity(&r(0), 2));
    }

    #[test]
    fn degenerate_detected() {
        let form = SymmetricForm::new(vec![vec![r(1), r(1)], vec![r(1), r(1)]]);
        assert!(matches!(form.diagonalize(), Err(Error::DegenerateForm)));
    }

    #[test]
    fn lagrangian_verification() {
        let form = SymmetricForm::from_diagonal(&[r(1), r(-1)]);
        let basis = vec![vec![r(1)], vec![r(1)]];
        assert!(form.verify_lagrangian(&basis));
        let bad = vec![vec![r(1)], vec![r(2)]];
        assert!(!form.verify_lagrangian(&bad));
    }
}
