//! Small exact linear algebra over any field in the tower.

use crate::field::Field;

pub type Matrix<S> = Vec<Vec<S>>;

/// Identity matrix in the field context of `ctx`.
pub fn identity<S: Field>(ctx: &S, n: usize) -> Matrix<S> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { ctx.one() } else { ctx.zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul<S: Field>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let ctx = &a[0][0];
    let mut out = vec![vec![ctx.zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = ctx.zero();
            for t in 0..k {
                acc = acc.add(&a[i][t].mul(&b[t][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn transpose<S: Clone>(a: &Matrix<S>) -> Matrix<S> {
    let n = a.len();
    let m = a[0].len();
    (0..m)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn mat_vec<S: Field>(a: &Matrix<S>, v: &[S]) -> Vec<S> {
    a.iter()
        .map(|row| {
            let mut acc = row[0].zero();
            for (c, x) in row.iter().zip(v) {
                acc = acc.add(&c.mul(x));
            }
            acc
        })
        .collect()
}

/// Row-reduces [A | b] and returns one solution of A·x = b, if consistent.
/// Free variables are set to zero, pivots chosen left to right, so the result
/// is deterministic.
pub fn solve<S: Field>(a: &Matrix<S>, b: &[S]) -> Option<Vec<S>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let ctx = if rows == 0 { return None } else { &a[0][0] };
    let mut m: Matrix<S> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for j in c..=cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let t = m[i][j].sub(&f.mul(&m[r][j]));
                    m[i][j] = t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Consistency: rows of zeros with nonzero rhs.
    for i in r..rows {
        if !m[i][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![ctx.zero(); cols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[row][cols].clone();
    }
    Some(x)
}

/// Basis of the kernel of A, echelon-deterministic.
pub fn kernel<S: Field>(a: &Matrix<S>) -> Vec<Vec<S>> {
    let rows = a.len();
    if rows == 0 {
        return vec![];
    }
    let cols = a[0].len();
    let ctx = &a[0][0];
    let mut m = a.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for j in c..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = m[i][j].sub(&f.mul(&m[r][j]));
                    m[i][j] = t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![ctx.zero(); cols];
        v[free] = ctx.one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = m[row][free].neg();
        }
        basis.push(v);
    }
    basis
}

pub fn rank<S: Field>(a: &Matrix<S>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    cols - kernel(a).len()
}

pub fn invert<S: Field>(a: &Matrix<S>) -> Option<Matrix<S>> {
    let n = a.len();
    let ctx = &a[0][0];
    let mut m = a.clone();
    let mut inv = identity(ctx, n);
    for c in 0..n {
        let pr = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, pr);
        inv.swap(c, pr);
        let piv = m[c][c].inv().ok()?;
        for j in 0..n {
            m[c][j] = m[c][j].mul(&piv);
            inv[c][j] = inv[c][j].mul(&piv);
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    let t1 = m[i][j].sub(&f.mul(&m[c][j]));
                    m[i][j] = t1;
                    let t2 = inv[i][j].sub(&f.mul(&inv[c][j]));
                    inv[i][j] = t2;
                }
            }
        }
    }
    Some(inv)
}

pub fn determinant<S: Field>(a: &Matrix<S>) -> S {
    let n = a.len();
    let ctx = &a[0][0];
    let mut m = a.clone();
    let mut det = ctx.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return ctx.zero();
        };
        if pr != c {
            m.swap(c, pr);
            det = det.neg();
        }
        det = det.mul(&m[c][c]);
        let piv = m[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = m[i][c].mul(&piv);
                for j in c..n {
                    let t = m[i][j].sub(&f.mul(&m[c][j]));
                    m[i][j] = t;
                }
            }
        }
    }
    det
}
