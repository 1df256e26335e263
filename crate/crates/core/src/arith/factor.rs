//! Polynomial factorization over ℚ, for desk-scale degrees (≤ 8).
//!
//! Strategy: squarefree decomposition, rational roots, then Kronecker
//! interpolation for the remaining factors. A distinct-degree factorization
//! modulo a few small primes restricts the candidate factor degrees first,
//! and pairwise divisibility pruning keeps the divisor enumeration small.

use super::intfactor::factor_bigint;
use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// Hard degree bound for factorization.
pub const FACTOR_DEGREE_BOUND: usize = 8;

/// A complete factorization over ℚ: unit · Π factorᵉ with monic irreducible
/// factors, ordered by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationQ {
    pub unit: Rational,
    pub factors: Vec<(Polynomial, u32)>,
}

impl FactorizationQ {
    /// Re-expands the factorization; used by tests and certificate checks.
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

/// Factors a nonzero polynomial into ℚ-irreducibles.
pub fn poly_factor_q(p: &Polynomial) -> Result<FactorizationQ> {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let degree = p.degree().unwrap();
    if degree > FACTOR_DEGREE_BOUND {
        return Err(Error::DegreeBound {
            degree,
            bound: FACTOR_DEGREE_BOUND,
        });
    }
    let (unit, squarefree_parts) = p.squarefree_decomposition();
    let mut factors: Vec<(Polynomial, u32)> = Vec::new();
    for (part, mult) in squarefree_parts {
        for g in factor_squarefree(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|(f, _), (g, _)| f.cmp_deterministic(g));
    let result = FactorizationQ { unit, factors };
    debug_assert_eq!(&result.expand(), p);
    Ok(result)
}

/// Returns true if the polynomial is irreducible over ℚ (degree within bound).
pub fn is_irreducible(p: &Polynomial) -> Result<bool> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let f = poly_factor_q(p)?;
    Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
}

fn factor_squarefree(f: &Polynomial) -> Vec<Polynomial> {
    debug_assert!(f.is_monic());
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return vec![],
    };
    if d == 1 {
        return vec![f.clone()];
    }

    // Rational roots first.
    let mut rest = f.clone();
    let mut out = Vec::new();
    for r in rational_roots(&rest) {
        let lin = Polynomial::new(vec![-&r, Rational::one()]);
        while rest.eval(&r).is_zero() {
            rest = rest.div_exact(&lin).unwrap();
            out.push(lin.clone());
        }
    }
    let d = match rest.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            out.sort_by(|a, b| a.cmp_deterministic(b));
            return out;
        }
    };
    if d <= 3 {
        // No rational root and degree ≤ 3: irreducible.
        out.push(rest);
        out.sort_by(|a, b| a.cmp_deterministic(b));
        return out;
    }

    let allowed = allowed_factor_degrees(&rest, d);
    let mut found = None;
    for m in 2..=d / 2 {
        if !allowed.contains(&m) {
            continue;
        }
        if let Some(g) = kronecker_search(&rest, m) {
            found = Some(g);
            break;
        }
    }
    match found {
        Some(g) => {
            let q = rest.div_exact(&g.monic()).unwrap();
            out.extend(factor_squarefree(&g.monic()));
            out.extend(factor_squarefree(&q.monic()));
        }
        None => out.push(rest),
    }
    out.sort_by(|a, b| a.cmp_deterministic(b));
    out
}

fn rational_roots(f: &Polynomial) -> Vec<Rational> {
    let (_, prim) = f.primitive_integer();
    let a0 = prim.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(BigInt::one);
    let an = prim.last().cloned().unwrap_or_else(BigInt::one);
    let mut roots = Vec::new();
    // x = 0
    if f.coeff(0).is_zero() {
        roots.push(Rational::zero());
    }
    let num_divs = divisors(&a0);
    let den_divs = divisors(&an);
    for p in &num_divs {
        for q in &den_divs {
            for sign in [1i64, -1] {
                let cand = Rational::new(p * BigInt::from(sign), q.clone()).unwrap();
                if f.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let f = factor_bigint(n);
    let mut out = vec![BigInt::one()];
    for (p, e) in f {
        let mut next = Vec::new();
        for d in &out {
            let mut pe = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pe);
                pe *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// Distinct-degree filter mod p.

fn allowed_factor_degrees(f: &Polynomial, d: usize) -> BTreeSet<usize> {
    let (_, prim) = f.primitive_integer();
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut good = 0;
    for &p in &[3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if let Some(pattern) = ddf_degree_pattern(&prim, p) {
            let sums = subset_sums(&pattern);
            allowed = Some(match allowed {
                None => sums,
                Some(prev) => prev.intersection(&sums).cloned().collect(),
            });
            good += 1;
            if good == 3 {
                break;
            }
        }
    }
    match allowed {
        Some(a) => a.into_iter().filter(|&m| m >= 1 && m < d).collect(),
        // No good prime found: allow everything.
        None => (1..d).collect(),
    }
}

fn subset_sums(degrees: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::new();
    sums.insert(0usize);
    for &d in degrees {
        let mut next = sums.clone();
        for s in &sums {
            next.insert(s + d);
        }
        sums = next;
    }
    sums
}

/// Degrees of the irreducible factors of f mod p, or None if p is bad
/// (divides the leading coefficient or f mod p is not squarefree).
fn ddf_degree_pattern(prim: &[BigInt], p: u64) -> Option<Vec<usize>> {
    let bp = BigInt::from(p);
    let fp: Vec<u64> = prim
        .iter()
        .map(|c| {
            let m = c % &bp;
            let m = if m.is_negative() { m + &bp } else { m };
            m.to_u64().unwrap()
        })
        .collect();
    let fp = ModPoly::new(fp, p);
    if fp.coeffs.len() != prim.len() {
        return None; // leading coefficient vanished
    }
    let deriv = fp.derivative();
    if !fp.gcd(&deriv).is_one() {
        return None; // not squarefree mod p
    }
    let mut degrees = Vec::new();
    let mut f = fp.monic();
    let mut h = ModPoly::x(p); // x^(p^i) mod f, iterated
    let mut i = 0usize;
    while f.degree() > 0 {
        i += 1;
        if 2 * i > f.degree() {
            degrees.push(f.degree());
            break;
        }
        h = h.powmod_p(&f);
        let diff = h.sub(&ModPoly::x(p)).rem(&f);
        let g = f.gcd(&diff);
        if g.degree() > 0 {
            for _ in 0..g.degree() / i {
                degrees.push(i);
            }
            f = f.div_exact(&g);
            h = h.rem(&f);
        }
    }
    Some(degrees)
}

/// Polynomials over 𝔽_p, lowest degree first, p odd < 2^31.
#[derive(Clone, Debug, PartialEq)]
struct ModPoly {
    coeffs: Vec<u64>,
    p: u64,
}

impl ModPoly {
    fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { coeffs, p }
    }

    fn x(p: u64) -> Self {
        ModPoly::new(vec![0, 1], p)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return ModPoly::new(vec![], self.p);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, &c)| mulmod(c, n as u64 % self.p, self.p))
            .collect();
        ModPoly::new(out, self.p)
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(*self.coeffs.last().unwrap(), self.p);
        ModPoly::new(
            self.coeffs.iter().map(|&c| mulmod(c, inv, self.p)).collect(),
            self.p,
        )
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, v) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = o.coeffs.get(i).copied().unwrap_or(0);
            *v = (a + self.p - b) % self.p;
        }
        ModPoly::new(out, self.p)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ModPoly::new(vec![], self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        ModPoly::new(out, self.p)
    }

    fn rem(&self, d: &Self) -> Self {
        let dd = d.degree();
        let lc_inv = inv_mod(*d.coeffs.last().unwrap(), self.p);
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = mulmod(*rem.last().unwrap(), lc_inv, self.p);
            if factor != 0 {
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] = (rem[k + i] + self.p - mulmod(dc, factor, self.p)) % self.p;
                }
            }
            rem.pop();
        }
        ModPoly::new(rem, self.p)
    }

    fn div_exact(&self, d: &Self) -> Self {
        let dd = d.degree();
        let lc_inv = inv_mod(*d.coeffs.last().unwrap(), self.p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = mulmod(*rem.last().unwrap(), lc_inv, self.p);
            if factor != 0 {
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] = (rem[k + i] + self.p - mulmod(dc, factor, self.p)) % self.p;
                }
                quot[k] = factor;
            }
            rem.pop();
        }
        ModPoly::new(quot, self.p)
    }

    fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// self^p mod f by square-and-multiply.
    fn powmod_p(&self, f: &Self) -> Self {
        let mut exp = self.p;
        let mut base = self.rem(f);
        let mut acc = ModPoly::new(vec![1], self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(f);
            }
            base = base.mul(&base).rem(f);
            exp >>= 1;
        }
        acc
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// Kronecker interpolation search.

fn kronecker_search(f: &Polynomial, m: usize) -> Option<Polynomial> {
    let (_, prim) = f.primitive_integer();
    let nodes = pick_nodes(m + 1);
    let values: Vec<BigInt> = nodes
        .iter()
        .map(|x| eval_int(&prim, x))
        .collect();
    debug_assert!(values.iter().all(|v| !v.is_zero()));
    let divisor_lists: Vec<Vec<BigInt>> = values.iter().map(divisors).collect();

    let mut choice: Vec<BigInt> = Vec::with_capacity(nodes.len());
    kronecker_dfs(f, m, &nodes, &divisor_lists, &mut choice)
}

fn pick_nodes(count: usize) -> Vec<BigInt> {
    let mut nodes = Vec::with_capacity(count);
    let mut k = 0i64;
    while nodes.len() < count {
        nodes.push(BigInt::from(k));
        if k > 0 && nodes.len() < count {
            nodes.push(BigInt::from(-k));
        }
        k += 1;
    }
    nodes.truncate(count);
    nodes
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn kronecker_dfs(
    f: &Polynomial,
    m: usize,
    nodes: &[BigInt],
    divisor_lists: &[Vec<BigInt>],
    choice: &mut Vec<BigInt>,
) -> Option<Polynomial> {
    let t = choice.len();
    if t == nodes.len() {
        return try_candidate(f, m, nodes, choice);
    }
    for d in &divisor_lists[t] {
        for sign in [1i64, -1] {
            // Fix the first value positive; the sign ambiguity g vs -g is global.
            if t == 0 && sign < 0 {
                continue;
            }
            let e = d * BigInt::from(sign);
            // Pairwise pruning: (x_t - x_s) | (e_t - e_s) for integer factors.
            let ok = choice.iter().enumerate().all(|(s, es)| {
                let dx = &nodes[t] - &nodes[s];
                let de = &e - es;
                de.is_zero() || (&de % &dx).is_zero()
            });
            if !ok {
                continue;
            }
            choice.push(e);
            if let Some(g) = kronecker_dfs(f, m, nodes, divisor_lists, choice) {
                return Some(g);
            }
            choice.pop();
        }
    }
    None
}

fn try_candidate(
    f: &Polynomial,
    m: usize,
    nodes: &[BigInt],
    values: &[BigInt],
) -> Option<Polynomial> {
    // Lagrange interpolation over ℚ.
    let mut g = Polynomial::zero();
    for (i, v) in values.iter().enumerate() {
        let mut term = Polynomial::constant(Rational::from_bigint(v.clone()));
        for (j, xj) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = Rational::from_bigint(&nodes[i] - xj);
            let lin = Polynomial::new(vec![
                Rational::from_bigint(-xj.clone()),
                Rational::one(),
            ]);
            term = &term * &lin.scale(&denom.inv().unwrap());
        }
        g = &g + &term;
    }
    if g.degree() != Some(m) {
        return None;
    }
    // Integer coefficients are required for a factor of a primitive polynomial.
    if !g.coeffs().iter().all(Rational::is_integer) {
        return None;
    }
    match f.divrem(&g) {
        Ok((_, r)) if r.is_zero() => Some(g),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors_of(p: &Polynomial) -> Vec<(Polynomial, u32)> {
        poly_factor_q(p).unwrap().factors
    }

    #[test]
    fn difference_of_squares() {
        let p = Polynomial::from_ints(&[-1, 0, 1]);
        assert_eq!(
            factors_of(&p),
            vec![
                (Polynomial::from_ints(&[-1, 1]), 1),
                (Polynomial::from_ints(&[1, 1]), 1),
            ]
        );
    }

    #[test]
    fn irreducible_quadratic() {
        let p = Polynomial::from_ints(&[1, 0, 1]);
        assert_eq!(factors_of(&p), vec![(Polynomial::from_ints(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn repeated_quadratic() {
        // x^4 + 2x^2 + 1 = (x^2+1)^2; oracle: expand and compare.
        let p = Polynomial::from_ints(&[1, 0, 2, 0, 1]);
        let f = poly_factor_q(&p).unwrap();
        assert_eq!(f.factors, vec![(Polynomial::from_ints(&[1, 0, 1]), 2)]);
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn quartic_product_of_quadratics() {
        let a = Polynomial::from_ints(&[1, 0, 1]); // x^2+1
        let b = Polynomial::from_ints(&[2, 0, 1]); // x^2+2
        let p = &a * &b;
        assert_eq!(factors_of(&p), vec![(a, 1), (b, 1)]);
    }

    #[test]
    fn degree_bound_enforced() {
        let p = Polynomial::monomial(Rational::one(), 9);
        assert!(matches!(
            poly_factor_q(&p),
            Err(Error::DegreeBound { degree: 9, bound: 8 })
        ));
    }

    #[test]
    fn nontrivial_unit_and_roots() {
        // 6(x-1/2)(x+2) = 6x^2 + 9x - 6
        let p = Polynomial::from_ints(&[-6, 9, 6]);
        let f = poly_factor_q(&p).unwrap();
        assert_eq!(f.expand(), p);
        assert_eq!(f.unit, Rational::from_int(6));
        assert_eq!(f.factors.len(), 2);
    }
}
