//! Integer factorization and prime-field helpers.
//!
//! Desk-scale: trial division by small primes, then deterministic Miller-Rabin
//! and Pollard rho on what remains. All symbol computations reduce to these.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (standard witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho_u64(n: u64) -> u64 {
    debug_assert!(n > 3 && n % 2 != 0);
    let mut c: u64 = 1;
    loop {
        let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
        let mut x: u64 = 2;
        let mut y: u64 = 2;
        let mut d: u64 = 1;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut BTreeMap<BigInt, u32>) {
    let mut n = n;
    for p in [2u64, 3, 5] {
        while n % p == 0 {
            *out.entry(BigInt::from(p)).or_insert(0) += 1;
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            *out.entry(BigInt::from(m)).or_insert(0) += 1;
        } else {
            let d = pollard_rho_u64(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
}

fn mr_bigint(n: &BigInt) -> bool {
    // n odd, > 37. Fixed witnesses plus a few pseudorandom ones.
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 61, 73] {
        let a = BigInt::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2u32), n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho_bigint(n: &BigInt) -> BigInt {
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2u32);
        let mut y = BigInt::from(2u32);
        let mut d = BigInt::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

/// Complete factorization of |n| as a map prime -> multiplicity.
/// Factoring zero is a bug in the caller.
pub fn factor_bigint(n: &BigInt) -> BTreeMap<BigInt, u32> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut out = BTreeMap::new();
    let mut n = n.abs();
    if n.is_one() {
        return out;
    }
    if let Some(small) = n.to_u64() {
        factor_u64_into(small, &mut out);
        return out;
    }
    for p in 2u64..10_000 {
        let bp = BigInt::from(p);
        while (&n % &bp).is_zero() {
            *out.entry(bp.clone()).or_insert(0) += 1;
            n /= &bp;
        }
        if let Some(small) = n.to_u64() {
            factor_u64_into(small, &mut out);
            return out;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u64() {
            factor_u64_into(small, &mut out);
        } else if mr_bigint(&m) {
            *out.entry(m).or_insert(0) += 1;
        } else {
            let d = pollard_rho_bigint(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    out
}

/// Legendre symbol (a/p) for an odd prime p, as +1, -1, or 0.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - BigInt::one()) / BigInt::from(2u32);
    let r = a.modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Square root of a mod odd prime p (Tonelli-Shanks). Requires (a/p) = 1.
pub fn sqrt_mod_p(a: &BigInt, p: &BigInt) -> BigInt {
    let a = a.mod_floor(p);
    debug_assert_eq!(legendre(&a, p), 1);
    if (p % BigInt::from(4u32)) == BigInt::from(3u32) {
        let e = (p + BigInt::one()) / BigInt::from(4u32);
        return a.modpow(&e, p);
    }
    // Tonelli-Shanks
    let one = BigInt::one();
    let two = BigInt::from(2u32);
    let mut q = p - &one;
    let mut s = 0u32;
    while q.is_even() {
        q /= 2;
        s += 1;
    }
    let mut z = BigInt::from(2u32);
    while legendre(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) / &two), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = tt.modpow(&two, p);
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = b.modpow(&two, p);
        }
        m = i;
        c = b.modpow(&two, p);
        t = (t * &c) % p;
        r = (r * &b) % p;
    }
    r
}

/// Lifts r with r^2 = a (mod p) to a square root mod p^k, p odd.
pub fn hensel_sqrt(a: &BigInt, p: &BigInt, r: &BigInt, k: u32) -> BigInt {
    let mut modulus = p.clone();
    let mut root = r.mod_floor(p);
    let two = BigInt::from(2u32);
    let mut prec = 1u32;
    while prec < k {
        let next = &modulus * &modulus;
        // x -> x - (x^2 - a) / (2x) mod next
        let inv2x = mod_inverse(&(&two * &root), &next).expect("2x invertible");
        let x2 = (&root * &root - a).mod_floor(&next);
        root = (&root - x2 * inv2x).mod_floor(&next);
        modulus = next;
        prec *= 2;
    }
    let target = p.pow(k);
    root.mod_floor(&target)
}

/// Inverse of a modulo m, when gcd(a, m) = 1.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(97));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
    }

    #[test]
    fn factor_roundtrip() {
        for n in [1i64, 2, 12, 97, 1024, 600851475143, -360] {
            let bn = BigInt::from(n);
            if bn.is_zero() {
                continue;
            }
            let f = factor_bigint(&bn);
            let mut prod = BigInt::one();
            for (p, e) in &f {
                prod *= p.pow(*e);
            }
            assert_eq!(prod, bn.abs(), "n = {n}");
        }
    }

    #[test]
    fn legendre_and_sqrt() {
        let p = BigInt::from(41u32);
        for a in 1..41u32 {
            let ba = BigInt::from(a);
            if legendre(&ba, &p) == 1 {
                let r = sqrt_mod_p(&ba, &p);
                assert_eq!((&r * &r).mod_floor(&p), ba);
            }
        }
    }

    #[test]
    fn hensel_lift() {
        let p = BigInt::from(5u32);
        let a = BigInt::from(-1i32);
        let r = sqrt_mod_p(&a.mod_floor(&p), &p);
        let lifted = hensel_sqrt(&a, &p, &r, 6);
        let m = p.pow(6);
        assert_eq!((&lifted * &lifted).mod_floor(&m), a.mod_floor(&m));
    }
}
