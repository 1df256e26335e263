//! Deterministic pseudo-randomness for the verification suites.
//!
//! The generator is SplitMix64: state advances by the golden-ratio increment
//! 0x9E3779B97F4A7C15 and each output is the mixed state (shift-xor with
//! multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB). Per-check streams
//! are seeded with `seed XOR fnv1a64(check name)` so reports are reproducible
//! check by check regardless of execution order.

use crate::arith::{QuadExt, Rational};
use crate::quaternion::{Quaternion, QuaternionAlgebra};
use crate::field::Field;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Stream for a named check under a global seed.
    pub fn for_check(seed: u64, check_name: &str) -> Self {
        SplitMix64::new(seed ^ fnv1a64(check_name))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in 0..bound (bound > 0), by rejection-free modulo; bias is
    /// irrelevant at suite scale.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Rational with numerator in [−h, h] and denominator in [1, h].
    pub fn rational(&mut self, height: i64) -> Rational {
        let num = self.int_in(-height, height);
        let den = self.int_in(1, height);
        Rational::from_frac(num, den)
    }

    pub fn nonzero_rational(&mut self, height: i64) -> Rational {
        loop {
            let r = self.rational(height);
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn quadext(&mut self, modulus: &Rational, height: i64) -> QuadExt {
        QuadExt::new(self.rational(height), self.rational(height), modulus.clone())
    }

    pub fn nonzero_quadext(&mut self, modulus: &Rational, height: i64) -> QuadExt {
        loop {
            let z = self.quadext(modulus, height);
            if !z.is_zero() {
                return z;
            }
        }
    }

    /// Nonzero pure quaternion with rational coefficients of bounded height.
    pub fn pure_quaternion(
        &mut self,
        alg: &QuaternionAlgebra<Rational>,
        height: i64,
    ) -> Quaternion<Rational> {
        loop {
            let q = alg.pure(
                &self.rational(height),
                &self.rational(height),
                &self.rational(height),
            );
            if !q.is_zero() {
                return q;
            }
        }
    }

    pub fn quaternion_over<S: Field>(
        &mut self,
        alg: &QuaternionAlgebra<S>,
        mut scalar: impl FnMut(&mut Self) -> S,
    ) -> Quaternion<S> {
        let w0 = scalar(self);
        let w1 = scalar(self);
        let w2 = scalar(self);
        let w3 = scalar(self);
        alg.from_coeffs([&w0, &w1, &w2, &w3])
    }
}

/// FNV-1a on the UTF-8 bytes; used only to derive per-check seeds.
pub fn fnv1a64(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
