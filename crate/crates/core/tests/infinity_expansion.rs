//! Cross-checks the leading-coefficient rule at infinity against a
//! brute-force Laurent expansion in the local parameter s = 1/x, with
//! y/x = θ·(1 + (b/a)s²)^(1/2) expanded by the binomial series.

use wittconic::arith::{QuadExt, Rational};
use wittconic::conic::{evaluate, make_conic, v_infty, ClosedPoint, ConicInstance, ResidueValue};
use wittconic::field::Field;
use wittconic::rng::SplitMix64;

const TERMS: usize = 24;

/// Truncated Laurent series over k(∞): coefficient k is the coefficient of
/// s^(val + k).
#[derive(Clone, Debug)]
struct Laurent {
    val: i64,
    coeffs: Vec<QuadExt>,
}

impl Laurent {
    fn normalize(mut self) -> Self {
        while !self.coeffs.is_empty() && self.coeffs[0].is_zero() {
            self.coeffs.remove(0);
            self.val += 1;
        }
        self
    }

    fn zero(modulus: &Rational) -> Self {
        Laurent {
            val: 0,
            coeffs: vec![QuadExt::zero(modulus); 0],
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QuadExt::is_zero)
    }

    fn coeff_at(&self, power: i64) -> QuadExt {
        let modulus = self
            .coeffs
            .first()
            .map(|c| c.modulus.clone())
            .unwrap_or_else(|| Rational::from_int(-1));
        let idx = power - self.val;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            QuadExt::zero(&modulus)
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    fn add(&self, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let modulus = self.coeffs[0].modulus.clone();
        let val = self.val.min(o.val);
        let end = (self.val + self.coeffs.len() as i64).max(o.val + o.coeffs.len() as i64);
        let mut coeffs = Vec::new();
        for p in val..end {
            coeffs.push(self.coeff_at(p).add(&o.coeff_at(p)));
        }
        Laurent { val, coeffs }.normalize()
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            let m = self
                .coeffs
                .first()
                .or(o.coeffs.first())
                .map(|c| c.modulus.clone())
                .unwrap_or_else(|| Rational::from_int(-1));
            return Laurent::zero(&m);
        }
        let modulus = self.coeffs[0].modulus.clone();
        let n = TERMS.min(self.coeffs.len() + o.coeffs.len());
        let mut coeffs = vec![QuadExt::zero(&modulus); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < n {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Laurent {
            val: self.val + o.val,
            coeffs,
        }
        .normalize()
    }

    /// Geometric-series inverse of a unit series.
    fn inv(&self) -> Laurent {
        assert!(!self.is_zero());
        let lead = self.coeffs[0].clone();
        let lead_inv = lead.inv().unwrap();
        let modulus = lead.modulus.clone();
        // self = lead·s^val·(1 + t) with t of positive order.
        let mut t = self.clone();
        t.val = 0;
        t.coeffs = t.coeffs.iter().map(|c| c.mul(&lead_inv)).collect();
        t.coeffs[0] = QuadExt::zero(&modulus); // subtract 1
        let t = t.normalize();
        let mut acc = Laurent {
            val: 0,
            coeffs: vec![QuadExt::one(&modulus)],
        };
        let mut power = Laurent {
            val: 0,
            coeffs: vec![QuadExt::one(&modulus)],
        };
        for k in 1..TERMS {
            power = power.mul(&t);
            if power.is_zero() {
                break;
            }
            let signed = if k % 2 == 1 {
                Laurent {
                    val: power.val,
                    coeffs: power.coeffs.iter().map(QuadExt::neg).collect(),
                }
            } else {
                power.clone()
            };
            acc = acc.add(&signed);
        }
        let mut out = acc;
        out.val -= self.val;
        out.coeffs = out.coeffs.iter().map(|c| c.mul(&lead_inv)).collect();
        out
    }
}

/// g(x) as a series in s = 1/x.
fn poly_series(conic: &ConicInstance, coeffs: &[Rational]) -> Laurent {
    let m = conic.infinity_modulus();
    if coeffs.is_empty() {
        return Laurent::zero(&m);
    }
    let deg = coeffs.len() - 1;
    let series: Vec<QuadExt> = coeffs
        .iter()
        .rev()
        .map(|c| QuadExt::from_rational(c, &m))
        .collect();
    Laurent {
        val: -(deg as i64),
        coeffs: series,
    }
    .normalize()
}

/// y = (θ/s)·(1 + (b/a)·s²)^(1/2) via the binomial series.
fn y_series(conic: &ConicInstance) -> Laurent {
    let m = conic.infinity_modulus();
    let ratio = &conic.b / &conic.a;
    let mut coeffs = vec![QuadExt::zero(&m); TERMS];
    // binom(1/2, n)·ratio^n at s^(2n)
    let mut binom = Rational::one();
    let half = Rational::from_frac(1, 2);
    let mut ratio_pow = Rational::one();
    for n in 0..TERMS / 2 {
        if n > 0 {
            // binom(1/2, n) = binom(1/2, n-1)·(1/2 - (n-1))/n
            let step = &(&half - &Rational::from_int(n as i64 - 1))
                / &Rational::from_int(n as i64);
            binom = &binom * &step;
            ratio_pow = &ratio_pow * &ratio;
        }
        coeffs[2 * n] = QuadExt::from_rational(&(&binom * &ratio_pow), &m);
    }
    let sqrt_series = Laurent { val: 0, coeffs }.normalize();
    let theta_over_s = Laurent {
        val: -1,
        coeffs: vec![QuadExt::generator(&m)],
    };
    theta_over_s.mul(&sqrt_series)
}

fn expand(conic: &ConicInstance, f: &wittconic::conic::FnFieldElem) -> Laurent {
    let (u, den) = f.clear_denominators();
    let g = poly_series(conic, u.g.as_polynomial().unwrap().coeffs());
    let h = poly_series(conic, u.h.as_polynomial().unwrap().coeffs());
    let num = g.add(&h.mul(&y_series(conic)));
    let d = poly_series(conic, den.coeffs());
    num.mul(&d.inv())
}

#[test]
fn expansion_matches_leading_rule() {
    let conic = make_conic(Rational::from_int(-1), Rational::from_int(-1)).unwrap();
    let x = conic.x();
    let y = conic.y();
    let mut candidates = vec![
        x.clone(),
        y.clone(),
        y.mul(&Field::inv(&x).unwrap()),
        x.mul(&x).add(&y).mul(&Field::inv(&x.mul(&x)).unwrap()),
        Field::inv(&x.add(&y)).unwrap(),
        conic.one_f().add(&y).mul(&Field::inv(&x).unwrap()),
        conic.scalar(&Rational::from_frac(3, 7)),
    ];
    let mut rng = SplitMix64::for_check(0, "infinity-expansion");
    for _ in 0..20 {
        let gnum = vec![rng.rational(4), rng.rational(4), rng.rational(4)];
        let hnum = vec![rng.rational(4), rng.rational(4)];
        let f = wittconic::conic::FnFieldElem::from_parts(
            &conic,
            wittconic::arith::RatFunc::new(
                wittconic::arith::Polynomial::new(gnum),
                wittconic::arith::Polynomial::from_ints(&[1, 0, 2]),
            )
            .unwrap(),
            wittconic::arith::RatFunc::new(
                wittconic::arith::Polynomial::new(hnum),
                wittconic::arith::Polynomial::from_ints(&[3, 1]),
            )
            .unwrap(),
        );
        if !Field::is_zero(&f) {
            candidates.push(f);
        }
    }
    let inf = ClosedPoint::Infinity(conic.clone());
    for f in &candidates {
        let series = expand(&conic, f);
        assert!(!series.is_zero(), "series truncation exhausted for {f}");
        assert_eq!(v_infty(f), series.val, "valuation mismatch for {f}");
        if series.val > 0 {
            match evaluate(f, &inf).unwrap() {
                ResidueValue::Quad(z) => assert!(z.is_zero()),
                _ => unreachable!(),
            }
        } else if series.val == 0 {
            match evaluate(f, &inf).unwrap() {
                ResidueValue::Quad(z) => {
                    assert_eq!(z, series.coeff_at(0), "value mismatch for {f}")
                }
                _ => unreachable!(),
            }
        }
    }
}

#[test]
fn expansion_respects_the_conic_relation() {
    // y² expands to a/s² + b exactly.
    let conic = make_conic(Rational::from_int(-1), Rational::from_int(-1)).unwrap();
    let ys = y_series(&conic);
    let y2 = ys.mul(&ys);
    assert_eq!(y2.val, -2);
    let m = conic.infinity_modulus();
    assert_eq!(y2.coeff_at(-2), QuadExt::from_rational(&conic.a, &m));
    assert_eq!(y2.coeff_at(0), QuadExt::from_rational(&conic.b, &m));
    for k in 1..10 {
        assert!(y2.coeff_at(k).is_zero(), "spurious term at s^{k}");
    }
}
