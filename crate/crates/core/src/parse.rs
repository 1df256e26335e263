//! A small expression parser for command-line inputs.
//!
//! Expressions use rational literals, the variables x, y (conic coordinates)
//! and i, j (quaternion units, with ij available as i*j or k), parentheses,
//! +, -, *, /, and ^ with integer exponents. Everything is evaluated in the
//! quaternion algebra over F, then narrowed to the expected kind.

use crate::arith::{QuadExt, Rational};
use crate::conic::{ConicInstance, FnFieldElem};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::quaternion::{algebra_f, Quaternion};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut idx = 0;
    while idx < chars.len() {
        let c = chars[idx];
        match c {
            ' ' | '\t' => idx += 1,
            '+' => {
                out.push(Token::Plus);
                idx += 1;
            }
            '-' => {
                out.push(Token::Minus);
                idx += 1;
            }
            '*' => {
                out.push(Token::Star);
                idx += 1;
            }
            '/' => {
                out.push(Token::Slash);
                idx += 1;
            }
            '^' => {
                out.push(Token::Caret);
                idx += 1;
            }
            '(' => {
                out.push(Token::LParen);
                idx += 1;
            }
            ')' => {
                out.push(Token::RParen);
                idx += 1;
            }
            '0'..='9' => {
                let start = idx;
                while idx < chars.len() && chars[idx].is_ascii_digit() {
                    idx += 1;
                }
                let s: String = chars[start..idx].iter().collect();
                out.push(Token::Number(Rational::parse(&s)?));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = idx;
                while idx < chars.len() && chars[idx].is_ascii_alphanumeric() {
                    idx += 1;
                }
                out.push(Token::Ident(chars[start..idx].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    conic: &'a ConicInstance,
}

type QF = Quaternion<FnFieldElem>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<QF> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Token::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QF> {
        let mut acc = self.factor()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Star => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Token::Slash => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs.inv()?);
                }
                // Juxtaposition like "2i" or "3(x+1)" multiplies.
                Token::Number(_) | Token::Ident(_) | Token::LParen => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QF> {
        if let Some(Token::Minus) = self.peek() {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            let mut negative = false;
            if let Some(Token::Minus) = self.peek() {
                self.bump();
                negative = true;
            }
            let Some(Token::Number(n)) = self.bump() else {
                return Err(Error::Parse("expected integer exponent after ^".into()));
            };
            if !n.is_integer() {
                return Err(Error::Parse("integer exponent required".into()));
            }
            let mut e: i64 = n
                .numer()
                .try_into()
                .map_err(|_| Error::Parse("exponent out of range".into()))?;
            if negative {
                e = -e;
            }
            let mut acc = base.scalar_like(base.a.one());
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(&base);
            }
            if e < 0 {
                acc = acc.inv()?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QF> {
        let alg = algebra_f(self.conic);
        match self.bump() {
            Some(Token::Number(n)) => Ok(alg.scalar(&self.conic.scalar(&n))),
            Some(Token::Ident(name)) => match name.as_str() {
                "x" => Ok(alg.scalar(&self.conic.x())),
                "y" => Ok(alg.scalar(&self.conic.y())),
                "i" => Ok(alg.i()),
                "j" => Ok(alg.j()),
                "k" | "ij" => Ok(alg.ij()),
                other => Err(Error::Parse(format!("unknown symbol {other:?}"))),
            },
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an expression into a quaternion over F.
pub fn parse_quaternion_f(conic: &ConicInstance, input: &str) -> Result<Quaternion<FnFieldElem>> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        conic,
    };
    let v = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    Ok(v)
}

/// Parses an element of F (no quaternion units allowed).
pub fn parse_function_field(conic: &ConicInstance, input: &str) -> Result<FnFieldElem> {
    let q = parse_quaternion_f(conic, input)?;
    if !q.is_scalar() {
        return Err(Error::Parse(
            "expected an element of the function field, found quaternion units".into(),
        ));
    }
    Ok(q.coeffs[0].clone())
}

/// Parses a rational quaternion (no x or y allowed).
pub fn parse_quaternion_q(conic: &ConicInstance, input: &str) -> Result<Quaternion<Rational>> {
    let q = parse_quaternion_f(conic, input)?;
    let alg = crate::quaternion::algebra_q(conic);
    let mut coeffs = Vec::with_capacity(4);
    for c in &q.coeffs {
        match c.as_rational() {
            Some(r) => coeffs.push(r),
            None => {
                return Err(Error::Parse(
                    "expected rational coefficients, found x or y".into(),
                ))
            }
        }
    }
    Ok(alg.from_coeffs([&coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3]]))
}

/// Parses "u" or "u+v*t" (t the residue-field generator) into a quadratic
/// extension element for a given modulus.
pub fn parse_quadext(modulus: &Rational, input: &str) -> Result<QuadExt> {
    // Reuse the quaternion parser with i standing for the generator.
    let conic = ConicInstance {
        a: modulus.clone(),
        b: Rational::from_int(-1),
    };
    let q = parse_quaternion_f(&conic, &input.replace('t', "i"))?;
    if !q.coeffs[2].is_zero() || !q.coeffs[3].is_zero() {
        return Err(Error::Parse("expected an element of a quadratic field".into()));
    }
    let base = q.coeffs[0]
        .as_rational()
        .ok_or_else(|| Error::Parse("expected constant coefficients".into()))?;
    let ext = q.coeffs[1]
        .as_rational()
        .ok_or_else(|| Error::Parse("expected constant coefficients".into()))?;
    Ok(QuadExt::new(base, ext, modulus.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::make_conic;

    fn hamilton() -> ConicInstance {
        make_conic(Rational::from_int(-1), Rational::from_int(-1)).unwrap()
    }

    #[test]
    fn parses_function_field_elements() {
        let c = hamilton();
        let f = parse_function_field(&c, "x*y").unwrap();
        assert_eq!(f, c.x().mul(&c.y()));
        let f = parse_function_field(&c, "1 + y").unwrap();
        assert_eq!(f, c.one_f().add(&c.y()));
        let f = parse_function_field(&c, "(x^2 + y)/x").unwrap();
        assert_eq!(
            f,
            c.x().mul(&c.x()).add(&c.y()).mul(&Field::inv(&c.x()).unwrap())
        );
        assert!(parse_function_field(&c, "i + x").is_err());
    }

    #[test]
    fn parses_quaternions() {
        let c = hamilton();
        let alg = crate::quaternion::algebra_q(&c);
        let q = parse_quaternion_q(&c, "2i+3j+5ij").unwrap();
        assert_eq!(
            q,
            alg.pure(
                &Rational::from_int(2),
                &Rational::from_int(3),
                &Rational::from_int(5)
            )
        );
        let q = parse_quaternion_q(&c, "i*j - j*i").unwrap();
        assert_eq!(q, alg.ij().scale(&Rational::from_int(2)));
        assert!(parse_quaternion_q(&c, "x").is_err());
    }

    #[test]
    fn parses_powers_and_negatives() {
        let c = hamilton();
        let f = parse_function_field(&c, "x^3 - 2*x + 1/2").unwrap();
        let x = c.x();
        let expected = x
            .mul(&x)
            .mul(&x)
            .sub(&x.scale_rat(&Rational::from_int(2)))
            .add(&c.scalar(&Rational::from_frac(1, 2)));
        assert_eq!(f, expected);
        let f = parse_function_field(&c, "x^-1").unwrap();
        assert_eq!(f, Field::inv(&c.x()).unwrap());
    }

    #[test]
    fn parses_quadext() {
        let m = Rational::from_int(-1);
        let z = parse_quadext(&m, "1/2 + 3*t").unwrap();
        assert_eq!(z.base, Rational::from_frac(1, 2));
        assert_eq!(z.ext, Rational::from_int(3));
    }
}
