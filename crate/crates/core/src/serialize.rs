//! JSON encodings of the public objects: scalars as exact strings,
//! polynomials as coefficient arrays (lowest degree first), points, forms,
//! quaternions, and verdicts.

use crate::arith::{Polynomial, QuadExt, RatFunc, Rational};
use crate::conic::{ClosedPoint, ConicInstance, FnFieldElem};
use crate::error::{Error, Result};
use crate::forms::{HermDForm, HermKForm, SymmetricForm, WittVerdict};
use crate::quaternion::{algebra_q, Quaternion};
use serde_json::{json, Map, Value};

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => Rational::parse(s),
        Value::Number(n) => {
            let s = n.to_string();
            Rational::parse(&s)
        }
        _ => Err(Error::Parse("expected rational string".into())),
    }
}

pub fn poly_to_json(p: &Polynomial) -> Value {
    Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

pub fn poly_from_json(v: &Value) -> Result<Polynomial> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected coefficient array".into()))?;
    let coeffs = arr
        .iter()
        .map(rational_from_json)
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(coeffs))
}

pub fn ratfunc_to_json(r: &RatFunc) -> Value {
    json!({ "num": poly_to_json(r.num()), "den": poly_to_json(r.den()) })
}

pub fn ratfunc_from_json(v: &Value) -> Result<RatFunc> {
    let num = poly_from_json(field(v, "num")?)?;
    let den = poly_from_json(field(v, "den")?)?;
    RatFunc::new(num, den)
}

pub fn quadext_to_json(z: &QuadExt) -> Value {
    json!({
        "base": rational_to_json(&z.base),
        "ext": rational_to_json(&z.ext),
        "modulus": rational_to_json(&z.modulus),
    })
}

pub fn quadext_from_json(v: &Value) -> Result<QuadExt> {
    Ok(QuadExt::new(
        rational_from_json(field(v, "base")?)?,
        rational_from_json(field(v, "ext")?)?,
        rational_from_json(field(v, "modulus")?)?,
    ))
}

pub fn fnfield_to_json(f: &FnFieldElem) -> Value {
    json!({ "g": ratfunc_to_json(&f.g), "h": ratfunc_to_json(&f.h) })
}

pub fn fnfield_from_json(conic: &ConicInstance, v: &Value) -> Result<FnFieldElem> {
    Ok(FnFieldElem::from_parts(
        conic,
        ratfunc_from_json(field(v, "g")?)?,
        ratfunc_from_json(field(v, "h")?)?,
    ))
}

pub fn quaternion_q_to_json(q: &Quaternion<Rational>) -> Value {
    json!({
        "field": "Q",
        "coords": q.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

pub fn quaternion_q_from_json(conic: &ConicInstance, v: &Value) -> Result<Quaternion<Rational>> {
    let coords = field(v, "coords")?
        .as_array()
        .ok_or_else(|| Error::Parse("expected coords array".into()))?;
    if coords.len() != 4 {
        return Err(Error::Parse("quaternions have 4 coordinates".into()));
    }
    let c: Vec<Rational> = coords
        .iter()
        .map(rational_from_json)
        .collect::<Result<_>>()?;
    Ok(algebra_q(conic).from_coeffs([&c[0], &c[1], &c[2], &c[3]]))
}

pub fn point_to_json(p: &ClosedPoint) -> Value {
    match p {
        ClosedPoint::Infinity(conic) => json!({
            "pi": "x^-1",
            "residue_modulus": rational_to_json(&conic.infinity_modulus()),
            "x": Value::Null,
            "y": Value::Null,
            "degree": 2,
            "infinity": true,
        }),
        ClosedPoint::Affine(ap) => {
            let mut obj = Map::new();
            obj.insert("pi".into(), fnfield_to_json(&ap.pi));
            obj.insert("degree".into(), json!(ap.degree));
            obj.insert("infinity".into(), json!(false));
            match &ap.residue {
                crate::conic::AffineResidue::Quad { x, y } => {
                    obj.insert("residue_modulus".into(), rational_to_json(&x.modulus));
                    obj.insert("x".into(), quadext_to_json(x));
                    obj.insert("y".into(), quadext_to_json(y));
                }
                crate::conic::AffineResidue::Higher {
                    min_poly,
                    x_coords,
                    y_coords,
                } => {
                    obj.insert("residue_min_poly".into(), poly_to_json(min_poly));
                    obj.insert(
                        "x".into(),
                        Value::Array(x_coords.iter().map(rational_to_json).collect()),
                    );
                    obj.insert(
                        "y".into(),
                        Value::Array(y_coords.iter().map(rational_to_json).collect()),
                    );
                }
            }
            Value::Object(obj)
        }
    }
}

/// Forms over each field, tagged.
pub fn sym_q_to_json(f: &SymmetricForm<Rational>) -> Value {
    json!({
        "field": "Q",
        "gram": f.gram.iter().map(|row| row.iter().map(rational_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn sym_q_from_json(v: &Value) -> Result<SymmetricForm<Rational>> {
    let gram = gram_from_json(v, rational_from_json)?;
    SymmetricForm::try_new(gram)
}

pub fn sym_quad_to_json(f: &SymmetricForm<QuadExt>) -> Value {
    let modulus = if f.is_empty() {
        Value::Null
    } else {
        rational_to_json(&f.gram[0][0].modulus)
    };
    json!({
        "field": "quadratic",
        "modulus": modulus,
        "gram": f.gram.iter().map(|row| row.iter().map(quadext_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn sym_quad_from_json(v: &Value) -> Result<SymmetricForm<QuadExt>> {
    let gram = gram_from_json(v, quadext_from_json)?;
    SymmetricForm::try_new(gram)
}

pub fn sym_f_to_json(f: &SymmetricForm<FnFieldElem>) -> Value {
    json!({
        "field": "F",
        "gram": f.gram.iter().map(|row| row.iter().map(fnfield_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn sym_f_from_json(conic: &ConicInstance, v: &Value) -> Result<SymmetricForm<FnFieldElem>> {
    let gram = gram_from_json(v, |x| fnfield_from_json(conic, x))?;
    SymmetricForm::try_new(gram)
}

pub fn herm_d_to_json(h: &HermDForm) -> Value {
    json!({
        "ring": "D",
        "epsilon": h.epsilon,
        "gram": h.gram.iter().map(|row| row.iter().map(quaternion_q_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn herm_d_from_json(conic: &ConicInstance, v: &Value) -> Result<HermDForm> {
    let eps = field(v, "epsilon")?
        .as_i64()
        .ok_or_else(|| Error::Parse("epsilon must be ±1".into()))? as i32;
    let gram = gram_from_json(v, |x| quaternion_q_from_json(conic, x))?;
    HermDForm::try_new(eps, gram)
}

pub fn herm_k_to_json(h: &HermKForm) -> Value {
    json!({
        "ring": "K",
        "epsilon": h.epsilon,
        "gram": h.gram.iter().map(|row| row.iter().map(quadext_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn herm_k_from_json(v: &Value) -> Result<HermKForm> {
    let eps = field(v, "epsilon")?
        .as_i64()
        .ok_or_else(|| Error::Parse("epsilon must be ±1".into()))? as i32;
    let gram = gram_from_json(v, quadext_from_json)?;
    HermKForm::try_new(eps, gram)
}

pub fn verdict_to_json(v: &WittVerdict) -> Value {
    match v {
        WittVerdict::Zero(c) => json!({ "verdict": "zero", "certificate": c.to_string() }),
        WittVerdict::NonZero(w) => json!({ "verdict": "nonzero", "witness": w.to_string() }),
        WittVerdict::Unknown(r) => json!({ "verdict": "unknown", "reason": r }),
    }
}

fn field<'v>(v: &'v Value, name: &str) -> Result<&'v Value> {
    v.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
}

fn gram_from_json<T>(
    v: &Value,
    parse: impl Fn(&Value) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    let rows = field(v, "gram")?
        .as_array()
        .ok_or_else(|| Error::Parse("gram must be an array of rows".into()))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("gram rows must be arrays".into()))?
                .iter()
                .map(&parse)
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::{make_conic, points_from_linear};

    fn hamilton() -> ConicInstance {
        make_conic(Rational::from_int(-1), Rational::from_int(-1)).unwrap()
    }

    #[test]
    fn round_trips() {
        let c = hamilton();
        let f = c.x().add(&c.y()).mul(&Field::inv(&c.x()).unwrap());
        let v = fnfield_to_json(&f);
        let back = fnfield_from_json(&c, &v).unwrap();
        assert_eq!(f, back);

        let q = algebra_q(&c).pure(
            &Rational::from_int(2),
            &Rational::from_frac(-3, 7),
            &Rational::from_int(5),
        );
        let back = quaternion_q_from_json(&c, &quaternion_q_to_json(&q)).unwrap();
        assert_eq!(q, back);

        let form = SymmetricForm::from_diagonal(&[Rational::from_int(2), Rational::from_int(-3)]);
        let back = sym_q_from_json(&sym_q_to_json(&form)).unwrap();
        assert_eq!(form.gram, back.gram);
    }

    use crate::field::Field;

    #[test]
    fn point_schema() {
        let c = hamilton();
        let p = points_from_linear(&c, &Rational::from_int(1), &Rational::from_int(2), &Rational::from_int(1));
        let v = point_to_json(&p);
        assert_eq!(v["degree"], 2);
        assert!(v["residue_modulus"].is_string());
        assert!(v["pi"]["g"]["num"].is_array());
        let inf = point_to_json(&ClosedPoint::Infinity(c));
        assert_eq!(inf["infinity"], true);
        assert_eq!(inf["residue_modulus"], "-1");
    }
}
