//! Python bindings: a thin string/JSON surface over the core library.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use wittconic::arith::Rational;
use wittconic::conic::{make_conic, points_from_linear, ClosedPoint, ConicInstance};
use wittconic::error::Error;
use wittconic::field::Field;
use wittconic::parse::{parse_function_field, parse_quadext, parse_quaternion_q};
use wittconic::quaternion::generic_relations_violations;
use wittconic::residues;
use wittconic::serialize as ser;
use wittconic::suite::{run_suite, SuiteConfig};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// The conic y² = ax² + b of a rational quaternion division algebra (a, b).
#[pyclass]
struct Conic {
    inner: ConicInstance,
}

#[pymethods]
impl Conic {
    /// Validates (a, b); raises ValueError for split algebras.
    #[new]
    fn new(a: &str, b: &str) -> PyResult<Self> {
        let a = Rational::parse(a).map_err(err)?;
        let b = Rational::parse(b).map_err(err)?;
        let inner = make_conic(a, b).map_err(err)?;
        Ok(Conic { inner })
    }

    fn __repr__(&self) -> String {
        format!("Conic(y^2 = {}*x^2 + {})", self.inner.a, self.inner.b)
    }

    /// True when the generic ideal relations hold identically in F.
    fn generic_relations_hold(&self) -> bool {
        generic_relations_violations(&self.inner).is_empty()
    }

    /// The degree-2 closed point cut by c1 + c2·x + c3·y = 0, as JSON.
    fn point_from_line(&self, c1: &str, c2: &str, c3: &str) -> PyResult<String> {
        let c1 = Rational::parse(c1).map_err(err)?;
        let c2 = Rational::parse(c2).map_err(err)?;
        let c3 = Rational::parse(c3).map_err(err)?;
        if c2.is_zero() && c3.is_zero() {
            return Err(PyValueError::new_err("need (c2, c3) != (0, 0)"));
        }
        let p = points_from_linear(&self.inner, &c1, &c2, &c3);
        Ok(ser::point_to_json(&p).to_string())
    }

    /// Valuation of a function-field expression at a point spec
    /// ("infinity" or "line:c1,c2,c3").
    fn valuation(&self, expr: &str, point: &str) -> PyResult<i64> {
        let f = parse_function_field(&self.inner, expr).map_err(err)?;
        if Field::is_zero(&f) {
            return Err(PyValueError::new_err("valuation of zero"));
        }
        let p = self.parse_point(point)?;
        Ok(wittconic::conic::valuation(&f, &p))
    }

    /// Certifies Σ_p t_p(∂²_p⟨f⟩) = 0 for a square-free f in O_af; returns a
    /// human-readable report and raises on failure.
    fn nullity(&self, f: &str) -> PyResult<String> {
        let elem = parse_function_field(&self.inner, f).map_err(err)?;
        let report = residues::nullity_certify(&self.inner, &elem).map_err(err)?;
        let mut out = Vec::new();
        out.push(format!("n = {}", report.n));
        for (p, r, q) in &report.contributions {
            out.push(format!("{p}: residue {r}, transfer <{q}>"));
        }
        if let Some(z) = &report.infinity_contribution {
            out.push(format!("infinity: transfer <{z}>"));
        }
        out.push(format!("verdict: {}", report.verdict.summary()));
        Ok(out.join("\n"))
    }

    /// Solves t_p(⟨f⟩) = ⟨q⟩ for a pure quaternion expression; returns
    /// (point_json, f_string).
    fn surject(&self, q: &str) -> PyResult<(String, String)> {
        let target = parse_quaternion_q(&self.inner, q).map_err(err)?;
        let w = residues::surjectivity_solve(&self.inner, &target).map_err(err)?;
        Ok((ser::point_to_json(&w.point).to_string(), w.f.to_string()))
    }

    /// The quaternionic transfer of ⟨f⟩ at a point spec, as quaternion JSON.
    fn transfer(&self, point: &str, f: &str) -> PyResult<String> {
        let p = self.parse_point(point)?;
        let q = if p.is_infinity() {
            let g = parse_quadext(&self.inner.infinity_modulus(), f).map_err(err)?;
            residues::transfer_tinfty_rank_one(&self.inner, &g)
        } else {
            let modulus = p
                .residue_modulus()
                .ok_or_else(|| PyValueError::new_err("degree-2 point required"))?;
            let g = parse_quadext(&modulus, f).map_err(err)?;
            let pair = wittconic::conic::coherent_functional(&p).map_err(err)?;
            residues::transfer_tp_rank_one(&self.inner, &pair, &g).map_err(err)?
        };
        Ok(ser::quaternion_q_to_json(&q).to_string())
    }

    /// Residue of a JSON-serialized form over F at a point spec;
    /// kind 1 is the first residue map, kind 2 the second.
    #[pyo3(signature = (form_json, point, kind=2))]
    fn residue(&self, form_json: &str, point: &str, kind: u8) -> PyResult<String> {
        let value: serde_json::Value = serde_json::from_str(form_json)
            .map_err(|e| PyValueError::new_err(format!("bad JSON: {e}")))?;
        let form = ser::sym_f_from_json(&self.inner, &value).map_err(err)?;
        let p = self.parse_point(point)?;
        let res = match kind {
            1 => residues::first_residue(&form, &p).map_err(err)?,
            2 => residues::second_residue(&form, &p).map_err(err)?,
            other => {
                return Err(PyValueError::new_err(format!(
                    "kind must be 1 or 2, got {other}"
                )))
            }
        };
        Ok(ser::sym_quad_to_json(&res).to_string())
    }

    /// Applies a named map (pi1, pi2, sigma1, sigma2, ext_D, s_D, s_K,
    /// theta, psi, rho) to a JSON-serialized form; returns JSON.
    fn map_apply(&self, name: &str, form_json: &str) -> PyResult<String> {
        let value: serde_json::Value = serde_json::from_str(form_json)
            .map_err(|e| PyValueError::new_err(format!("bad JSON: {e}")))?;
        let conic = &self.inner;
        use wittconic::maps;
        let out = match name {
            "pi1" => ser::herm_k_to_json(&maps::pi1(
                conic,
                &ser::herm_d_from_json(conic, &value).map_err(err)?,
            )),
            "pi2" => ser::sym_quad_to_json(
                &maps::pi2(conic, &ser::herm_d_from_json(conic, &value).map_err(err)?)
                    .map_err(err)?,
            ),
            "sigma1" => ser::herm_d_to_json(&maps::sigma1(
                conic,
                &ser::herm_k_from_json(&value).map_err(err)?,
            )),
            "sigma2" => ser::herm_d_to_json(&maps::sigma2(
                conic,
                &ser::sym_quad_from_json(&value).map_err(err)?,
            )),
            "ext_D" => ser::herm_d_to_json(&maps::ext_d(
                conic,
                &ser::sym_q_from_json(&value).map_err(err)?,
            )),
            "s_D" => ser::sym_q_to_json(
                &wittconic::forms::s_d_trace_form(
                    conic,
                    &ser::herm_d_from_json(conic, &value).map_err(err)?,
                )
                .map_err(err)?,
            ),
            "s_K" => ser::sym_q_to_json(
                &wittconic::forms::s_k_trace_form(
                    conic,
                    &ser::herm_k_from_json(&value).map_err(err)?,
                )
                .map_err(err)?,
            ),
            "theta" => ser::herm_k_to_json(&maps::theta(
                conic,
                &ser::sym_q_from_json(&value).map_err(err)?,
            )),
            "psi" => ser::sym_quad_to_json(
                &maps::psi(conic, &ser::sym_quad_from_json(&value).map_err(err)?)
                    .map_err(err)?,
            ),
            "rho" => ser::sym_f_to_json(
                &maps::rho(conic, &ser::herm_d_from_json(conic, &value).map_err(err)?)
                    .map_err(err)?,
            ),
            other => {
                return Err(PyValueError::new_err(format!("unknown map {other:?}")));
            }
        };
        Ok(out.to_string())
    }
}

impl Conic {
    fn parse_point(&self, spec: &str) -> PyResult<ClosedPoint> {
        if spec == "infinity" || spec == "inf" {
            return Ok(ClosedPoint::Infinity(self.inner.clone()));
        }
        if let Some(rest) = spec.strip_prefix("line:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() == 3 {
                let c1 = Rational::parse(parts[0]).map_err(err)?;
                let c2 = Rational::parse(parts[1]).map_err(err)?;
                let c3 = Rational::parse(parts[2]).map_err(err)?;
                return Ok(points_from_linear(&self.inner, &c1, &c2, &c3));
            }
        }
        Err(PyValueError::new_err(
            "point spec must be \"infinity\" or \"line:c1,c2,c3\"",
        ))
    }
}

/// Runs verification suites; returns (passed, report_text).
#[pyfunction]
#[pyo3(signature = (a="-1", b="-1", seed=0, trials=20, suites=None))]
fn verify(
    a: &str,
    b: &str,
    seed: u64,
    trials: u32,
    suites: Option<Vec<String>>,
) -> PyResult<(bool, String)> {
    let cfg = SuiteConfig {
        a: Rational::parse(a).map_err(err)?,
        b: Rational::parse(b).map_err(err)?,
        seed,
        trials,
        suites: suites.unwrap_or_default(),
        ..Default::default()
    };
    let report = run_suite(&cfg).map_err(err)?;
    Ok((report.passed(), report.render(false)))
}

/// The canonical suite names.
#[pyfunction]
fn suite_names() -> Vec<String> {
    wittconic::suite::ALL_SUITES.iter().map(|s| s.to_string()).collect()
}

#[pymodule]
fn wittconic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Conic>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    Ok(())
}
