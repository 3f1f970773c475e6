//! Python bindings.
//!
//! Every function returns a JSON string with the same shape the CLI prints,
//! so Python callers can `json.loads` the result. Errors raise `ValueError`.

use std::str::FromStr;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::json;

use pgl3_descent::curves::{
    aut_contains, aut_sigma_compat, d10_group, moduli_obstruction_quintic, quintic_member,
    smoothness_check_quintic,
};
use pgl3_descent::cyclotomic::Rat;
use pgl3_descent::descent::{
    cyclic_normal_form, real_model_cyclic, real_model_dihedral, verdict_cyclic, verdict_for_form,
    CyclicNormalForm, RealModelParams,
};
use pgl3_descent::primitive::catalog as primitive_catalog;
use pgl3_descent::primitive::real_model_a5;
use pgl3_descent::projlinear::ProjElement;
use pgl3_descent::selftest::run_all;

fn raise<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string_pretty(value).map_err(raise)
}

fn params_from(
    alpha: Option<&str>,
    beta: Option<&str>,
    conductor: u32,
) -> PyResult<RealModelParams> {
    RealModelParams::from_strings(alpha, beta, conductor).map_err(raise)
}

/// Classify the cyclic group generated by diag(1, z^a, z^b), z = zeta_n.
#[pyfunction]
fn classify(n: u32, a: u32, b: u32) -> PyResult<String> {
    let nf = CyclicNormalForm::new(n, a, b).map_err(raise)?;
    let verdict = verdict_for_form(&nf).map_err(raise)?;
    to_json(&json!({
        "input": {"n": n, "a": a, "b": b},
        "verdict": verdict,
    }))
}

/// Classify the cyclic group generated by a serialized matrix.
#[pyfunction]
fn classify_element(matrix_json: &str) -> PyResult<String> {
    let element: ProjElement = serde_json::from_str(matrix_json).map_err(raise)?;
    let nf = cyclic_normal_form(&element).map_err(raise)?;
    let verdict = verdict_cyclic(&element).map_err(raise)?;
    to_json(&json!({"normal_form": nf, "verdict": verdict}))
}

/// Real model for the cyclic form (n, a, b); b defaults to n - a.
#[pyfunction]
#[pyo3(signature = (n, a, b=None, alpha=None, beta=None, conductor=4))]
fn cyclic_real_model(
    n: u32,
    a: u32,
    b: Option<u32>,
    alpha: Option<&str>,
    beta: Option<&str>,
    conductor: u32,
) -> PyResult<String> {
    let b = b.unwrap_or_else(|| n.saturating_sub(a));
    let nf = CyclicNormalForm::new(n, a, b).map_err(raise)?;
    let params = params_from(alpha, beta, conductor)?;
    let model = real_model_cyclic(&nf, &params).map_err(raise)?;
    to_json(&json!({"form": nf, "model": model}))
}

/// Real model for the dihedral group of order 2n twisted by a.
#[pyfunction]
#[pyo3(signature = (n, a=1, alpha=None, beta=None, conductor=4))]
fn dihedral_real_model(
    n: u32,
    a: u32,
    alpha: Option<&str>,
    beta: Option<&str>,
    conductor: u32,
) -> PyResult<String> {
    let params = params_from(alpha, beta, conductor)?;
    let model = real_model_dihedral(n, a, &params).map_err(raise)?;
    to_json(&json!({"n": n, "a": a, "model": model}))
}

/// Real model for the icosahedral group.
#[pyfunction]
#[pyo3(signature = (alpha=None, beta=None, conductor=4))]
fn a5_real_model(alpha: Option<&str>, beta: Option<&str>, conductor: u32) -> PyResult<String> {
    let params = params_from(alpha, beta, conductor)?;
    let model = real_model_a5(&params).map_err(raise)?;
    to_json(&model)
}

/// The primitive-subgroup catalog.
#[pyfunction]
fn catalog() -> PyResult<String> {
    let entries = primitive_catalog().map_err(raise)?;
    to_json(&entries)
}

/// Run all checks on the quintic family member with parameters a, b
/// given as rational strings like "1" or "3/2".
#[pyfunction]
fn quintic_check(a: &str, b: &str) -> PyResult<String> {
    let a = Rat::from_str(a).map_err(|e| raise(format!("a: {e}")))?;
    let b = Rat::from_str(b).map_err(|e| raise(format!("b: {e}")))?;
    let member = quintic_member(&a, &b).map_err(raise)?;
    let cert = smoothness_check_quintic(&member).map_err(raise)?;
    let d10 = d10_group().map_err(raise)?;
    let contains = aut_contains(&member.poly, &d10).map_err(raise)?;
    let compatible = contains && aut_sigma_compat(&member.poly, &d10).map_err(raise)?;
    let report = moduli_obstruction_quintic(&member).map_err(raise)?;
    to_json(&json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "smooth": cert.smooth,
        "aut_contains_D10": contains,
        "moduli_obstruction": report.obstructed,
        "certificates": {
            "smoothness": cert,
            "sigma_compatibility": compatible,
            "moduli": report,
        },
    }))
}

/// Run the full acceptance suite; the result lists one report per criterion.
#[pyfunction]
fn selftest() -> PyResult<String> {
    let reports = run_all();
    let passed = reports.iter().all(|r| r.passed);
    to_json(&json!({"passed": passed, "criteria": reports}))
}

#[pymodule]
fn pgl3descent(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(classify_element, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_real_model, m)?)?;
    m.add_function(wrap_pyfunction!(dihedral_real_model, m)?)?;
    m.add_function(wrap_pyfunction!(a5_real_model, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(quintic_check, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
