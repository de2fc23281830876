//! JSON encodings shared by every subcommand.

use extform::io::{serialize_form, serialize_polyform};
use extform::scalar::format_rational;
use extform::{Form, FormF64 as Form64, Mat, PolyForm, Subspace, Q};
use serde_json::{json, Value};

pub fn form(f: &Form) -> Value {
    serde_json::from_str(&serialize_form(f)).expect("serializer emits JSON")
}

pub fn polyform(f: &PolyForm) -> Value {
    serde_json::from_str(&serialize_polyform(f)).expect("serializer emits JSON")
}

pub fn rational(q: &Q) -> Value {
    Value::String(format_rational(q))
}

pub fn vector(v: &[Q]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn matrix(m: &Mat<Q>) -> Value {
    Value::Array(m.row_vectors().iter().map(|r| vector(r)).collect())
}

pub fn matrix_f64(m: &Mat<f64>) -> Value {
    Value::Array(m.row_vectors().into_iter().map(|r| json!(r)).collect())
}

/// Basis vectors are the rows of the canonical echelon basis.
pub fn subspace(s: &Subspace<Q>) -> Value {
    json!({
        "variance": s.variance().as_str(),
        "dim": s.dim(),
        "basis": s.basis_vectors().iter().map(|v| vector(v)).collect::<Vec<_>>(),
    })
}

pub fn document(command: &str, ok: bool, result: Value) -> Value {
    json!({
        "command": command,
        "status": if ok { "ok" } else { "failed" },
        "result": result,
    })
}

pub fn form_f64(f: &Form64) -> Value {
    json!({
        "dim": f.dim(),
        "degree": f.degree(),
        "variance": f.variance().as_str(),
        "terms": f.terms().iter().map(|(s, c)| json!({"indices": s.one_based(), "coeff": c})).collect::<Vec<_>>(),
    })
}

pub fn subspace_f64(s: &Subspace<f64>) -> Value {
    json!({
        "variance": s.variance().as_str(),
        "dim": s.dim(),
        "basis": s.basis_vectors(),
    })
}
