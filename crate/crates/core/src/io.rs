//! Text formats for forms and structure constants.
//!
//! A form document:
//!
//! ```text
//! {
//!   "dim": 6,
//!   "degree": 3,
//!   "variance": "form",
//!   "terms": [
//!     {"indices": [1, 2, 3], "coeff": "1"},
//!     {"indices": [4, 5, 6], "coeff": "-3/2"}
//!   ]
//! }
//! ```
//!
//! Indices are 1-based and strictly increasing, each index set appears at
//! most once, and coefficients are strings `"n"` or `"n/d"`. Terms with a
//! zero coefficient are accepted and dropped. A polynomial-coefficient
//! form adds `"coefficients": "polynomial"` after `variance` and writes
//! each coefficient in the polynomial grammar (`"1 + x3^2"`).
//!
//! A structure-constant document lists the nonzero `C_ij^k` with `i < j`:
//!
//! ```text
//! {
//!   "dim": 6,
//!   "brackets": [
//!     {"i": 1, "j": 2, "k": 5, "coeff": "1"}
//!   ]
//! }
//! ```
//!
//! The serializers emit exactly this layout, so parsing and re-serializing
//! a canonical file reproduces it byte for byte.

use std::collections::BTreeSet;

use serde::Deserialize;

use crate::error::{FormError, Result};
use crate::exterior::{IndexSet, Variance, MAX_DIM};
use crate::lie::LieAlgebra;
use crate::polyforms::{PolyForm, Polynomial};
use crate::scalar::{format_rational, parse_rational};
use crate::{Form, Q};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    indices: Vec<usize>,
    coeff: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    dim: usize,
    degree: usize,
    variance: String,
    #[serde(default)]
    coefficients: Option<String>,
    terms: Vec<RawTerm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    i: usize,
    j: usize,
    k: usize,
    coeff: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    dim: usize,
    brackets: Vec<RawBracket>,
}

/// Either kind of form document.
#[derive(Clone, Debug, PartialEq)]
pub enum ParsedForm {
    Exact(Form),
    Polynomial(PolyForm),
}

fn json_error(e: serde_json::Error) -> FormError {
    FormError::Parse {
        position: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    }
}

fn at(position: String, message: impl Into<String>) -> FormError {
    FormError::Parse {
        position,
        message: message.into(),
    }
}

fn parse_variance(s: &str) -> Result<Variance> {
    match s {
        "form" => Ok(Variance::Form),
        "vector" => Ok(Variance::Vector),
        other => Err(at(
            "variance".into(),
            format!("expected \"form\" or \"vector\", found {other:?}"),
        )),
    }
}

fn check_header(raw: &RawForm) -> Result<()> {
    if raw.dim > MAX_DIM {
        return Err(at("dim".into(), format!("dimension above {MAX_DIM}")));
    }
    if raw.degree > raw.dim {
        return Err(at(
            "degree".into(),
            format!("degree {} exceeds dimension {}", raw.degree, raw.dim),
        ));
    }
    Ok(())
}

/// Validates the index lists and returns the index sets in input order.
fn index_sets(raw: &RawForm) -> Result<Vec<IndexSet>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(raw.terms.len());
    for (t, term) in raw.terms.iter().enumerate() {
        let pos = || format!("terms[{t}].indices");
        if term.indices.len() != raw.degree {
            return Err(at(
                pos(),
                format!("expected {} indices, found {}", raw.degree, term.indices.len()),
            ));
        }
        if let Some(&bad) = term.indices.iter().find(|&&i| i == 0 || i > raw.dim) {
            return Err(at(pos(), format!("index {bad} outside 1..={}", raw.dim)));
        }
        if term.indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(at(pos(), "indices must be strictly increasing"));
        }
        let set = IndexSet::from_one_based(&term.indices).expect("validated above");
        if !seen.insert(set) {
            return Err(at(pos(), "duplicate index set"));
        }
        out.push(set);
    }
    Ok(out)
}

/// Parses a form document of either coefficient kind.
pub fn parse_any_form(text: &str) -> Result<ParsedForm> {
    let raw: RawForm = serde_json::from_str(text).map_err(json_error)?;
    check_header(&raw)?;
    let variance = parse_variance(&raw.variance)?;
    let sets = index_sets(&raw)?;
    match raw.coefficients.as_deref() {
        None => {
            let mut terms = Vec::with_capacity(sets.len());
            for (t, (set, term)) in sets.into_iter().zip(&raw.terms).enumerate() {
                let c = parse_rational(&term.coeff).ok_or_else(|| {
                    at(
                        format!("terms[{t}].coeff"),
                        format!("malformed rational {:?}", term.coeff),
                    )
                })?;
                terms.push((set, c));
            }
            Ok(ParsedForm::Exact(Form::from_terms(raw.dim, raw.degree, variance, terms)?))
        }
        Some("polynomial") => {
            if variance != Variance::Form {
                return Err(at("variance".into(), "polynomial coefficients need a form"));
            }
            let mut terms = Vec::with_capacity(sets.len());
            for (t, (set, term)) in sets.into_iter().zip(&raw.terms).enumerate() {
                let p = Polynomial::parse(&term.coeff).map_err(|e| match e {
                    FormError::Parse { position, message } => {
                        at(format!("terms[{t}].coeff, {position}"), message)
                    }
                    other => other,
                })?;
                terms.push((set, p));
            }
            Ok(ParsedForm::Polynomial(PolyForm::from_terms(raw.dim, raw.degree, terms)?))
        }
        Some(other) => Err(at(
            "coefficients".into(),
            format!("expected \"polynomial\", found {other:?}"),
        )),
    }
}

/// Parses a rational-coefficient form document.
pub fn parse_form(text: &str) -> Result<Form> {
    match parse_any_form(text)? {
        ParsedForm::Exact(f) => Ok(f),
        ParsedForm::Polynomial(_) => Err(at(
            "coefficients".into(),
            "expected rational coefficients",
        )),
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn write_document(
    dim: usize,
    degree: usize,
    variance: Variance,
    polynomial: bool,
    terms: Vec<(Vec<usize>, String)>,
) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"dim\": {dim},\n"));
    out.push_str(&format!("  \"degree\": {degree},\n"));
    out.push_str(&format!("  \"variance\": \"{}\",\n", variance.as_str()));
    if polynomial {
        out.push_str("  \"coefficients\": \"polynomial\",\n");
    }
    if terms.is_empty() {
        out.push_str("  \"terms\": []\n");
    } else {
        out.push_str("  \"terms\": [\n");
        let lines: Vec<String> = terms
            .into_iter()
            .map(|(idx, c)| {
                let idx: Vec<String> = idx.iter().map(ToString::to_string).collect();
                format!("    {{\"indices\": [{}], \"coeff\": {}}}", idx.join(", "), quote(&c))
            })
            .collect();
        out.push_str(&lines.join(",\n"));
        out.push_str("\n  ]\n");
    }
    out.push_str("}\n");
    out
}

/// Canonical text of an exact form.
pub fn serialize_form(f: &Form) -> String {
    let terms = f
        .terms()
        .iter()
        .map(|(s, c)| (s.one_based(), format_rational(c)))
        .collect();
    write_document(f.dim(), f.degree(), f.variance(), false, terms)
}

/// Canonical text of a polynomial-coefficient form.
pub fn serialize_polyform(f: &PolyForm) -> String {
    let terms = f
        .terms()
        .iter()
        .map(|(s, p)| (s.one_based(), p.to_string()))
        .collect();
    write_document(f.dim(), f.degree(), Variance::Form, true, terms)
}

pub fn serialize_any_form(f: &ParsedForm) -> String {
    match f {
        ParsedForm::Exact(f) => serialize_form(f),
        ParsedForm::Polynomial(p) => serialize_polyform(p),
    }
}

/// Parses a structure-constant document.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra<Q>> {
    let raw: RawAlgebra = serde_json::from_str(text).map_err(json_error)?;
    if raw.dim > MAX_DIM {
        return Err(at("dim".into(), format!("dimension above {MAX_DIM}")));
    }
    let mut seen = BTreeSet::new();
    let mut list = Vec::with_capacity(raw.brackets.len());
    for (t, b) in raw.brackets.iter().enumerate() {
        let pos = format!("brackets[{t}]");
        if [b.i, b.j, b.k].iter().any(|&x| x == 0 || x > raw.dim) {
            return Err(at(pos, format!("index outside 1..={}", raw.dim)));
        }
        if b.i >= b.j {
            return Err(at(pos, "brackets need i < j"));
        }
        if !seen.insert((b.i, b.j, b.k)) {
            return Err(at(pos, "duplicate (i, j, k)"));
        }
        let c = parse_rational(&b.coeff).ok_or_else(|| {
            at(
                format!("brackets[{t}].coeff"),
                format!("malformed rational {:?}", b.coeff),
            )
        })?;
        list.push((b.i, b.j, b.k, c));
    }
    LieAlgebra::from_brackets(raw.dim, &list)
}

/// Canonical text of structure constants, sorted by `(i, j, k)`.
pub fn serialize_algebra(alg: &LieAlgebra<Q>) -> String {
    let brackets = alg.brackets();
    let mut out = format!("{{\n  \"dim\": {},\n", alg.dim());
    if brackets.is_empty() {
        out.push_str("  \"brackets\": []\n}\n");
        return out;
    }
    out.push_str("  \"brackets\": [\n");
    let lines: Vec<String> = brackets
        .iter()
        .map(|(i, j, k, c)| {
            format!(
                "    {{\"i\": {i}, \"j\": {j}, \"k\": {k}, \"coeff\": {}}}",
                quote(&format_rational(c))
            )
        })
        .collect();
    out.push_str(&lines.join(",\n"));
    out.push_str("\n  ]\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    const TYPE_B: &str = "{\n  \"dim\": 6,\n  \"degree\": 3,\n  \"variance\": \"form\",\n  \"terms\": [\n    {\"indices\": [1, 2, 3], \"coeff\": \"1\"},\n    {\"indices\": [1, 5, 6], \"coeff\": \"1\"},\n    {\"indices\": [3, 4, 5], \"coeff\": \"1\"}\n  ]\n}\n";

    #[test]
    fn round_trip() {
        let f = parse_form(TYPE_B).unwrap();
        assert_eq!(f.nnz(), 3);
        assert_eq!(serialize_form(&f), TYPE_B);
    }

    #[test]
    fn empty_terms_give_zero_form() {
        let f = parse_form(r#"{"dim": 4, "degree": 2, "variance": "vector", "terms": []}"#).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.degree(), 2);
        assert_eq!(f.variance(), Variance::Vector);
    }

    #[test]
    fn errors_have_positions() {
        let bad = r#"{"dim": 4, "degree": 2, "variance": "form", "terms": [{"indices": [2, 1], "coeff": "1"}]}"#;
        match parse_form(bad) {
            Err(FormError::Parse { position, .. }) => assert_eq!(position, "terms[0].indices"),
            other => panic!("{other:?}"),
        }
        let bad = r#"{"dim": 4, "degree": 2, "variance": "form", "terms": [{"indices": [1, 2], "coeff": "0.5"}]}"#;
        match parse_form(bad) {
            Err(FormError::Parse { position, .. }) => assert_eq!(position, "terms[0].coeff"),
            other => panic!("{other:?}"),
        }
        let bad = "{\"dim\": 4,\n \"degree\": }";
        match parse_form(bad) {
            Err(FormError::Parse { position, .. }) => assert!(position.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
        let dup = r#"{"dim": 3, "degree": 1, "variance": "form", "terms": [{"indices": [1], "coeff": "1"}, {"indices": [1], "coeff": "2"}]}"#;
        assert!(parse_form(dup).is_err());
        let extra = r#"{"dim": 3, "degree": 1, "variance": "form", "terms": [], "x": 1}"#;
        assert!(parse_form(extra).is_err());
    }

    #[test]
    fn polynomial_documents() {
        let f = PolyForm::monomial(4, &[1, 2], Polynomial::parse("1 + x3^2").unwrap());
        let text = serialize_polyform(&f);
        assert!(text.contains("\"coefficients\": \"polynomial\""));
        assert_eq!(parse_any_form(&text).unwrap(), ParsedForm::Polynomial(f));
        assert!(parse_form(&text).is_err());
    }

    #[test]
    fn algebra_round_trip() {
        let alg = LieAlgebra::from_brackets(6, &[(1, 2, 5, rat(1, 1)), (1, 3, 6, rat(-1, 2))]).unwrap();
        let text = serialize_algebra(&alg);
        assert_eq!(parse_algebra(&text).unwrap(), alg);
        assert_eq!(serialize_algebra(&parse_algebra(&text).unwrap()), text);
        let bad = r#"{"dim": 3, "brackets": [{"i": 2, "j": 1, "k": 3, "coeff": "1"}]}"#;
        assert!(parse_algebra(bad).is_err());
    }
}
