use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use extform::io::{parse_algebra, parse_any_form, serialize_algebra, serialize_any_form};
use extform_cli::verify;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn extform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extform")).args(args).output().expect("binary runs")
}

/// Runs with `-o` and returns the exit code and the report document.
fn report(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["-o", out.to_str().unwrap()]);
    let o = extform(&all);
    let doc = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    (o.status.code().unwrap(), doc)
}

fn stdout_doc(o: &Output) -> Value {
    // the document is the first JSON value on stdout; summary lines follow
    let text = String::from_utf8_lossy(&o.stdout);
    let mut stream = serde_json::Deserializer::from_str(&text).into_iter::<Value>();
    stream.next().unwrap().unwrap()
}

#[test]
fn fixtures_round_trip_byte_for_byte() {
    let mut seen = 0;
    for entry in fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let again = if text.contains("\"brackets\"") {
            serialize_algebra(&parse_algebra(&text).unwrap())
        } else {
            serialize_any_form(&parse_any_form(&text).unwrap())
        };
        assert_eq!(again, text, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 15);
}

#[test]
fn classify_exit_codes_follow_the_type() {
    for (name, code, letter) in [
        ("type-a.json", 10, "a"),
        ("type-b.json", 11, "b"),
        ("type-c.json", 12, "c"),
        ("type-d.json", 13, "d"),
        ("type-e.json", 14, "e"),
        ("zero-3form.json", 15, "0"),
    ] {
        let (got, doc) = report(&["classify", fixture(name).to_str().unwrap()]);
        assert_eq!(got, code, "{name}");
        assert_eq!(doc["status"], "ok");
        assert_eq!(doc["result"]["letter"], letter, "{name}");
    }
}

#[test]
fn classify_rejects_other_shapes() {
    let o = extform(&["classify", fixture("symplectic-6.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout_doc(&o)["error"]["kind"], "math");
}

#[test]
fn float_mode_reports_inexact_invariants() {
    let (code, doc) = report(&["--mode", "float", "classify", fixture("type-a.json").to_str().unwrap()]);
    assert_eq!(code, 10);
    assert_eq!(doc["result"]["invariants"]["exact"], false);
}

#[test]
fn parse_errors_carry_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"dim": 4, "degree": 2, "variance": "form", "terms": [{"indices": [2, 1], "coeff": "1"}]}"#,
    )
    .unwrap();
    let o = extform(&["profile", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let doc = stdout_doc(&o);
    assert_eq!(doc["status"], "error");
    assert_eq!(doc["error"]["kind"], "parse");
    assert_eq!(doc["error"]["position"], "terms[0].indices");

    fs::write(&bad, "{\"dim\": 4,\n  \"degree\": }").unwrap();
    let o = extform(&["profile", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let position = stdout_doc(&o)["error"]["position"].as_str().unwrap().to_string();
    assert!(position.starts_with("line 2, column"), "{position}");
}

#[test]
fn missing_files_are_io_errors() {
    let o = extform(&["profile", "/nonexistent/form.json"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stdout_doc(&o)["error"]["kind"], "io");
}

#[test]
fn profile_of_a_form_with_one_divisor() {
    let (code, doc) = report(&["profile", fixture("one-divisor-5.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = &doc["result"];
    assert_eq!(r["divisors"]["dim"], 1);
    assert_eq!(r["decomposable"], false);
    assert_eq!(r["indivisible"], false);
}

#[test]
fn output_flag_keeps_stdout_to_the_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = extform(&["profile", fixture("symplectic-6.json").to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(!stdout.contains('{'));
    assert!(stdout.contains("rank"));
    let doc: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(doc["command"], "profile");
    assert_eq!(doc["result"]["rank"], 6);
}

#[test]
fn dualize_and_recover() {
    let (code, doc) = report(&["dualize", fixture("symplectic-6.json").to_str().unwrap()]);
    assert_eq!(code, 0, "{doc}");
    let (code, _) = report(&["dualize", "--recover", fixture("one-divisor-5.json").to_str().unwrap()]);
    assert_eq!(code, 3);
}

#[test]
fn isotropy_of_the_g2_form() {
    let (code, doc) = report(&["isotropy", fixture("g2.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["dim"], 14);
    assert!(doc["result"]["skew_metric"].is_array());
}

#[test]
fn lie_check_reports_the_degenerate_invariant_form() {
    let (code, doc) = report(&[
        "lie-check",
        fixture("nilpotent-b.json").to_str().unwrap(),
        "--mu",
        fixture("nilpotent-b-mu.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let mu = &doc["result"]["mu"];
    assert_eq!(mu["closed"], true);
    assert_eq!(mu["type"], "b");
    assert_eq!(mu["h_bracket_closed"], false);
}

#[test]
fn lie_check_catalog_and_broken_jacobi() {
    let (code, doc) = report(&["lie-check", "catalog:sl3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["semisimple"], true);
    assert_eq!(doc["result"]["cartan"]["closed"], true);
    assert_eq!(doc["result"]["cartan"]["isotropy_equals_ad"], true);
    assert_eq!(doc["result"]["cartan"]["isotropy_dim"], 8);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("alg.json");
    // [e1, e2] = e3 and [e2, e3] = e1 with nothing else fails Jacobi
    fs::write(
        &bad,
        r#"{"dim": 3, "brackets": [{"i": 1, "j": 2, "k": 3, "coeff": "1"}, {"i": 2, "j": 3, "k": 1, "coeff": "1"}, {"i": 1, "j": 3, "k": 1, "coeff": "1"}]}"#,
    )
    .unwrap();
    let o = extform(&["lie-check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_doc(&o)["result"]["jacobi"], false);

    let o = extform(&["lie-check", "catalog:nope"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn duncl_verdicts() {
    let (code, doc) = report(&["duncl", "--m", "3", "--phi", "1 + x3^2 + x5^2", "1", "1"]);
    assert_eq!(code, 0);
    let r = &doc["result"];
    assert_eq!(r["indivisible_at_samples"], true);
    assert_eq!(r["dual_at_samples"], true);
    assert_eq!(r["zeta_closed"], true);
    assert_eq!(r["sigma_closed"], false);
    assert_eq!(r["zeta"]["coefficients"], "polynomial");

    let (code, doc) = report(&["duncl", "--m", "2", "--phi", "1", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["sigma_closed"], true);

    let o = extform(&["duncl", "--m", "2", "--phi", "1 +", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_alias_and_single_criterion() {
    let (code, doc) = report(&["verify-paper", "--criterion", "2", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(doc["command"], "verify");
    assert_eq!(doc["result"]["seed"], 7);
    let checks = doc["result"]["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["criterion"] == 2 && c["passed"] == true));

    let o = extform(&["verify", "--criterion", "9"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn check_ids_are_unique_and_cover_every_criterion() {
    let ids = verify::check_ids();
    let mut names: Vec<&str> = ids.iter().map(|(id, _)| id.as_str()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), ids.len());
    for k in 1..=8u8 {
        assert!(ids.iter().any(|(id, c)| *c == k && id.starts_with(&format!("c{k}."))));
    }
}

#[test]
fn seeded_runs_are_reproducible() {
    let a = verify::run_criterion(4, 11);
    let b = verify::run_criterion(4, 11);
    assert_eq!(a.to_json(), b.to_json());
}
