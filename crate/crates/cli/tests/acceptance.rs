//! Acceptance run: one pass/fail line per criterion.
//!
//! Criteria 1-8 run in process through the verification suite. Criterion 9
//! covers the command line: fixtures survive a parse/serialize round trip
//! byte for byte, and `extform verify-paper` exits 0 with a report that
//! agrees check for check with the in-process run.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};

use extform::io::{parse_algebra, parse_any_form, serialize_algebra, serialize_any_form};
use extform_cli::verify::{run_all, VerificationReport, CRITERIA};
use serde_json::Value;

const SEED: u64 = 0;

fn fixtures_round_trip() -> Result<usize, String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut count = 0;
    for entry in fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let text = fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let again = if text.contains("\"brackets\"") {
            parse_algebra(&text).map(|a| serialize_algebra(&a))
        } else {
            parse_any_form(&text).map(|f| serialize_any_form(&f))
        }
        .map_err(|e| format!("{}: {e}", path.display()))?;
        if again != text {
            return Err(format!("{} changed on round trip", path.display()));
        }
        count += 1;
    }
    Ok(count)
}

fn binary_agrees(in_process: &VerificationReport) -> Result<(), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("verify.json");
    let status = Command::new(env!("CARGO_BIN_EXE_extform"))
        .args(["verify-paper", "--seed", &SEED.to_string(), "-o", out.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?
        .status;
    if status.code() != Some(0) {
        return Err(format!("verify-paper exited with {status}"));
    }
    let text = fs::read_to_string(&out).map_err(|e| e.to_string())?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    if doc["status"] != "ok" {
        return Err("report status is not ok".into());
    }
    if doc["result"] != in_process.to_json() {
        return Err("binary report differs from the in-process run".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    // the libtest harness flags (--nocapture, filters, ...) are accepted and ignored
    let report = run_all(SEED);
    let mut all = true;
    for (i, title) in CRITERIA.iter().enumerate() {
        let k = (i + 1) as u8;
        let checks: Vec<_> = report.checks.iter().filter(|c| c.criterion == k).collect();
        let ok = !checks.is_empty() && checks.iter().all(|c| c.passed);
        all &= ok;
        println!("criterion {k}: {} - {title} ({} checks)", if ok { "PASS" } else { "FAIL" }, checks.len());
        for c in checks.iter().filter(|c| !c.passed) {
            println!("    {} [{}]: {}", c.id, c.anchor, c.details);
        }
    }

    let nine = fixtures_round_trip().and_then(|n| binary_agrees(&report).map(|_| n));
    match &nine {
        Ok(n) => println!("criterion 9: PASS - {n} fixtures round-trip, verify-paper exits 0 and matches"),
        Err(e) => println!("criterion 9: FAIL - {e}"),
    }
    all &= nine.is_ok();

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
