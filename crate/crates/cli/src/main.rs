use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use extform_cli::commands::EXIT_IO;
use extform_cli::report;
use extform_cli::{run, Cli};

fn emit(cli: &Cli, doc: &serde_json::Value, summary: &[String]) -> Result<(), String> {
    let text = serde_json::to_string_pretty(doc).expect("report is valid JSON") + "\n";
    let mut out = std::io::stdout().lock();
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string())?,
    }
    for line in summary {
        writeln!(out, "{line}").map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (doc, summary, code) = match run(&cli) {
        Ok(o) => (o.report, o.summary, o.exit),
        Err(e) => {
            eprintln!("extform: {e}");
            let mut doc = report::document(cli.command.name(), false, serde_json::Value::Null);
            doc["status"] = "error".into();
            doc["error"] = e.to_json();
            (doc, Vec::new(), e.exit_code())
        }
    };
    if let Err(e) = emit(&cli, &doc, &summary) {
        eprintln!("extform: cannot write report: {e}");
        return ExitCode::from(EXIT_IO as u8);
    }
    ExitCode::from(code as u8)
}
