use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Debug)]
pub enum Failure {
    /// Bad invocation, exit 2.
    Usage(String),
    /// Input or precondition problem, exit 1.
    Domain(ErrorReport),
}

impl Failure {
    pub fn domain(code: &str, message: impl Into<String>) -> Self {
        Failure::Domain(ErrorReport { error: ErrorBody { code: code.into(), message: message.into() } })
    }
}

impl From<quatloc::Error> for Failure {
    fn from(e: quatloc::Error) -> Self {
        Failure::domain(e.code(), e.to_string())
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Outcome<T> {
    let text = fs::read_to_string(path).map_err(|e| Failure::domain("io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::domain("invalid-input", format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Outcome {
    fs::write(path, contents).map_err(|e| Failure::domain("io", format!("{}: {e}", path.display())))
}

/// The report goes to `path` when given (with `summary` on stdout), else to stdout.
pub fn emit_json<T: Serialize>(path: Option<&Path>, report: &T, summary: &str) -> Outcome {
    let text = serde_json::to_string_pretty(report).expect("reports serialize") + "\n";
    match path {
        Some(p) => {
            write_file(p, &text)?;
            print!("{summary}");
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn emit_csv(path: Option<&Path>, header: &[&str], rows: &[Vec<String>]) -> Outcome {
    let Some(path) = path else { return Ok(()) };
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::domain("io", e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::domain("io", e.to_string()))?;
    write_file(path, &String::from_utf8(bytes).expect("csv is utf-8"))
}

pub fn emit_text(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => write_file(p, text),
        None => Ok(()),
    }
}

pub fn num(x: f64) -> String {
    serde_json::to_string(&x).expect("finite number")
}
