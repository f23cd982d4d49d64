use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Exit codes.
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, kind: "usage", message: message.into() }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Self { code: EXIT_DOMAIN, kind: "domain", message: message.into() }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Self { code: EXIT_INTERNAL, kind: "io", message: format!("{}: {err}", path.display()) }
    }

    /// One JSON object on one line.
    pub fn line(&self) -> String {
        let msg: String = self.message.split_whitespace().collect::<Vec<_>>().join(" ");
        serde_json::json!({ "error": self.kind, "exit_code": self.code, "message": msg }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line())
    }
}

impl From<rosenthal::Error> for CliError {
    fn from(e: rosenthal::Error) -> Self {
        use rosenthal::Error::*;
        let (code, kind) = match &e {
            Domain(_) => (EXIT_DOMAIN, "domain"),
            Resource(_) => (EXIT_INTERNAL, "resource"),
            Consistency(_) => (EXIT_INTERNAL, "consistency"),
        };
        let message = match e {
            Domain(m) | Resource(m) | Consistency(m) => m,
        };
        Self { code, kind, message }
    }
}

/// What a subcommand produced.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: Option<String>,
    pub files: Vec<(PathBuf, Vec<u8>)>,
    pub seed: Option<u64>,
}

impl Output {
    /// Sends `body` to `path` if given, else to stdout.
    pub fn to(path: Option<&PathBuf>, body: String) -> Self {
        let mut out = Output::default();
        out.push(path, body);
        out
    }

    pub fn push(&mut self, path: Option<&PathBuf>, body: String) {
        match path {
            Some(p) => self.files.push((p.clone(), body.into_bytes())),
            None => self.stdout = Some(body),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub bytes: usize,
    pub sha256: String,
}

/// Provenance record written next to the first output file.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a, P: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'a str,
    pub argv: &'a [String],
    pub parameters: &'a P,
    pub seed: Option<u64>,
    pub threads: usize,
    pub started_at: String,
    pub finished_at: String,
    pub outputs: Vec<FileDigest>,
}

pub fn timestamp(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::Millis, true)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<FileDigest, CliError> {
    let mut f = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    Ok(FileDigest { path: path.display().to_string(), bytes: bytes.len(), sha256: sha256_hex(bytes) })
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// 17 significant digits.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn csv<R: IntoIterator<Item = Vec<String>>>(header: &[&str], rows: R) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}
