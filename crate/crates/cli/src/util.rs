//! Shared command plumbing: structured errors with exit codes, atomic file
//! writes, and run manifests.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exit codes: 1 usage, 2 input validation, 3 runtime failure.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Runtime(String),
}

impl CliError {
    pub fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }

    pub fn runtime(e: impl std::fmt::Display) -> Self {
        CliError::Runtime(e.to_string())
    }

    pub fn emit(&self) -> ExitCode {
        let (kind, message, code) = match self {
            CliError::Usage(m) => ("usage", m, 1),
            CliError::Input(m) => ("input", m, 2),
            CliError::Runtime(m) => ("runtime", m, 3),
        };
        emit_error(kind, message);
        ExitCode::from(code)
    }
}

/// Machine-readable error JSON on stderr.
pub fn emit_error(kind: &str, message: &str) {
    let payload = serde_json::json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{payload}");
}

/// Writes bytes to a temp file in the target directory, then renames into
/// place, so readers never observe partial output.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().ok_or_else(|| CliError::Runtime(format!(
        "output path {} has no parent directory",
        path.display()
    )))?;
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Runtime(format!("mkdir {}: {e}", dir.display())))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| CliError::Runtime(format!("temp file in {}: {e}", dir.display())))?;
    tmp.write_all(bytes)
        .map_err(|e| CliError::Runtime(format!("write {}: {e}", path.display())))?;
    tmp.persist(path)
        .map_err(|e| CliError::Runtime(format!("rename into {}: {e}", path.display())))?;
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("{:x}", hasher.finalize())
}

fn sha256_file(path: &Path) -> Result<String, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(sha256_hex(&bytes))
}

#[derive(Serialize)]
struct RunManifest<'a> {
    tool: &'a str,
    version: &'a str,
    command: &'a str,
    seed: u64,
    config_sha256: String,
    inputs: BTreeMap<String, String>,
}

/// Writes `run_manifest.json` plus the resolved config next to the outputs.
/// Inputs are digested file by file; directories are digested over their
/// sorted file list.
pub fn write_run_manifest(
    out_dir: &Path,
    command: &str,
    config_toml: &str,
    seed: u64,
    inputs: &[&Path],
) -> Result<(), CliError> {
    let mut digests = BTreeMap::new();
    for input in inputs {
        if input.is_dir() {
            let mut entries: Vec<PathBuf> = walk_files(input)?;
            entries.sort();
            let mut hasher = Sha256::new();
            for entry in &entries {
                hasher.update(entry.to_string_lossy().as_bytes());
                hasher.update(
                    std::fs::read(entry)
                        .map_err(|e| CliError::Input(format!("{}: {e}", entry.display())))?,
                );
            }
            digests.insert(input.display().to_string(), format!("{:x}", hasher.finalize()));
        } else {
            digests.insert(input.display().to_string(), sha256_file(input)?);
        }
    }
    let manifest = RunManifest {
        tool: "vastim",
        version: env!("CARGO_PKG_VERSION"),
        command,
        seed,
        config_sha256: sha256_hex(config_toml.as_bytes()),
        inputs: digests,
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    atomic_write(&out_dir.join("run_manifest.json"), json.as_bytes())?;
    atomic_write(&out_dir.join("resolved_config.toml"), config_toml.as_bytes())?;
    Ok(())
}

fn walk_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut out = Vec::new();
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("cannot list {}: {e}", dir.display())))?;
    for entry in entries {
        let entry = entry.map_err(|e| CliError::Input(e.to_string()))?;
        let path = entry.path();
        if path.is_dir() {
            out.extend(walk_files(&path)?);
        } else {
            out.push(path);
        }
    }
    Ok(out)
}

/// Stable float formatting for CSV cells: shortest representation that
/// round-trips.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}
