//! Run bookkeeping: every file read or written is digested so a run can be
//! replayed and its outputs compared byte for byte.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    /// `-` for stdout.
    pub path: String,
    pub sha256: String,
    /// False when the content carries wall-clock fields.
    pub deterministic: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    /// Arguments after the program name, without `--manifest`.
    pub command: Vec<String>,
    pub seed: u64,
    pub config: serde_json::Value,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub nanos: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads and writes on behalf of one command, remembering digests.
pub struct Run {
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    started: Instant,
    quiet: bool,
}

impl Run {
    pub fn new() -> Self {
        Run { inputs: Vec::new(), outputs: Vec::new(), started: Instant::now(), quiet: false }
    }

    /// A run whose stdout writes are digested but not printed.
    pub fn quiet() -> Self {
        Run { quiet: true, ..Run::new() }
    }

    pub fn read(&mut self, path: &Path) -> Result<String> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        self.inputs.push(FileDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(text.as_bytes()),
            deterministic: true,
        });
        Ok(text)
    }

    /// Writes to `path`, or stdout when `None`.
    pub fn write(&mut self, path: Option<&Path>, content: &str, deterministic: bool) -> Result<()> {
        let shown = match path {
            Some(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                }
                fs::write(p, content).with_context(|| format!("writing {}", p.display()))?;
                p.display().to_string()
            }
            None => {
                if !self.quiet {
                    let mut out = std::io::stdout().lock();
                    out.write_all(content.as_bytes())?;
                    out.flush()?;
                }
                "-".to_string()
            }
        };
        self.outputs.push(FileDigest { path: shown, sha256: sha256_hex(content.as_bytes()), deterministic });
        Ok(())
    }

    pub fn manifest(&self, command: Vec<String>, seed: u64, config: serde_json::Value) -> RunManifest {
        RunManifest {
            command,
            seed,
            config,
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            nanos: self.started.elapsed().as_nanos() as u64,
        }
    }
}

/// Sidecar path: `out.json` with suffix `trace.json` becomes `out.trace.json`.
pub fn sidecar(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.{suffix}"))
}

/// Drops `--manifest X` and `--manifest=X` from an argument list.
pub fn strip_manifest(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--manifest" {
            skip = true;
        } else if !a.starts_with("--manifest=") {
            out.push(a.clone());
        }
    }
    out
}
