use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub role: String,
    pub path: PathBuf,
    pub sha256: String,
}

/// Everything needed to rerun a command: its configuration, digests of
/// every input file and the tool version. Contains no timestamps, so equal
/// runs produce equal manifests.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: Value,
    pub inputs: Vec<InputDigest>,
    pub results: BTreeMap<String, Value>,
}

impl RunManifest {
    pub fn new(command: &str, config: &impl Serialize) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            command: command.to_owned(),
            config: serde_json::to_value(config).expect("configuration serializes"),
            inputs: Vec::new(),
            results: BTreeMap::new(),
        }
    }

    /// Read an input file and record its digest.
    pub fn read_input(&mut self, role: &str, path: &Path) -> Result<Vec<u8>> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        self.inputs.push(InputDigest {
            role: role.to_owned(),
            path: path.to_owned(),
            sha256: sha256_hex(&bytes),
        });
        Ok(bytes)
    }

    pub fn record(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.to_owned(), serde_json::to_value(value).expect("result serializes"));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }

    /// The `# manifest {...}` comment line placed at the top of TSV reports.
    pub fn comment_line(&self) -> String {
        format!("# manifest {}", self.to_json())
    }

    /// Write `<output>.manifest.json` next to a non-TSV output file.
    pub fn write_sidecar(&self, output: &Path) -> Result<()> {
        let path = sidecar_path(output);
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        fs::write(&path, text).map_err(|e| Error::io(&path, e))
    }
}

pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Write a TSV report headed by the manifest comment, to `path` or stdout.
pub fn write_report(
    path: Option<&Path>,
    manifest: &RunManifest,
    body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<()> {
    let mut buf: Vec<u8> = Vec::new();
    writeln!(buf, "{}", manifest.comment_line()).expect("write to memory");
    body(&mut buf).expect("write to memory");
    match path {
        Some(p) => fs::write(p, &buf).map_err(|e| Error::io(p, e)),
        None => std::io::stdout()
            .write_all(&buf)
            .map_err(|e| Error::io("<stdout>", e)),
    }
}
