//! Artifact writing: every artifact starts with a metadata header that echoes
//! the resolved parameters and a digest of the configuration.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub struct Metadata {
    pub command: &'static str,
    pub graph_sha256: String,
    pub params: BTreeMap<String, String>,
}

impl Metadata {
    pub fn new(command: &'static str, graph_text: &str) -> Self {
        Metadata {
            command,
            graph_sha256: sha256_hex(graph_text.as_bytes()),
            params: BTreeMap::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// SHA-256 of the canonical JSON of command, parameters and graph digest.
    pub fn digest(&self) -> String {
        let canonical = json!({
            "command": self.command,
            "graph_sha256": self.graph_sha256,
            "params": self.params,
        });
        sha256_hex(canonical.to_string().as_bytes())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tool": "raag-hhg",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "graph_sha256": self.graph_sha256,
            "params": self.params,
            "config_digest": self.digest(),
        })
    }

    /// Header lines, each prefixed with `prefix`.
    fn header_lines(&self, prefix: &str) -> String {
        let mut out = format!(
            "{prefix} raag-hhg {} {}\n{prefix} config_digest={}\n{prefix} graph_sha256={}\n",
            env!("CARGO_PKG_VERSION"),
            self.command,
            self.digest(),
            self.graph_sha256
        );
        for (k, v) in &self.params {
            out.push_str(&format!("{prefix} {k}={v}\n"));
        }
        out
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn json_artifact(meta: &Metadata, result: Value) -> String {
    let doc = json!({ "metadata": meta.to_json(), "result": result });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values serialise");
    text.push('\n');
    text
}

pub fn dot_artifact(meta: &Metadata, dot: &str) -> String {
    meta.header_lines("//") + dot
}

pub fn csv_artifact(meta: &Metadata, body: &str) -> String {
    meta.header_lines("#") + body
}

/// Writes to `out`, or to standard output when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}
