//! Run context: tracks input hashes and result fields, and renders the
//! deterministic summary envelope that every command prints to stdout.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use ndarray::{Array1, Array2};
use sha2::{Digest, Sha256};
use topsig::error::{Error, Result};
use topsig::io;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

pub struct Context {
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    inputs: BTreeMap<String, String>,
    fields: Vec<(String, String)>,
    outputs: Vec<String>,
}

impl Context {
    pub fn new(seed: u64, out: Option<PathBuf>, format: OutputFormat) -> Self {
        Self { seed, out, format, inputs: BTreeMap::new(), fields: Vec::new(), outputs: Vec::new() }
    }

    /// Read and hash an input file.
    pub fn input_bytes(&mut self, path: &Path) -> Result<Vec<u8>> {
        let bytes = std::fs::read(path)
            .map_err(|e| Error::Io { path: path.display().to_string(), source: e })?;
        let mut hasher = Sha256::new();
        hasher.update(&bytes);
        let digest = hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.insert(path.display().to_string(), hex);
        Ok(bytes)
    }

    pub fn track(&mut self, path: &Path) -> Result<()> {
        self.input_bytes(path).map(|_| ())
    }

    pub fn record_output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    pub fn field_int(&mut self, key: &str, value: i64) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn field_float(&mut self, key: &str, value: f64) {
        self.fields.push((key.to_string(), io::fmt_f64(value)));
    }

    pub fn field_str(&mut self, key: &str, value: &str) {
        self.fields.push((key.to_string(), format!("\"{value}\"")));
    }

    pub fn field_bool(&mut self, key: &str, value: bool) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn field_floats(&mut self, key: &str, values: &Array1<f64>) {
        self.fields.push((key.to_string(), io::vector_json(values)));
    }

    /// Render and print the summary envelope.
    pub fn finish(&self, command: &str) {
        let mut out = String::from("{\"command\": \"");
        out.push_str(command);
        out.push_str("\", \"seed\": ");
        out.push_str(&self.seed.to_string());
        out.push_str(", \"inputs\": {");
        for (i, (path, hash)) in self.inputs.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("\"{path}\": \"{hash}\""));
        }
        out.push_str("}, \"outputs\": [");
        for (i, path) in self.outputs.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("\"{path}\""));
        }
        out.push_str("], \"result\": {");
        for (i, (key, value)) in self.fields.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("\"{key}\": {value}"));
        }
        out.push_str("}}");
        println!("{out}");
    }

    /// Write a vector either as the spec's signal CSV or as a JSON array,
    /// depending on the global format flag.
    pub fn write_vector(&mut self, path: &Path, values: &Array1<f64>) -> Result<()> {
        match self.format {
            OutputFormat::Csv => io::write_signal_csv(path, values)?,
            OutputFormat::Json => {
                io::write_string(path, &format!("{{\"values\": {}}}\n", io::vector_json(values)))?
            }
        }
        self.record_output(path);
        Ok(())
    }

    pub fn write_matrix(&mut self, path: &Path, m: &Array2<f64>) -> Result<()> {
        io::write_matrix(path, m)?;
        self.record_output(path);
        Ok(())
    }
}

/// Parse a JSON file into a serde value with path-tagged errors.
pub fn load_json(path: &Path, bytes: &[u8]) -> Result<serde_json::Value> {
    serde_json::from_slice(bytes).map_err(|e| Error::Malformed {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}
