use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::args::Format;

/// Defaults read from a TOML file. Every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub budget: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub algorithm: Option<String>,
    pub family: Option<String>,
    #[serde(default)]
    pub family_params: BTreeMap<String, toml::Value>,
    #[serde(default)]
    pub sizes: Vec<usize>,
    #[serde(default)]
    pub params: Vec<usize>,
    pub trials: Option<usize>,
    pub mode: Option<String>,
    #[serde(default)]
    pub timing: bool,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }

    /// Family parameters as strings, the form the family parser takes.
    pub fn family_params(&self) -> Result<BTreeMap<String, String>, String> {
        self.family_params
            .iter()
            .map(|(k, v)| {
                let s = match v {
                    toml::Value::Integer(i) => i.to_string(),
                    toml::Value::Float(f) => f.to_string(),
                    toml::Value::String(s) => s.clone(),
                    other => return Err(format!("family parameter {k} has unsupported value {other}")),
                };
                Ok((k.clone(), s))
            })
            .collect()
    }
}
