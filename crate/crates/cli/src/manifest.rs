use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use polyvar::io::{parse_input, Input};
use polyvar::search::named_instance;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Where the input came from. A file input carries its parsed contents so a
/// report can be re-run without the file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum InputDescriptor {
    Repro { name: String, description: String },
    File { path: PathBuf, data: Input },
}

impl InputDescriptor {
    pub fn resolve(input: Option<&PathBuf>, repro: Option<&str>) -> Result<Self> {
        match (input, repro) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let data = parse_input(&text).with_context(|| format!("parsing {}", path.display()))?;
                Ok(Self::File { path: path.clone(), data })
            }
            (None, Some(name)) => {
                let named = named_instance(name)?;
                Ok(Self::Repro {
                    name: named.name,
                    description: named.description,
                })
            }
            (None, None) => bail!("one of --input or --repro is required"),
            (Some(_), Some(_)) => bail!("--input and --repro are mutually exclusive"),
        }
    }

    pub fn input(&self) -> Result<Input> {
        match self {
            Self::Repro { name, .. } => Ok(named_instance(name)?.instance.into()),
            Self::File { data, .. } => Ok(data.clone()),
        }
    }

    /// Short label used in CSV rows.
    pub fn label(&self) -> String {
        match self {
            Self::Repro { name, .. } => name.clone(),
            Self::File { path, .. } => path.display().to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub input: Option<InputDescriptor>,
    /// The resolved options of the command; enough to re-run it.
    pub config: Value,
    pub version: String,
    pub seed: Option<u64>,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, input: Option<InputDescriptor>, config: Value, seed: Option<u64>) -> Self {
        Self {
            command: command.to_string(),
            input,
            config,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }
}
