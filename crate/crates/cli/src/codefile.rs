//! JSON code files.
//!
//! The writer emits a fixed layout (one node per line) so that files diff
//! cleanly and `write(read(write(x)))` is byte-identical to `write(x)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use dress_core::{FrCode, Symbol};
use serde::Deserialize;
use thiserror::Error;

pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CodeFileError {
    #[error("malformed code file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported code file version {0}")]
    Version(u32),
    #[error("inconsistent code file: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub construction: String,
    pub params: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub version: u32,
    pub n: usize,
    pub theta: usize,
    pub rho: usize,
    pub nodes: Vec<Vec<Symbol>>,
    pub meta: Meta,
}

impl CodeFile {
    pub fn from_code(code: &FrCode, construction: &str, params: BTreeMap<String, u64>) -> Self {
        Self {
            version: VERSION,
            n: code.n(),
            theta: code.theta(),
            rho: code.nominal_rho(),
            nodes: code.nodes().to_vec(),
            meta: Meta {
                construction: construction.to_owned(),
                params,
            },
        }
    }

    pub fn parse(text: &str) -> Result<Self, CodeFileError> {
        let file: CodeFile = serde_json::from_str(text)?;
        if file.version != VERSION {
            return Err(CodeFileError::Version(file.version));
        }
        file.to_code()?;
        Ok(file)
    }

    /// Rebuilds the code, checking the header counts against the node lists.
    pub fn to_code(&self) -> Result<FrCode, CodeFileError> {
        if self.nodes.len() != self.n {
            return Err(CodeFileError::Inconsistent(format!(
                "n = {} but {} node lists",
                self.n,
                self.nodes.len()
            )));
        }
        let code = FrCode::new(self.nodes.clone(), self.rho)
            .map_err(|e| CodeFileError::Inconsistent(e.to_string()))?;
        if code.theta() != self.theta {
            return Err(CodeFileError::Inconsistent(format!(
                "theta = {} but nodes hold {} distinct symbols",
                self.theta,
                code.theta()
            )));
        }
        Ok(code)
    }

    pub fn to_json(&self) -> String {
        let join = |xs: &[Symbol]| {
            xs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"version\": {},", self.version);
        let _ = writeln!(s, "  \"n\": {},", self.n);
        let _ = writeln!(s, "  \"theta\": {},", self.theta);
        let _ = writeln!(s, "  \"rho\": {},", self.rho);
        s.push_str("  \"nodes\": [\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let sep = if i + 1 == self.nodes.len() { "" } else { "," };
            let _ = writeln!(s, "    [{}]{sep}", join(node));
        }
        s.push_str("  ],\n");
        s.push_str("  \"meta\": {\n");
        let name = serde_json::to_string(&self.meta.construction).expect("string serializes");
        let _ = writeln!(s, "    \"construction\": {name},");
        let params = self
            .meta
            .params
            .iter()
            .map(|(k, v)| {
                format!(
                    "{}: {v}",
                    serde_json::to_string(k).expect("string serializes")
                )
            })
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(s, "    \"params\": {{{params}}}");
        s.push_str("  }\n}\n");
        s
    }
}
