use serde::{Deserialize, Serialize};

use crate::poly::Markup;

/// One displayed result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Output {
    pub label: Option<String>,
    pub mathpar: String,
    pub latex: String,
}

impl Output {
    /// `label = value`, or the bare value.
    pub fn line(&self, markup: Markup) -> String {
        let value = match markup {
            Markup::Mathpar => &self.mathpar,
            Markup::Latex => &self.latex,
        };
        match &self.label {
            Some(l) => format!("{l} = {value}"),
            None => value.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub line: u32,
    pub column: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExecutionResult {
    pub outputs: Vec<Output>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ExecutionResult {
    pub fn has_errors(&self) -> bool {
        self.diagnostics
            .iter()
            .any(|d| d.severity == Severity::Error)
    }

    /// All outputs as `label = value` lines.
    pub fn lines(&self, markup: Markup) -> Vec<String> {
        self.outputs.iter().map(|o| o.line(markup)).collect()
    }
}
