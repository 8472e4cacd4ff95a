//! Run reports and their plain-text rendering.
//!
//! The text form is rendered from the JSON value of the report, so both
//! carry the same content.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::cohomology::CohomologyError;
use crate::gmodules::GModuleError;
use crate::inseparable::InseparableError;
use crate::picard::PicardError;
use crate::zlattice::ZLatticeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "i32")]
pub enum ExitStatus {
    Success,
    /// A computation finished but one of its checks failed.
    CheckFailed,
    InputError,
    Inconsistent,
    GuardExceeded,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::CheckFailed => 1,
            ExitStatus::InputError => 2,
            ExitStatus::Inconsistent => 3,
            ExitStatus::GuardExceeded => 4,
        }
    }
}

impl From<ExitStatus> for i32 {
    fn from(s: ExitStatus) -> i32 {
        s.code()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check { name: name.into(), passed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: f64,
    pub exit_status: ExitStatus,
}

impl RunReport {
    /// Exit status 0 iff every check passed.
    pub fn completed(command: &str, inputs: Value, result: Value, checks: Vec<Check>, elapsed_ms: f64) -> Self {
        let exit_status =
            if checks.iter().all(|c| c.passed) { ExitStatus::Success } else { ExitStatus::CheckFailed };
        RunReport { command: command.into(), inputs, result, checks, error: None, elapsed_ms, exit_status }
    }

    pub fn failed(command: &str, inputs: Value, error: CommandError, elapsed_ms: f64) -> Self {
        RunReport {
            command: command.into(),
            inputs,
            result: Value::Null,
            checks: Vec::new(),
            error: Some(error.message),
            elapsed_ms,
            exit_status: error.status,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }

    /// The report with `elapsed_ms` zeroed, for byte comparisons.
    pub fn without_timing(&self) -> Value {
        let mut v = self.to_json();
        v["elapsed_ms"] = Value::from(0.0);
        v
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("plain data")
    }

    pub fn render_text(&self) -> String {
        render_text(&self.to_json())
    }
}

/// An error with the exit status it maps to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandError {
    pub status: ExitStatus,
    pub message: String,
}

impl CommandError {
    pub fn input(message: impl Into<String>) -> Self {
        CommandError { status: ExitStatus::InputError, message: message.into() }
    }

    pub fn inconsistent(message: impl Into<String>) -> Self {
        CommandError { status: ExitStatus::Inconsistent, message: message.into() }
    }
}

impl From<ZLatticeError> for CommandError {
    fn from(e: ZLatticeError) -> Self {
        match e {
            ZLatticeError::NonPositiveOrder | ZLatticeError::DimensionMismatch { .. } => CommandError::input(e.to_string()),
            _ => CommandError::inconsistent(e.to_string()),
        }
    }
}

impl From<GModuleError> for CommandError {
    fn from(e: GModuleError) -> Self {
        match e {
            GModuleError::Lattice(inner) => inner.into(),
            e if e.is_inconsistency() => CommandError::inconsistent(e.to_string()),
            e => CommandError::input(e.to_string()),
        }
    }
}

impl From<CohomologyError> for CommandError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::GuardExceeded { .. } => {
                CommandError { status: ExitStatus::GuardExceeded, message: e.to_string() }
            }
            CohomologyError::Inconsistent(_) => CommandError::inconsistent(e.to_string()),
            CohomologyError::Module(inner) => inner.into(),
            CohomologyError::Lattice(inner) => inner.into(),
            _ => CommandError::input(e.to_string()),
        }
    }
}

impl From<PicardError> for CommandError {
    fn from(e: PicardError) -> Self {
        match e {
            PicardError::Cohomology(inner) => inner.into(),
            PicardError::Module(inner) => inner.into(),
            _ => CommandError::input(e.to_string()),
        }
    }
}

impl From<InseparableError> for CommandError {
    fn from(e: InseparableError) -> Self {
        let status = if e.is_guard() { ExitStatus::GuardExceeded } else { ExitStatus::InputError };
        CommandError { status, message: e.to_string() }
    }
}

/// Plain-text rendering of a report value.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    let field = |k: &str| report.get(k).cloned().unwrap_or(Value::Null);
    out.push_str(&format!("command: {}\n", inline(&field("command"))));
    if let Value::Object(inputs) = field("inputs") {
        if !inputs.is_empty() {
            out.push_str(&format!("inputs: {}\n", inline_fields(&inputs)));
        }
    }
    match field("result") {
        Value::Null => {}
        Value::Object(m) if !is_group(&m) && !m.contains_key("kind") => {
            out.push_str("result:\n");
            block(&m, 1, &mut out);
        }
        v => out.push_str(&format!("result: {}\n", inline(&v))),
    }
    if let Value::Array(checks) = field("checks") {
        for c in checks {
            let name = c.get("name").map(inline).unwrap_or_default();
            let passed = c.get("passed").and_then(Value::as_bool).unwrap_or(false);
            out.push_str(&format!("check {}: {}\n", name, if passed { "pass" } else { "FAIL" }));
        }
    }
    if let Some(e) = report.get("error") {
        out.push_str(&format!("error: {}\n", inline(e)));
    }
    out.push_str(&format!("exit status: {}\n", inline(&field("exit_status"))));
    out.push_str(&format!("elapsed ms: {}\n", inline(&field("elapsed_ms"))));
    out
}

fn label(key: &str) -> String {
    key.replace('_', " ")
}

fn block(m: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for (k, v) in m {
        match v {
            Value::Object(inner) if !is_group(inner) && !inner.contains_key("kind") => {
                out.push_str(&format!("{pad}{}:\n", label(k)));
                block(inner, depth + 1, out);
            }
            Value::Array(items) if items.iter().any(Value::is_object) => {
                out.push_str(&format!("{pad}{}:\n", label(k)));
                for item in items {
                    out.push_str(&format!("{pad}  - {}\n", inline(item)));
                }
            }
            _ => out.push_str(&format!("{pad}{}: {}\n", label(k), inline(v))),
        }
    }
}

fn is_group(m: &Map<String, Value>) -> bool {
    m.len() == 2 && m.contains_key("free_rank") && m.contains_key("invariant_factors")
}

fn group_text(m: &Map<String, Value>) -> String {
    let mut parts: Vec<String> = m["invariant_factors"]
        .as_array()
        .map(|a| a.iter().map(|d| format!("Z/{}", inline(d))).collect())
        .unwrap_or_default();
    match m["free_rank"].as_u64().unwrap_or(0) {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

fn pic_text(m: &Map<String, Value>) -> String {
    match m.get("kind").and_then(Value::as_str) {
        Some("finite") => inline(&m["group"]),
        Some("q_mod_z") => "Q/Z".into(),
        Some("primary_divisible") => {
            let primes: Vec<String> = m["primes"]
                .as_array()
                .map(|a| a.iter().map(|p| format!("Z_{}^∞", inline(p))).collect())
                .unwrap_or_default();
            if primes.is_empty() {
                "0".into()
            } else {
                primes.join(" ⊕ ")
            }
        }
        Some("additive_field") => format!("({}, +)", inline(&m["field"])),
        _ => inline_fields(m),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(m) if is_group(m) => group_text(m),
        Value::Object(m) if m.contains_key("kind") => pic_text(m),
        Value::Object(m) => inline_fields(m),
        other => other.to_string(),
    }
}

fn inline_fields(m: &Map<String, Value>) -> String {
    m.iter().map(|(k, v)| format!("{} {}", label(k), inline(v))).collect::<Vec<_>>().join(", ")
}
