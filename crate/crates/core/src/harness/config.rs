//! JSON experiment configurations and the `run` driver.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::corpus::sparse_row_text;
use crate::criteria::{check_with, Checker, Flavor, LanguageOracle, Verdict};
use crate::learners::{run_trace, Learner, OperatorKind, Trace};
use crate::numbering::{sexpr, Nat};
use crate::seq::{FiniteSet, Symbol};
use crate::text::Text;
use crate::zoo;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid config: {0}")]
    Schema(#[from] serde_json::Error),
    #[error("unknown builtin learner `{0}`")]
    UnknownBuiltin(String),
    #[error("learner spec `{0}` must start with builtin:, idx: or file:")]
    LearnerSpec(String),
    #[error("learner `{spec}` has kind {actual}, config says {declared}")]
    KindMismatch { spec: String, declared: OperatorKind, actual: OperatorKind },
    #[error("learner `{0}` needs an explicit operator kind")]
    MissingKind(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("cannot parse program in {path}: {message}")]
    Program { path: String, message: String },
    #[error("text {index}: {message}")]
    Text { index: usize, message: String },
    #[error("config lists no texts")]
    NoTexts,
    #[error("config lists no flavors")]
    NoFlavors,
}

/// Which language the learner is checked against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LanguageSpec {
    Finite { elements: FiniteSet },
    /// The set decided by the C-index `e`.
    CIndex { e: Nat, budget: Option<u64> },
    /// `{⟨e, x⟩ : x ≤ max_second}`, or the whole row when unbounded.
    Rows { e: Nat, max_second: Option<Nat> },
    Positive,
}

impl LanguageSpec {
    pub fn oracle(&self, budget: u64) -> LanguageOracle {
        match self {
            LanguageSpec::Finite { elements } => LanguageOracle::Finite(elements.clone()),
            LanguageSpec::CIndex { e, budget: b } => {
                LanguageOracle::CIndex { e: e.clone(), budget: b.unwrap_or(budget) }
            }
            LanguageSpec::Rows { e, max_second } => {
                LanguageOracle::Rows { e: e.clone(), max_second: max_second.clone() }
            }
            LanguageSpec::Positive => LanguageOracle::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TextSpec {
    /// The language's own ascending presentation.
    Canonical,
    /// A seeded shuffle of a finite language; the config seed is added.
    Shuffled {
        #[serde(default)]
        seed: u64,
    },
    Explicit { prefix: Vec<Symbol>, tail: Symbol },
    Enumerator { e: Nat },
    Programmatic { e: Nat },
    Interleave { base: Box<TextSpec>, x: Nat },
}

fn default_flavors() -> Vec<Flavor> {
    vec![Flavor::ExC]
}
fn default_horizon() -> u64 {
    24
}
fn default_m() -> u64 {
    16
}
fn default_budget() -> u64 {
    1_000_000
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// `builtin:<name>`, `idx:<decimal>` or `file:<path>` (an s-expression).
    pub learner: String,
    pub kind: Option<OperatorKind>,
    #[serde(default = "default_flavors")]
    pub flavors: Vec<Flavor>,
    pub language: LanguageSpec,
    pub texts: Vec<TextSpec>,
    #[serde(default = "default_horizon")]
    pub horizon: u64,
    #[serde(default = "default_m")]
    pub m: u64,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default)]
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn from_json(src: &str) -> Result<ExperimentConfig, ConfigError> {
        Ok(serde_json::from_str(src)?)
    }

    pub fn load(path: &Path) -> Result<ExperimentConfig, ConfigError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io { path: path.display().to_string(), message: e.to_string() })?;
        ExperimentConfig::from_json(&src)
    }

    pub fn learner(&self) -> Result<Learner, ConfigError> {
        resolve_learner(&self.learner, self.kind)
    }

    pub fn texts(&self) -> Result<Vec<Text>, ConfigError> {
        if self.texts.is_empty() {
            return Err(ConfigError::NoTexts);
        }
        self.texts
            .iter()
            .enumerate()
            .map(|(i, t)| {
                self.text(t, self.horizon)
                    .map_err(|message| ConfigError::Text { index: i, message })
            })
            .collect()
    }

    fn text(&self, spec: &TextSpec, horizon: u64) -> Result<Text, String> {
        let t = match spec {
            TextSpec::Canonical => match &self.language {
                LanguageSpec::Finite { elements } => Text::canonical_finite(elements.clone()),
                LanguageSpec::CIndex { e, .. } => Text::canonical_c_index(e.clone()),
                LanguageSpec::Positive => Text::canonical_c_index(zoo::positive_index()),
                LanguageSpec::Rows { e, max_second: Some(v) } => Text::canonical_finite(row_set(e, v)?),
                LanguageSpec::Rows { e, max_second: None } => sparse_row_text(e),
            },
            TextSpec::Shuffled { seed } => {
                let set = match &self.language {
                    LanguageSpec::Finite { elements } => elements.clone(),
                    LanguageSpec::Rows { e, max_second: Some(v) } => row_set(e, v)?,
                    _ => return Err("shuffled texts need a finite language".into()),
                };
                Text::shuffled_finite(&set, self.seed.wrapping_add(*seed))
            }
            TextSpec::Explicit { prefix, tail } => Text::explicit(prefix.clone(), tail.clone()),
            TextSpec::Enumerator { e } => Text::from_enumerator(e.clone()),
            TextSpec::Programmatic { e } => Text::programmatic(e.clone()),
            TextSpec::Interleave { base, x } => {
                Text::interleave(self.text(base, horizon)?, x.clone(), horizon).map_err(|e| e.to_string())?
            }
        };
        Ok(t.with_budget(self.budget))
    }
}

fn row_set(e: &Nat, v: &Nat) -> Result<FiniteSet, String> {
    let v = v.to_u64().filter(|v| *v < 4096).ok_or("row bound too large")?;
    Ok((0..=v).map(|x| crate::numbering::code::pair_nat(e, &Nat::from(x))).collect())
}

/// Parses `builtin:<name>`, `idx:<decimal>` or `file:<path>`.
pub fn resolve_learner(spec: &str, kind: Option<OperatorKind>) -> Result<Learner, ConfigError> {
    let (tag, rest) = spec.split_once(':').ok_or_else(|| ConfigError::LearnerSpec(spec.into()))?;
    let program = match tag {
        "builtin" => {
            let h = zoo::builtin(rest).ok_or_else(|| ConfigError::UnknownBuiltin(rest.into()))?;
            return match kind {
                Some(k) if k != h.kind => {
                    Err(ConfigError::KindMismatch { spec: spec.into(), declared: k, actual: h.kind })
                }
                _ => Ok(h),
            };
        }
        "idx" => rest.trim().parse::<Nat>().map_err(|_| ConfigError::LearnerSpec(spec.into()))?,
        "file" => {
            let src = std::fs::read_to_string(rest)
                .map_err(|e| ConfigError::Io { path: rest.into(), message: e.to_string() })?;
            match src.trim().parse::<Nat>() {
                Ok(n) => n,
                Err(_) => sexpr::parse(&src)
                    .map_err(|e| ConfigError::Program { path: rest.into(), message: e.to_string() })?
                    .code(),
            }
        }
        _ => return Err(ConfigError::LearnerSpec(spec.into())),
    };
    let kind = kind.ok_or_else(|| ConfigError::MissingKind(spec.into()))?;
    Ok(Learner::new(program, kind))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub text: usize,
    pub flavor: Flavor,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub traces: Vec<Trace>,
    pub verdicts: Vec<VerdictRecord>,
}

impl RunOutput {
    /// One record per step of every trace, tagged with the text index.
    pub fn trace_jsonl(&self) -> String {
        let mut out = String::new();
        for (k, t) in self.traces.iter().enumerate() {
            for line in t.jsonl().lines() {
                let mut v: serde_json::Value = serde_json::from_str(line).expect("trace records are JSON");
                v["text"] = k.into();
                out.push_str(&v.to_string());
                out.push('\n');
            }
        }
        out
    }

    pub fn verdict_json(&self) -> String {
        serde_json::to_string_pretty(&serde_json::json!({
            "verdicts": self.verdicts,
            "falsified": self.falsified(),
        }))
        .expect("verdicts serialize")
    }

    pub fn falsified(&self) -> bool {
        self.verdicts.iter().any(|v| v.verdict.is_falsified())
    }
}

pub fn run(config: &ExperimentConfig) -> Result<RunOutput, ConfigError> {
    if config.flavors.is_empty() {
        return Err(ConfigError::NoFlavors);
    }
    let h = config.learner()?;
    let texts = config.texts()?;
    let lang = config.language.oracle(config.budget);
    let mut checker = Checker::new(&lang, config.m, config.budget);
    let mut traces = Vec::new();
    let mut verdicts = Vec::new();
    for (k, text) in texts.iter().enumerate() {
        match run_trace(&h, text, config.horizon, config.budget) {
            Ok(trace) => {
                for &flavor in &config.flavors {
                    let verdict = check_with(flavor, &trace, &mut checker);
                    verdicts.push(VerdictRecord { text: k, flavor, verdict });
                }
                traces.push(trace);
            }
            Err(e) => {
                return Err(ConfigError::Text { index: k, message: e.to_string() });
            }
        }
    }
    Ok(RunOutput { traces, verdicts })
}
