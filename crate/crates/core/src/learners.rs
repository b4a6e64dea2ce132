//! Learners, the five interaction operators and trace execution.
//!
//! A learner is a program in the numbering together with the operator that
//! feeds it. Its inputs follow one convention per operator:
//!
//! | operator | input |
//! |----------|-------|
//! | G   | code of `T[i]` |
//! | Psd | `⟨code of content(T[i]), i⟩` |
//! | Sd  | code of `content(T[i])` |
//! | It  | `0` for the initial hypothesis, else `⟨previous hypothesis code, symbol code⟩ + 1` |
//! | Td  | symbol code of `T(i-1)` |
//!
//! Outputs are hypothesis codes: `0` is `?`, `e + 1` conjectures `e`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numbering::build::*;
use crate::numbering::{code, eval, EvalOutcome, Nat, Prim};
use crate::seq::{set_code, FiniteSet, SeqCode, Symbol};
use crate::text::{fingerprint, Text, TextError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hypothesis {
    Unknown,
    Conjecture(Nat),
}

impl Hypothesis {
    pub fn code(&self) -> Nat {
        match self {
            Hypothesis::Unknown => Nat::zero(),
            Hypothesis::Conjecture(e) => e.succ(),
        }
    }

    pub fn from_code(c: &Nat) -> Hypothesis {
        if c.is_zero() {
            Hypothesis::Unknown
        } else {
            Hypothesis::Conjecture(c.pred())
        }
    }

    pub fn index(&self) -> Option<&Nat> {
        match self {
            Hypothesis::Unknown => None,
            Hypothesis::Conjecture(e) => Some(e),
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Unknown => f.write_str("?"),
            Hypothesis::Conjecture(e) => write!(f, "{e:?}"),
        }
    }
}

/// `"?"` or the conjectured index.
impl Serialize for Hypothesis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Hypothesis::Unknown => s.serialize_str("?"),
            Hypothesis::Conjecture(e) => e.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Hypothesis {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Hypothesis::Conjecture(Nat::from(v))),
            Repr::Str(s) if s == "?" => Ok(Hypothesis::Unknown),
            Repr::Str(s) => s
                .parse()
                .map(Hypothesis::Conjecture)
                .map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorKind {
    G,
    Psd,
    Sd,
    It,
    Td,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 5] = [
        OperatorKind::G,
        OperatorKind::Psd,
        OperatorKind::Sd,
        OperatorKind::It,
        OperatorKind::Td,
    ];
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown operator `{0}` (expected one of G, Psd, Sd, It, Td)")]
pub struct UnknownOperator(pub String);

impl FromStr for OperatorKind {
    type Err = UnknownOperator;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownOperator(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Learner {
    pub program: Nat,
    pub kind: OperatorKind,
}

impl Learner {
    pub fn new(program: Nat, kind: OperatorKind) -> Learner {
        Learner { program, kind }
    }

    /// Runs the program on a raw input and decodes the hypothesis.
    pub fn query(&self, input: &Nat, budget: u64) -> Step {
        match eval(&self.program, input, budget) {
            EvalOutcome::Halted { value, steps } => Step {
                hypothesis: Some(Hypothesis::from_code(&value)),
                steps,
            },
            EvalOutcome::OutOfBudget { budget } => Step { hypothesis: None, steps: budget },
        }
    }
}

/// One evaluation of the learner: `hypothesis` is `None` when it diverged
/// (ran out of budget).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub hypothesis: Option<Hypothesis>,
    pub steps: u64,
}

/// Input of a Psd learner.
pub fn psd_input(content: &FiniteSet, t: u64) -> Nat {
    code::pair_nat(&set_code(content), &Nat::from(t))
}

/// Input of an It learner after the initial step.
pub fn it_input(prev: &Hypothesis, sym: &Symbol) -> Nat {
    code::pair_nat(&prev.code(), &sym.code()).succ()
}

/// The hypothesis `β(h, T)(i)`; `None` when a required evaluation diverged.
pub fn apply_operator(h: &Learner, text: &[Symbol], i: usize, budget: u64) -> Option<Hypothesis> {
    assert!(text.len() >= i, "text prefix shorter than the queried position");
    let prefix = &text[..i];
    match h.kind {
        OperatorKind::G => h.query(SeqCode::from_symbols(prefix).code(), budget).hypothesis,
        OperatorKind::Sd => h.query(&set_code(&crate::seq::content(prefix)), budget).hypothesis,
        OperatorKind::Psd => {
            h.query(&psd_input(&crate::seq::content(prefix), i as u64), budget).hypothesis
        }
        OperatorKind::It => {
            let mut cur = h.query(&Nat::zero(), budget).hypothesis?;
            for s in prefix {
                cur = h.query(&it_input(&cur, s), budget).hypothesis?;
            }
            Some(cur)
        }
        OperatorKind::Td => {
            let mut cur = Hypothesis::Unknown;
            for s in prefix {
                let next = h.query(&s.code(), budget).hypothesis?;
                if next != Hypothesis::Unknown {
                    cur = next;
                }
            }
            Some(cur)
        }
    }
}

/// The G-learner simulating `h` on whole sequences.
pub fn star(h: &Learner) -> Learner {
    let hl = || lit(h.program.clone());
    let body = match h.kind {
        OperatorKind::G => return h.clone(),
        OperatorKind::Sd => call(hl(), prim(Prim::SeqContent, vec![var("s")])),
        OperatorKind::Psd => call(
            hl(),
            pair(
                prim(Prim::SeqContent, vec![var("s")]),
                prim(Prim::ListLen, vec![var("s")]),
            ),
        ),
        OperatorKind::It => {
            let go = fix(
                "go",
                "a",
                let_(
                    "i",
                    fst(var("a")),
                    let_(
                        "st",
                        snd(var("a")),
                        if_(
                            prim(Prim::Lt, vec![var("i"), var("n")]),
                            app(
                                var("go"),
                                pair(
                                    succ(var("i")),
                                    call(
                                        hl(),
                                        succ(pair(
                                            var("st"),
                                            prim(Prim::ListGet, vec![var("s"), var("i")]),
                                        )),
                                    ),
                                ),
                            ),
                            var("st"),
                        ),
                    ),
                ),
            );
            let_(
                "n",
                prim(Prim::ListLen, vec![var("s")]),
                app(go, pair(lit(0u64), call(hl(), lit(0u64)))),
            )
        }
        OperatorKind::Td => {
            // scan from the end for the last symbol on which h is not `?`
            let at = |k: Expr| {
                call(
                    hl(),
                    prim(
                        Prim::ListGet,
                        vec![var("s"), pred(prim(Prim::Monus, vec![var("n"), k]))],
                    ),
                )
            };
            let_(
                "n",
                prim(Prim::ListLen, vec![var("s")]),
                let_(
                    "k",
                    first(
                        "k",
                        if_(prim(Prim::Lt, vec![var("k"), var("n")]), at(var("k")), lit(1u64)),
                    ),
                    if_(prim(Prim::Lt, vec![var("k"), var("n")]), at(var("k")), lit(0u64)),
                ),
            )
        }
    };
    Learner::new(program_unchecked("s", body).code(), OperatorKind::G)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub step: u64,
    /// `None` marks a divergent evaluation.
    pub hypothesis: Option<Hypothesis>,
    pub steps_used: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub learner: Learner,
    pub symbols: Vec<Symbol>,
    pub entries: Vec<TraceEntry>,
    pub fingerprint: u64,
    pub budget: u64,
}

impl Trace {
    pub fn horizon(&self) -> u64 {
        self.entries.len() as u64 - 1
    }

    pub fn hypotheses(&self) -> Vec<Option<Hypothesis>> {
        self.entries.iter().map(|e| e.hypothesis.clone()).collect()
    }

    /// First step whose evaluation diverged.
    pub fn first_divergence(&self) -> Option<u64> {
        self.entries
            .iter()
            .find(|e| e.hypothesis.is_none())
            .map(|e| e.step)
    }

    /// The trace `p ∘ r` over the same symbols.
    pub fn delayed(&self, r: &[u64]) -> Trace {
        Trace {
            entries: r
                .iter()
                .enumerate()
                .map(|(n, &ri)| TraceEntry {
                    step: n as u64,
                    ..self.entries[ri as usize].clone()
                })
                .collect(),
            ..self.clone()
        }
    }

    /// One JSON object per step.
    pub fn jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let sym = if e.step == 0 {
                serde_json::Value::Null
            } else {
                serde_json::to_value(&self.symbols[e.step as usize - 1]).unwrap()
            };
            let hyp = match &e.hypothesis {
                Some(h) => serde_json::to_value(h).unwrap(),
                None => serde_json::Value::String("diverged".into()),
            };
            let rec = serde_json::json!({
                "i": e.step,
                "symbol": sym,
                "hypothesis": hyp,
                "steps_used": e.steps_used,
            });
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        out
    }
}

/// Runs `h` on the first `horizon` symbols, recording `β(h, T)(i)` for
/// `i = 0..=horizon`. Iterative and transductive learners are folded
/// incrementally; once an evaluation diverges every later step of those
/// kinds is marked divergent too.
pub fn run_trace_on(h: &Learner, symbols: &[Symbol], horizon: u64, budget: u64) -> Trace {
    let symbols = symbols[..horizon as usize].to_vec();
    let mut entries = Vec::with_capacity(horizon as usize + 1);
    let mut carry: Option<Hypothesis> = None;
    let mut broken = false;
    for i in 0..=horizon as usize {
        let (hyp, used) = if broken {
            (None, 0)
        } else {
            match h.kind {
                OperatorKind::G => {
                    let s = h.query(SeqCode::from_symbols(&symbols[..i]).code(), budget);
                    (s.hypothesis, s.steps)
                }
                OperatorKind::Sd => {
                    let s = h.query(&set_code(&crate::seq::content(&symbols[..i])), budget);
                    (s.hypothesis, s.steps)
                }
                OperatorKind::Psd => {
                    let s = h.query(&psd_input(&crate::seq::content(&symbols[..i]), i as u64), budget);
                    (s.hypothesis, s.steps)
                }
                OperatorKind::It => {
                    let input = match &carry {
                        None => Nat::zero(),
                        Some(prev) => it_input(prev, &symbols[i - 1]),
                    };
                    let s = h.query(&input, budget);
                    (s.hypothesis, s.steps)
                }
                OperatorKind::Td => {
                    if i == 0 {
                        (Some(Hypothesis::Unknown), 0)
                    } else {
                        let s = h.query(&symbols[i - 1].code(), budget);
                        match s.hypothesis {
                            Some(Hypothesis::Unknown) => (carry.clone(), s.steps),
                            other => (other, s.steps),
                        }
                    }
                }
            }
        };
        if matches!(h.kind, OperatorKind::It | OperatorKind::Td) {
            broken |= hyp.is_none();
            carry = hyp.clone();
        }
        entries.push(TraceEntry { step: i as u64, hypothesis: hyp, steps_used: used });
    }
    Trace {
        learner: h.clone(),
        fingerprint: fingerprint(&symbols),
        symbols,
        entries,
        budget,
    }
}

pub fn run_trace(h: &Learner, text: &Text, horizon: u64, budget: u64) -> Result<Trace, TextError> {
    let symbols = text.prefix(horizon)?;
    Ok(run_trace_on(h, &symbols, horizon, budget))
}
