//! Executable diagonalizations. Each attack takes an opponent learner (a
//! program in the numbering), builds the languages and texts it must fail
//! on, and returns a replayable [`AttackWitness`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::LanguageOracle;
use crate::learners::{apply_operator, run_trace, Hypothesis, Learner, OperatorKind, TraceEntry};
use crate::numbering::build::*;
use crate::numbering::{code, construct, decide_c, ind, krt, ort, ort_member, Decision, Nat, Prim};
use crate::seq::{content, enum_bounded_seqs, set_code, FiniteSet, Symbol};
use crate::text::{Text, TextSource};
use crate::zoo;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttackKind {
    /// `{{0}, {1}, {0,1}}` defeats every transductive learner.
    TdSep,
    /// Set-driven learning beats iterative learning.
    ItSep,
    /// Partially set-driven learning beats set-driven learning.
    KrtSd,
    /// Transductive learners cannot all be made total.
    OrtTdTotal,
}

impl AttackKind {
    pub const ALL: [AttackKind; 4] =
        [AttackKind::TdSep, AttackKind::ItSep, AttackKind::KrtSd, AttackKind::OrtTdTotal];

    pub fn name(self) -> &'static str {
        match self {
            AttackKind::TdSep => "td-sep",
            AttackKind::ItSep => "it-sep",
            AttackKind::KrtSd => "krt-sd",
            AttackKind::OrtTdTotal => "ort-td-total",
        }
    }

    pub fn opponent_kind(self) -> OperatorKind {
        match self {
            AttackKind::TdSep | AttackKind::OrtTdTotal => OperatorKind::Td,
            AttackKind::ItSep => OperatorKind::It,
            AttackKind::KrtSd => OperatorKind::Sd,
        }
    }
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AttackKind {
    type Err = AttackError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AttackKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| AttackError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AttackError {
    #[error("unknown attack `{0}`")]
    UnknownKind(String),
    #[error("{attack} needs a {expected} opponent, got {got}")]
    WrongKind { attack: AttackKind, expected: OperatorKind, got: OperatorKind },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackBounds {
    pub budget: u64,
    pub horizon: u64,
    /// Longest candidate prefix searched by the iterative attack.
    pub t_max: u64,
    /// The iterative attack searches prefixes over `{1, ..., view_max}`.
    pub view_max: u64,
    /// Last `m` probed by the set-driven attack.
    pub m_max: u64,
}

impl Default for AttackBounds {
    fn default() -> Self {
        AttackBounds { budget: 1_000_000, horizon: 24, t_max: 3, view_max: 3, m_max: 8 }
    }
}

/// One recorded run of the opponent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordedRun {
    pub text: Text,
    /// Index into [`AttackWitness::languages`].
    pub language: usize,
    pub horizon: u64,
    pub entries: Vec<TraceEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Miss {
    pub step: u64,
    pub element: Nat,
    /// `None` when the hypothesis at this step was `?`.
    pub decided: Option<Decision>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum FailureMode {
    /// The hypothesis changes at every step from `from` to the horizon.
    MindChangeLoop { run: usize, from: u64, changes: u64 },
    /// The final hypothesis of `run` decides `element` wrongly.
    WrongDecision { run: usize, hypothesis: Nat, element: Nat, decided: Decision },
    /// `run` never leaves `?`.
    NoConjecture { run: usize },
    /// Two runs on texts of distinct languages produce the same hypotheses.
    SameTraceOnDistinctLanguages { runs: (usize, usize) },
    /// Every hypothesis of `run` misses the listed member, up to the
    /// horizon only.
    NeverCorrect { run: usize, misses: Vec<Miss> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AttackStatus {
    Witness,
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct AttackWitness {
    pub theorem: AttackKind,
    pub opponent: Learner,
    pub status: AttackStatus,
    pub failure: Option<FailureMode>,
    pub languages: Vec<LanguageOracle>,
    pub runs: Vec<RecordedRun>,
    /// Indices built by the construction, by name.
    pub indices: BTreeMap<String, Nat>,
    pub bounds: AttackBounds,
    pub note: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("run {run} did not reproduce: {detail}")]
    TraceMismatch { run: usize, detail: String },
    #[error("failure mode does not re-verify: {0}")]
    Claim(String),
}

impl AttackWitness {
    fn new(theorem: AttackKind, opponent: &Learner, bounds: AttackBounds) -> AttackWitness {
        AttackWitness {
            theorem,
            opponent: opponent.clone(),
            status: AttackStatus::Witness,
            failure: None,
            languages: Vec::new(),
            runs: Vec::new(),
            indices: BTreeMap::new(),
            bounds,
            note: String::new(),
        }
    }

    fn inconclusive(mut self, reason: impl Into<String>) -> AttackWitness {
        self.status = AttackStatus::Inconclusive { reason: reason.into() };
        self.failure = None;
        self
    }

    pub fn is_witness(&self) -> bool {
        self.status == AttackStatus::Witness
    }

    fn add_language(&mut self, l: LanguageOracle) -> usize {
        self.languages.push(l);
        self.languages.len() - 1
    }

    /// Runs the opponent on `text` and records it. `None` when the text
    /// itself cannot be produced.
    fn record(&mut self, text: Text, language: usize) -> Option<usize> {
        let trace = run_trace(&self.opponent, &text, self.bounds.horizon, self.bounds.budget).ok()?;
        self.runs.push(RecordedRun {
            text,
            language,
            horizon: self.bounds.horizon,
            entries: trace.entries,
        });
        Some(self.runs.len() - 1)
    }

    fn hyps(&self, run: usize) -> Vec<Option<Hypothesis>> {
        self.runs[run].entries.iter().map(|e| e.hypothesis.clone()).collect()
    }

    /// Re-runs every recorded trace and re-verifies the failure claim.
    pub fn validate(&self) -> Result<(), ReplayError> {
        let budget = self.bounds.budget;
        for (i, r) in self.runs.iter().enumerate() {
            let t = run_trace(&self.opponent, &r.text, r.horizon, budget)
                .map_err(|e| ReplayError::TraceMismatch { run: i, detail: e.to_string() })?;
            if t.entries != r.entries {
                return Err(ReplayError::TraceMismatch { run: i, detail: "entries differ".into() });
            }
        }
        let claim = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(ReplayError::Claim(msg.into())) };
        match &self.failure {
            None => claim(!self.is_witness(), "witness without a failure mode"),
            Some(FailureMode::MindChangeLoop { run, from, changes }) => {
                let h = self.hyps(*run);
                let from = *from as usize;
                claim(h.iter().all(Option::is_some), "divergent step in the loop")?;
                claim(
                    h[from..].windows(2).all(|w| w[0] != w[1]),
                    "hypothesis repeated inside the loop",
                )?;
                claim((h.len() - 1 - from) as u64 == *changes, "change count")
            }
            Some(FailureMode::WrongDecision { run, hypothesis, element, decided }) => {
                let h = self.hyps(*run);
                claim(
                    h.last() == Some(&Some(Hypothesis::Conjecture(hypothesis.clone()))),
                    "hypothesis is not the final one",
                )?;
                claim(decide_c(hypothesis, element, budget) == *decided, "decision changed")?;
                let lang = &self.languages[self.runs[*run].language];
                let member = lang
                    .contains(element)
                    .ok_or_else(|| ReplayError::Claim("membership unknown".into()))?;
                claim(is_wrong(*decided, member), "decision is not wrong")
            }
            Some(FailureMode::NoConjecture { run }) => claim(
                self.hyps(*run).iter().all(|h| *h == Some(Hypothesis::Unknown)),
                "a conjecture was made",
            ),
            Some(FailureMode::SameTraceOnDistinctLanguages { runs: (a, b) }) => {
                claim(self.hyps(*a) == self.hyps(*b), "traces differ")?;
                claim(self.hyps(*a).iter().all(Option::is_some), "divergent step")?;
                let (la, lb) =
                    (&self.languages[self.runs[*a].language], &self.languages[self.runs[*b].language]);
                let pts = la.test_points(self.bounds.horizon * 4);
                let differ = pts
                    .iter()
                    .chain(lb.test_points(self.bounds.horizon * 4).iter())
                    .any(|x| la.contains(x) != lb.contains(x));
                claim(differ, "languages are not distinct")
            }
            Some(FailureMode::NeverCorrect { run, misses }) => {
                let h = self.hyps(*run);
                let lang = &self.languages[self.runs[*run].language];
                for m in misses {
                    claim(lang.contains(&m.element) == Some(true), "missed element is not a member")?;
                    let got = match &h[m.step as usize] {
                        Some(Hypothesis::Conjecture(c)) => Some(decide_c(c, &m.element, budget)),
                        Some(Hypothesis::Unknown) => None,
                        None => return Err(ReplayError::Claim("divergent step".into())),
                    };
                    claim(got == m.decided, "decision changed")?;
                    claim(got != Some(Decision::Yes), "element was accepted")?;
                }
                Ok(())
            }
        }
    }
}

fn is_wrong(decided: Decision, member: bool) -> bool {
    match decided {
        Decision::Yes => !member,
        Decision::No => member,
        Decision::NotBoolean => true,
        Decision::OutOfBudget => false,
    }
}

/// First point of `points` where `c` disagrees with `set`. `Err` when a
/// decision runs out of budget first.
fn first_wrong(
    c: &Nat,
    set: &FiniteSet,
    points: &[Nat],
    budget: u64,
) -> Result<Option<(Nat, Decision)>, Nat> {
    for x in points {
        let d = decide_c(c, x, budget);
        if d == Decision::OutOfBudget {
            return Err(x.clone());
        }
        if is_wrong(d, set.contains(x)) {
            return Ok(Some((x.clone(), d)));
        }
    }
    Ok(None)
}

fn check_kind(attack: AttackKind, h: &Learner) -> Result<(), AttackError> {
    if h.kind != attack.opponent_kind() {
        return Err(AttackError::WrongKind { attack, expected: attack.opponent_kind(), got: h.kind });
    }
    Ok(())
}

pub fn attack(kind: AttackKind, h: &Learner, bounds: AttackBounds) -> Result<AttackWitness, AttackError> {
    check_kind(kind, h)?;
    Ok(match kind {
        AttackKind::TdSep => td_attack(h, bounds),
        AttackKind::ItSep => it_attack(h, bounds),
        AttackKind::KrtSd => krt_sd_adversary(h, bounds),
        AttackKind::OrtTdTotal => ort_td_totality_adversary(h, bounds),
    })
}

fn constant_text(x: &Nat) -> Text {
    Text::explicit(vec![], Symbol::Datum(x.clone()))
}

/// Alternates `a` and `b` forever.
fn alternating_text(a: &Nat, b: &Nat) -> Text {
    Text::new(TextSource::Interleave { base: Box::new(constant_text(a).source), x: b.clone() })
}

/// The transductive learner cannot learn `{0}`, `{1}` and `{0, 1}`.
pub fn td_attack(h: &Learner, bounds: AttackBounds) -> AttackWitness {
    let mut w = AttackWitness::new(AttackKind::TdSep, h, bounds);
    let budget = bounds.budget;
    let zero = Nat::zero();
    let one = Nat::from(1u64);
    let sets = [crate::seq::set_of([0]), crate::seq::set_of([1]), crate::seq::set_of([0, 1])];
    let points = [zero.clone(), one.clone()];
    let (Some(u), Some(v)) = (
        h.query(&Symbol::Datum(zero.clone()).code(), budget).hypothesis,
        h.query(&Symbol::Datum(one.clone()).code(), budget).hypothesis,
    ) else {
        return w.inconclusive("opponent did not answer on 0 and 1 within the budget");
    };
    let texts = [constant_text(&zero), constant_text(&one), Text::explicit(vec![Symbol::Datum(zero.clone())], Symbol::Datum(one.clone()))];
    // cases in order: text 0^∞ with u, text 1^∞ with v, text 0⌢1^∞ with v
    for (case, hyp) in [(0usize, &u), (1, &v), (2, &v)] {
        let lang = w.add_language(LanguageOracle::Finite(sets[case].clone()));
        let run = match w.record(texts[case].clone(), lang) {
            Some(r) => r,
            None => return w.inconclusive("text could not be produced"),
        };
        let Hypothesis::Conjecture(c) = hyp else {
            w.failure = Some(FailureMode::NoConjecture { run });
            w.note = "the opponent never conjectures on this text".into();
            return w;
        };
        match first_wrong(c, &sets[case], &points, budget) {
            Err(x) => return w.inconclusive(format!("decision on {x} ran out of budget")),
            Ok(Some((element, decided))) => {
                w.failure = Some(FailureMode::WrongDecision {
                    run,
                    hypothesis: c.clone(),
                    element,
                    decided,
                });
                w.note = format!("wrong conjecture on a text for language {case}");
                return w;
            }
            Ok(None) => {}
        }
    }
    unreachable!("a conjecture correct for {{1}} is wrong for {{0, 1}}")
}

/// Iterative opponents cannot tell `σ⌢(x+1)` from `σ⌢(x+2)` once their
/// state is stable after `σ`.
pub fn it_attack(h: &Learner, bounds: AttackBounds) -> AttackWitness {
    let mut w = AttackWitness::new(AttackKind::ItSep, h, bounds);
    let view = crate::seq::set_of(1..=bounds.view_max);
    let space = match enum_bounded_seqs(&view, bounds.t_max, crate::seq::DEFAULT_SEQ_CAP) {
        Ok(s) => s,
        Err(e) => return w.inconclusive(e.to_string()),
    };
    let mut found = None;
    for s in &space {
        let syms = s.symbols();
        let c = content(&syms);
        let x = c.iter().max().cloned().unwrap_or_else(Nat::zero).max(Nat::from(1u64));
        let ext = |k: u64| {
            let mut v = syms.clone();
            v.push(Symbol::Datum(Nat::new(x.value() + k)));
            v
        };
        let (a, b) = (ext(1), ext(2));
        let ha = apply_operator(h, &a, a.len(), bounds.budget);
        let hb = apply_operator(h, &b, b.len(), bounds.budget);
        if ha.is_some() && ha == hb {
            found = Some((syms, c, x));
            break;
        }
    }
    let Some((sigma, c, x)) = found else {
        return w.inconclusive(format!(
            "no stable prefix over {{1..{}}} of length at most {}",
            bounds.view_max, bounds.t_max
        ));
    };
    w.indices.insert("sigma".into(), crate::seq::SeqCode::from_symbols(&sigma).0);
    w.indices.insert("x".into(), x.clone());
    let mut runs = Vec::new();
    for k in [1u64, 2] {
        let y = Nat::new(x.value() + k);
        let mut prefix = sigma.clone();
        prefix.push(Symbol::Datum(y.clone()));
        let mut lang = c.clone();
        lang.insert(y);
        lang.insert(Nat::zero());
        let l = w.add_language(LanguageOracle::Finite(lang));
        match w.record(Text::explicit(prefix, Symbol::datum(0)), l) {
            Some(r) => runs.push(r),
            None => return w.inconclusive("text could not be produced"),
        }
    }
    if w.hyps(runs[0]) != w.hyps(runs[1]) || w.hyps(runs[0]).iter().any(Option::is_none) {
        return w.inconclusive("traces diverged or differ after the stable prefix");
    }
    w.failure = Some(FailureMode::SameTraceOnDistinctLanguages { runs: (runs[0], runs[1]) });
    w.note = "identical hypotheses on texts for two distinct languages: at most one is learned".into();
    w
}

/// `KP(⟨⟨h, e⟩, x⟩)`: the least `m` with `⟨e, m+1⟩ ∈ C_{h({⟨e,0⟩..⟨e,m⟩})}`.
fn kp_program() -> &'static Nat {
    static P: std::sync::OnceLock<Nat> = std::sync::OnceLock::new();
    P.get_or_init(|| {
        let row = fix(
            "row",
            "k",
            prim(
                Prim::SetInsert,
                vec![
                    ifz(var("k"), lit(0u64), app(var("row"), pred(var("k")))),
                    pair(var("e"), var("k")),
                ],
            ),
        );
        let accepts = let_(
            "hv",
            call(var("h"), app(var("rowf"), var("m"))),
            and(
                var("hv"),
                eq(call(pred(var("hv")), pair(var("e"), succ(var("m")))), lit(1u64)),
            ),
        );
        program_unchecked(
            "v",
            let_(
                "h",
                fst(fst(var("v"))),
                let_(
                    "e",
                    snd(fst(var("v"))),
                    let_("rowf", row, first("m", accepts)),
                ),
            ),
        )
        .code()
    })
}

/// Program `i ↦ ⟨e, i⟩ + 1` as a function of `e`, for the text of `L_e`.
fn row_text_program() -> &'static Nat {
    static P: std::sync::OnceLock<Nat> = std::sync::OnceLock::new();
    P.get_or_init(|| program_unchecked("v", succ(var("v"))).code())
}

/// The self-referential index `e` with `φ_e(0)` the least `m` such that
/// `h` on `{⟨e,0⟩..⟨e,m⟩}` accepts `⟨e, m+1⟩`.
pub fn krt_sd_index(h: &Learner) -> Nat {
    let f = program_unchecked(
        "y",
        prim(Prim::Smn, vec![lit(kp_program().clone()), pair(lit(h.program.clone()), var("y"))]),
    )
    .code();
    krt(&f)
}

fn row_set(e: &Nat, m: u64) -> FiniteSet {
    (0..=m).map(|x| code::pair_nat(e, &Nat::from(x))).collect()
}

/// Set-driven opponents fail on `L_e` or on `L'_e = {⟨e,x⟩ : x ≤ φ_e(0)}`.
pub fn krt_sd_adversary(h: &Learner, bounds: AttackBounds) -> AttackWitness {
    let mut w = AttackWitness::new(AttackKind::KrtSd, h, bounds);
    let budget = bounds.budget;
    let e = krt_sd_index(h);
    w.indices.insert("e".into(), e.clone());
    let mut misses = Vec::new();
    for m in 0..=bounds.m_max {
        let d = row_set(&e, m);
        let Some(hyp) = h.query(&set_code(&d), budget).hypothesis else {
            return w.inconclusive(format!("opponent did not answer on the row up to {m}"));
        };
        let target = code::pair_nat(&e, &Nat::from(m + 1));
        let decided = match &hyp {
            Hypothesis::Conjecture(c) => Some(decide_c(c, &target, budget)),
            Hypothesis::Unknown => None,
        };
        match (decided, hyp) {
            (Some(Decision::OutOfBudget), _) => {
                return w.inconclusive(format!("decision on ⟨e, {}⟩ ran out of budget", m + 1))
            }
            (Some(Decision::Yes), Hypothesis::Conjecture(c)) => {
                // Case 1: φ_e(0) = m and the conjecture on L'_e is too big
                let l = w.add_language(LanguageOracle::Rows { e: e.clone(), max_second: Some(Nat::from(m)) });
                w.indices.insert("m".into(), Nat::from(m));
                match crate::numbering::eval(&e, &Nat::zero(), budget).into_value() {
                    Some(v) if v != Nat::from(m) => {
                        return w.inconclusive(format!("φ_e(0) = {v}, host search found {m}"))
                    }
                    Some(_) => w.note = format!("φ_e(0) = {m} confirmed by evaluation; "),
                    None => w.note = format!("φ_e(0) = {m} by host search; evaluation ran out of budget; "),
                }
                let Some(run) = w.record(Text::canonical_finite(d), l) else {
                    return w.inconclusive("text could not be produced");
                };
                if w.hyps(run).last() != Some(&Some(Hypothesis::Conjecture(c.clone()))) {
                    return w.inconclusive("final hypothesis on L'_e differs from the probed one");
                }
                w.failure = Some(FailureMode::WrongDecision {
                    run,
                    hypothesis: c,
                    element: target,
                    decided: Decision::Yes,
                });
                w.note.push_str("the conjecture on L'_e accepts a non-member");
                return w;
            }
            (decided, _) => misses.push(Miss { step: m + 1, element: target, decided }),
        }
    }
    // Case 2: up to m_max the opponent never accepts the next row element
    let l = w.add_language(LanguageOracle::Rows { e: e.clone(), max_second: None });
    let text = Text::programmatic(construct::smn(row_text_program(), &e));
    w.bounds.horizon = bounds.m_max + 1;
    let Some(run) = w.record(text, l) else {
        return w.inconclusive("text could not be produced");
    };
    w.failure = Some(FailureMode::NeverCorrect { run, misses });
    w.note = format!(
        "no m ≤ {} qualifies: every conjecture on the text of L_e misses the next row element; \
         certified only up to this bound",
        bounds.m_max
    );
    w
}

/// `B(⟨a, ⟨n, x⟩⟩)`: decides `{a(0), a(1)}` when `h` tells them apart with
/// two conjectures, `{a(n)}` otherwise.
pub fn ort_td_body(h: &Learner) -> Nat {
    let hl = || lit(h.program.clone());
    program_unchecked(
        "v",
        let_(
            "a",
            fst(var("v")),
            let_(
                "n",
                fst(snd(var("v"))),
                let_(
                    "x",
                    snd(snd(var("v"))),
                    let_(
                        "a0",
                        call(var("a"), lit(0u64)),
                        let_(
                            "a1",
                            call(var("a"), lit(1u64)),
                            let_(
                                "u",
                                call(hl(), succ(var("a0"))),
                                let_(
                                    "w",
                                    call(hl(), succ(var("a1"))),
                                    if_(
                                        and(and(var("u"), var("w")), not(eq(var("u"), var("w")))),
                                        not(and(
                                            not(eq(var("x"), var("a0"))),
                                            not(eq(var("x"), var("a1"))),
                                        )),
                                        eq(var("x"), call(var("a"), var("n"))),
                                    ),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    )
    .code()
}

/// Every total transductive opponent fails on `{a(0), a(1)}`, `{a(0)}` or
/// `{a(1)}` for the operator-recursive family `a`.
pub fn ort_td_totality_adversary(h: &Learner, bounds: AttackBounds) -> AttackWitness {
    let mut w = AttackWitness::new(AttackKind::OrtTdTotal, h, bounds);
    let budget = bounds.budget;
    let body = ort_td_body(h);
    let a = ort(&body);
    let a0 = ort_member(&body, &a, 0);
    let a1 = ort_member(&body, &a, 1);
    w.indices.insert("body".into(), body);
    w.indices.insert("a".into(), a);
    w.indices.insert("a0".into(), a0.clone());
    w.indices.insert("a1".into(), a1.clone());
    let (Some(u), Some(v)) = (
        h.query(&a0.succ(), budget).hypothesis,
        h.query(&a1.succ(), budget).hypothesis,
    ) else {
        return w.inconclusive("opponent diverged on a(0) or a(1): it is not total");
    };
    let separated = u != v && u != Hypothesis::Unknown && v != Hypothesis::Unknown;
    if separated {
        // Case 1: a(0) decides {a(0), a(1)}; the opponent alternates forever
        let set: FiniteSet = [a0.clone(), a1.clone()].into_iter().collect();
        let l = w.add_language(LanguageOracle::Finite(set.clone()));
        let points = [a0.clone(), a1.clone(), Nat::zero()];
        match first_wrong(&a0, &set, &points, budget) {
            Err(x) => return w.inconclusive(format!("a(0) ran out of budget on {x}")),
            Ok(Some(_)) => return w.inconclusive("a(0) does not decide {a(0), a(1)}"),
            Ok(None) => {}
        }
        let Some(run) = w.record(alternating_text(&a0, &a1), l) else {
            return w.inconclusive("text could not be produced");
        };
        let changes = bounds.horizon - 1;
        w.failure = Some(FailureMode::MindChangeLoop { run, from: 1, changes });
        w.note = "a(0) is a C-index of the language, yet the opponent never converges".into();
        return w;
    }
    // Case 2: the singletons {a(0)} and {a(1)}
    let mut runs = Vec::new();
    for (x, hyp) in [(&a0, &u), (&a1, &v)] {
        let l = w.add_language(LanguageOracle::Finite([x.clone()].into_iter().collect()));
        let Some(run) = w.record(constant_text(x), l) else {
            return w.inconclusive("text could not be produced");
        };
        if *hyp == Hypothesis::Unknown {
            w.failure = Some(FailureMode::NoConjecture { run });
            w.note = "the opponent never conjectures on this singleton text".into();
            return w;
        }
        runs.push(run);
    }
    w.failure = Some(FailureMode::SameTraceOnDistinctLanguages { runs: (runs[0], runs[1]) });
    w.note = "one stabilized conjecture for {a(0)} and {a(1)}: at most one is learned".into();
    w
}

fn it_learner(initial: Expr, step: Expr) -> Learner {
    let body = ifz(
        var("v"),
        initial,
        let_("w", pred(var("v")), let_("prev", fst(var("w")), let_("sym", snd(var("w")), step))),
    );
    Learner::new(program_unchecked("v", body).code(), OperatorKind::It)
}

/// Conjectures `p` until it sees 0, then `ind({0})` forever.
pub fn zero_flag_it(p: &Nat) -> Learner {
    it_learner(
        lit(p.succ()),
        if_(eq(var("sym"), lit(1u64)), lit(ind([0]).succ()), var("prev")),
    )
}

/// `?` until the first datum `d`, then `ind({d})` forever.
pub fn first_datum_it() -> Learner {
    it_learner(
        lit(0u64),
        if_(
            and(not(var("prev")), var("sym")),
            succ(prim(Prim::Ind, vec![prim(Prim::SetInsert, vec![lit(0u64), pred(var("sym"))])])),
            var("prev"),
        ),
    )
}

/// Conjectures `pad(p, c)` where `c` counts data up to `cap`.
pub fn counting_it(p: &Nat, cap: u64) -> Learner {
    let c = snd(prim(Prim::Unpad, vec![pred(var("prev"))]));
    it_learner(
        lit(construct::pad(p, &Nat::zero()).succ()),
        let_(
            "c",
            c,
            succ(prim(
                Prim::Pad,
                vec![
                    lit(p.clone()),
                    if_(
                        and(var("sym"), prim(Prim::Lt, vec![var("c"), lit(cap)])),
                        succ(var("c")),
                        var("c"),
                    ),
                ],
            )),
        ),
    )
}

/// Conjectures `ind({min(max seen, cap)})`.
pub fn capped_max_it(cap: u64) -> Learner {
    let cur = prim(Prim::SetMax, vec![prim(Prim::Unind, vec![pred(var("prev"))])]);
    it_learner(
        lit(ind([0]).succ()),
        let_(
            "cur",
            cur,
            let_(
                "y",
                ifz(var("sym"), var("cur"), pred(var("sym"))),
                let_(
                    "y2",
                    if_(prim(Prim::Lt, vec![var("y"), lit(cap)]), var("y"), lit(cap)),
                    let_(
                        "best",
                        if_(prim(Prim::Lt, vec![var("cur"), var("y2")]), var("y2"), var("cur")),
                        succ(prim(Prim::Ind, vec![prim(Prim::SetInsert, vec![lit(0u64), var("best")])])),
                    ),
                ),
            ),
        ),
    )
}

/// Adds `⟨π₁(min D), π₂(max D) + 1⟩` to `D` and conjectures the result.
pub fn row_extender_sd() -> Learner {
    let body = ifz(
        prim(Prim::SetSize, vec![var("d")]),
        lit(ind([]).succ()),
        succ(prim(
            Prim::Ind,
            vec![prim(
                Prim::SetInsert,
                vec![
                    var("d"),
                    pair(
                        fst(prim(Prim::SetMin, vec![var("d")])),
                        succ(snd(prim(Prim::SetMax, vec![var("d")]))),
                    ),
                ],
            )],
        )),
    );
    Learner::new(program_unchecked("d", body).code(), OperatorKind::Sd)
}

/// The shipped opponents for an attack.
pub fn opponents(kind: AttackKind) -> Vec<(&'static str, Learner)> {
    use OperatorKind::*;
    let p = zoo::positive_index();
    match kind {
        AttackKind::TdSep => vec![
            ("const-ind-01", zoo::constant_conjecture(Td, &ind([0, 1]))),
            ("const-ind-0", zoo::constant_conjecture(Td, &ind([0]))),
            ("const-unknown", zoo::constant_learner(Td, Nat::zero())),
            ("const-positive", zoo::constant_conjecture(Td, &p)),
            ("singleton-td", zoo::singleton_td()),
            ("churn-td", zoo::churn_td()),
        ],
        AttackKind::ItSep => vec![
            ("const-positive", zoo::constant_conjecture(It, &p)),
            ("const-unknown", zoo::constant_learner(It, Nat::zero())),
            ("zero-flag", zero_flag_it(&p)),
            ("first-datum", first_datum_it()),
            ("counting", counting_it(&p, 3)),
            ("capped-max", capped_max_it(2)),
        ],
        AttackKind::KrtSd => vec![
            ("const-empty", zoo::constant_conjecture(Sd, &ind([]))),
            ("finite-sd", zoo::finite_sd()),
            ("zero-marker-sd", zoo::zero_marker_sd(&p)),
            ("const-positive", zoo::constant_conjecture(Sd, &p)),
            ("row-extender", row_extender_sd()),
        ],
        AttackKind::OrtTdTotal => vec![
            ("const-5", zoo::constant_conjecture(Td, &Nat::from(5u64))),
            ("identity-td", zoo::identity_td()),
            ("pair-component-td", zoo::pair_component_td()),
            ("const-unknown", zoo::constant_learner(Td, Nat::zero())),
            ("singleton-td", zoo::singleton_td()),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> AttackBounds {
        AttackBounds { horizon: 8, m_max: 3, ..AttackBounds::default() }
    }

    #[test]
    fn td_examples() {
        let w = td_attack(&zoo::constant_conjecture(OperatorKind::Td, &ind([0, 1])), small());
        let Some(FailureMode::WrongDecision { element, decided, .. }) = &w.failure else { panic!("{w:?}") };
        assert_eq!((element.clone(), *decided), (Nat::from(1u64), Decision::Yes));
        w.validate().unwrap();

        let w = td_attack(&zoo::singleton_td(), small());
        let Some(FailureMode::WrongDecision { run, element, decided, .. }) = &w.failure else { panic!() };
        assert_eq!(w.languages[w.runs[*run].language].contains(&Nat::zero()), Some(true));
        assert_eq!((element.clone(), *decided), (Nat::zero(), Decision::No));
        w.validate().unwrap();

        let w = td_attack(&zoo::constant_learner(OperatorKind::Td, Nat::zero()), small());
        assert!(matches!(w.failure, Some(FailureMode::NoConjecture { .. })));
        w.validate().unwrap();
    }

    #[test]
    fn it_learners_behave() {
        let p = zoo::positive_index();
        let syms = [Symbol::datum(2), Symbol::datum(0), Symbol::datum(5)];
        let at = |h: &Learner, n: usize| apply_operator(h, &syms, n, 100_000).unwrap();
        assert_eq!(at(&zero_flag_it(&p), 1), Hypothesis::Conjecture(p.clone()));
        assert_eq!(at(&zero_flag_it(&p), 2), Hypothesis::Conjecture(ind([0])));
        assert_eq!(at(&first_datum_it(), 3), Hypothesis::Conjecture(ind([2])));
        assert_eq!(at(&counting_it(&p, 3), 3), Hypothesis::Conjecture(construct::pad(&p, &Nat::from(3u64))));
        assert_eq!(at(&capped_max_it(2), 3), Hypothesis::Conjecture(ind([2])));
    }

    #[test]
    fn ort_identity_mind_changes() {
        let w = ort_td_totality_adversary(&zoo::identity_td(), small());
        assert!(matches!(w.failure, Some(FailureMode::MindChangeLoop { .. })), "{w:?}");
        w.validate().unwrap();
        let w = ort_td_totality_adversary(
            &zoo::constant_conjecture(OperatorKind::Td, &Nat::from(5u64)),
            small(),
        );
        assert!(matches!(w.failure, Some(FailureMode::SameTraceOnDistinctLanguages { .. })));
        w.validate().unwrap();
    }

    #[test]
    fn krt_cases() {
        let w = krt_sd_adversary(&zoo::constant_conjecture(OperatorKind::Sd, &ind([])), small());
        assert!(matches!(w.failure, Some(FailureMode::NeverCorrect { .. })), "{w:?}");
        w.validate().unwrap();
        let w = krt_sd_adversary(&row_extender_sd(), small());
        assert!(matches!(w.failure, Some(FailureMode::WrongDecision { .. })), "{w:?}");
        w.validate().unwrap();
    }
}
