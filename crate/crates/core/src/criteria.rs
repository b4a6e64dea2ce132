//! Bounded-horizon checkers for the success criteria.
//!
//! Ex and Bc are limit properties, so every verdict here is relative to a
//! finite horizon, a finite test domain and a per-evaluation step budget.
//! Uncertainty never turns into a positive answer: it becomes
//! [`Verdict::Inconclusive`].

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::learners::{run_trace, star, Hypothesis, Learner, OperatorKind, Trace};
use crate::numbering::{code, decide_c, eval, Decision, Nat};
use crate::seq::{content, enum_bounded_seqs, FiniteSet, SeqCode, SeqError, Symbol};
use crate::text::{Text, TextError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    ExW,
    ExC,
    BcW,
    BcC,
    CInd,
}

impl Flavor {
    pub const ALL: [Flavor; 5] = [Flavor::ExW, Flavor::ExC, Flavor::BcW, Flavor::BcC, Flavor::CInd];

    fn semantics(self) -> Semantics {
        match self {
            Flavor::ExW | Flavor::BcW => Semantics::W,
            _ => Semantics::C,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s.chars().filter(|c| *c != '_' && *c != '-').collect();
        Flavor::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(&norm))
            .ok_or_else(|| format!("unknown restriction `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Semantics {
    W,
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub hypothesis: Option<Hypothesis>,
    pub element: Option<Nat>,
    pub observed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Satisfied { n0: u64, checked_domain: u64, note: String },
    Falsified { step: u64, witness: Evidence },
    Inconclusive { horizon: u64, reason: String },
}

impl Verdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Verdict::Satisfied { .. })
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, Verdict::Falsified { .. })
    }

    fn rank(&self) -> u8 {
        match self {
            Verdict::Satisfied { .. } => 0,
            Verdict::Inconclusive { .. } => 1,
            Verdict::Falsified { .. } => 2,
        }
    }

    /// Same outcome class (satisfied, falsified, inconclusive).
    pub fn same_class(&self, other: &Verdict) -> bool {
        self.rank() == other.rank()
    }

    /// The worse of two verdicts.
    pub fn worst(a: Verdict, b: Verdict) -> Verdict {
        if b.rank() > a.rank() {
            b
        } else {
            a
        }
    }
}

/// Membership in the target language.
#[derive(Clone)]
pub enum LanguageOracle {
    Finite(FiniteSet),
    CIndex { e: Nat, budget: u64 },
    /// `{⟨e, x⟩ : x ∈ ℕ}`, or `{⟨e, x⟩ : x ≤ max}` when bounded.
    Rows { e: Nat, max_second: Option<Nat> },
    /// `ℕ⁺`.
    Positive,
    /// A host predicate with its declared test domain.
    Custom {
        name: String,
        member: Arc<dyn Fn(&Nat) -> bool + Send + Sync>,
        domain: Vec<Nat>,
    },
}

impl fmt::Debug for LanguageOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LanguageOracle::Finite(d) => f.debug_tuple("Finite").field(d).finish(),
            LanguageOracle::CIndex { e, budget } => {
                f.debug_struct("CIndex").field("e", e).field("budget", budget).finish()
            }
            LanguageOracle::Rows { e, max_second } => f
                .debug_struct("Rows")
                .field("e", e)
                .field("max_second", max_second)
                .finish(),
            LanguageOracle::Positive => f.write_str("Positive"),
            LanguageOracle::Custom { name, .. } => f.debug_struct("Custom").field("name", name).finish(),
        }
    }
}

impl Serialize for LanguageOracle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v = match self {
            LanguageOracle::Finite(d) => serde_json::json!({ "finite": d }),
            LanguageOracle::CIndex { e, budget } => {
                serde_json::json!({ "c_index": e, "budget": budget })
            }
            LanguageOracle::Rows { e, max_second } => {
                serde_json::json!({ "rows": e, "max_second": max_second })
            }
            LanguageOracle::Positive => serde_json::json!("positive"),
            LanguageOracle::Custom { name, domain, .. } => {
                serde_json::json!({ "custom": name, "domain": domain })
            }
        };
        v.serialize(s)
    }
}

impl LanguageOracle {
    pub fn finite<I: IntoIterator<Item = u64>>(elems: I) -> LanguageOracle {
        LanguageOracle::Finite(crate::seq::set_of(elems))
    }

    /// Membership; `None` when a C-index oracle fails to answer.
    pub fn contains(&self, x: &Nat) -> Option<bool> {
        match self {
            LanguageOracle::Finite(d) => Some(d.contains(x)),
            LanguageOracle::CIndex { e, budget } => match decide_c(e, x, *budget) {
                Decision::Yes => Some(true),
                Decision::No => Some(false),
                _ => None,
            },
            LanguageOracle::Rows { e, max_second } => {
                let (a, b) = code::unpair_nat(x);
                Some(a == *e && max_second.as_ref().is_none_or(|m| b <= *m))
            }
            LanguageOracle::Positive => Some(!x.is_zero()),
            LanguageOracle::Custom { member, .. } => Some(member(x)),
        }
    }

    /// The points hypotheses are checked on: `[0, m)` plus points that
    /// matter for this language.
    pub fn test_points(&self, m: u64) -> Vec<Nat> {
        let mut pts: FiniteSet = (0..m).map(Nat::from).collect();
        match self {
            LanguageOracle::Finite(d) => pts.extend(d.iter().cloned()),
            LanguageOracle::Rows { e, max_second } => {
                for j in 0..m {
                    pts.insert(code::pair_nat(e, &Nat::from(j)));
                }
                if let Some(mx) = max_second {
                    for j in 0..=2u64 {
                        pts.insert(code::pair_nat(e, &Nat::new(mx.value() + j)));
                    }
                }
            }
            LanguageOracle::Custom { domain, .. } => pts.extend(domain.iter().cloned()),
            _ => {}
        }
        pts.into_iter().collect()
    }

    /// Elements of the language among the test points.
    pub fn members_below(&self, m: u64) -> Option<FiniteSet> {
        let mut out = FiniteSet::new();
        for x in self.test_points(m) {
            if self.contains(&x)? {
                out.insert(x);
            }
        }
        Some(out)
    }
}

/// Result of checking one hypothesis against the language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Correctness {
    Correct,
    Wrong { element: Nat, observed: String },
    Unknown { element: Nat, reason: String },
}

/// Checks hypotheses against one language and remembers the answers.
pub struct Checker<'a> {
    lang: &'a LanguageOracle,
    points: Vec<Nat>,
    budget: u64,
    memo: HashMap<(Nat, bool), Correctness>,
}

impl<'a> Checker<'a> {
    pub fn new(lang: &'a LanguageOracle, m: u64, budget: u64) -> Checker<'a> {
        Checker { lang, points: lang.test_points(m), budget, memo: HashMap::new() }
    }

    pub fn domain_size(&self) -> u64 {
        self.points.len() as u64
    }

    fn check(&mut self, e: &Nat, sem: Semantics) -> Correctness {
        let key = (e.clone(), sem == Semantics::W);
        if let Some(c) = self.memo.get(&key) {
            return c.clone();
        }
        let c = self.compute(e, sem);
        self.memo.insert(key, c.clone());
        c
    }

    pub fn check_c(&mut self, e: &Nat) -> Correctness {
        self.check(e, Semantics::C)
    }

    pub fn check_w(&mut self, e: &Nat) -> Correctness {
        self.check(e, Semantics::W)
    }

    fn compute(&self, e: &Nat, sem: Semantics) -> Correctness {
        let mut unknown = None;
        for x in &self.points {
            let Some(member) = self.lang.contains(x) else {
                unknown.get_or_insert((x.clone(), "language oracle out of budget".to_string()));
                continue;
            };
            match sem {
                Semantics::C => match decide_c(e, x, self.budget) {
                    Decision::Yes if !member => {
                        return Correctness::Wrong { element: x.clone(), observed: "decided 1".into() }
                    }
                    Decision::No if member => {
                        return Correctness::Wrong { element: x.clone(), observed: "decided 0".into() }
                    }
                    Decision::NotBoolean => {
                        return Correctness::Wrong {
                            element: x.clone(),
                            observed: "value outside {0,1}".into(),
                        }
                    }
                    Decision::OutOfBudget => {
                        unknown.get_or_insert((x.clone(), "decision out of budget".into()));
                    }
                    _ => {}
                },
                Semantics::W => {
                    let halts = eval(e, x, self.budget).halted();
                    if halts && !member {
                        return Correctness::Wrong {
                            element: x.clone(),
                            observed: "enumerated non-member".into(),
                        };
                    }
                    if !halts && member {
                        unknown.get_or_insert((x.clone(), "member not enumerated within budget".into()));
                    }
                }
            }
        }
        match unknown {
            Some((element, reason)) => Correctness::Unknown { element, reason },
            None => Correctness::Correct,
        }
    }
}

fn falsified(step: u64, hyp: Option<Hypothesis>, element: Option<Nat>, observed: impl Into<String>) -> Verdict {
    Verdict::Falsified {
        step,
        witness: Evidence { hypothesis: hyp, element, observed: observed.into() },
    }
}

/// Judges one trace against one language.
pub fn check_restriction(
    flavor: Flavor,
    trace: &Trace,
    lang: &LanguageOracle,
    m: u64,
    budget: u64,
) -> Verdict {
    let mut checker = Checker::new(lang, m, budget);
    check_with(flavor, trace, &mut checker)
}

pub fn check_with(flavor: Flavor, trace: &Trace, checker: &mut Checker<'_>) -> Verdict {
    let hyps = trace.hypotheses();
    let horizon = trace.horizon();
    let domain = checker.domain_size();
    if flavor == Flavor::CInd {
        return check_cind(&hyps, horizon, checker);
    }
    if let Some(d) = trace.first_divergence() {
        return Verdict::Inconclusive { horizon, reason: format!("learner diverged at step {d}") };
    }
    let hyps: Vec<Hypothesis> = hyps.into_iter().map(Option::unwrap).collect();
    let last = hyps.last().unwrap();
    let Hypothesis::Conjecture(final_e) = last else {
        return falsified(horizon, Some(Hypothesis::Unknown), None, "no conjecture at the horizon");
    };
    let sem = flavor.semantics();
    match flavor {
        Flavor::ExC | Flavor::ExW => {
            let n0 = hyps.iter().rposition(|h| h != last).map_or(0, |i| i + 1) as u64;
            match checker.check(final_e, sem) {
                Correctness::Correct => Verdict::Satisfied {
                    n0,
                    checked_domain: domain,
                    note: format!("converged from step {n0} to the horizon {horizon}; horizon-limited"),
                },
                Correctness::Wrong { element, observed } => {
                    falsified(horizon, Some(last.clone()), Some(element), observed)
                }
                Correctness::Unknown { element, reason } => {
                    Verdict::Inconclusive { horizon, reason: format!("{reason} at {element}") }
                }
            }
        }
        Flavor::BcC | Flavor::BcW => {
            let mut n0 = hyps.len();
            for (i, h) in hyps.iter().enumerate().rev() {
                let Hypothesis::Conjecture(e) = h else { break };
                match checker.check(e, sem) {
                    Correctness::Correct => n0 = i,
                    Correctness::Wrong { element, observed } if i + 1 == hyps.len() => {
                        return falsified(i as u64, Some(h.clone()), Some(element), observed)
                    }
                    Correctness::Unknown { element, reason } if i + 1 == hyps.len() => {
                        return Verdict::Inconclusive { horizon, reason: format!("{reason} at {element}") }
                    }
                    _ => break,
                }
            }
            Verdict::Satisfied {
                n0: n0 as u64,
                checked_domain: domain,
                note: format!("correct from step {n0} to the horizon {horizon}; horizon-limited"),
            }
        }
        Flavor::CInd => unreachable!(),
    }
}

fn check_cind(hyps: &[Option<Hypothesis>], horizon: u64, checker: &mut Checker<'_>) -> Verdict {
    let mut seen_conjecture = false;
    let mut pending: Option<Verdict> = None;
    let mut checked: HashMap<Nat, Option<(Nat, String)>> = HashMap::new();
    let points = checker.points.clone();
    for (i, h) in hyps.iter().enumerate() {
        match h {
            None => {
                pending.get_or_insert(Verdict::Inconclusive {
                    horizon,
                    reason: format!("learner diverged at step {i}"),
                });
                break;
            }
            Some(Hypothesis::Unknown) if seen_conjecture => {
                return falsified(i as u64, Some(Hypothesis::Unknown), None, "? after a conjecture");
            }
            Some(Hypothesis::Unknown) => {}
            Some(Hypothesis::Conjecture(e)) => {
                seen_conjecture = true;
                let r = checked.entry(e.clone()).or_insert_with(|| {
                    let mut unknown = None;
                    for x in &points {
                        match decide_c(e, x, checker.budget) {
                            Decision::NotBoolean => return Some((x.clone(), "not-boolean".into())),
                            Decision::OutOfBudget => {
                                unknown.get_or_insert((x.clone(), "out-of-budget".to_string()));
                            }
                            _ => {}
                        }
                    }
                    unknown
                });
                match r {
                    Some((x, kind)) if kind == "not-boolean" => {
                        return falsified(
                            i as u64,
                            Some(Hypothesis::Conjecture(e.clone())),
                            Some(x.clone()),
                            "value outside {0,1}",
                        );
                    }
                    Some((x, _)) => {
                        pending.get_or_insert(Verdict::Inconclusive {
                            horizon,
                            reason: format!("decision out of budget at step {i}, element {x}"),
                        });
                    }
                    None => {}
                }
            }
        }
    }
    pending.unwrap_or(Verdict::Satisfied {
        n0: 0,
        checked_domain: checker.domain_size(),
        note: "every hypothesis boolean on the test domain; bounded".into(),
    })
}

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("learner did not answer on input {input} within the budget")]
    Budget { input: Nat },
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error("delayability precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Text(#[from] TextError),
}

/// Memoized evaluation of a G-learner on sequence codes.
pub struct GOracle<'a> {
    h: &'a Learner,
    budget: u64,
    memo: HashMap<Nat, Hypothesis>,
}

impl<'a> GOracle<'a> {
    pub fn new(h: &'a Learner, budget: u64) -> GOracle<'a> {
        assert_eq!(h.kind, OperatorKind::G, "sequence oracle needs a G-learner");
        GOracle { h, budget, memo: HashMap::new() }
    }

    pub fn at(&mut self, s: &SeqCode) -> Result<Hypothesis, CriteriaError> {
        if let Some(h) = self.memo.get(s.code()) {
            return Ok(h.clone());
        }
        let h = self
            .h
            .query(s.code(), self.budget)
            .hypothesis
            .ok_or_else(|| CriteriaError::Budget { input: s.code().clone() })?;
        self.memo.insert(s.code().clone(), h.clone());
        Ok(h)
    }
}

/// Potential locking sequences of `h` on `D` up to length `t`.
pub fn p_set(h: &Learner, d: &FiniteSet, t: u64, budget: u64) -> Result<Vec<SeqCode>, CriteriaError> {
    let space = enum_bounded_seqs(d, t, crate::seq::DEFAULT_SEQ_CAP)?;
    let mut g = GOracle::new(h, budget);
    let mut out = Vec::new();
    'sigma: for s in &space {
        let base = g.at(s)?;
        for tau in &space {
            if g.at(&s.concat(tau))? != base {
                continue 'sigma;
            }
        }
        out.push(s.clone());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LockingVariant {
    /// `h(σ) = h(στ)` and `h(σ)` correct.
    Ex,
    /// `h(στ)` correct for every `τ`.
    Bc,
}

/// The least `σ` over `D ∪ {#}` of length at most `t_max` that passes the
/// stability test of `variant` with a correct hypothesis (checked as a
/// C-index on the oracle's test domain). A result is a candidate at the
/// given bounds, not a certificate.
pub fn find_locking_sequence(
    h: &Learner,
    lang: &LanguageOracle,
    d: &FiniteSet,
    t_max: u64,
    m: u64,
    budget: u64,
    variant: LockingVariant,
) -> Result<Option<SeqCode>, CriteriaError> {
    let g = star(h);
    let mut oracle = GOracle::new(&g, budget);
    let mut checker = Checker::new(lang, m, budget);
    let space = enum_bounded_seqs(d, t_max, crate::seq::DEFAULT_SEQ_CAP)?;
    let mut correct = |hyp: &Hypothesis| match hyp {
        Hypothesis::Conjecture(e) => checker.check_c(e) == Correctness::Correct,
        Hypothesis::Unknown => false,
    };
    'sigma: for s in &space {
        let base = oracle.at(s)?;
        if !correct(&base) {
            continue;
        }
        for tau in &space {
            let ext = oracle.at(&s.concat(tau))?;
            let ok = match variant {
                LockingVariant::Ex => ext == base,
                LockingVariant::Bc => correct(&ext),
            };
            if !ok {
                continue 'sigma;
            }
        }
        return Ok(Some(s.clone()));
    }
    Ok(None)
}

/// Checks that `flavor(p, T)` implies `flavor(p ∘ r, T')` at the shared
/// horizon, for one delay table `r` (indexed by the steps of `T'`).
#[allow(clippy::too_many_arguments)]
pub fn check_delayable_instance(
    p: &Trace,
    t: &[Symbol],
    r: &[u64],
    t2: &[Symbol],
    flavor: Flavor,
    lang: &LanguageOracle,
    m: u64,
    budget: u64,
) -> Result<bool, CriteriaError> {
    let h = p.horizon();
    if r.is_empty() || r.windows(2).any(|w| w[0] > w[1]) {
        return Err(CriteriaError::Precondition("r must be non-decreasing".into()));
    }
    if *r.last().unwrap() != h {
        return Err(CriteriaError::Precondition(
            "r must reach the horizon of the original trace".into(),
        ));
    }
    if (t.len() as u64) < h || (t2.len() as u64) + 1 < r.len() as u64 {
        return Err(CriteriaError::Precondition("texts shorter than the compared prefixes".into()));
    }
    for (n, &rn) in r.iter().enumerate() {
        if !content(&t[..rn as usize]).is_subset(&content(&t2[..n])) {
            return Err(CriteriaError::Precondition(format!(
                "content(T[r({n})]) is not contained in content(T'[{n}])"
            )));
        }
    }
    if content(&t[..h as usize]) != content(&t2[..r.len() - 1]) {
        return Err(CriteriaError::Precondition("texts have different contents".into()));
    }
    let before = check_restriction(flavor, p, lang, m, budget);
    if !before.is_satisfied() {
        return Ok(true);
    }
    let mut delayed = p.delayed(r);
    delayed.symbols = t2[..r.len() - 1].to_vec();
    Ok(check_restriction(flavor, &delayed, lang, m, budget).is_satisfied())
}

/// What is being learned and how it is judged.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Criterion {
    pub flavor: Flavor,
    /// Additionally require CInd on the supplied arbitrary-text probes.
    pub tau_cind: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LearnReport {
    pub per_text: Vec<Verdict>,
    pub probes: Vec<Verdict>,
    pub aggregate: Verdict,
}

#[allow(clippy::too_many_arguments)]
pub fn learns(
    criterion: &Criterion,
    h: &Learner,
    lang: &LanguageOracle,
    texts: &[Text],
    probes: &[Text],
    horizon: u64,
    m: u64,
    budget: u64,
) -> LearnReport {
    let mut checker = Checker::new(lang, m, budget);
    let mut per_text = Vec::new();
    for t in texts {
        let v = match run_trace(h, t, horizon, budget) {
            Ok(trace) => check_with(criterion.flavor, &trace, &mut checker),
            Err(e) => Verdict::Inconclusive { horizon, reason: e.to_string() },
        };
        per_text.push(v);
    }
    let mut probe_verdicts = Vec::new();
    if criterion.tau_cind {
        for t in probes {
            let v = match run_trace(h, t, horizon, budget) {
                Ok(trace) => check_with(Flavor::CInd, &trace, &mut checker),
                Err(e) => Verdict::Inconclusive { horizon, reason: e.to_string() },
            };
            probe_verdicts.push(v);
        }
    }
    let aggregate = per_text
        .iter()
        .chain(probe_verdicts.iter())
        .cloned()
        .fold(None, |acc: Option<Verdict>, v| Some(match acc {
            None => v,
            Some(a) => Verdict::worst(a, v),
        }))
        .unwrap_or(Verdict::Inconclusive { horizon, reason: "no texts".into() });
    LearnReport { per_text, probes: probe_verdicts, aggregate }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::run_trace_on;
    use crate::numbering::{ind, pad};
    use crate::zoo;

    fn const_trace(hyps: Vec<Hypothesis>) -> Trace {
        // a G-learner is irrelevant here; only the entries matter
        let h = zoo::constant_learner(OperatorKind::G, Nat::zero());
        let mut t = run_trace_on(&h, &vec![Symbol::Pause; hyps.len() - 1], hyps.len() as u64 - 1, 10);
        for (e, hy) in t.entries.iter_mut().zip(hyps) {
            e.hypothesis = Some(hy);
        }
        t
    }

    fn conj(e: Nat) -> Hypothesis {
        Hypothesis::Conjecture(e)
    }

    #[test]
    fn constant_correct_trace() {
        let t = const_trace(vec![conj(ind([1, 2])); 5]);
        let v = check_restriction(Flavor::ExC, &t, &LanguageOracle::finite([1, 2]), 8, 1000);
        assert!(matches!(v, Verdict::Satisfied { n0: 0, checked_domain: 8, .. }), "{v:?}");
    }

    #[test]
    fn wrong_final_conjecture() {
        let t = const_trace(vec![conj(ind([1])), conj(ind([]))]);
        let v = check_restriction(Flavor::ExC, &t, &LanguageOracle::finite([1]), 8, 1000);
        let Verdict::Falsified { witness, .. } = v else { panic!("{v:?}") };
        assert_eq!(witness.element, Some(Nat::from(1u64)));
        assert_eq!(witness.observed, "decided 0");
    }

    #[test]
    fn cind_catches_non_boolean() {
        let two = crate::numbering::constant(&Nat::from(2u64));
        let t = const_trace(vec![Hypothesis::Unknown, conj(two)]);
        let v = check_restriction(Flavor::CInd, &t, &LanguageOracle::finite([]), 4, 1000);
        assert!(matches!(v, Verdict::Falsified { step: 1, ref witness } if witness.element == Some(Nat::zero())), "{v:?}");
    }

    #[test]
    fn bc_accepts_alternating_pads() {
        let d = ind([3]);
        let a = pad(&d, &Nat::from(0u64));
        let b = pad(&d, &Nat::from(1u64));
        let mut hyps = vec![conj(ind([])); 4];
        for i in 0..8 {
            hyps.push(conj(if i % 2 == 0 { a.clone() } else { b.clone() }));
        }
        let t = const_trace(hyps);
        let v = check_restriction(Flavor::BcC, &t, &LanguageOracle::finite([3]), 16, 10_000);
        assert!(matches!(v, Verdict::Satisfied { n0: 4, .. }), "{v:?}");
        let v = check_restriction(Flavor::ExC, &t, &LanguageOracle::finite([3]), 16, 10_000);
        assert!(matches!(v, Verdict::Satisfied { n0: 11, .. }), "{v:?}");
    }

    #[test]
    fn final_unknown_falsifies() {
        let t = const_trace(vec![Hypothesis::Unknown; 3]);
        let v = check_restriction(Flavor::ExW, &t, &LanguageOracle::finite([]), 4, 1000);
        assert!(v.is_falsified());
    }

    #[test]
    fn p_set_of_constant_and_length_learners() {
        let d = crate::seq::set_of([1]);
        let c = zoo::constant_learner(OperatorKind::G, Nat::from(4u64));
        assert_eq!(p_set(&c, &d, 2, 1000).unwrap(), enum_bounded_seqs(&d, 2, 6).unwrap());
        assert!(p_set(&zoo::length_g(), &d, 2, 1000).unwrap().is_empty());
    }

    #[test]
    fn locking_sequences() {
        let d = crate::seq::set_of([0]);
        let lang = LanguageOracle::finite([0]);
        let c = zoo::constant_conjecture(OperatorKind::G, &ind([0]));
        assert_eq!(
            find_locking_sequence(&c, &lang, &d, 2, 4, 10_000, LockingVariant::Ex).unwrap(),
            Some(SeqCode::empty())
        );
        let z = zoo::zero_seen_g();
        assert_eq!(
            find_locking_sequence(&z, &lang, &d, 2, 4, 10_000, LockingVariant::Ex).unwrap(),
            Some(SeqCode::from_symbols(&[Symbol::datum(0)]))
        );
        let churn = zoo::churn_g();
        assert_eq!(
            find_locking_sequence(&churn, &LanguageOracle::finite([]), &crate::seq::set_of([]), 2, 4, 10_000, LockingVariant::Bc).unwrap(),
            Some(SeqCode::empty())
        );
    }
}
