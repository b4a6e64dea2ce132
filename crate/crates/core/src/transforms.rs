//! Learner transformations. Every output is a program in the numbering
//! that calls the input learner through `eval` only.
//!
//! Sequence spaces range over `D ∪ {#}`. The Psd constructions clamp the
//! length bound `t` to a cap, since the spaces grow as `(|D| + 1)^t`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::learners::{star, Hypothesis, Learner, OperatorKind};
use crate::numbering::build::*;
use crate::numbering::{ind, Nat, Prim, Term};

/// Default clamp on `t` in the Psd constructions.
pub const DEFAULT_T_CAP: u64 = 4;

/// Budget used when probing the input learner at synthesis time.
pub const PROBE_BUDGET: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransformKind {
    #[serde(rename = "g2psd")]
    G2Psd,
    #[serde(rename = "it2sd")]
    It2Sd,
    #[serde(rename = "g2it-bc")]
    G2ItBc,
    #[serde(rename = "g2psd-bc")]
    G2PsdBc,
    #[serde(rename = "td-ex")]
    TdEx,
}

impl TransformKind {
    pub const ALL: [TransformKind; 5] = [
        TransformKind::G2Psd,
        TransformKind::It2Sd,
        TransformKind::G2ItBc,
        TransformKind::G2PsdBc,
        TransformKind::TdEx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TransformKind::G2Psd => "g2psd",
            TransformKind::It2Sd => "it2sd",
            TransformKind::G2ItBc => "g2it-bc",
            TransformKind::G2PsdBc => "g2psd-bc",
            TransformKind::TdEx => "td-ex",
        }
    }

    pub fn input_kind(self) -> OperatorKind {
        match self {
            TransformKind::It2Sd => OperatorKind::It,
            TransformKind::TdEx => OperatorKind::Td,
            _ => OperatorKind::G,
        }
    }

    pub fn output_kind(self) -> OperatorKind {
        match self {
            TransformKind::G2Psd | TransformKind::G2PsdBc => OperatorKind::Psd,
            TransformKind::It2Sd => OperatorKind::Sd,
            TransformKind::G2ItBc => OperatorKind::It,
            TransformKind::TdEx => OperatorKind::Td,
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformKind {
    type Err = TransformError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TransformKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| TransformError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("{kind} expects a {expected} learner, got {got}")]
    WrongKind { kind: TransformKind, expected: OperatorKind, got: OperatorKind },
    #[error("unknown transformation `{0}`")]
    UnknownKind(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformReport {
    pub construction: TransformKind,
    pub input: Nat,
    pub input_kind: OperatorKind,
    pub output: Nat,
    pub output_kind: OperatorKind,
    pub t_cap: Option<u64>,
    pub probe_budget: u64,
    /// Probe inputs on which the input learner did not answer.
    pub warnings: Vec<String>,
}

fn check_kind(kind: TransformKind, h: &Learner) -> Result<(), TransformError> {
    if h.kind != kind.input_kind() {
        return Err(TransformError::WrongKind { kind, expected: kind.input_kind(), got: h.kind });
    }
    Ok(())
}

/// Applies a transformation with the default cap.
pub fn apply(kind: TransformKind, h: &Learner) -> Result<(Learner, TransformReport), TransformError> {
    apply_with(kind, h, DEFAULT_T_CAP)
}

pub fn apply_with(
    kind: TransformKind,
    h: &Learner,
    t_cap: u64,
) -> Result<(Learner, TransformReport), TransformError> {
    check_kind(kind, h)?;
    let program = match kind {
        TransformKind::G2Psd => g_to_psd_program(&h.program, t_cap),
        TransformKind::It2Sd => it_to_sd_program(h),
        TransformKind::G2ItBc => g_to_it_bc_program(&h.program),
        TransformKind::G2PsdBc => g_to_psd_bc_program(&h.program, t_cap),
        TransformKind::TdEx => td_ex_program(&h.program),
    };
    let out = Learner::new(program.code(), kind.output_kind());
    let report = TransformReport {
        construction: kind,
        input: h.program.clone(),
        input_kind: h.kind,
        output: out.program.clone(),
        output_kind: out.kind,
        t_cap: matches!(kind, TransformKind::G2Psd | TransformKind::G2PsdBc).then_some(t_cap),
        probe_budget: PROBE_BUDGET,
        warnings: probe(h),
    };
    Ok((out, report))
}

pub fn g_to_psd(h: &Learner) -> Result<(Learner, TransformReport), TransformError> {
    apply(TransformKind::G2Psd, h)
}

pub fn it_to_sd(h: &Learner) -> Result<(Learner, TransformReport), TransformError> {
    apply(TransformKind::It2Sd, h)
}

pub fn g_to_it_bc(h: &Learner) -> Result<(Learner, TransformReport), TransformError> {
    apply(TransformKind::G2ItBc, h)
}

pub fn g_to_psd_bc(h: &Learner) -> Result<(Learner, TransformReport), TransformError> {
    apply(TransformKind::G2PsdBc, h)
}

pub fn td_bc_to_td_ex(h: &Learner) -> Result<(Learner, TransformReport), TransformError> {
    apply(TransformKind::TdEx, h)
}

/// Spot-checks totality on a few small inputs.
fn probe(h: &Learner) -> Vec<String> {
    let inputs: Vec<Nat> = match h.kind {
        OperatorKind::It => vec![Nat::zero()],
        _ => (0..4u64).map(Nat::from).collect(),
    };
    inputs
        .into_iter()
        .filter(|x| h.query(x, PROBE_BUDGET).hypothesis.is_none())
        .map(|x| format!("input learner did not answer on {x} within {PROBE_BUDGET} steps"))
        .collect()
}

fn h_lit(h: &Nat) -> Expr {
    lit(h.clone())
}

fn get(list: &str, i: Expr) -> Expr {
    prim(Prim::ListGet, vec![var(list), i])
}

fn lt(a: Expr, b: Expr) -> Expr {
    prim(Prim::Lt, vec![a, b])
}

/// Binds `d` and the clamped `t` from a Psd input `v`, then `S = D_#^{≤t}`
/// and `n = |S|`.
fn with_space(t_cap: u64, v: Expr, body: Expr) -> Expr {
    let_(
        "d",
        fst(v.clone()),
        let_(
            "t0",
            snd(v),
            let_(
                "t",
                if_(lt(var("t0"), lit(t_cap)), var("t0"), lit(t_cap)),
                let_(
                    "S",
                    prim(Prim::BoundedSeqs, vec![var("d"), var("t")]),
                    let_("n", prim(Prim::ListLen, vec![var("S")]), body),
                ),
            ),
        ),
    )
}

/// `h'(D, t) = h(min p(D, t))`, or `ind(∅)` when no candidate is stable.
fn g_to_psd_program(h: &Nat, t_cap: u64) -> Term {
    let stable = let_(
        "si",
        get("S", var("i")),
        let_(
            "hi",
            call(h_lit(h), var("si")),
            forall_below(
                "j",
                var("n"),
                eq(
                    var("hi"),
                    call(h_lit(h), prim(Prim::ListConcat, vec![var("si"), get("S", var("j"))])),
                ),
            ),
        ),
    );
    let body = with_space(
        t_cap,
        var("v"),
        let_(
            "i",
            first("i", if_(lt(var("i"), var("n")), stable, lit(1u64))),
            if_(
                lt(var("i"), var("n")),
                call(h_lit(h), get("S", var("i"))),
                lit(ind([]).succ()),
            ),
        ),
    );
    program_unchecked("v", body)
}

/// `h'(D) = h*(sort#(D))` when one more pause leaves it unchanged, else
/// `ind(D)`.
fn it_to_sd_program(h: &Learner) -> Term {
    let hs = star(h).program;
    let body = let_(
        "sigma",
        prim(Prim::SortSharp, vec![var("d")]),
        let_(
            "a",
            call(h_lit(&hs), var("sigma")),
            if_(
                eq(
                    var("a"),
                    call(h_lit(&hs), prim(Prim::ListSnoc, vec![var("sigma"), lit(0u64)])),
                ),
                var("a"),
                succ(prim(Prim::Ind, vec![var("d")])),
            ),
        ),
    );
    program_unchecked("d", body)
}

/// Iterative learner whose state is `pad(h(σ), σ)`. A `?` from `h` is
/// padded as the everywhere-divergent index.
fn g_to_it_bc_program(h: &Nat) -> Term {
    let div = Term::divergent().code();
    let emit = |sigma: Expr| {
        let_(
            "s%",
            sigma,
            let_(
                "hv",
                call(h_lit(h), var("s%")),
                succ(prim(
                    Prim::Pad,
                    vec![ifz(var("hv"), lit(div.clone()), pred(var("hv"))), var("s%")],
                )),
            ),
        )
    };
    let step = let_(
        "w",
        pred(var("v")),
        let_(
            "sigma",
            snd(prim(Prim::Unpad, vec![pred(fst(var("w")))])),
            emit(prim(Prim::ListSnoc, vec![var("sigma"), snd(var("w"))])),
        ),
    );
    program_unchecked("v", ifz(var("v"), emit(lit(0u64)), step))
}

/// `1` on `x` exactly when some `σ ∈ S` satisfies
/// (1) every `h(στ)`, `τ ∈ S`, accepts `x`, and
/// (2) every `σ' < σ` has some `τ' ∈ S` with `h(σ'τ')` accepting `x`.
/// Input `⟨⟨D, t⟩, x⟩`; `t` is already clamped. `?` never accepts.
fn q_program(h: &Nat) -> Term {
    let accepts = |s: Expr| {
        let_(
            "hv",
            call(h_lit(h), s),
            ifz(var("hv"), lit(0u64), eq(call(pred(var("hv")), var("x")), lit(1u64))),
        )
    };
    let cond1 = forall_below(
        "j",
        var("n"),
        accepts(prim(Prim::ListConcat, vec![var("sig"), get("S", var("j"))])),
    );
    let cond2 = let_(
        "B",
        prim(Prim::SeqsBelow, vec![var("d"), var("sig")]),
        forall_below(
            "k",
            prim(Prim::ListLen, vec![var("B")]),
            not(forall_below(
                "j2",
                var("n"),
                not(accepts(prim(
                    Prim::ListConcat,
                    vec![get("B", var("k")), get("S", var("j2"))],
                ))),
            )),
        ),
    );
    let witness = let_("sig", get("S", var("i")), and(cond1, cond2));
    let body = let_(
        "x",
        snd(var("v")),
        with_space(
            u64::MAX,
            fst(var("v")),
            not(forall_below("i", var("n"), not(witness))),
        ),
    );
    program_unchecked("v", body)
}

/// `h'(D, t)` is the C-index `smn(Q_h, ⟨D, min(t, cap)⟩)`.
fn g_to_psd_bc_program(h: &Nat, t_cap: u64) -> Term {
    let q = q_program(h).code();
    let body = let_(
        "t0",
        snd(var("v")),
        succ(prim(
            Prim::Smn,
            vec![
                lit(q),
                pair(fst(var("v")), if_(lt(var("t0"), lit(t_cap)), var("t0"), lit(t_cap))),
            ],
        )),
    );
    program_unchecked("v", body)
}

/// `h'(x) = h(y)` for the least datum `y` decided into `C_{h(x)}` with
/// `h(y) ≠ ?`; `?` stays `?` and the pause is passed through.
fn td_ex_program(h: &Nat) -> Term {
    let search = first(
        "y",
        and(
            eq(call(pred(var("hv")), var("y")), lit(1u64)),
            call(h_lit(h), succ(var("y"))),
        ),
    );
    let body = let_(
        "hv",
        call(h_lit(h), var("s")),
        ifz(
            var("s"),
            var("hv"),
            ifz(var("hv"), lit(0u64), call(h_lit(h), succ(search))),
        ),
    );
    program_unchecked("s", body)
}

/// Host evaluation of the predicate computed by the `g2psd-bc` hypotheses,
/// for a G-learner `h`: `Some(true)` when `Q(x, a, (D, t))` holds, `None`
/// when a required evaluation ran out of `budget`.
pub fn psd_bc_q(
    h: &Learner,
    x: &Nat,
    a: u64,
    d: &crate::seq::FiniteSet,
    t: u64,
    budget: u64,
) -> Result<Option<bool>, crate::seq::SeqError> {
    use crate::seq::{enum_bounded_seqs, SeqCode};
    use std::collections::HashMap;
    let space = enum_bounded_seqs(d, t, crate::seq::DEFAULT_SEQ_CAP)?;
    let mut memo: HashMap<Nat, Option<bool>> = HashMap::new();
    let mut value_is = |s: &SeqCode| -> Option<bool> {
        if let Some(v) = memo.get(s.code()) {
            return *v;
        }
        let r = match h.query(s.code(), budget).hypothesis {
            None => None,
            Some(Hypothesis::Unknown) => Some(false),
            Some(Hypothesis::Conjecture(e)) => crate::numbering::eval(&e, x, budget)
                .into_value()
                .map(|v| v == Nat::from(a)),
        };
        memo.insert(s.code().clone(), r);
        r
    };
    let set = crate::seq::set_code(d);
    for sigma in &space {
        let mut c1 = true;
        for tau in &space {
            match value_is(&sigma.concat(tau)) {
                None => return Ok(None),
                Some(false) => {
                    c1 = false;
                    break;
                }
                Some(true) => {}
            }
        }
        if !c1 {
            continue;
        }
        let below = crate::numbering::data::seqs_below(&set, sigma.code(), u64::MAX)
            .expect("unbounded enumeration");
        let mut c2 = true;
        for s2 in below {
            let s2 = SeqCode(s2);
            let mut found = false;
            for tau in &space {
                match value_is(&s2.concat(tau)) {
                    None => return Ok(None),
                    Some(true) => {
                        found = true;
                        break;
                    }
                    Some(false) => {}
                }
            }
            if !found {
                c2 = false;
                break;
            }
        }
        if c2 {
            return Ok(Some(true));
        }
    }
    Ok(Some(false))
}

/// Every occurrence of `input` as a literal in `output` (and in the
/// programs `output` calls by literal index) is in call position: the
/// program operand of an `eval` or an `smn`. There must be at least one.
pub fn audit(output: &Nat, input: &Nat) -> bool {
    fn walk(t: &Term, input: &Nat, calls: &mut usize, depth: usize) -> bool {
        match t {
            Term::Lit(v) => v != input,
            // smn(e, _) calls e
            Term::Prim(Prim::Smn, args) => {
                if let Term::Lit(v) = &args[0] {
                    if v == input {
                        *calls += 1;
                    } else if depth < 3 && !walk(&v.as_program(), input, calls, depth + 1) {
                        return false;
                    }
                } else if !walk(&args[0], input, calls, depth) {
                    return false;
                }
                walk(&args[1], input, calls, depth)
            }
            Term::Eval(f, x) => {
                if let Term::Lit(v) = f.as_ref() {
                    if v == input {
                        *calls += 1;
                    } else if depth < 3 && !walk(&v.as_program(), input, calls, depth + 1) {
                        return false;
                    }
                } else if !walk(f, input, calls, depth) {
                    return false;
                }
                walk(x, input, calls, depth)
            }
            _ => t.children().all(|c| walk(c, input, calls, depth)),
        }
    }
    let mut calls = 0;
    walk(&output.as_program(), input, &mut calls, 0) && calls > 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::psd_input;
    use crate::numbering::{decide_c, unpad, Decision};
    use crate::seq::{set_code, set_of, SeqCode, Symbol};
    use crate::zoo;

    #[test]
    fn constant_g_to_psd() {
        let e = ind([2]);
        let h = zoo::constant_conjecture(OperatorKind::G, &e);
        let (h2, rep) = g_to_psd(&h).unwrap();
        assert!(rep.warnings.is_empty());
        for (d, t) in [(set_of([]), 0), (set_of([1, 2]), 3), (set_of([5]), 9)] {
            assert_eq!(
                h2.query(&psd_input(&d, t), 1_000_000).hypothesis,
                Some(Hypothesis::Conjecture(e.clone()))
            );
        }
        assert!(audit(&h2.program, &h.program));
    }

    #[test]
    fn it_to_sd_constant() {
        let e = ind([7]);
        let h = zoo::constant_conjecture(OperatorKind::It, &e);
        let (h2, _) = it_to_sd(&h).unwrap();
        assert_eq!(h2.kind, OperatorKind::Sd);
        let q = h2.query(&set_code(&set_of([1, 3])), 1_000_000).hypothesis;
        assert_eq!(q, Some(Hypothesis::Conjecture(e)));
    }

    #[test]
    fn it_bc_states_carry_the_sequence() {
        let h = zoo::constant_conjecture(OperatorKind::G, &ind([3]));
        let (h2, _) = g_to_it_bc(&h).unwrap();
        let syms = [Symbol::datum(1), Symbol::datum(2)];
        let t = crate::learners::run_trace_on(&h2, &syms, 2, 1_000_000);
        for (n, entry) in t.entries.iter().enumerate() {
            let Some(Hypothesis::Conjecture(p)) = &entry.hypothesis else { panic!() };
            let (inner, payload) = unpad(p).unwrap();
            assert_eq!(inner, ind([3]));
            assert_eq!(payload, SeqCode::from_symbols(&syms[..n]).0);
            for x in 0..8u64 {
                assert_eq!(decide_c(p, &Nat::from(x), 10_000), decide_c(&inner, &Nat::from(x), 10_000));
            }
        }
    }

    #[test]
    fn psd_bc_constant_hypotheses() {
        let h = zoo::constant_conjecture(OperatorKind::G, &ind([2]));
        let (h2, _) = g_to_psd_bc(&h).unwrap();
        for (d, t) in [(set_of([]), 0), (set_of([2]), 2), (set_of([1, 2]), 1)] {
            let Some(Hypothesis::Conjecture(c)) = h2.query(&psd_input(&d, t), 100_000).hypothesis
            else {
                panic!()
            };
            assert_eq!(decide_c(&c, &Nat::from(2u64), 1_000_000), Decision::Yes);
            assert_eq!(decide_c(&c, &Nat::from(5u64), 1_000_000), Decision::No);
        }
    }

    #[test]
    fn td_ex_examples() {
        let h = zoo::singleton_td();
        let (h2, _) = td_bc_to_td_ex(&h).unwrap();
        for s in 1..6u64 {
            let c = Nat::from(s);
            assert_eq!(h2.query(&c, 100_000).hypothesis, h.query(&c, 100_000).hypothesis);
        }
        let churn = zoo::churn_td();
        let (c2, _) = td_bc_to_td_ex(&churn).unwrap();
        let at = |s: u64| c2.query(&Nat::from(s + 1), 1_000_000).hypothesis;
        assert_eq!(at(3), at(5));
        assert_eq!(at(3), churn.query(&Nat::from(4u64), 1000).hypothesis);
        let q = zoo::constant_learner(OperatorKind::Td, Nat::zero());
        let (q2, _) = td_bc_to_td_ex(&q).unwrap();
        for s in 0..4u64 {
            assert_eq!(q2.query(&Nat::from(s), 1000).hypothesis, Some(Hypothesis::Unknown));
        }
    }

    #[test]
    fn wrong_kind_is_rejected() {
        assert!(matches!(it_to_sd(&zoo::finite_sd()), Err(TransformError::WrongKind { .. })));
        assert_eq!("g2psd-bc".parse::<TransformKind>().unwrap(), TransformKind::G2PsdBc);
    }
}
