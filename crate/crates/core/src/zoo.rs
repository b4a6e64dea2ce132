//! Reference learners, all realized as programs in the numbering.

use std::sync::OnceLock;

use crate::learners::{Learner, OperatorKind};
use crate::numbering::build::*;
use crate::numbering::{construct, ind, Nat, Prim, Term};

fn conj(e: Expr) -> Expr {
    succ(e)
}

fn learner(input: &str, body: Expr, kind: OperatorKind) -> Learner {
    Learner::new(program_unchecked(input, body).code(), kind)
}

fn ind_lit(elems: &[u64]) -> Expr {
    lit(ind(elems.iter().copied()))
}

/// C-index of `ℕ⁺`.
pub fn positive_index() -> Nat {
    static P: OnceLock<Nat> = OnceLock::new();
    P.get_or_init(|| program_unchecked("x", ifz(var("x"), lit(0u64), lit(1u64))).code())
        .clone()
}

/// Always conjectures the same hypothesis code.
pub fn constant_learner(kind: OperatorKind, hypothesis_code: Nat) -> Learner {
    Learner::new(construct::constant(&hypothesis_code), kind)
}

pub fn constant_conjecture(kind: OperatorKind, e: &Nat) -> Learner {
    constant_learner(kind, e.succ())
}

/// `h(D) = ind(D)`.
pub fn finite_sd() -> Learner {
    learner("d", conj(prim(Prim::Ind, vec![var("d")])), OperatorKind::Sd)
}

/// `h(D) = max D`, and `ind(∅)` on the empty set.
pub fn max_learner() -> Learner {
    learner(
        "d",
        ifz(
            prim(Prim::SetSize, vec![var("d")]),
            conj(ind_lit(&[])),
            conj(prim(Prim::SetMax, vec![var("d")])),
        ),
        OperatorKind::Sd,
    )
}

/// `h(D) = ind(D)` once 0 has been seen, `p` before.
pub fn zero_marker_sd(p: &Nat) -> Learner {
    learner(
        "d",
        if_(
            prim(Prim::SetMember, vec![var("d"), lit(0u64)]),
            conj(prim(Prim::Ind, vec![var("d")])),
            conj(lit(p.clone())),
        ),
        OperatorKind::Sd,
    )
}

/// Iterative zero-marker learner. Its state is `pad(X, ⟨seen0, D⟩)` where
/// `X` is `ind(D)` once 0 has been seen and `p` before.
pub fn zero_marker_it(p: &Nat) -> Learner {
    let state = |flag: Expr, d: Expr| {
        let_(
            "f%",
            flag,
            let_(
                "d%",
                d,
                conj(prim(
                    Prim::Pad,
                    vec![
                        ifz(var("f%"), lit(p.clone()), prim(Prim::Ind, vec![var("d%")])),
                        pair(var("f%"), var("d%")),
                    ],
                )),
            ),
        )
    };
    let step = let_(
        "w",
        pred(var("v")),
        let_(
            "payload",
            snd(prim(Prim::Unpad, vec![pred(fst(var("w")))])),
            let_(
                "sym",
                snd(var("w")),
                let_(
                    "d",
                    ifz(
                        var("sym"),
                        snd(var("payload")),
                        prim(Prim::SetInsert, vec![snd(var("payload")), pred(var("sym"))]),
                    ),
                    state(
                        ifz(
                            fst(var("payload")),
                            eq(var("sym"), lit(1u64)),
                            lit(1u64),
                        ),
                        var("d"),
                    ),
                ),
            ),
        ),
    );
    learner(
        "v",
        ifz(var("v"), state(lit(0u64), lit(0u64)), step),
        OperatorKind::It,
    )
}

/// Iterative finite-set learner: state `ind(D)`, recovered with `unind`.
pub fn finite_it() -> Learner {
    let step = let_(
        "w",
        pred(var("v")),
        let_(
            "d",
            prim(Prim::Unind, vec![pred(fst(var("w")))]),
            let_(
                "sym",
                snd(var("w")),
                conj(prim(
                    Prim::Ind,
                    vec![ifz(
                        var("sym"),
                        var("d"),
                        prim(Prim::SetInsert, vec![var("d"), pred(var("sym"))]),
                    )],
                )),
            ),
        ),
    );
    learner("v", ifz(var("v"), conj(ind_lit(&[])), step), OperatorKind::It)
}

/// C-index of `L_e = {⟨e, x⟩ : x ∈ ℕ}` as a function of `e`: `smn(PL, e)`.
fn row_program() -> &'static Nat {
    static P: OnceLock<Nat> = OnceLock::new();
    P.get_or_init(|| {
        program_unchecked("v", eq(fst(snd(var("v"))), fst(var("v")))).code()
    })
}

/// C-index of `L'_{e,v} = {⟨e, x⟩ : x ≤ v}` as a function of `⟨e, v⟩`.
fn bounded_row_program() -> &'static Nat {
    static P: OnceLock<Nat> = OnceLock::new();
    P.get_or_init(|| {
        program_unchecked(
            "w",
            let_(
                "ev",
                fst(var("w")),
                let_(
                    "z",
                    snd(var("w")),
                    and(
                        eq(fst(var("z")), fst(var("ev"))),
                        not(prim(Prim::Lt, vec![snd(var("ev")), snd(var("z"))])),
                    ),
                ),
            ),
        )
        .code()
    })
}

/// C-index of `L_e`.
pub fn row_index(e: &Nat) -> Nat {
    construct::smn(row_program(), e)
}

/// C-index of `L'_e` given `v = φ_e(0)`.
pub fn bounded_row_index(e: &Nat, v: &Nat) -> Nat {
    construct::smn(bounded_row_program(), &crate::numbering::code::pair_nat(e, v))
}

/// Partially set-driven learner for `{L_e} ∪ {L'_e}`: with `e = π₁(min D)`
/// it conjectures `L_e` while `φ_e(0)` has not halted within `t` steps and
/// `L'_e` once it has.
pub fn phase_learner() -> Learner {
    let body = let_(
        "d",
        fst(var("v")),
        let_(
            "t",
            snd(var("v")),
            ifz(
                prim(Prim::SetSize, vec![var("d")]),
                conj(ind_lit(&[])),
                let_(
                    "e",
                    fst(prim(Prim::SetMin, vec![var("d")])),
                    let_(
                        "c",
                        clock(var("e"), lit(0u64), var("t")),
                        ifz(
                            var("c"),
                            conj(prim(Prim::Smn, vec![lit(row_program().clone()), var("e")])),
                            conj(prim(
                                Prim::Smn,
                                vec![
                                    lit(bounded_row_program().clone()),
                                    pair(var("e"), pred(var("c"))),
                                ],
                            )),
                        ),
                    ),
                ),
            ),
        ),
    );
    learner("v", body, OperatorKind::Psd)
}

/// `h(#) = ?`, `h(⟨x, y⟩) = x`.
pub fn pair_component_td() -> Learner {
    learner(
        "s",
        ifz(var("s"), lit(0u64), conj(fst(pred(var("s"))))),
        OperatorKind::Td,
    )
}

/// `h(#) = ?`, `h(x) = ind({x})`.
pub fn singleton_td() -> Learner {
    learner(
        "s",
        ifz(
            var("s"),
            lit(0u64),
            conj(prim(Prim::Ind, vec![prim(Prim::SetInsert, vec![lit(0u64), pred(var("s"))])])),
        ),
        OperatorKind::Td,
    )
}

/// `h(#) = ?`, `h(x) = x`.
pub fn identity_td() -> Learner {
    learner("s", ifz(var("s"), lit(0u64), var("s")), OperatorKind::Td)
}

/// Padding churn: `h(σ) = pad(ind(content σ), |σ|)`. Semantically it is the
/// finite-set learner, syntactically it never converges.
pub fn churn_g() -> Learner {
    learner(
        "s",
        conj(prim(
            Prim::Pad,
            vec![
                prim(Prim::Ind, vec![prim(Prim::SeqContent, vec![var("s")])]),
                prim(Prim::ListLen, vec![var("s")]),
            ],
        )),
        OperatorKind::G,
    )
}

/// Transductive churn on `{3, 5}`: `h(x) = pad(ind({3,5}), x)`.
pub fn churn_td() -> Learner {
    learner(
        "s",
        ifz(
            var("s"),
            lit(0u64),
            conj(prim(Prim::Pad, vec![ind_lit(&[3, 5]), pred(var("s"))])),
        ),
        OperatorKind::Td,
    )
}

/// `h(σ) = |σ|` as a raw hypothesis code.
pub fn length_g() -> Learner {
    learner("s", prim(Prim::ListLen, vec![var("s")]), OperatorKind::G)
}

/// G-learner that answers `ind({0})` once it has seen 0 and `ind(∅)` before.
pub fn zero_seen_g() -> Learner {
    learner(
        "s",
        if_(
            prim(Prim::SetMember, vec![prim(Prim::SeqContent, vec![var("s")]), lit(0u64)]),
            conj(ind_lit(&[0])),
            conj(ind_lit(&[])),
        ),
        OperatorKind::G,
    )
}

/// A builtin learner by name.
pub fn builtin(name: &str) -> Option<Learner> {
    Some(match name {
        "finite-sd" => finite_sd(),
        "finite-it" => finite_it(),
        "max-sd" => max_learner(),
        "zero-marker-sd" => zero_marker_sd(&positive_index()),
        "zero-marker-it" => zero_marker_it(&positive_index()),
        "phase-psd" => phase_learner(),
        "pair-component-td" => pair_component_td(),
        "singleton-td" => singleton_td(),
        "identity-td" => identity_td(),
        "churn-g" => churn_g(),
        "churn-td" => churn_td(),
        "length-g" => length_g(),
        "zero-seen-g" => zero_seen_g(),
        "finite-g" => crate::learners::star(&finite_sd()),
        _ => return None,
    })
}

pub const BUILTIN_NAMES: [&str; 14] = [
    "finite-sd",
    "finite-it",
    "max-sd",
    "zero-marker-sd",
    "zero-marker-it",
    "phase-psd",
    "pair-component-td",
    "singleton-td",
    "identity-td",
    "churn-g",
    "churn-td",
    "length-g",
    "zero-seen-g",
    "finite-g",
];

/// Program returning `v` on every input after counting down from `delay`.
pub fn halting_at_zero(v: u64, delay: u64) -> Nat {
    let body = app(
        fix(
            "go",
            "k",
            ifz(var("k"), lit(v), app(var("go"), pred(var("k")))),
        ),
        lit(delay),
    );
    program_unchecked("x", body).code()
}

/// An everywhere-divergent program; distinct tags give distinct indices.
pub fn divergent_at_zero(tag: u64) -> Nat {
    Term::IfZero(
        Box::new(Term::Lit(Nat::from(1u64))),
        Box::new(Term::Lit(Nat::from(tag))),
        Box::new(Term::divergent()),
    )
    .code()
}
