//! Index constructions: s-m-n, padding, characteristic indices of finite
//! sets, both recursion theorems, enumeration of `W_e` and bounded
//! decisions of `C_e`.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

use super::build::*;
use super::data;
use super::eval::{eval, EvalOutcome};
use super::nat::Nat;
use super::term::{Prim, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("index {0:?} is not in the range of pad")]
    NotPadded(Nat),
}

fn boxed(t: Term) -> Box<Term> {
    Box::new(t)
}

/// The program ignoring its input and returning `v`.
pub fn constant(v: &Nat) -> Nat {
    Term::Lit(v.clone()).code()
}

/// `φ_{smn(e,x)}(y) = φ_e(⟨x,y⟩)`.
pub fn smn(e: &Nat, x: &Nat) -> Nat {
    Term::Eval(
        boxed(Term::Lit(e.clone())),
        boxed(Term::Pair(boxed(Term::Lit(x.clone())), boxed(Term::Var(0)))),
    )
    .code()
}

/// A program equivalent to `e` that also carries `n`.
pub fn pad(e: &Nat, n: &Nat) -> Nat {
    Term::IfZero(
        boxed(Term::Lit(Nat::zero())),
        boxed(Term::Eval(boxed(Term::Lit(e.clone())), boxed(Term::Var(0)))),
        boxed(Term::Lit(n.clone())),
    )
    .code()
}

pub fn unpad(p: &Nat) -> Result<(Nat, Nat), IndexError> {
    if let Term::IfZero(c, a, b) = &*p.as_program() {
        if let (Term::Lit(z), Term::Eval(e, x), Term::Lit(n)) = (&**c, &**a, &**b) {
            if let (Term::Lit(e), Term::Var(0)) = (&**e, &**x) {
                if z.is_zero() {
                    return Ok((e.clone(), n.clone()));
                }
            }
        }
    }
    Err(IndexError::NotPadded(p.clone()))
}

/// C-index of the finite set with the given set code.
pub fn ind_code(set_code: &Nat) -> Nat {
    Term::Prim(
        Prim::SetMember,
        vec![Term::Lit(set_code.clone()), Term::Var(0)],
    )
    .code()
}

/// C-index of a finite set of naturals.
pub fn ind<I: IntoIterator<Item = u64>>(elems: I) -> Nat {
    ind_code(&data::set_code_u64(elems))
}

/// Recovers the set code from an index built by [`ind_code`].
pub fn unind(i: &Nat) -> Option<Nat> {
    match &*i.as_program() {
        Term::Prim(Prim::SetMember, args) => match (&args[0], &args[1]) {
            (Term::Lit(d), Term::Var(0)) => Some(d.clone()),
            _ => None,
        },
        _ => None,
    }
}

/// `W_{c_to_w(e)} = {x : φ_e(x) = 1}`, so a C-index becomes a W-index of
/// the same set.
pub fn c_to_w(e: &Nat) -> Nat {
    smn(c_to_w_program(), e)
}

pub fn c_to_w_program() -> &'static Nat {
    static P: OnceLock<Nat> = OnceLock::new();
    P.get_or_init(|| {
        program_unchecked(
            "v",
            if_(
                eq(call(fst(var("v")), snd(var("v"))), lit(1u64)),
                lit(0u64),
                mu(lam("k", lit(1u64))),
            ),
        )
        .code()
    })
}

/// `g'(⟨y,x⟩) = φ_{φ_f(smn(y,y))}(x)`.
fn krt_helper(f: &Nat) -> Nat {
    program_unchecked(
        "v",
        call(
            call(
                lit(f.clone()),
                prim(Prim::Smn, vec![fst(var("v")), fst(var("v"))]),
            ),
            snd(var("v")),
        ),
    )
    .code()
}

/// A fixed point of the index transformer `φ_f`: `φ_e ≃ φ_{φ_f(e)}`.
pub fn krt(f: &Nat) -> Nat {
    let g = krt_helper(f);
    smn(&g, &g)
}

/// `Q(⟨⟨body, y⟩, n⟩) = pad(smn(smn(body, y), n), 2^n - 1)`.
fn ort_family() -> &'static Nat {
    static Q: OnceLock<Nat> = OnceLock::new();
    Q.get_or_init(|| {
        program_unchecked(
            "v",
            let_(
                "by",
                fst(var("v")),
                let_(
                    "n",
                    snd(var("v")),
                    prim(
                        Prim::Pad,
                        vec![
                            prim(
                                Prim::Smn,
                                vec![
                                    prim(Prim::Smn, vec![fst(var("by")), snd(var("by"))]),
                                    var("n"),
                                ],
                            ),
                            prim(
                                Prim::Monus,
                                vec![prim(Prim::Exp2, vec![var("n")]), lit(1u64)],
                            ),
                        ],
                    ),
                ),
            ),
        )
        .code()
    })
}

/// Operator recursion: returns `a` with `φ_a` total and strictly increasing
/// and `φ_{φ_a(n)}(x) ≃ φ_body(⟨a, ⟨n, x⟩⟩)`.
pub fn ort(body: &Nat) -> Nat {
    // φ_f(y) = smn(Q, ⟨body, y⟩)
    let f = program_unchecked(
        "y",
        prim(
            Prim::Smn,
            vec![lit(ort_family().clone()), pair(lit(body.clone()), var("y"))],
        ),
    )
    .code();
    krt(&f)
}

/// The value `φ_a(n)` for `a = ort(body)`, computed on the host.
pub fn ort_member(body: &Nat, a: &Nat, n: u64) -> Nat {
    let inner = smn(&smn(body, a), &Nat::from(n));
    let payload = Nat::new((num_bigint::BigUint::from(1u32) << n) - 1u32);
    pad(&inner, &payload)
}

/// Dovetailed enumeration of `W_e`: stage `k` runs inputs `0..=k` for `k`
/// steps each, charging `k + 1` per run, until the budget is spent.
pub fn enumerate_w(e: &Nat, budget: u64) -> BTreeSet<Nat> {
    let mut found = BTreeSet::new();
    let mut spent: u64 = 0;
    let prog: Arc<Term> = e.as_program();
    for k in 0u64.. {
        for x in 0..=k {
            let x = Nat::from(x);
            if found.contains(&x) {
                continue;
            }
            if spent.saturating_add(k + 1) > budget {
                return found;
            }
            spent += k + 1;
            if super::eval::run(&prog, &x, k).halted() {
                found.insert(x);
            }
        }
    }
    unreachable!()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Yes,
    No,
    OutOfBudget,
    NotBoolean,
}

pub fn decide_c(e: &Nat, x: &Nat, budget: u64) -> Decision {
    match eval(e, x, budget) {
        EvalOutcome::Halted { value, .. } if value.is_zero() => Decision::No,
        EvalOutcome::Halted { value, .. } if value.is_one() => Decision::Yes,
        EvalOutcome::Halted { .. } => Decision::NotBoolean,
        EvalOutcome::OutOfBudget { .. } => Decision::OutOfBudget,
    }
}
