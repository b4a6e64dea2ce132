//! A small named-variable front end for writing programs.
//!
//! [`Expr`] mirrors [`Term`] but binds variables by name; [`program`]
//! resolves names to de Bruijn indices. `let` is sugar for an applied
//! abstraction and [`fix`] is the strict fixed-point combinator.

use std::sync::Arc;

use thiserror::Error;

use super::nat::Nat;
use super::term::{Prim, Term};

#[derive(Clone, Debug)]
pub enum Expr {
    Lit(Nat),
    Var(String),
    Succ(Box<Expr>),
    Pred(Box<Expr>),
    IfZero(Box<Expr>, Box<Expr>, Box<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    Fst(Box<Expr>),
    Snd(Box<Expr>),
    Lam(String, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Eval(Box<Expr>, Box<Expr>),
    Mu(Box<Expr>),
    Clock(Box<Expr>, Box<Expr>, Box<Expr>),
    Prim(Prim, Vec<Expr>),
    Let(String, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("unbound name `{0}`")]
    Unbound(String),
    #[error("primitive {name} takes {expected} arguments, got {got}")]
    Arity { name: &'static str, expected: usize, got: usize },
}

fn compile(e: &Expr, scope: &mut Vec<String>) -> Result<Term, BuildError> {
    let b = |t: Term| Box::new(t);
    Ok(match e {
        Expr::Lit(n) => Term::Lit(n.clone()),
        Expr::Var(name) => {
            let pos = scope
                .iter()
                .rev()
                .position(|s| s == name)
                .ok_or_else(|| BuildError::Unbound(name.clone()))?;
            Term::Var(pos)
        }
        Expr::Succ(a) => Term::Succ(b(compile(a, scope)?)),
        Expr::Pred(a) => Term::Pred(b(compile(a, scope)?)),
        Expr::IfZero(c, x, y) => Term::IfZero(
            b(compile(c, scope)?),
            b(compile(x, scope)?),
            b(compile(y, scope)?),
        ),
        Expr::Pair(x, y) => Term::Pair(b(compile(x, scope)?), b(compile(y, scope)?)),
        Expr::Fst(a) => Term::Fst(b(compile(a, scope)?)),
        Expr::Snd(a) => Term::Snd(b(compile(a, scope)?)),
        Expr::Lam(name, body) => {
            scope.push(name.clone());
            let body = compile(body, scope);
            scope.pop();
            Term::Lam(Arc::new(body?))
        }
        Expr::App(f, a) => Term::App(b(compile(f, scope)?), b(compile(a, scope)?)),
        Expr::Eval(f, a) => Term::Eval(b(compile(f, scope)?), b(compile(a, scope)?)),
        Expr::Mu(f) => Term::Mu(b(compile(f, scope)?)),
        Expr::Clock(f, x, t) => Term::Clock(
            b(compile(f, scope)?),
            b(compile(x, scope)?),
            b(compile(t, scope)?),
        ),
        Expr::Prim(p, args) => {
            if args.len() != p.arity() {
                return Err(BuildError::Arity {
                    name: p.name(),
                    expected: p.arity(),
                    got: args.len(),
                });
            }
            let args = args
                .iter()
                .map(|a| compile(a, scope))
                .collect::<Result<Vec<_>, _>>()?;
            Term::Prim(*p, args)
        }
        Expr::Let(name, val, body) => {
            let val = compile(val, scope)?;
            scope.push(name.clone());
            let body = compile(body, scope);
            scope.pop();
            Term::App(b(Term::Lam(Arc::new(body?))), b(val))
        }
    })
}

/// Compiles `body` as a program whose input is bound to `input`.
pub fn program(input: &str, body: Expr) -> Result<Term, BuildError> {
    compile(&body, &mut vec![input.to_string()])
}

/// Like [`program`], for bodies built by this crate that are known closed.
pub fn program_unchecked(input: &str, body: Expr) -> Term {
    program(input, body).expect("closed program")
}

pub fn lit(v: impl Into<Nat>) -> Expr {
    Expr::Lit(v.into())
}

pub fn var(name: &str) -> Expr {
    Expr::Var(name.to_string())
}

pub fn succ(a: Expr) -> Expr {
    Expr::Succ(Box::new(a))
}

pub fn pred(a: Expr) -> Expr {
    Expr::Pred(Box::new(a))
}

/// `zero` when `c` evaluates to 0, `nonzero` otherwise.
pub fn ifz(c: Expr, zero: Expr, nonzero: Expr) -> Expr {
    Expr::IfZero(Box::new(c), Box::new(zero), Box::new(nonzero))
}

/// `then` when `c` is nonzero.
pub fn if_(c: Expr, then: Expr, otherwise: Expr) -> Expr {
    ifz(c, otherwise, then)
}

pub fn pair(a: Expr, b: Expr) -> Expr {
    Expr::Pair(Box::new(a), Box::new(b))
}

pub fn fst(a: Expr) -> Expr {
    Expr::Fst(Box::new(a))
}

pub fn snd(a: Expr) -> Expr {
    Expr::Snd(Box::new(a))
}

pub fn lam(name: &str, body: Expr) -> Expr {
    Expr::Lam(name.to_string(), Box::new(body))
}

pub fn app(f: Expr, a: Expr) -> Expr {
    Expr::App(Box::new(f), Box::new(a))
}

pub fn app2(f: Expr, a: Expr, b: Expr) -> Expr {
    app(app(f, a), b)
}

/// Runs the program named by `e` on `x`.
pub fn call(e: Expr, x: Expr) -> Expr {
    Expr::Eval(Box::new(e), Box::new(x))
}

pub fn mu(f: Expr) -> Expr {
    Expr::Mu(Box::new(f))
}

pub fn clock(e: Expr, x: Expr, t: Expr) -> Expr {
    Expr::Clock(Box::new(e), Box::new(x), Box::new(t))
}

pub fn prim(p: Prim, args: Vec<Expr>) -> Expr {
    Expr::Prim(p, args)
}

pub fn let_(name: &str, val: Expr, body: Expr) -> Expr {
    Expr::Let(name.to_string(), Box::new(val), Box::new(body))
}

pub fn eq(a: Expr, b: Expr) -> Expr {
    prim(Prim::Eq, vec![a, b])
}

pub fn not(a: Expr) -> Expr {
    ifz(a, lit(1u64), lit(0u64))
}

/// Nonzero exactly when both operands are.
pub fn and(a: Expr, b: Expr) -> Expr {
    ifz(a, lit(0u64), not(not(b)))
}

/// The least `n` for which `cond` (with `name` bound to `n`) is nonzero.
pub fn first(name: &str, cond: Expr) -> Expr {
    mu(lam(name, ifz(cond, lit(1u64), lit(0u64))))
}

/// Nonzero when `cond` holds for every `name < bound`. Diverges when the
/// condition does on some earlier point.
pub fn forall_below(name: &str, bound: Expr, cond: Expr) -> Expr {
    let b = fresh("bound");
    let_(
        &b,
        bound,
        prim(
            Prim::Eq,
            vec![
                first(
                    name,
                    ifz(
                        prim(Prim::Lt, vec![var(name), var(&b)]),
                        lit(1u64),
                        not(cond),
                    ),
                ),
                var(&b),
            ],
        ),
    )
}

fn fresh(base: &str) -> String {
    use std::sync::atomic::{AtomicU64, Ordering};
    static N: AtomicU64 = AtomicU64::new(0);
    format!("{base}%{}", N.fetch_add(1, Ordering::Relaxed))
}

/// A recursive one-argument function: `body` may call `self_name` on a
/// value and receives its argument as `arg`. Realized with the strict
/// fixed-point combinator, so the result is a closure.
pub fn fix(self_name: &str, arg: &str, body: Expr) -> Expr {
    // Z = λf. (λx. f (λv. x x v)) (λx. f (λv. x x v))
    let half = lam(
        "z%x",
        app(
            var("z%f"),
            lam("z%v", app2(var("z%x"), var("z%x"), var("z%v"))),
        ),
    );
    let z = lam("z%f", app(half.clone(), half));
    app(z, lam(self_name, lam(arg, body)))
}
