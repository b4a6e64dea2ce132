//! Step-counting evaluator.
//!
//! Every term node visited costs one step. `Eval` runs the named program on
//! the shared step counter, so its cost is the sub-evaluation plus one.
//! `Clock(e, x, t)` costs the sub-evaluation plus one when it halts within
//! `t` steps and `t + 1` otherwise. Stuck evaluations (a closure where a
//! number is needed, an unbound variable, `unpad` of a foreign index) never
//! produce a value and are reported like divergence.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::code;
use super::construct;
use super::data;
use super::nat::Nat;
use super::term::{Prim, Term};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum EvalOutcome {
    Halted { value: Nat, steps: u64 },
    OutOfBudget { budget: u64 },
}

impl EvalOutcome {
    pub fn value(&self) -> Option<&Nat> {
        match self {
            EvalOutcome::Halted { value, .. } => Some(value),
            EvalOutcome::OutOfBudget { .. } => None,
        }
    }

    pub fn into_value(self) -> Option<Nat> {
        match self {
            EvalOutcome::Halted { value, .. } => Some(value),
            EvalOutcome::OutOfBudget { .. } => None,
        }
    }

    pub fn steps(&self) -> Option<u64> {
        match self {
            EvalOutcome::Halted { steps, .. } => Some(*steps),
            EvalOutcome::OutOfBudget { .. } => None,
        }
    }

    pub fn halted(&self) -> bool {
        matches!(self, EvalOutcome::Halted { .. })
    }
}

/// Runs program `e` on input `x` for at most `budget` steps.
pub fn eval(e: &Nat, x: &Nat, budget: u64) -> EvalOutcome {
    run(&e.as_program(), x, budget)
}

/// Runs a program term on input `x` for at most `budget` steps.
pub fn run(prog: &Term, x: &Nat, budget: u64) -> EvalOutcome {
    let mut m = Machine { fuel: budget };
    match m.program(prog, x) {
        Ok(value) => EvalOutcome::Halted { value, steps: budget - m.fuel },
        Err(_) => EvalOutcome::OutOfBudget { budget },
    }
}

#[derive(Clone, Debug)]
enum Value {
    Nat(Nat),
    Closure(Arc<Term>, Env),
}

#[derive(Clone, Debug, Default)]
struct Env(Option<Arc<EnvNode>>);

#[derive(Debug)]
struct EnvNode {
    head: Value,
    tail: Env,
}

impl Env {
    fn push(&self, v: Value) -> Env {
        Env(Some(Arc::new(EnvNode { head: v, tail: self.clone() })))
    }

    fn lookup(&self, mut i: usize) -> Option<&Value> {
        let mut cur = self.0.as_ref()?;
        while i > 0 {
            cur = cur.tail.0.as_ref()?;
            i -= 1;
        }
        Some(&cur.head)
    }
}

// Long environments would otherwise be dropped recursively.
impl Drop for Env {
    fn drop(&mut self) {
        let mut next = self.0.take();
        while let Some(node) = next {
            match Arc::try_unwrap(node) {
                Ok(mut n) => next = n.tail.0.take(),
                Err(_) => break,
            }
        }
    }
}

#[derive(Debug)]
enum Halt {
    Fuel,
    Stuck,
}

type R<T> = Result<T, Halt>;

struct Machine {
    fuel: u64,
}

fn nat(v: Value) -> R<Nat> {
    match v {
        Value::Nat(n) => Ok(n),
        Value::Closure(..) => Err(Halt::Stuck),
    }
}

fn boolean(b: bool) -> Nat {
    Nat::from(b as u64)
}

impl Machine {
    fn tick(&mut self, n: u64) -> R<()> {
        if self.fuel < n {
            self.fuel = 0;
            return Err(Halt::Fuel);
        }
        self.fuel -= n;
        Ok(())
    }

    fn program(&mut self, prog: &Term, x: &Nat) -> R<Nat> {
        let env = Env::default().push(Value::Nat(x.clone()));
        let v = self.eval(prog, &env)?;
        nat(v)
    }

    fn eval_nat(&mut self, t: &Term, env: &Env) -> R<Nat> {
        let v = self.eval(t, env)?;
        nat(v)
    }

    fn apply(&mut self, f: Value, a: Value) -> R<Value> {
        match f {
            Value::Closure(body, cenv) => {
                let env = cenv.push(a);
                self.eval(&body, &env)
            }
            Value::Nat(_) => Err(Halt::Stuck),
        }
    }

    fn eval(&mut self, t: &Term, env: &Env) -> R<Value> {
        stacker::maybe_grow(128 * 1024, 4 * 1024 * 1024, || self.eval_inner(t, env))
    }

    fn eval_inner(&mut self, t: &Term, env: &Env) -> R<Value> {
        self.tick(1)?;
        let v = match t {
            Term::Lit(n) => Value::Nat(n.clone()),
            Term::Var(i) => env.lookup(*i).cloned().ok_or(Halt::Stuck)?,
            Term::Succ(a) => Value::Nat(self.eval_nat(a, env)?.succ()),
            Term::Pred(a) => Value::Nat(self.eval_nat(a, env)?.pred()),
            Term::IfZero(c, a, b) => {
                if self.eval_nat(c, env)?.is_zero() {
                    return self.eval(a, env);
                } else {
                    return self.eval(b, env);
                }
            }
            Term::Pair(a, b) => {
                let x = self.eval_nat(a, env)?;
                let y = self.eval_nat(b, env)?;
                Value::Nat(code::pair_nat(&x, &y))
            }
            Term::Fst(a) => Value::Nat(code::unpair_nat(&self.eval_nat(a, env)?).0),
            Term::Snd(a) => Value::Nat(code::unpair_nat(&self.eval_nat(a, env)?).1),
            Term::Lam(body) => Value::Closure(body.clone(), env.clone()),
            Term::App(f, a) => {
                let fv = self.eval(f, env)?;
                let av = self.eval(a, env)?;
                return self.apply(fv, av);
            }
            Term::Eval(e, x) => {
                let e = self.eval_nat(e, env)?;
                let x = self.eval_nat(x, env)?;
                Value::Nat(self.program(&e.as_program(), &x)?)
            }
            Term::Mu(f) => {
                let fv = self.eval(f, env)?;
                let mut n = Nat::zero();
                loop {
                    self.tick(1)?;
                    let r = nat(self.apply(fv.clone(), Value::Nat(n.clone()))?)?;
                    if r.is_zero() {
                        break Value::Nat(n);
                    }
                    n = n.succ();
                }
            }
            Term::Clock(e, x, t) => {
                let e = self.eval_nat(e, env)?;
                let x = self.eval_nat(x, env)?;
                let limit = self.eval_nat(t, env)?.saturating_u64();
                let sub_budget = limit.min(self.fuel);
                let mut sub = Machine { fuel: sub_budget };
                match sub.program(&e.as_program(), &x) {
                    Ok(v) => {
                        self.tick(sub_budget - sub.fuel)?;
                        Value::Nat(v.succ())
                    }
                    Err(Halt::Fuel) if sub_budget < limit => {
                        self.fuel = 0;
                        return Err(Halt::Fuel);
                    }
                    Err(_) => {
                        self.tick(limit)?;
                        Value::Nat(Nat::zero())
                    }
                }
            }
            Term::Prim(p, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.eval_nat(a, env)?);
                }
                Value::Nat(self.prim(*p, &vals)?)
            }
        };
        Ok(v)
    }

    fn prim(&mut self, p: Prim, a: &[Nat]) -> R<Nat> {
        let big = |v: BigUint| Nat::new(v);
        Ok(match p {
            Prim::Add => big(a[0].value() + a[1].value()),
            Prim::Monus => {
                if a[0] <= a[1] {
                    Nat::zero()
                } else {
                    big(a[0].value() - a[1].value())
                }
            }
            Prim::Mul => {
                self.tick((a[0].bits() + a[1].bits()) / 64)?;
                big(a[0].value() * a[1].value())
            }
            Prim::Div => {
                if a[1].is_zero() {
                    Nat::zero()
                } else {
                    big(a[0].value() / a[1].value())
                }
            }
            Prim::Mod => {
                if a[1].is_zero() {
                    a[0].clone()
                } else {
                    big(a[0].value() % a[1].value())
                }
            }
            Prim::Eq => boolean(a[0] == a[1]),
            Prim::Lt => boolean(a[0] < a[1]),
            Prim::Exp2 => {
                let n = a[0].saturating_u64();
                self.tick(n / 64)?;
                big(BigUint::from(1u32) << n)
            }
            Prim::ListLen => Nat::from(a[0].as_list().len()),
            Prim::ListGet => {
                let l = a[0].as_list();
                a[1].value()
                    .to_usize()
                    .and_then(|i| l.get(i).cloned())
                    .unwrap_or_else(Nat::zero)
            }
            Prim::ListSnoc => data::seq_snoc(&a[0], &a[1]),
            Prim::ListConcat => data::seq_concat(&a[0], &a[1]),
            Prim::SeqContent => data::seq_content(&a[0]),
            Prim::SortSharp => data::sort_sharp(&a[0]),
            Prim::BoundedSeqs => {
                let d = &a[0];
                let t = a[1].saturating_u64();
                let k = d.as_set().len() as u64 + 1;
                let count = data::bounded_count(k, t);
                self.tick(count)?;
                code::list_encode_nats(&data::bounded_seqs(d, t))
            }
            Prim::SeqsBelow => match data::seqs_below(&a[0], &a[1], self.fuel) {
                Some(v) => {
                    self.tick(v.len() as u64)?;
                    code::list_encode_nats(&v)
                }
                None => {
                    self.fuel = 0;
                    return Err(Halt::Fuel);
                }
            },
            Prim::SetMember => boolean(data::set_member(&a[0], &a[1])),
            Prim::SetInsert => data::set_insert(&a[0], &a[1]),
            Prim::SetMin => a[0].as_set().first().cloned().unwrap_or_else(Nat::zero),
            Prim::SetMax => a[0].as_set().last().cloned().unwrap_or_else(Nat::zero),
            Prim::SetSize => Nat::from(a[0].as_set().len()),
            Prim::Smn => construct::smn(&a[0], &a[1]),
            Prim::Pad => construct::pad(&a[0], &a[1]),
            Prim::Unpad => {
                let (e, n) = construct::unpad(&a[0]).map_err(|_| Halt::Stuck)?;
                code::pair_nat(&e, &n)
            }
            Prim::Ind => construct::ind_code(&a[0]),
            Prim::Unind => construct::unind(&a[0]).ok_or(Halt::Stuck)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn successor_of_input() {
        let prog = Term::Succ(Box::new(Term::Var(0)));
        let out = eval(&prog.code(), &n(4), 100);
        assert_eq!(out.value(), Some(&n(5)));
        assert!(out.steps().unwrap() <= 100);
    }

    #[test]
    fn divergent_runs_out() {
        let e = Term::divergent().code();
        assert_eq!(eval(&e, &n(0), 1_000_000), EvalOutcome::OutOfBudget { budget: 1_000_000 });
    }

    #[test]
    fn exact_budget_reproduces() {
        let prog = Term::Pair(Box::new(Term::Var(0)), Box::new(Term::Succ(Box::new(Term::Var(0)))));
        let EvalOutcome::Halted { value, steps } = run(&prog, &n(3), 1000) else {
            panic!("must halt");
        };
        assert_eq!(run(&prog, &n(3), steps), EvalOutcome::Halted { value, steps });
        assert!(!run(&prog, &n(3), steps - 1).halted());
    }

    #[test]
    fn clock_reports_halting() {
        let succ = Term::Succ(Box::new(Term::Var(0))).code();
        let clock = |e: &Nat, t: u64| {
            Term::Clock(
                Box::new(Term::Lit(e.clone())),
                Box::new(Term::Var(0)),
                Box::new(Term::Lit(n(t))),
            )
        };
        assert_eq!(run(&clock(&succ, 10), &n(6), 100).value(), Some(&n(8)));
        assert_eq!(run(&clock(&succ, 1), &n(6), 100).value(), Some(&n(0)));
        let div = Term::divergent().code();
        let out = run(&clock(&div, 50), &n(0), 1000);
        assert_eq!(out.value(), Some(&n(0)));
        // 4 nodes visited plus the 50 charged steps
        assert_eq!(out.steps(), Some(54));
    }

    #[test]
    fn stuck_is_divergence() {
        let prog = Term::Succ(Box::new(Term::Lam(Arc::new(Term::Var(0)))));
        assert!(!run(&prog, &n(0), 100).halted());
        assert!(!run(&Term::Var(3), &n(0), 100).halted());
    }
}
