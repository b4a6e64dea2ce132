//! The program terms behind the numbering and their numeric codes.

use std::sync::Arc;

use num_bigint::BigUint;

use super::code;
use super::nat::Nat;

/// Built-in total operations. Every primitive takes naturals and returns a
/// natural, except [`Prim::Unpad`] and [`Prim::Unind`] which are stuck
/// (diverge) on indices outside the range of `pad` / `ind`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Prim {
    Add,
    Monus,
    Mul,
    Div,
    Mod,
    Eq,
    Lt,
    Exp2,
    ListLen,
    ListGet,
    ListSnoc,
    ListConcat,
    SeqContent,
    SortSharp,
    BoundedSeqs,
    SeqsBelow,
    SetMember,
    SetInsert,
    SetMin,
    SetMax,
    SetSize,
    Smn,
    Pad,
    Unpad,
    Ind,
    Unind,
}

impl Prim {
    pub const ALL: [Prim; 26] = [
        Prim::Add,
        Prim::Monus,
        Prim::Mul,
        Prim::Div,
        Prim::Mod,
        Prim::Eq,
        Prim::Lt,
        Prim::Exp2,
        Prim::ListLen,
        Prim::ListGet,
        Prim::ListSnoc,
        Prim::ListConcat,
        Prim::SeqContent,
        Prim::SortSharp,
        Prim::BoundedSeqs,
        Prim::SeqsBelow,
        Prim::SetMember,
        Prim::SetInsert,
        Prim::SetMin,
        Prim::SetMax,
        Prim::SetSize,
        Prim::Smn,
        Prim::Pad,
        Prim::Unpad,
        Prim::Ind,
        Prim::Unind,
    ];

    pub fn arity(self) -> usize {
        use Prim::*;
        match self {
            Exp2 | ListLen | SeqContent | SortSharp | SetMin | SetMax | SetSize | Unpad | Ind
            | Unind => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        use Prim::*;
        match self {
            Add => "add",
            Monus => "monus",
            Mul => "mul",
            Div => "div",
            Mod => "mod",
            Eq => "eq",
            Lt => "lt",
            Exp2 => "exp2",
            ListLen => "len",
            ListGet => "get",
            ListSnoc => "snoc",
            ListConcat => "concat",
            SeqContent => "content",
            SortSharp => "sort-sharp",
            BoundedSeqs => "bounded-seqs",
            SeqsBelow => "seqs-below",
            SetMember => "member",
            SetInsert => "insert",
            SetMin => "set-min",
            SetMax => "set-max",
            SetSize => "set-size",
            Smn => "smn",
            Pad => "pad",
            Unpad => "unpad",
            Ind => "ind",
            Unind => "unind",
        }
    }

    pub fn from_name(name: &str) -> Option<Prim> {
        Prim::ALL.iter().copied().find(|p| p.name() == name)
    }

    fn tag(self) -> u64 {
        Prim::ALL.iter().position(|&p| p == self).unwrap() as u64
    }

    fn from_tag(tag: u64) -> Option<Prim> {
        Prim::ALL.get(usize::try_from(tag).ok()?).copied()
    }
}

/// Untyped call-by-value terms with de Bruijn variables. A program is a term
/// whose variable 0 is the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Lit(Nat),
    Var(usize),
    Succ(Box<Term>),
    Pred(Box<Term>),
    /// `IfZero(c, a, b)` is `a` when `c` evaluates to 0, `b` otherwise.
    IfZero(Box<Term>, Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Fst(Box<Term>),
    Snd(Box<Term>),
    Lam(Arc<Term>),
    App(Box<Term>, Box<Term>),
    /// Runs the program named by the first operand on the second.
    Eval(Box<Term>, Box<Term>),
    /// Least `n` such that the operand (a function) returns 0 on `n`.
    Mu(Box<Term>),
    /// `Clock(e, x, t)` is `v + 1` when program `e` halts on `x` with value
    /// `v` within `t` steps, and 0 otherwise.
    Clock(Box<Term>, Box<Term>, Box<Term>),
    Prim(Prim, Vec<Term>),
}

const TAG_LIT: u64 = 0;
const TAG_VAR: u64 = 1;
const TAG_SUCC: u64 = 2;
const TAG_PRED: u64 = 3;
const TAG_IFZ: u64 = 4;
const TAG_PAIR: u64 = 5;
const TAG_FST: u64 = 6;
const TAG_SND: u64 = 7;
const TAG_LAM: u64 = 8;
const TAG_APP: u64 = 9;
const TAG_EVAL: u64 = 10;
const TAG_MU: u64 = 11;
const TAG_CLOCK: u64 = 12;
const TAG_PRIM: u64 = 13;

impl Term {
    /// The canonical everywhere-divergent program: search for a root of the
    /// constant-1 function.
    pub fn divergent() -> Term {
        Term::Mu(Box::new(Term::Lam(Arc::new(Term::Lit(Nat::from(1u64))))))
    }

    fn flatten(&self, out: &mut Vec<BigUint>) {
        let tag = |out: &mut Vec<BigUint>, t: u64| out.push(BigUint::from(t));
        match self {
            Term::Lit(n) => {
                tag(out, TAG_LIT);
                out.push(n.value().clone());
            }
            Term::Var(i) => {
                tag(out, TAG_VAR);
                out.push(BigUint::from(*i));
            }
            Term::Succ(t) => {
                tag(out, TAG_SUCC);
                t.flatten(out);
            }
            Term::Pred(t) => {
                tag(out, TAG_PRED);
                t.flatten(out);
            }
            Term::IfZero(c, a, b) => {
                tag(out, TAG_IFZ);
                c.flatten(out);
                a.flatten(out);
                b.flatten(out);
            }
            Term::Pair(a, b) => {
                tag(out, TAG_PAIR);
                a.flatten(out);
                b.flatten(out);
            }
            Term::Fst(t) => {
                tag(out, TAG_FST);
                t.flatten(out);
            }
            Term::Snd(t) => {
                tag(out, TAG_SND);
                t.flatten(out);
            }
            Term::Lam(t) => {
                tag(out, TAG_LAM);
                t.flatten(out);
            }
            Term::App(f, a) => {
                tag(out, TAG_APP);
                f.flatten(out);
                a.flatten(out);
            }
            Term::Eval(e, x) => {
                tag(out, TAG_EVAL);
                e.flatten(out);
                x.flatten(out);
            }
            Term::Mu(f) => {
                tag(out, TAG_MU);
                f.flatten(out);
            }
            Term::Clock(e, x, t) => {
                tag(out, TAG_CLOCK);
                e.flatten(out);
                x.flatten(out);
                t.flatten(out);
            }
            Term::Prim(p, args) => {
                tag(out, TAG_PRIM);
                out.push(BigUint::from(p.tag()));
                for a in args {
                    a.flatten(out);
                }
            }
        }
    }

    /// The numeric code of this term. Injective.
    pub fn code(&self) -> Nat {
        let mut items = Vec::new();
        self.flatten(&mut items);
        Nat::new(code::list_encode(&items))
    }

    /// Total decoding: codes that do not spell a well-formed term decode to
    /// [`Term::divergent`].
    pub fn decode_value(z: &BigUint) -> Term {
        code::list_decode_strict(z)
            .and_then(|items| {
                let mut pos = 0;
                let t = parse(&items, &mut pos)?;
                (pos == items.len()).then_some(t)
            })
            .unwrap_or_else(Term::divergent)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().map(Term::size).sum::<usize>()
    }

    /// Immediate subterms, left to right.
    pub fn children(&self) -> impl Iterator<Item = &Term> {
        let v: Vec<&Term> = match self {
            Term::Lit(_) | Term::Var(_) => vec![],
            Term::Succ(t) | Term::Pred(t) | Term::Fst(t) | Term::Snd(t) | Term::Mu(t) => vec![t],
            Term::Lam(t) => vec![t.as_ref()],
            Term::Pair(a, b) | Term::App(a, b) | Term::Eval(a, b) => vec![a, b],
            Term::IfZero(a, b, c) | Term::Clock(a, b, c) => vec![a, b, c],
            Term::Prim(_, args) => args.iter().collect(),
        };
        v.into_iter()
    }
}

fn small(items: &[Nat], pos: &mut usize) -> Option<u64> {
    let v = items.get(*pos)?.to_u64()?;
    *pos += 1;
    Some(v)
}

fn parse(items: &[Nat], pos: &mut usize) -> Option<Term> {
    stacker::maybe_grow(64 * 1024, 1024 * 1024, || parse_inner(items, pos))
}

fn parse_inner(items: &[Nat], pos: &mut usize) -> Option<Term> {
    let sub = |pos: &mut usize| parse(items, pos).map(Box::new);
    let t = match small(items, pos)? {
        TAG_LIT => {
            let v = items.get(*pos)?.clone();
            *pos += 1;
            Term::Lit(v)
        }
        TAG_VAR => Term::Var(usize::try_from(small(items, pos)?).ok()?),
        TAG_SUCC => Term::Succ(sub(pos)?),
        TAG_PRED => Term::Pred(sub(pos)?),
        TAG_IFZ => Term::IfZero(sub(pos)?, sub(pos)?, sub(pos)?),
        TAG_PAIR => Term::Pair(sub(pos)?, sub(pos)?),
        TAG_FST => Term::Fst(sub(pos)?),
        TAG_SND => Term::Snd(sub(pos)?),
        TAG_LAM => Term::Lam(Arc::new(parse(items, pos)?)),
        TAG_APP => Term::App(sub(pos)?, sub(pos)?),
        TAG_EVAL => Term::Eval(sub(pos)?, sub(pos)?),
        TAG_MU => Term::Mu(sub(pos)?),
        TAG_CLOCK => Term::Clock(sub(pos)?, sub(pos)?, sub(pos)?),
        TAG_PRIM => {
            let p = Prim::from_tag(small(items, pos)?)?;
            let mut args = Vec::with_capacity(p.arity());
            for _ in 0..p.arity() {
                args.push(parse(items, pos)?);
            }
            Term::Prim(p, args)
        }
        _ => return None,
    };
    Some(t)
}
