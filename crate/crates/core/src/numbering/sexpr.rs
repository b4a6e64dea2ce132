//! Canonical s-expression text for terms.
//!
//! Numbers are literals, `$i` is de Bruijn variable `i`, and every other
//! node is a parenthesized form: `(succ t)`, `(pred t)`, `(ifz c a b)`,
//! `(pair a b)`, `(fst t)`, `(snd t)`, `(lam t)`, `(app f a)`,
//! `(eval e x)`, `(mu f)`, `(clock e x t)` or `(<primitive> args..)`.

use std::fmt::Write;
use std::sync::Arc;

use thiserror::Error;

use super::nat::Nat;
use super::term::{Prim, Term};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected `{0}`")]
    Unexpected(String),
    #[error("unknown form `{0}`")]
    UnknownForm(String),
    #[error("`{form}` takes {expected} operands, got {got}")]
    Arity { form: String, expected: usize, got: usize },
    #[error("trailing input after the term")]
    Trailing,
}

pub fn print(t: &Term) -> String {
    let mut s = String::new();
    write_term(t, &mut s);
    s
}

fn write_term(t: &Term, out: &mut String) {
    let form = |out: &mut String, name: &str, kids: &[&Term]| {
        out.push('(');
        out.push_str(name);
        for k in kids {
            out.push(' ');
            write_term(k, out);
        }
        out.push(')');
    };
    match t {
        Term::Lit(n) => {
            let _ = write!(out, "{n}");
        }
        Term::Var(i) => {
            let _ = write!(out, "${i}");
        }
        Term::Succ(a) => form(out, "succ", &[a]),
        Term::Pred(a) => form(out, "pred", &[a]),
        Term::IfZero(c, a, b) => form(out, "ifz", &[c, a, b]),
        Term::Pair(a, b) => form(out, "pair", &[a, b]),
        Term::Fst(a) => form(out, "fst", &[a]),
        Term::Snd(a) => form(out, "snd", &[a]),
        Term::Lam(a) => form(out, "lam", &[a]),
        Term::App(f, a) => form(out, "app", &[f, a]),
        Term::Eval(e, x) => form(out, "eval", &[e, x]),
        Term::Mu(f) => form(out, "mu", &[f]),
        Term::Clock(e, x, s) => form(out, "clock", &[e, x, s]),
        Term::Prim(p, args) => {
            let kids: Vec<&Term> = args.iter().collect();
            form(out, p.name(), &kids)
        }
    }
}

fn tokens(src: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in src.chars() {
        match c {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(c.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

pub fn parse(src: &str) -> Result<Term, ParseError> {
    let toks = tokens(src);
    let mut pos = 0;
    let t = parse_at(&toks, &mut pos)?;
    if pos != toks.len() {
        return Err(ParseError::Trailing);
    }
    Ok(t)
}

fn parse_at(toks: &[String], pos: &mut usize) -> Result<Term, ParseError> {
    stacker::maybe_grow(64 * 1024, 1024 * 1024, || parse_inner(toks, pos))
}

fn parse_inner(toks: &[String], pos: &mut usize) -> Result<Term, ParseError> {
    let tok = toks.get(*pos).ok_or(ParseError::Eof)?;
    *pos += 1;
    if tok == ")" {
        return Err(ParseError::Unexpected(tok.clone()));
    }
    if tok != "(" {
        if let Some(i) = tok.strip_prefix('$') {
            return i
                .parse()
                .map(Term::Var)
                .map_err(|_| ParseError::Unexpected(tok.clone()));
        }
        return tok
            .parse::<Nat>()
            .map(Term::Lit)
            .map_err(|_| ParseError::Unexpected(tok.clone()));
    }
    let head = toks.get(*pos).ok_or(ParseError::Eof)?.clone();
    *pos += 1;
    let mut kids = Vec::new();
    loop {
        match toks.get(*pos).map(String::as_str) {
            None => return Err(ParseError::Eof),
            Some(")") => {
                *pos += 1;
                break;
            }
            Some(_) => kids.push(parse_at(toks, pos)?),
        }
    }
    let want = |n: usize| {
        if kids.len() == n {
            Ok(())
        } else {
            Err(ParseError::Arity { form: head.clone(), expected: n, got: kids.len() })
        }
    };
    let mut it = kids.clone().into_iter().map(Box::new);
    let mut next = || it.next().unwrap();
    let t = match head.as_str() {
        "succ" => want(1).map(|_| Term::Succ(next()))?,
        "pred" => want(1).map(|_| Term::Pred(next()))?,
        "ifz" => want(3).map(|_| Term::IfZero(next(), next(), next()))?,
        "pair" => want(2).map(|_| Term::Pair(next(), next()))?,
        "fst" => want(1).map(|_| Term::Fst(next()))?,
        "snd" => want(1).map(|_| Term::Snd(next()))?,
        "lam" => want(1).map(|_| Term::Lam(Arc::new(*next())))?,
        "app" => want(2).map(|_| Term::App(next(), next()))?,
        "eval" => want(2).map(|_| Term::Eval(next(), next()))?,
        "mu" => want(1).map(|_| Term::Mu(next()))?,
        "clock" => want(3).map(|_| Term::Clock(next(), next(), next()))?,
        name => match Prim::from_name(name) {
            Some(p) => want(p.arity()).map(|_| Term::Prim(p, kids.clone()))?,
            None => return Err(ParseError::UnknownForm(name.to_string())),
        },
    };
    Ok(t)
}
