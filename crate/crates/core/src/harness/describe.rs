//! Human-readable summaries of program indices.

use std::fmt::Write as _;

use serde::Serialize;

use crate::numbering::{decide_c, sexpr, unind, unpad, Decision, Nat, Term};

#[derive(Clone, Debug, Serialize)]
pub struct Description {
    pub index: Nat,
    pub well_formed: bool,
    pub size: usize,
    pub sexpr: String,
    pub unpad: Option<(Nat, Nat)>,
    pub unind: Option<Vec<Nat>>,
    /// `(e, x)` when the index is `smn(e, x)`.
    pub smn: Option<(Nat, Nat)>,
    /// Literals inside the term that are themselves well-formed programs
    /// of more than one node.
    pub embedded_programs: Vec<Nat>,
    /// `decide_C` on `[0, m)`.
    pub decisions: Vec<(u64, Decision)>,
    pub boolean_total: bool,
}

/// Whether `z` is the code of a term, rather than an arbitrary number.
pub fn well_formed(z: &Nat) -> bool {
    Term::decode_value(z.value()).code() == *z
}

fn smn_parts(t: &Term) -> Option<(Nat, Nat)> {
    match t {
        Term::Eval(e, arg) => match (&**e, &**arg) {
            (Term::Lit(e), Term::Pair(x, y)) => match (&**x, &**y) {
                (Term::Lit(x), Term::Var(0)) => Some((e.clone(), x.clone())),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

fn literals(t: &Term, out: &mut Vec<Nat>) {
    if let Term::Lit(v) = t {
        out.push(v.clone());
    }
    for c in t.children() {
        literals(c, out);
    }
}

pub fn describe(index: &Nat, m: u64, budget: u64) -> Description {
    let term = index.as_program();
    let mut lits = Vec::new();
    literals(&term, &mut lits);
    let mut embedded: Vec<Nat> = lits
        .into_iter()
        .filter(|v| well_formed(v) && v.as_program().size() > 1)
        .collect();
    embedded.sort();
    embedded.dedup();
    let decisions: Vec<(u64, Decision)> =
        (0..m).map(|x| (x, decide_c(index, &Nat::from(x), budget))).collect();
    let boolean_total = decisions.iter().all(|(_, d)| matches!(d, Decision::Yes | Decision::No));
    Description {
        index: index.clone(),
        well_formed: well_formed(index),
        size: term.size(),
        sexpr: sexpr::print(&term),
        unpad: unpad(index).ok(),
        unind: unind(index).map(|d| d.as_set().to_vec()),
        smn: smn_parts(&term),
        embedded_programs: embedded,
        decisions,
        boolean_total,
    }
}

fn short(n: &Nat) -> String {
    let s = n.to_string();
    if s.len() > 40 {
        format!("<{}-bit nat>", n.bits())
    } else {
        s
    }
}

impl Description {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "index:      {}", short(&self.index));
        let _ = writeln!(out, "nodes:      {}{}", self.size, if self.well_formed { "" } else { " (not a term code; decodes to a divergent program)" });
        let sx = if self.sexpr.len() > 2000 { format!("{}...", &self.sexpr[..2000]) } else { self.sexpr.clone() };
        let _ = writeln!(out, "term:       {sx}");
        if let Some((e, n)) = &self.unpad {
            let _ = writeln!(out, "unpad:      e = {}, n = {}", short(e), short(n));
        }
        if let Some(d) = &self.unind {
            let elems: Vec<String> = d.iter().map(Nat::to_string).collect();
            let _ = writeln!(out, "finite set: {{{}}}", elems.join(", "));
        }
        if let Some((e, x)) = &self.smn {
            let _ = writeln!(out, "smn:        e = {}, x = {}", short(e), short(x));
        }
        for p in &self.embedded_programs {
            let _ = writeln!(out, "embeds:     {}", short(p));
        }
        let _ = writeln!(out, "boolean on [0, {}): {}", self.decisions.len(), self.boolean_total);
        for (x, d) in &self.decisions {
            let _ = writeln!(out, "  {x:>4}  {d:?}");
        }
        out
    }
}
