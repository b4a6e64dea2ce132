//! Texts: total symbol streams, given by a finite description.

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numbering::{decide_c, eval, Decision, Nat};
use crate::seq::{content, FiniteSet, Symbol};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("text position {position} did not resolve within the query budget")]
    BudgetExhausted { position: u64 },
    #[error("text position {position} is not decided by a 0/1 value")]
    NotBoolean { position: u64 },
    #[error("interleaving {x} would change the content of the text")]
    ContentChange { x: Nat },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TextSource {
    /// `prefix` followed by `tail` forever.
    Explicit { prefix: Vec<Symbol>, tail: Symbol },
    /// The elements ascending, then pauses.
    CanonicalFinite { set: FiniteSet },
    /// Position `x` carries `x` when `φ_e(x) = 1` and a pause otherwise.
    CanonicalCIndex { e: Nat },
    /// Stage `n` finds `{x ≤ n : φ_e(x) halts within n steps}` and emits the
    /// least element not emitted before, or a pause.
    FromEnumerator { e: Nat },
    /// Position `i` carries the symbol coded by `φ_e(i)`.
    Programmatic { e: Nat },
    /// Even positions follow `base`, odd positions carry `x`.
    Interleave { base: Box<TextSource>, x: Nat },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Text {
    pub source: TextSource,
    /// Step budget for each evaluation a programmatic source needs.
    pub budget: u64,
}

pub const DEFAULT_TEXT_BUDGET: u64 = 1_000_000;

impl Text {
    pub fn new(source: TextSource) -> Text {
        Text { source, budget: DEFAULT_TEXT_BUDGET }
    }

    pub fn with_budget(mut self, budget: u64) -> Text {
        self.budget = budget;
        self
    }

    pub fn explicit(prefix: Vec<Symbol>, tail: Symbol) -> Text {
        Text::new(TextSource::Explicit { prefix, tail })
    }

    pub fn canonical_finite(set: FiniteSet) -> Text {
        Text::new(TextSource::CanonicalFinite { set })
    }

    pub fn canonical_c_index(e: Nat) -> Text {
        Text::new(TextSource::CanonicalCIndex { e })
    }

    pub fn from_enumerator(e: Nat) -> Text {
        Text::new(TextSource::FromEnumerator { e })
    }

    pub fn programmatic(e: Nat) -> Text {
        Text::new(TextSource::Programmatic { e })
    }

    /// A text for the finite set `set`: a seeded shuffle of its elements
    /// with repetitions and pauses mixed in, then pauses forever.
    pub fn shuffled_finite(set: &FiniteSet, seed: u64) -> Text {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut syms: Vec<Symbol> = set.iter().cloned().map(Symbol::Datum).collect();
        let extra = rng.random_range(0..=set.len() + 2);
        for _ in 0..extra {
            if !set.is_empty() && rng.random_bool(0.5) {
                let k = rng.random_range(0..set.len());
                syms.push(Symbol::Datum(set.iter().nth(k).unwrap().clone()));
            } else {
                syms.push(Symbol::Pause);
            }
        }
        syms.shuffle(&mut rng);
        Text::explicit(syms, Symbol::Pause)
    }

    /// Interleaves `x` at the odd positions. `x` must already occur in the
    /// text; the check looks at the first `horizon` symbols.
    pub fn interleave(base: Text, x: Nat, horizon: u64) -> Result<Text, TextError> {
        let present = match &base.source {
            TextSource::CanonicalFinite { set } => set.contains(&x),
            _ => content(&base.prefix(horizon)?).contains(&x),
        };
        if !present {
            return Err(TextError::ContentChange { x });
        }
        Ok(Text {
            budget: base.budget,
            source: TextSource::Interleave { base: Box::new(base.source), x },
        })
    }

    /// The first `n` symbols `T[n]`.
    pub fn prefix(&self, n: u64) -> Result<Vec<Symbol>, TextError> {
        prefix_of(&self.source, n, self.budget)
    }

    pub fn symbol(&self, i: u64) -> Result<Symbol, TextError> {
        Ok(self.prefix(i + 1)?.pop().expect("nonempty prefix"))
    }

    /// JSON form: the first `n` symbols plus the tail descriptor.
    pub fn to_json(&self, n: u64) -> Result<serde_json::Value, TextError> {
        Ok(serde_json::json!({
            "symbols": self.prefix(n)?,
            "tail": self.source,
        }))
    }
}

fn prefix_of(src: &TextSource, n: u64, budget: u64) -> Result<Vec<Symbol>, TextError> {
    let n_us = n as usize;
    Ok(match src {
        TextSource::Explicit { prefix, tail } => (0..n_us)
            .map(|i| prefix.get(i).cloned().unwrap_or_else(|| tail.clone()))
            .collect(),
        TextSource::CanonicalFinite { set } => {
            let mut v: Vec<Symbol> = set.iter().take(n_us).cloned().map(Symbol::Datum).collect();
            v.resize(n_us, Symbol::Pause);
            v
        }
        TextSource::CanonicalCIndex { e } => (0..n)
            .map(|x| match decide_c(e, &Nat::from(x), budget) {
                Decision::Yes => Ok(Symbol::datum(x)),
                Decision::No => Ok(Symbol::Pause),
                Decision::NotBoolean => Err(TextError::NotBoolean { position: x }),
                Decision::OutOfBudget => Err(TextError::BudgetExhausted { position: x }),
            })
            .collect::<Result<_, _>>()?,
        TextSource::FromEnumerator { e } => {
            let prog = e.as_program();
            let mut emitted = FiniteSet::new();
            let mut halted = FiniteSet::new();
            let mut out = Vec::with_capacity(n_us);
            for stage in 0..n {
                for x in 0..=stage {
                    let x = Nat::from(x);
                    if !halted.contains(&x) && crate::numbering::run(&prog, &x, stage).halted() {
                        halted.insert(x);
                    }
                }
                match halted.difference(&emitted).next().cloned() {
                    Some(x) => {
                        emitted.insert(x.clone());
                        out.push(Symbol::Datum(x));
                    }
                    None => out.push(Symbol::Pause),
                }
            }
            out
        }
        TextSource::Programmatic { e } => (0..n)
            .map(|i| {
                eval(e, &Nat::from(i), budget)
                    .into_value()
                    .map(|c| Symbol::from_code(&c))
                    .ok_or(TextError::BudgetExhausted { position: i })
            })
            .collect::<Result<_, _>>()?,
        TextSource::Interleave { base, x } => {
            let inner = prefix_of(base, n.div_ceil(2), budget)?;
            (0..n_us)
                .map(|i| {
                    if i % 2 == 0 {
                        inner[i / 2].clone()
                    } else {
                        Symbol::Datum(x.clone())
                    }
                })
                .collect()
        }
    })
}

/// FNV-1a hash of a symbol prefix, for labelling traces.
pub fn fingerprint(syms: &[Symbol]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for s in syms {
        for b in s.to_string().bytes().chain(std::iter::once(b',')) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}
