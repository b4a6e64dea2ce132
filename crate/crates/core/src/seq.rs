//! Symbols, coded finite sequences over `ℕ ∪ {#}` and bounded sequence
//! spaces.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::numbering::{code, data, Nat};

/// Default bound on the length of enumerated sequence spaces.
pub const DEFAULT_SEQ_CAP: u64 = 6;

pub type FiniteSet = BTreeSet<Nat>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Pause,
    Datum(Nat),
}

impl Symbol {
    pub fn datum(v: u64) -> Symbol {
        Symbol::Datum(Nat::from(v))
    }

    /// `0` for the pause, `k + 1` for the datum `k`.
    pub fn code(&self) -> Nat {
        match self {
            Symbol::Pause => Nat::zero(),
            Symbol::Datum(k) => k.succ(),
        }
    }

    pub fn from_code(c: &Nat) -> Symbol {
        if c.is_zero() {
            Symbol::Pause
        } else {
            Symbol::Datum(c.pred())
        }
    }

    pub fn as_datum(&self) -> Option<&Nat> {
        match self {
            Symbol::Pause => None,
            Symbol::Datum(k) => Some(k),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Pause => f.write_str("#"),
            Symbol::Datum(k) => write!(f, "{k}"),
        }
    }
}

/// `"#"` or the datum as a JSON natural.
impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Symbol::Pause => s.serialize_str("#"),
            Symbol::Datum(k) => k.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Symbol::datum(v)),
            Repr::Str(s) if s == "#" => Ok(Symbol::Pause),
            Repr::Str(s) => s.parse().map(Symbol::Datum).map_err(serde::de::Error::custom),
        }
    }
}

/// A coded finite sequence. The empty sequence codes to 0, and the numeric
/// order on codes is the order on sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeqCode(pub Nat);

impl SeqCode {
    pub fn empty() -> SeqCode {
        SeqCode(Nat::zero())
    }

    pub fn from_symbols<'a, I: IntoIterator<Item = &'a Symbol>>(syms: I) -> SeqCode {
        let codes: Vec<Nat> = syms.into_iter().map(Symbol::code).collect();
        SeqCode(code::list_encode_nats(&codes))
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.0.as_list().iter().map(Symbol::from_code).collect()
    }

    pub fn len(&self) -> usize {
        self.0.as_list().len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_zero()
    }

    pub fn get(&self, i: usize) -> Option<Symbol> {
        self.0.as_list().get(i).map(Symbol::from_code)
    }

    pub fn snoc(&self, s: &Symbol) -> SeqCode {
        SeqCode(data::seq_snoc(&self.0, &s.code()))
    }

    pub fn concat(&self, other: &SeqCode) -> SeqCode {
        SeqCode(data::seq_concat(&self.0, &other.0))
    }

    pub fn content(&self) -> FiniteSet {
        self.0
            .as_list()
            .iter()
            .filter(|c| !c.is_zero())
            .map(Nat::pred)
            .collect()
    }

    pub fn is_prefix_of(&self, other: &SeqCode) -> bool {
        let a = self.0.as_list();
        let b = other.0.as_list();
        a.len() <= b.len() && a[..] == b[..a.len()]
    }

    pub fn code(&self) -> &Nat {
        &self.0
    }
}

impl fmt::Display for SeqCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syms: Vec<String> = self.symbols().iter().map(Symbol::to_string).collect();
        write!(f, "({})", syms.join(", "))
    }
}

pub fn set_code(d: &FiniteSet) -> Nat {
    code::list_encode_nats(d.iter())
}

pub fn set_from_code(c: &Nat) -> FiniteSet {
    c.as_set().iter().cloned().collect()
}

pub fn set_of<I: IntoIterator<Item = u64>>(elems: I) -> FiniteSet {
    elems.into_iter().map(Nat::from).collect()
}

pub fn content(syms: &[Symbol]) -> FiniteSet {
    syms.iter().filter_map(Symbol::as_datum).cloned().collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("sequence length {t} exceeds the configured cap {cap}")]
    CapExceeded { t: u64, cap: u64 },
}

/// All sequences over `D ∪ {#}` of length at most `t`, ascending by code.
pub fn enum_bounded_seqs(d: &FiniteSet, t: u64, cap: u64) -> Result<Vec<SeqCode>, SeqError> {
    if t > cap {
        return Err(SeqError::CapExceeded { t, cap });
    }
    Ok(data::bounded_seqs(&set_code(d), t)
        .into_iter()
        .map(SeqCode)
        .collect())
}

/// The elements of `D` ascending with a pause between neighbours.
pub fn sort_sharp(d: &FiniteSet) -> SeqCode {
    SeqCode(data::sort_sharp(&set_code(d)))
}
