//! Shared natural numbers.
//!
//! A [`Nat`] is an immutable arbitrary-precision natural that remembers the
//! structures it has already been decoded into (a list, a finite set, a
//! program term). Decoding is a pure function of the value, so the caches are
//! invisible to callers; they only make repeated `EVAL` of the same index and
//! repeated list indexing cheap.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::code;
use super::term::Term;

struct NatCell {
    value: BigUint,
    list: OnceLock<Arc<[Nat]>>,
    set: OnceLock<Arc<[Nat]>>,
    term: OnceLock<Arc<Term>>,
}

#[derive(Clone)]
pub struct Nat(Arc<NatCell>);

impl Nat {
    pub fn new(value: BigUint) -> Self {
        Nat(Arc::new(NatCell {
            value,
            list: OnceLock::new(),
            set: OnceLock::new(),
            term: OnceLock::new(),
        }))
    }

    pub fn zero() -> Self {
        Nat::from(0u64)
    }

    pub fn value(&self) -> &BigUint {
        &self.0.value
    }

    pub fn is_zero(&self) -> bool {
        self.0.value.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.value.to_u64()
    }

    /// Saturating conversion, used for step budgets and lengths.
    pub fn saturating_u64(&self) -> u64 {
        self.0.value.to_u64().unwrap_or(u64::MAX)
    }

    pub fn bits(&self) -> u64 {
        self.0.value.bits()
    }

    pub fn succ(&self) -> Nat {
        Nat::new(&self.0.value + 1u32)
    }

    /// Predecessor with `pred(0) = 0`.
    pub fn pred(&self) -> Nat {
        if self.is_zero() {
            self.clone()
        } else {
            Nat::new(&self.0.value - 1u32)
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.value.is_one()
    }

    /// The list this number codes (total; see [`code::list_decode`]).
    pub fn as_list(&self) -> Arc<[Nat]> {
        self.0
            .list
            .get_or_init(|| code::list_decode(&self.0.value).into())
            .clone()
    }

    /// The finite set this number codes: the sorted, deduplicated list.
    pub fn as_set(&self) -> Arc<[Nat]> {
        self.0
            .set
            .get_or_init(|| {
                let list = self.as_list();
                if list.windows(2).all(|w| w[0] < w[1]) {
                    list
                } else {
                    let mut v: Vec<Nat> = list.to_vec();
                    v.sort();
                    v.dedup();
                    v.into()
                }
            })
            .clone()
    }

    /// The program this number names in the fixed numbering.
    pub fn as_program(&self) -> Arc<Term> {
        self.0
            .term
            .get_or_init(|| Arc::new(Term::decode_value(&self.0.value)))
            .clone()
    }
}

impl From<BigUint> for Nat {
    fn from(v: BigUint) -> Self {
        Nat::new(v)
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat::new(BigUint::from(v))
    }
}

impl From<u32> for Nat {
    fn from(v: u32) -> Self {
        Nat::new(BigUint::from(v))
    }
}

impl From<usize> for Nat {
    fn from(v: usize) -> Self {
        Nat::new(BigUint::from(v))
    }
}

impl From<&Nat> for Nat {
    fn from(v: &Nat) -> Self {
        v.clone()
    }
}

impl PartialEq for Nat {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.value == other.0.value
    }
}

impl Eq for Nat {}

impl PartialOrd for Nat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Nat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.value.cmp(&other.0.value)
    }
}

impl Hash for Nat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.value.hash(state)
    }
}

impl PartialEq<u64> for Nat {
    fn eq(&self, other: &u64) -> bool {
        self.to_u64() == Some(*other)
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0.value, f)
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits() <= 128 {
            write!(f, "{}", self.0.value)
        } else {
            write!(f, "<{}-bit nat>", self.bits())
        }
    }
}

impl FromStr for Nat {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BigUint::from_str(s).map(Nat::new)
    }
}

/// Naturals that fit in a JSON-safe integer are written as numbers, larger
/// ones as decimal strings. Both forms are accepted on input.
impl Serialize for Nat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.to_u64() {
            Some(v) if v < (1u64 << 53) => s.serialize_u64(v),
            _ => s.serialize_str(&self.0.value.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Nat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Nat::from(v)),
            Repr::Str(s) => s.trim().parse().map_err(serde::de::Error::custom),
        }
    }
}
