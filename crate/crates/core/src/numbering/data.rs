//! Finite sets and symbol sequences as coded naturals.
//!
//! A finite set is coded as the list of its elements in strictly ascending
//! order. A sequence over `ℕ ∪ {#}` is the list of its symbol codes, with
//! `0` for the pause and `k + 1` for the datum `k`.

use num_bigint::BigUint;

use super::code;
use super::nat::Nat;

pub fn set_code<I: IntoIterator<Item = Nat>>(elems: I) -> Nat {
    let mut v: Vec<Nat> = elems.into_iter().collect();
    v.sort();
    v.dedup();
    code::list_encode_nats(&v)
}

pub fn set_code_u64<I: IntoIterator<Item = u64>>(elems: I) -> Nat {
    set_code(elems.into_iter().map(Nat::from))
}

pub fn set_member(d: &Nat, x: &Nat) -> bool {
    d.as_set().binary_search(x).is_ok()
}

pub fn set_insert(d: &Nat, x: &Nat) -> Nat {
    let set = d.as_set();
    set_code(set.iter().cloned().chain(std::iter::once(x.clone())))
}

pub fn seq_snoc(s: &Nat, sym: &Nat) -> Nat {
    Nat::new(code::list_snoc(s.value(), sym.value()))
}

pub fn seq_concat(a: &Nat, b: &Nat) -> Nat {
    Nat::new(code::list_concat(a.value(), b.value()))
}

/// Set code of the data occurring in a coded sequence.
pub fn seq_content(s: &Nat) -> Nat {
    set_code(s.as_list().iter().filter(|c| !c.is_zero()).map(Nat::pred))
}

/// The elements of `D` ascending, separated by single pauses.
pub fn sort_sharp(d: &Nat) -> Nat {
    let mut syms = Vec::new();
    for (i, x) in d.as_set().iter().enumerate() {
        if i > 0 {
            syms.push(BigUint::from(0u32));
        }
        syms.push(x.value() + 1u32);
    }
    Nat::new(code::list_encode(&syms))
}

/// Number of sequences of length at most `t` over `k` symbols, saturating.
pub fn bounded_count(k: u64, t: u64) -> u64 {
    let mut total: u64 = 0;
    let mut layer: u64 = 1;
    for _ in 0..=t {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(k);
    }
    total
}

fn alphabet(d: &Nat) -> Vec<Nat> {
    std::iter::once(Nat::zero())
        .chain(d.as_set().iter().map(Nat::succ))
        .collect()
}

/// All sequences over `D ∪ {#}` of length at most `t`, ascending by code.
pub fn bounded_seqs(d: &Nat, t: u64) -> Vec<Nat> {
    let alpha = alphabet(d);
    let mut out = vec![Nat::zero()];
    let mut layer = vec![Nat::zero()];
    for _ in 0..t {
        let mut next = Vec::with_capacity(layer.len() * alpha.len());
        for s in &layer {
            for a in &alpha {
                next.push(seq_snoc(s, a));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out
}

/// All sequences over `D ∪ {#}` with code below `c`, ascending. Gives up
/// with `None` once more than `limit` sequences have been visited.
pub fn seqs_below(d: &Nat, c: &Nat, limit: u64) -> Option<Vec<Nat>> {
    let mut out = Vec::new();
    if c.is_zero() {
        return Some(out);
    }
    let alpha = alphabet(d);
    let mut stack = vec![Nat::zero()];
    let mut visited: u64 = 0;
    while let Some(s) = stack.pop() {
        visited += 1;
        if visited > limit {
            return None;
        }
        for a in &alpha {
            let n = seq_snoc(&s, a);
            // extending a sequence only increases its code
            if n < *c {
                stack.push(n);
            }
        }
        out.push(s);
    }
    out.sort();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(syms: &[u64]) -> Nat {
        code::list_encode_nats(&syms.iter().map(|&s| Nat::from(s)).collect::<Vec<_>>())
    }

    #[test]
    fn content_drops_pauses() {
        // (3, #, 5)
        let s = seq(&[4, 0, 6]);
        assert_eq!(seq_content(&s), set_code_u64([3, 5]));
    }

    #[test]
    fn sort_sharp_small() {
        assert_eq!(sort_sharp(&set_code_u64([])), Nat::zero());
        assert_eq!(sort_sharp(&set_code_u64([2])), seq(&[3]));
        assert_eq!(sort_sharp(&set_code_u64([3, 1])), seq(&[2, 0, 4]));
    }

    #[test]
    fn bounded_counts() {
        let e = set_code_u64([]);
        assert_eq!(bounded_seqs(&e, 2), vec![seq(&[]), seq(&[0]), seq(&[0, 0])]);
        assert_eq!(bounded_seqs(&set_code_u64([1]), 3).len(), 15);
        assert_eq!(bounded_count(2, 3), 15);
    }

    #[test]
    fn below_matches_filter() {
        let d = set_code_u64([0, 2]);
        // a code below c has at most 10 bits, so at most 9 symbols
        let all = bounded_seqs(&d, 9);
        let c = seq(&[1, 0, 3]);
        let below = seqs_below(&d, &c, 1 << 20).unwrap();
        let expect: Vec<Nat> = all.into_iter().filter(|s| *s < c).collect();
        assert_eq!(below, expect);
    }
}
