//! Pairing and list coding on the naturals.
//!
//! Pairs use the Cantor polynomial `<x,y> = (x+y)(x+y+1)/2 + y`.
//!
//! Finite lists use a self-delimiting binary code: the list `(v1, .., vk)`
//! is the number whose binary expansion is `1 g(v1+1) .. g(vk+1)`, minus one,
//! where `g(m)` is the Elias gamma code of `m >= 1` (`bitlen(m)-1` zeros
//! followed by `m` in binary). The empty list codes to 0, appending an element
//! strictly increases the code, and the code has size linear in the total
//! size of the elements.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::nat::Nat;

pub fn pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s: BigUint = x + y;
    let t = &s * (&s + 1u32) >> 1;
    t + y
}

pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    // w = floor((sqrt(8z+1) - 1) / 2)
    let disc: BigUint = (z << 3) + 1u32;
    let mut w = (disc.sqrt() - 1u32) >> 1;
    // guard against an off-by-one in the root
    loop {
        let t = &w * (&w + 1u32) >> 1;
        if &t > z {
            w -= 1u32;
            continue;
        }
        let w1 = &w + 1u32;
        let t1 = &w1 * (&w1 + 1u32) >> 1;
        if &t1 <= z {
            w = w1;
            continue;
        }
        let y = z - &t;
        let x = &w - &y;
        return (x, y);
    }
}

pub fn pair_nat(x: &Nat, y: &Nat) -> Nat {
    Nat::new(pair(x.value(), y.value()))
}

pub fn unpair_nat(z: &Nat) -> (Nat, Nat) {
    let (x, y) = unpair(z.value());
    (Nat::new(x), Nat::new(y))
}

fn push_gamma(bits: &mut Vec<u8>, v: &BigUint) {
    let m: BigUint = v + 1u32;
    let digits = m.to_radix_be(2);
    bits.extend(std::iter::repeat_n(0u8, digits.len() - 1));
    bits.extend_from_slice(&digits);
}

pub fn list_encode<'a, I>(items: I) -> BigUint
where
    I: IntoIterator<Item = &'a BigUint>,
{
    let mut bits = vec![1u8];
    for v in items {
        push_gamma(&mut bits, v);
    }
    BigUint::from_radix_be(&bits, 2).expect("binary digits") - 1u32
}

pub fn list_encode_nats<'a, I>(items: I) -> Nat
where
    I: IntoIterator<Item = &'a Nat>,
{
    Nat::new(list_encode(items.into_iter().map(|n| n.value())))
}

/// Code of the list `l ⌢ (v)` computed from the code of `l`.
pub fn list_snoc(l: &BigUint, v: &BigUint) -> BigUint {
    let m: BigUint = v + 1u32;
    let shift = 2 * m.bits() - 1;
    ((l + 1u32) << shift) + m - 1u32
}

/// Code of the concatenation of two coded lists.
pub fn list_concat(a: &BigUint, b: &BigUint) -> BigUint {
    let b1: BigUint = b + 1u32;
    let tail_bits = b1.bits() - 1;
    let tail = b1 - (BigUint::one() << tail_bits);
    ((a + 1u32) << tail_bits) + tail - 1u32
}

/// Parses as many complete elements as the code holds. Returns the parsed
/// elements and whether the whole code was consumed.
fn parse_list(z: &BigUint) -> (Vec<Nat>, bool) {
    if z.is_zero() {
        return (Vec::new(), true);
    }
    let digits = (z + BigUint::one()).to_radix_be(2);
    let mut out = Vec::new();
    let mut pos = 1;
    while pos < digits.len() {
        let zeros = digits[pos..].iter().take_while(|&&d| d == 0).count();
        let start = pos + zeros;
        let end = start + zeros + 1;
        if end > digits.len() {
            return (out, false);
        }
        let m = BigUint::from_radix_be(&digits[start..end], 2).expect("binary digits");
        out.push(Nat::new(m - 1u32));
        pos = end;
    }
    (out, true)
}

/// Total list decoding: a malformed trailing fragment is dropped.
pub fn list_decode(z: &BigUint) -> Vec<Nat> {
    parse_list(z).0
}

/// Decoding that rejects codes not produced by [`list_encode`].
pub fn list_decode_strict(z: &BigUint) -> Option<Vec<Nat>> {
    match parse_list(z) {
        (v, true) => Some(v),
        _ => None,
    }
}
