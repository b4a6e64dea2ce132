//! Random halting programs and symbol strings for the property tests.

#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use climit::numbering::build::*;
use climit::numbering::{Nat, Prim};
use climit::seq::Symbol;

fn expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || rng.random_bool(0.25) {
        return if rng.random_bool(0.6) { var("v") } else { lit(rng.random_range(0..6u64)) };
    }
    let d = depth - 1;
    match rng.random_range(0..10) {
        0 => succ(expr(rng, d)),
        1 => pred(expr(rng, d)),
        2 => fst(expr(rng, d)),
        3 => snd(expr(rng, d)),
        4 => pair(expr(rng, d), expr(rng, d)),
        5 => ifz(expr(rng, d), expr(rng, d), expr(rng, d)),
        6 => prim(Prim::Add, vec![expr(rng, d), expr(rng, d)]),
        7 => prim(Prim::ListLen, vec![expr(rng, d)]),
        8 => prim(Prim::SetMember, vec![expr(rng, d), expr(rng, d)]),
        _ => prim(Prim::Mod, vec![expr(rng, d), lit(rng.random_range(1..5u64))]),
    }
}

/// A program without loops, so it halts on every input.
pub fn program(seed: u64) -> Nat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    program_unchecked("v", expr(&mut rng, 4)).code()
}

/// A program that halts exactly when a random expression is 1 on its input.
pub fn partial_program(seed: u64) -> Nat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let test = expr(&mut rng, 3);
    program_unchecked("v", first("k", eq(prim(Prim::Mul, vec![var("k"), test]), lit(1u64)))).code()
}

pub fn symbols(seed: u64, len: usize, max: u64) -> Vec<Symbol> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| if rng.random_bool(0.25) { Symbol::Pause } else { Symbol::datum(rng.random_range(0..max)) })
        .collect()
}
