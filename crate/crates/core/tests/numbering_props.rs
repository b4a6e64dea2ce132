mod common;

use num_bigint::BigUint;
use proptest::prelude::*;

use climit::numbering::{code, eval, krt, pad, smn, unpad, EvalOutcome, Nat};
use climit::seq::{SeqCode, Symbol};

fn n(v: u64) -> Nat {
    Nat::from(v)
}

proptest! {
    #[test]
    fn pairing_round_trips(x in 0u64..1 << 40, y in 0u64..1 << 40) {
        let z = code::pair(&BigUint::from(x), &BigUint::from(y));
        prop_assert_eq!(code::unpair(&z), (BigUint::from(x), BigUint::from(y)));
        let (a, b) = code::unpair(&z);
        prop_assert_eq!(code::pair(&a, &b), z);
    }

    #[test]
    fn smn_agrees_with_pairing(seed in any::<u64>(), x in 0u64..500, y in 0u64..500, partial in any::<bool>()) {
        let e = if partial { common::partial_program(seed) } else { common::program(seed) };
        let direct = eval(&e, &code::pair_nat(&n(x), &n(y)), 200_000).into_value();
        let via = eval(&smn(&e, &n(x)), &n(y), 200_000).into_value();
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn pad_is_invertible_and_transparent(seed in any::<u64>(), k in 0u64..1 << 30, x in 0u64..100) {
        let e = common::program(seed);
        let p = pad(&e, &n(k));
        prop_assert_eq!(unpad(&p), Ok((e.clone(), n(k))));
        prop_assert_eq!(eval(&p, &n(x), 100_000).into_value(), eval(&e, &n(x), 100_000).into_value());
        prop_assert_ne!(pad(&e, &n(k + 1)), p);
    }

    #[test]
    fn krt_is_a_fixed_point(seed in any::<u64>(), x in 0u64..50) {
        // φ_f(y) = smn(P, y): a total transformer
        let p = common::program(seed);
        let f = climit::numbering::build::program_unchecked(
            "y",
            climit::numbering::build::prim(
                climit::numbering::Prim::Smn,
                vec![climit::numbering::build::lit(p), climit::numbering::build::var("y")],
            ),
        )
        .code();
        let e = krt(&f);
        let fe = eval(&f, &e, 100_000).into_value().unwrap();
        prop_assert_eq!(eval(&e, &n(x), 1_000_000).into_value(), eval(&fe, &n(x), 1_000_000).into_value());
    }

    #[test]
    fn bounded_blum_axiom(seed in any::<u64>(), x in 0u64..100, t in 1u64..400, partial in any::<bool>()) {
        let e = if partial { common::partial_program(seed) } else { common::program(seed) };
        match eval(&e, &n(x), t) {
            EvalOutcome::Halted { value, steps } => {
                prop_assert!(steps <= t);
                prop_assert_eq!(eval(&e, &n(x), steps), EvalOutcome::Halted { value, steps });
            }
            EvalOutcome::OutOfBudget { .. } => {
                for t2 in [0, t / 2, t.saturating_sub(1)] {
                    prop_assert!(!eval(&e, &n(x), t2).halted());
                }
            }
        }
    }

    #[test]
    fn evaluation_is_deterministic(seed in any::<u64>(), x in 0u64..100) {
        let e = common::partial_program(seed);
        prop_assert_eq!(eval(&e, &n(x), 5_000), eval(&e, &n(x), 5_000));
    }

    #[test]
    fn sequence_codec_round_trips(seed in any::<u64>(), len in 0usize..20) {
        let syms = common::symbols(seed, len, 1000);
        let s = SeqCode::from_symbols(&syms);
        prop_assert_eq!(s.symbols(), syms.clone());
        prop_assert_eq!(Symbol::from_code(&syms.first().cloned().unwrap_or(Symbol::Pause).code()), syms.first().cloned().unwrap_or(Symbol::Pause));
    }

    #[test]
    fn extensions_have_larger_codes(seed in any::<u64>(), len in 0usize..8, extra in 1usize..4) {
        let b = common::symbols(seed, len + extra, 50);
        let a = SeqCode::from_symbols(&b[..len]);
        let b = SeqCode::from_symbols(&b);
        prop_assert!(a < b);
        prop_assert!(a.is_prefix_of(&b));
    }
}
