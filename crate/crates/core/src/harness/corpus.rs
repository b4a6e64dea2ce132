//! The shipped desk-scale corpus: languages, their texts and the learners
//! documented to learn them.

use std::sync::OnceLock;

use crate::criteria::LanguageOracle;
use crate::learners::{star, Learner};
use crate::numbering::build::*;
use crate::numbering::{code, constant, eval, smn, Nat, Prim};
use crate::seq::{set_of, FiniteSet};
use crate::text::Text;
use crate::zoo;

/// A language with the texts it is checked on.
#[derive(Clone, Debug)]
pub struct Case {
    pub name: String,
    pub lang: LanguageOracle,
    pub texts: Vec<Text>,
}

fn finite_case(d: &FiniteSet, seed: u64) -> Case {
    let name = format!("{{{}}}", d.iter().map(Nat::to_string).collect::<Vec<_>>().join(","));
    Case {
        name,
        lang: LanguageOracle::Finite(d.clone()),
        texts: vec![
            Text::canonical_finite(d.clone()),
            Text::shuffled_finite(d, seed),
            Text::shuffled_finite(d, seed + 1),
        ],
    }
}

/// Finite languages over `[0, 8)` of size at most `max_size`.
pub fn finite_cases(max_size: usize, seed: u64) -> Vec<Case> {
    let all: [&[u64]; 7] = [&[], &[6], &[1, 5], &[2, 4], &[0, 3, 7], &[1, 2, 6], &[0, 2, 5, 7]];
    all.iter()
        .filter(|d| d.len() <= max_size)
        .map(|d| finite_case(&set_of(d.iter().copied()), seed))
        .collect()
}

/// `{D ∪ {0}}` for a few `D ⊆ [0, 8)`.
pub fn zero_family_cases(seed: u64) -> Vec<Case> {
    let bases: [&[u64]; 4] = [&[], &[3], &[1, 6], &[2, 5, 7]];
    bases
        .iter()
        .map(|d| finite_case(&set_of(d.iter().copied().chain([0])), seed))
        .collect()
}

/// `ℕ⁺`, presented as `#, 1, 2, 3, ...`.
pub fn positive_case() -> Case {
    Case {
        name: "N+".into(),
        lang: LanguageOracle::Positive,
        texts: vec![Text::canonical_c_index(zoo::positive_index())],
    }
}

/// `i ↦ ⟨e, k⟩ + 1` when `i = k²`, a pause otherwise; as a function of `e`.
fn sparse_row_program() -> &'static Nat {
    static P: OnceLock<Nat> = OnceLock::new();
    P.get_or_init(|| {
        let sq = |k: Expr| prim(Prim::Mul, vec![k.clone(), k]);
        program_unchecked(
            "v",
            let_(
                "e",
                fst(var("v")),
                let_(
                    "i",
                    snd(var("v")),
                    let_(
                        "k",
                        first("k", prim(Prim::Lt, vec![var("i"), sq(succ(var("k")))])),
                        if_(eq(sq(var("k")), var("i")), succ(pair(var("e"), var("k"))), lit(0u64)),
                    ),
                ),
            ),
        )
        .code()
    })
}

/// A text for `L_e = {⟨e, x⟩ : x ∈ ℕ}` that grows slowly.
pub fn sparse_row_text(e: &Nat) -> Text {
    Text::programmatic(smn(sparse_row_program(), e))
}

/// Programs for the phase-learner family: two halting at 0, two divergent.
pub fn phase_programs() -> Vec<(Nat, Option<Nat>)> {
    let mut v: Vec<(Nat, Option<Nat>)> = [2u64, 3]
        .into_iter()
        .map(|k| (constant(&Nat::from(k)), Some(Nat::from(k))))
        .collect();
    v.extend([1u64, 2].into_iter().map(|t| (zoo::divergent_at_zero(t), None)));
    v
}

/// `L'_e` for programs halting at 0 and `L_e` for divergent ones.
pub fn phase_cases() -> Vec<Case> {
    phase_programs()
        .into_iter()
        .map(|(e, v)| match v {
            Some(v) => {
                debug_assert_eq!(eval(&e, &Nat::zero(), 1000).into_value(), Some(v.clone()));
                let d: FiniteSet =
                    (0..=v.to_u64().unwrap()).map(|x| code::pair_nat(&e, &Nat::from(x))).collect();
                Case {
                    name: format!("L'_e (phi_e(0) = {v})"),
                    lang: LanguageOracle::Rows { e: e.clone(), max_second: Some(v) },
                    texts: vec![Text::canonical_finite(d.clone()), Text::shuffled_finite(&d, 5)],
                }
            }
            None => Case {
                name: "L_e (phi_e(0) diverges)".into(),
                lang: LanguageOracle::Rows { e: e.clone(), max_second: None },
                texts: vec![sparse_row_text(&e)],
            },
        })
        .collect()
}

/// `{3, 5}` with texts that alternate between the two data.
pub fn churn_td_cases() -> Vec<Case> {
    let d = set_of([3, 5]);
    let mut c = finite_case(&d, 11);
    c.texts.push(
        Text::interleave(Text::canonical_finite(d), Nat::from(3u64), 4).expect("3 is in the text"),
    );
    vec![c]
}

/// Singletons, for transductive learners.
pub fn singleton_cases() -> Vec<Case> {
    [0u64, 4].into_iter().map(|x| finite_case(&set_of([x]), 2)).collect()
}

/// The G-learners simulating the zoo learners with documented classes.
pub fn star_finite() -> Learner {
    star(&zoo::finite_sd())
}

pub fn star_zero_marker() -> Learner {
    star(&zoo::zero_marker_sd(&zoo::positive_index()))
}

pub fn star_phase() -> Learner {
    star(&zoo::phase_learner())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::Symbol;

    #[test]
    fn sparse_text_is_a_text_for_the_row() {
        let e = Nat::from(7u64);
        let t = sparse_row_text(&e).prefix(10).unwrap();
        let row = |k: u64| Symbol::Datum(code::pair_nat(&e, &Nat::from(k)));
        assert_eq!(t[0], row(0));
        assert_eq!(t[1], row(1));
        assert_eq!(t[2], Symbol::Pause);
        assert_eq!(t[4], row(2));
        assert_eq!(t[9], row(3));
    }

    #[test]
    fn phase_family_has_both_kinds() {
        let p = phase_programs();
        assert_eq!(p.iter().filter(|x| x.1.is_some()).count(), 2);
        assert_eq!(p.iter().filter(|x| x.1.is_none()).count(), 2);
    }
}
