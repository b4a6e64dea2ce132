use climit::criteria::{check_restriction, p_set, Flavor, LanguageOracle, Verdict};
use climit::learners::{psd_input, run_trace, star, Hypothesis, Learner, OperatorKind};
use climit::numbering::{decide_c, ind, Decision, Nat};
use climit::seq::{set_code, set_of, FiniteSet, Symbol};
use climit::text::Text;
use climit::transforms::{self, psd_bc_q};
use climit::zoo;

const B: u64 = 1_000_000;

fn verdict(h: &Learner, flavor: Flavor, text: &Text, lang: &LanguageOracle, horizon: u64) -> Verdict {
    let trace = run_trace(h, text, horizon, B).unwrap();
    check_restriction(flavor, &trace, lang, 16, B)
}

#[test]
fn g_to_psd_learns_a_finite_set() {
    let h = star(&zoo::finite_sd());
    let (h2, _) = transforms::g_to_psd(&h).unwrap();
    let lang = LanguageOracle::finite([1, 5]);
    for seed in 0..3 {
        let text = Text::shuffled_finite(&set_of([1, 5]), seed);
        let v = verdict(&h2, Flavor::ExC, &text, &lang, 20);
        assert!(v.is_satisfied(), "{v:?}");
    }
}

/// Least sequence code in the brute-force p-set, or `ind(∅)`.
fn psd_oracle(h: &Learner, d: &FiniteSet, t: u64) -> Option<Hypothesis> {
    let p = p_set(h, d, t, B).unwrap();
    match p.first() {
        Some(s) => h.query(s.code(), B).hypothesis,
        None => Some(Hypothesis::Conjecture(ind([]))),
    }
}

#[test]
fn g_to_psd_agrees_with_the_p_set_oracle() {
    // zero-seen locks on (0); the others never lock or lock on the full content
    let lockers = [zoo::zero_seen_g(), star(&zoo::finite_sd()), zoo::churn_g(), zoo::length_g()];
    for h in &lockers {
        let (h2, _) = transforms::g_to_psd(h).unwrap();
        for d in [set_of([]), set_of([0]), set_of([0, 1])] {
            for t in 0..=3 {
                let got = h2.query(&psd_input(&d, t), 10 * B).hypothesis;
                assert_eq!(got, psd_oracle(h, &d, t), "d={d:?} t={t}");
            }
        }
    }
}

#[test]
fn it_to_sd_on_small_finite_sets() {
    let h = zoo::finite_it();
    let (h2, _) = transforms::it_to_sd(&h).unwrap();
    for mask in 0u64..16 {
        let d: FiniteSet = (0..4u64).filter(|i| mask >> i & 1 == 1).map(Nat::from).collect();
        let Some(Hypothesis::Conjecture(e)) = h2.query(&set_code(&d), B).hypothesis else {
            panic!("no conjecture on {d:?}")
        };
        for x in 0..8u64 {
            let want = if d.contains(&Nat::from(x)) { Decision::Yes } else { Decision::No };
            assert_eq!(decide_c(&e, &Nat::from(x), B), want);
        }
    }
}

#[test]
fn it_to_sd_zero_marker_family() {
    let h = zoo::zero_marker_it(&zoo::positive_index());
    let (h2, _) = transforms::it_to_sd(&h).unwrap();
    for base in [vec![], vec![3], vec![1, 6]] {
        let d = set_of(base.iter().copied().chain([0]));
        let lang = LanguageOracle::Finite(d.clone());
        let v = verdict(&h2, Flavor::ExC, &Text::shuffled_finite(&d, 7), &lang, 20);
        assert!(v.is_satisfied(), "{d:?}: {v:?}");
    }
}

#[test]
fn g_to_it_bc_matches_the_original_bc_verdicts() {
    let h = zoo::churn_g();
    let (h2, _) = transforms::g_to_it_bc(&h).unwrap();
    for d in [set_of([]), set_of([2]), set_of([0, 7])] {
        let lang = LanguageOracle::Finite(d.clone());
        let text = Text::shuffled_finite(&d, 3);
        let a = verdict(&h, Flavor::BcC, &text, &lang, 20);
        let b = verdict(&h2, Flavor::BcC, &text, &lang, 20);
        assert!(a.is_satisfied() && b.is_satisfied(), "{a:?} {b:?}");
    }
}

#[test]
fn psd_bc_learns_under_churn() {
    let h = zoo::churn_g();
    let (h2, _) = transforms::g_to_psd_bc(&h).unwrap();
    for d in [set_of([2]), set_of([0, 7])] {
        let lang = LanguageOracle::Finite(d.clone());
        let v = verdict(&h2, Flavor::BcC, &Text::shuffled_finite(&d, 1), &lang, 16);
        assert!(v.is_satisfied(), "{d:?}: {v:?}");
    }
}

#[test]
fn psd_bc_hypotheses_decide_q() {
    let h = zoo::zero_seen_g();
    let (h2, _) = transforms::g_to_psd_bc(&h).unwrap();
    for d in [set_of([]), set_of([0]), set_of([0, 1])] {
        for t in 0..=2 {
            let Some(Hypothesis::Conjecture(c)) = h2.query(&psd_input(&d, t), B).hypothesis else {
                panic!()
            };
            for x in 0..3u64 {
                let x = Nat::from(x);
                let q1 = psd_bc_q(&h, &x, 1, &d, t, B).unwrap().unwrap();
                let want = if q1 { Decision::Yes } else { Decision::No };
                assert_eq!(decide_c(&c, &x, 10 * B), want);
            }
        }
    }
}

#[test]
fn td_ex_restores_convergence() {
    let h = zoo::churn_td();
    let (h2, _) = transforms::td_bc_to_td_ex(&h).unwrap();
    let lang = LanguageOracle::finite([3, 5]);
    let text = Text::explicit(
        vec![Symbol::datum(3), Symbol::datum(5)],
        Symbol::datum(5),
    );
    let text = Text::interleave(text, Nat::from(3u64), 4).unwrap();
    // the original changes its mind at every step, so it only "converges" at the horizon
    let n0 = |v: Verdict| match v {
        Verdict::Satisfied { n0, .. } => n0,
        other => panic!("{other:?}"),
    };
    assert!(n0(verdict(&h, Flavor::ExC, &text, &lang, 20)) >= 19);
    assert!(verdict(&h, Flavor::BcC, &text, &lang, 20).is_satisfied());
    assert!(n0(verdict(&h2, Flavor::ExC, &text, &lang, 20)) <= 1);
}

#[test]
fn outputs_are_audited_programs() {
    let g = zoo::churn_g();
    for kind in transforms::TransformKind::ALL {
        let input = match kind.input_kind() {
            OperatorKind::It => zoo::finite_it(),
            OperatorKind::Td => zoo::churn_td(),
            _ => g.clone(),
        };
        let (out, rep) = transforms::apply(kind, &input).unwrap();
        assert_eq!(out.kind, kind.output_kind());
        assert_eq!(rep.output, out.program);
        if kind != transforms::TransformKind::It2Sd {
            assert!(transforms::audit(&out.program, &input.program), "{kind}");
        } else {
            assert!(transforms::audit(&out.program, &star(&input).program));
        }
    }
}

#[test]
fn boolean_totality_is_preserved() {
    // probed outputs of a C-index learner stay C-indices after the transformation
    let total_on = |e: &Nat| (0..16u64).all(|x| matches!(decide_c(e, &Nat::from(x), B), Decision::Yes | Decision::No));
    let cases = [
        (transforms::TransformKind::G2Psd, star(&zoo::finite_sd())),
        (transforms::TransformKind::G2Psd, zoo::churn_g()),
        (transforms::TransformKind::It2Sd, zoo::finite_it()),
        (transforms::TransformKind::It2Sd, zoo::zero_marker_it(&zoo::positive_index())),
    ];
    for (kind, h) in cases {
        let (out, _) = transforms::apply(kind, &h).unwrap();
        for d in [set_of([]), set_of([1]), set_of([0, 2]), set_of([0, 1, 3])] {
            for t in 0..3 {
                let input = match out.kind {
                    OperatorKind::Psd => psd_input(&d, t),
                    _ => set_code(&d),
                };
                match out.query(&input, 10 * B).hypothesis {
                    Some(Hypothesis::Conjecture(e)) => assert!(total_on(&e), "{kind} on {d:?}"),
                    other => panic!("{kind} on {d:?}: {other:?}"),
                }
            }
        }
    }
}

#[test]
fn outputs_are_accepted_as_opponents() {
    use climit::adversaries::{attack, AttackBounds, AttackKind};
    // g2it-bc states carry the whole input, so no prefix is stable and the
    // It attack can only report that honestly
    let (out, _) = transforms::apply(transforms::TransformKind::G2ItBc, &star(&zoo::finite_sd())).unwrap();
    let small = AttackBounds { t_max: 1, view_max: 2, ..AttackBounds::default() };
    let w = attack(AttackKind::ItSep, &out, small).unwrap();
    assert!(!w.is_witness() || w.validate().is_ok());

    // rows of the krt index are large sets for the folded It learner, so
    // the set-driven attack stops early
    let short = AttackBounds { m_max: 2, ..AttackBounds::default() };
    let pairs = [
        (transforms::TransformKind::It2Sd, zoo::finite_it(), AttackKind::KrtSd, short),
        (transforms::TransformKind::TdEx, zoo::singleton_td(), AttackKind::TdSep, AttackBounds::default()),
        (transforms::TransformKind::TdEx, zoo::churn_td(), AttackKind::OrtTdTotal, AttackBounds::default()),
    ];
    for (kind, h, theorem, bounds) in pairs {
        let (out, _) = transforms::apply(kind, &h).unwrap();
        let w = attack(theorem, &out, bounds).unwrap();
        assert!(w.is_witness(), "{kind} output vs {theorem}: {:?}", w.status);
        w.validate().unwrap();
    }
}
