//! The relation matrix: every in-scope inclusion or separation between
//! learning criteria, each backed by an executable evidence driver.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::corpus::{self, Case};
use super::Bounds;
use crate::adversaries::{self, AttackBounds, AttackKind};
use crate::criteria::{check_with, Checker, Criterion, Flavor, Verdict};
use crate::learners::{run_trace, star, Hypothesis, Learner, OperatorKind};
use crate::numbering::Nat;
use crate::seq::Symbol;
use crate::text::Text;
use crate::transforms::{self, TransformKind};
use crate::zoo;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    Transformation,
    Attack,
    ZooInclusion,
    Property,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeStatus {
    Pass,
    Fail,
    Inconclusive,
    NotImplemented,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: u64,
    pub fail: u64,
    pub inconclusive: u64,
}

impl Counts {
    fn add(&mut self, other: Counts) {
        self.pass += other.pass;
        self.fail += other.fail;
        self.inconclusive += other.inconclusive;
    }

    fn status(&self) -> EdgeStatus {
        if self.fail > 0 {
            EdgeStatus::Fail
        } else if self.inconclusive > 0 || self.pass == 0 {
            EdgeStatus::Inconclusive
        } else {
            EdgeStatus::Pass
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeReport {
    pub id: String,
    pub relation: String,
    pub evidence: Option<Evidence>,
    pub status: EdgeStatus,
    pub counts: Counts,
    /// Short descriptions of every non-passing item.
    pub details: Vec<String>,
    /// For edges without a driver: what is missing.
    pub pointer: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixReport {
    pub bounds: Bounds,
    pub edges: Vec<EdgeReport>,
}

impl MatrixReport {
    pub fn all_in_scope_pass(&self) -> bool {
        self.edges
            .iter()
            .all(|e| matches!(e.status, EdgeStatus::Pass | EdgeStatus::NotImplemented))
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<12} {:<40} {:<15} {:<16} {:>5} {:>5} {:>5}",
            "edge", "relation", "evidence", "status", "pass", "fail", "inc"
        );
        for e in &self.edges {
            let ev = e.evidence.map_or("-".to_string(), |v| {
                serde_json::to_value(v).unwrap().as_str().unwrap().to_string()
            });
            let st = serde_json::to_value(e.status).unwrap().as_str().unwrap().to_string();
            let _ = writeln!(
                out,
                "{:<12} {:<40} {:<15} {:<16} {:>5} {:>5} {:>5}",
                e.id, e.relation, ev, st, e.counts.pass, e.counts.fail, e.counts.inconclusive
            );
            if let Some(p) = &e.pointer {
                let _ = writeln!(out, "{:<12} {p}", "");
            }
        }
        out
    }
}

/// Maps `f` over `items` on scoped threads, keeping the order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    std::thread::scope(|s| {
        let handles: Vec<_> = items.iter().map(|it| s.spawn(|| f(it))).collect();
        handles.into_iter().map(|h| h.join().expect("driver thread panicked")).collect()
    })
}

/// Verdicts of `h` under `flavor` on every text of `case`.
pub fn verdicts(h: &Learner, flavor: Flavor, case: &Case, b: &Bounds) -> Vec<Verdict> {
    let mut checker = Checker::new(&case.lang, b.m, b.budget);
    case.texts
        .iter()
        .map(|t| match run_trace(h, t, b.horizon, b.budget) {
            Ok(trace) => check_with(flavor, &trace, &mut checker),
            Err(e) => Verdict::Inconclusive { horizon: b.horizon, reason: e.to_string() },
        })
        .collect()
}

/// One (learner, class) triple of the preservation suite.
#[derive(Clone, Debug)]
pub struct PreservationSpec {
    pub kind: TransformKind,
    pub learner_name: &'static str,
    pub learner: Learner,
    pub original_flavor: Flavor,
    pub transformed_flavor: Flavor,
    pub cases: Vec<Case>,
}

/// The shipped preservation corpus for one transformation.
pub fn preservation_corpus(kind: TransformKind, seed: u64) -> Vec<PreservationSpec> {
    use Flavor::*;
    let spec = |name, learner, of, tf, cases| PreservationSpec {
        kind,
        learner_name: name,
        learner,
        original_flavor: of,
        transformed_flavor: tf,
        cases,
    };
    match kind {
        TransformKind::G2Psd => vec![
            spec("finite-g", corpus::star_finite(), ExC, ExC, corpus::finite_cases(4, seed)),
            spec("zero-marker-g", corpus::star_zero_marker(), ExC, ExC, corpus::zero_family_cases(seed)),
            spec("phase-g", corpus::star_phase(), ExC, ExC, corpus::phase_cases()),
        ],
        TransformKind::It2Sd => vec![
            spec("finite-it", zoo::finite_it(), ExC, ExC, corpus::finite_cases(4, seed)),
            spec(
                "zero-marker-it",
                zoo::zero_marker_it(&zoo::positive_index()),
                ExC,
                ExC,
                corpus::zero_family_cases(seed),
            ),
        ],
        TransformKind::G2ItBc => vec![
            spec("churn-g", zoo::churn_g(), BcC, BcC, corpus::finite_cases(4, seed)),
            spec("finite-g", corpus::star_finite(), BcC, BcC, corpus::finite_cases(4, seed)),
        ],
        TransformKind::G2PsdBc => vec![
            spec("churn-g", zoo::churn_g(), BcC, BcC, corpus::finite_cases(3, seed)),
            spec("zero-seen-g", zoo::zero_seen_g(), BcC, BcC, vec![corpus::finite_cases(0, seed).remove(0)]),
        ],
        TransformKind::TdEx => vec![
            spec("churn-td", zoo::churn_td(), BcC, ExC, corpus::churn_td_cases()),
            spec("singleton-td", zoo::singleton_td(), BcC, ExC, corpus::singleton_cases()),
        ],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PreservationItem {
    pub learner: &'static str,
    pub case: String,
    pub text: usize,
    pub original: Verdict,
    pub transformed: Verdict,
}

impl PreservationItem {
    /// Preserved: the transformed learner succeeds wherever the original does.
    pub fn preserved(&self) -> bool {
        !self.original.is_satisfied() || self.transformed.is_satisfied()
    }
}

pub fn run_preservation(spec: &PreservationSpec, b: &Bounds) -> Vec<PreservationItem> {
    let (out, _) = transforms::apply_with(spec.kind, &spec.learner, b.t_cap).expect("corpus kinds match");
    let per_case = par_map(&spec.cases, |case| {
        let a = verdicts(&spec.learner, spec.original_flavor, case, b);
        let t = verdicts(&out, spec.transformed_flavor, case, b);
        a.into_iter()
            .zip(t)
            .enumerate()
            .map(|(i, (original, transformed))| PreservationItem {
                learner: spec.learner_name,
                case: case.name.clone(),
                text: i,
                original,
                transformed,
            })
            .collect::<Vec<_>>()
    });
    per_case.into_iter().flatten().collect()
}

fn preservation_edge(kind: TransformKind, b: &Bounds) -> (Counts, Vec<String>) {
    let mut counts = Counts::default();
    let mut details = Vec::new();
    for spec in preservation_corpus(kind, b.seed) {
        for item in run_preservation(&spec, b) {
            if !item.original.is_satisfied() {
                counts.inconclusive += 1;
                details.push(format!(
                    "{} on {} text {}: original not satisfied ({:?})",
                    item.learner, item.case, item.text, item.original
                ));
            } else if item.transformed.is_satisfied() {
                counts.pass += 1;
            } else {
                let bad = item.transformed.is_falsified();
                if bad {
                    counts.fail += 1;
                } else {
                    counts.inconclusive += 1;
                }
                details.push(format!(
                    "{} on {} text {}: transformed {:?}",
                    item.learner, item.case, item.text, item.transformed
                ));
            }
        }
    }
    (counts, details)
}

fn attack_edge(kind: AttackKind, b: &Bounds) -> (Counts, Vec<String>) {
    let bounds = AttackBounds { budget: b.budget, horizon: b.horizon, ..AttackBounds::default() };
    let suite = adversaries::opponents(kind);
    let results = par_map(&suite, |(name, h)| {
        let w = adversaries::attack(kind, h, bounds).expect("suite kinds match");
        (name.to_string(), w.is_witness(), w.validate().err(), w.status.clone())
    });
    let mut counts = Counts::default();
    let mut details = Vec::new();
    for (name, witness, invalid, status) in results {
        match (witness, invalid) {
            (true, None) => counts.pass += 1,
            (true, Some(e)) => {
                counts.fail += 1;
                details.push(format!("{name}: witness does not replay: {e}"));
            }
            (false, _) => {
                counts.inconclusive += 1;
                details.push(format!("{name}: {status:?}"));
            }
        }
    }
    (counts, details)
}

/// `h` satisfies `flavor` (plus CInd probes when `tau`) on every case.
fn ground_truth(h: &Learner, flavor: Flavor, tau: bool, cases: &[Case], b: &Bounds) -> (Counts, Vec<String>) {
    let crit = Criterion { flavor, tau_cind: tau };
    let probes = probe_texts(b.seed);
    let reports = par_map(cases, |case| {
        let r = crate::criteria::learns(&crit, h, &case.lang, &case.texts, &probes, b.horizon, b.m, b.budget);
        (case.name.clone(), r)
    });
    let mut counts = Counts::default();
    let mut details = Vec::new();
    for (name, r) in reports {
        for v in r.per_text.iter().chain(r.probes.iter()) {
            tally(&mut counts, &mut details, v, &name);
        }
    }
    (counts, details)
}

fn tally(counts: &mut Counts, details: &mut Vec<String>, v: &Verdict, what: &str) {
    match v {
        Verdict::Satisfied { .. } => counts.pass += 1,
        Verdict::Falsified { .. } => {
            counts.fail += 1;
            details.push(format!("{what}: {v:?}"));
        }
        Verdict::Inconclusive { .. } => {
            counts.inconclusive += 1;
            details.push(format!("{what}: {v:?}"));
        }
    }
}

/// Arbitrary texts, for τ(CInd) side conditions.
pub fn probe_texts(seed: u64) -> Vec<Text> {
    vec![
        Text::explicit(vec![Symbol::datum(9), Symbol::Pause, Symbol::datum(2)], Symbol::datum(13)),
        Text::shuffled_finite(&crate::seq::set_of([4, 11, 12]), seed),
        Text::canonical_c_index(zoo::positive_index()),
    ]
}

/// Starred learners reproduce the hypotheses of the originals.
fn star_edge(b: &Bounds) -> (Counts, Vec<String>) {
    let learners = [
        ("finite-sd", zoo::finite_sd()),
        ("finite-it", zoo::finite_it()),
        ("phase-psd", zoo::phase_learner()),
        ("singleton-td", zoo::singleton_td()),
        ("zero-marker-it", zoo::zero_marker_it(&zoo::positive_index())),
    ];
    let cases = corpus::finite_cases(3, b.seed);
    let mut counts = Counts::default();
    let mut details = Vec::new();
    for (name, h) in &learners {
        let s = star(h);
        for case in &cases {
            for t in &case.texts {
                let (Ok(a), Ok(c)) = (run_trace(h, t, b.horizon, b.budget), run_trace(&s, t, b.horizon, b.budget)) else {
                    counts.inconclusive += 1;
                    continue;
                };
                if a.first_divergence().is_some() || c.first_divergence().is_some() {
                    counts.inconclusive += 1;
                    details.push(format!("{name} on {}: divergence", case.name));
                } else if a.hypotheses() == c.hypotheses() {
                    counts.pass += 1;
                } else {
                    counts.fail += 1;
                    details.push(format!("{name} on {}: starred trace differs", case.name));
                }
            }
        }
    }
    (counts, details)
}

/// `h` with every conjecture replaced by a W-index of the same set.
fn w_reading(h: &Learner) -> Learner {
    use crate::numbering::build::*;
    use crate::numbering::{c_to_w_program, Prim};
    let program = program_unchecked(
        "v",
        let_(
            "r",
            call(lit(h.program.clone()), var("v")),
            ifz(
                var("r"),
                lit(0u64),
                succ(prim(Prim::Smn, vec![lit(c_to_w_program().clone()), pred(var("r"))])),
            ),
        ),
    );
    Learner::new(program.code(), h.kind)
}

/// `Ex_C` success implies `Bc_C` and `Ex_W` success on the zoo corpus.
fn weakening_edge(b: &Bounds, weaker: Flavor) -> (Counts, Vec<String>) {
    let pairs: Vec<(&str, Learner, Vec<Case>)> = vec![
        ("finite-sd", zoo::finite_sd(), corpus::finite_cases(4, b.seed)),
        ("zero-marker-sd", zoo::zero_marker_sd(&zoo::positive_index()), corpus::zero_family_cases(b.seed)),
        ("phase-psd", zoo::phase_learner(), corpus::phase_cases()),
    ];
    let mut counts = Counts::default();
    let mut details = Vec::new();
    for (name, h, cases) in &pairs {
        for case in cases {
            let strong = verdicts(h, Flavor::ExC, case, b);
            let weak = match weaker {
                Flavor::ExW | Flavor::BcW => verdicts(&w_reading(h), weaker, case, b),
                _ => verdicts(h, weaker, case, b),
            };
            for (s, w) in strong.iter().zip(&weak) {
                if !s.is_satisfied() {
                    counts.inconclusive += 1;
                    details.push(format!("{name} on {}: Ex_C not satisfied", case.name));
                } else {
                    tally(&mut counts, &mut details, w, &format!("{name} on {}", case.name));
                }
            }
        }
    }
    (counts, details)
}

/// Transductive learners on texts that repeat a datum `x` forever: every
/// other hypothesis is `h(x)`, so a learner that converges on such a text
/// converges to `h(x)` unless `h(x)` is `?`, and all its hypotheses on
/// texts of the language are then C-indices.
fn td_interleave_edge(b: &Bounds) -> (Counts, Vec<String>) {
    let mut learners: Vec<(&str, Learner, Vec<Case>)> = vec![
        ("singleton-td", zoo::singleton_td(), corpus::singleton_cases()),
        ("const-ind-35", zoo::constant_conjecture(OperatorKind::Td, &crate::numbering::ind([3, 5])), corpus::churn_td_cases()),
    ];
    let (ex, _) = transforms::td_bc_to_td_ex(&zoo::churn_td()).expect("td learner");
    learners.push(("churn-td-ex", ex, corpus::churn_td_cases()));
    let mut counts = Counts::default();
    let mut details = Vec::new();
    for (name, h, cases) in &learners {
        for case in cases {
            let LanguageElems(elems) = language_elems(case);
            for base in &case.texts {
                for x in &elems {
                    let Ok(text) = Text::interleave(base.clone(), x.clone(), b.horizon) else {
                        continue;
                    };
                    let Ok(trace) = run_trace(h, &text, b.horizon, b.budget) else {
                        counts.inconclusive += 1;
                        continue;
                    };
                    let hx = h.query(&Symbol::Datum(x.clone()).code(), b.budget).hypothesis;
                    let mut checker = Checker::new(&case.lang, b.m, b.budget);
                    let ex = check_with(Flavor::ExC, &trace, &mut checker);
                    let cind = check_with(Flavor::CInd, &trace, &mut checker);
                    let converged = matches!(ex, Verdict::Satisfied { n0, .. } if n0 + 2 <= b.horizon);
                    let final_h = trace.hypotheses().last().cloned().flatten();
                    let ok = !converged
                        || (cind.is_satisfied()
                            && (hx == Some(Hypothesis::Unknown) || hx == final_h));
                    if ok {
                        counts.pass += 1;
                    } else {
                        counts.fail += 1;
                        details.push(format!("{name} on {} with {x}: {ex:?} / {cind:?}", case.name));
                    }
                }
            }
        }
    }
    (counts, details)
}

struct LanguageElems(Vec<Nat>);

fn language_elems(case: &Case) -> LanguageElems {
    match &case.lang {
        crate::criteria::LanguageOracle::Finite(d) => LanguageElems(d.iter().cloned().collect()),
        _ => LanguageElems(vec![]),
    }
}

struct EdgeDef {
    id: &'static str,
    relation: &'static str,
    evidence: Evidence,
    run: fn(&Bounds) -> (Counts, Vec<String>),
}

fn in_scope() -> Vec<EdgeDef> {
    fn t(k: TransformKind) -> impl Fn(&Bounds) -> (Counts, Vec<String>) {
        move |b| preservation_edge(k, b)
    }
    vec![
        EdgeDef { id: "g=psd", relation: "G Ex_C = Psd Ex_C", evidence: Evidence::Transformation, run: |b| t(TransformKind::G2Psd)(b) },
        EdgeDef { id: "it<=sd", relation: "It Ex_C <= Sd Ex_C", evidence: Evidence::Transformation, run: |b| t(TransformKind::It2Sd)(b) },
        EdgeDef { id: "it-bc=g-bc", relation: "It Bc_C = G Bc_C", evidence: Evidence::Transformation, run: |b| t(TransformKind::G2ItBc)(b) },
        EdgeDef { id: "psd-bc=g-bc", relation: "Psd Bc_C = G Bc_C", evidence: Evidence::Transformation, run: |b| t(TransformKind::G2PsdBc)(b) },
        EdgeDef { id: "td-ex=td-bc", relation: "Td Ex_C = Td Bc_C", evidence: Evidence::Transformation, run: |b| t(TransformKind::TdEx)(b) },
        EdgeDef {
            id: "td<sd",
            relation: "Sd Ex_C not<= Td Ex_C",
            evidence: Evidence::Attack,
            run: |b| {
                let (mut c, mut d) = attack_edge(AttackKind::TdSep, b);
                let cases: Vec<Case> = [vec![0u64], vec![1], vec![0, 1]]
                    .iter()
                    .flat_map(|s| corpus_for(s, b.seed))
                    .collect();
                let (c2, d2) = ground_truth(&zoo::finite_sd(), Flavor::ExC, false, &cases, b);
                c.add(c2);
                d.extend(d2);
                (c, d)
            },
        },
        EdgeDef {
            id: "it<sd",
            relation: "tau(CInd) Sd Ex_C not<= It Ex_C",
            evidence: Evidence::Attack,
            run: |b| {
                let (mut c, mut d) = attack_edge(AttackKind::ItSep, b);
                let mut cases = corpus::zero_family_cases(b.seed);
                cases.push(corpus::positive_case());
                let (c2, d2) = ground_truth(&zoo::zero_marker_sd(&zoo::positive_index()), Flavor::ExC, true, &cases, b);
                c.add(c2);
                d.extend(d2);
                (c, d)
            },
        },
        EdgeDef {
            id: "sd<psd",
            relation: "Psd Ex_C not<= Sd Bc_C",
            evidence: Evidence::Attack,
            run: |b| {
                let (mut c, mut d) = attack_edge(AttackKind::KrtSd, b);
                let (c2, d2) = ground_truth(&zoo::phase_learner(), Flavor::ExC, false, &corpus::phase_cases(), b);
                c.add(c2);
                d.extend(d2);
                (c, d)
            },
        },
        EdgeDef { id: "r-td<td", relation: "R Td Ex_C < Td Ex_C", evidence: Evidence::Attack, run: |b| attack_edge(AttackKind::OrtTdTotal, b) },
        EdgeDef { id: "td-cind=td", relation: "Td CInd Ex_C = Td Ex_C", evidence: Evidence::Property, run: td_interleave_edge },
        EdgeDef { id: "beta<=g", relation: "beta Ex_C <= G Ex_C (starred learner)", evidence: Evidence::ZooInclusion, run: star_edge },
        EdgeDef { id: "ex<=bc", relation: "Ex_C <= Bc_C", evidence: Evidence::ZooInclusion, run: |b| weakening_edge(b, Flavor::BcC) },
        EdgeDef { id: "c<=w", relation: "Ex_C <= Ex_W (C-to-W index map)", evidence: Evidence::ZooInclusion, run: |b| weakening_edge(b, Flavor::ExW) },
    ]
}

fn corpus_for(elems: &[u64], seed: u64) -> Vec<Case> {
    let d = crate::seq::set_of(elems.iter().copied());
    vec![Case {
        name: format!("{d:?}"),
        lang: crate::criteria::LanguageOracle::Finite(d.clone()),
        texts: vec![Text::canonical_finite(d.clone()), Text::shuffled_finite(&d, seed)],
    }]
}

/// Relations with no driver, and what a driver would need.
pub const NOT_IMPLEMENTED: [(&str, &str, &str); 6] = [
    ("td-w\\g-c", "Td Ex_W not<= G Ex_C", "needs the delayed-diagonalization text; krt/ort machinery is available"),
    ("r-sd<sd", "R Sd Ex_C < Sd Ex_C", "needs a self-learning ort class for set-driven learners"),
    ("r-it<it", "R It Ex_C < It Ex_C", "needs a self-learning ort class for iterative learners"),
    ("it\\g-cind-bc", "It Ex_C not<= G CInd Bc_C", "diagonalization against characteristic-index Bc learners not wired up"),
    ("td-cind\\tau", "Td CInd Ex_C not<= tau(CInd) Bc_C", "diagonalization against tau(CInd) learners not wired up"),
    ("sd-bc\\g-ex", "Sd Bc_C not<= G Ex_C", "needs the interleaved-sequence construction; krt machinery is available"),
];

pub fn edge_ids() -> Vec<&'static str> {
    in_scope().iter().map(|e| e.id).chain(NOT_IMPLEMENTED.iter().map(|e| e.0)).collect()
}

/// Which edges to run, and under which bounds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MatrixSpec {
    /// Edge ids; all edges when absent.
    pub edges: Option<Vec<String>>,
    pub bounds: Bounds,
}

impl MatrixSpec {
    /// Unknown edge ids, if any.
    pub fn unknown_edges(&self) -> Vec<String> {
        let known = edge_ids();
        self.edges
            .iter()
            .flatten()
            .filter(|e| !known.contains(&e.as_str()))
            .cloned()
            .collect()
    }

    pub fn run(&self) -> MatrixReport {
        run_matrix(&self.bounds, self.edges.as_deref())
    }
}

/// Runs the matrix, restricted to `only` when given.
pub fn run_matrix(b: &Bounds, only: Option<&[String]>) -> MatrixReport {
    let defs: Vec<EdgeDef> = in_scope()
        .into_iter()
        .filter(|e| only.is_none_or(|o| o.iter().any(|x| x == e.id)))
        .collect();
    let results = par_map(&defs, |d| (d.run)(b));
    let mut edges: Vec<EdgeReport> = defs
        .iter()
        .zip(results)
        .map(|(d, (counts, details))| EdgeReport {
            id: d.id.into(),
            relation: d.relation.into(),
            evidence: Some(d.evidence),
            status: counts.status(),
            counts,
            details,
            pointer: None,
        })
        .collect();
    for (id, rel, ptr) in NOT_IMPLEMENTED {
        if only.is_none_or(|o| o.iter().any(|x| x == id)) {
            edges.push(EdgeReport {
                id: id.into(),
                relation: rel.into(),
                evidence: None,
                status: EdgeStatus::NotImplemented,
                counts: Counts::default(),
                details: vec![],
                pointer: Some(format!("out of scope: {ptr}")),
            });
        }
    }
    MatrixReport { bounds: *b, edges }
}
