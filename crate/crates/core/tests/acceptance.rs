//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero when a
//! criterion fails that is not listed in `KNOWN_DEVIATIONS`.
//!
//! Run alone with `cargo test --test acceptance`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use viewsynth::automata::{compile, equivalent, Nwa, DEFAULT_DETERMINIZATION_CAP as CAP};
use viewsynth::cli::run_with;
use viewsynth::congruence::{TransitionMonoid, DEFAULT_MONOID_CAP};
use viewsynth::cq::{cq_contains, synthesize_cq, CqSearchConfig, CqViews, ViewKind};
use viewsynth::model::{
    parse_instance, parse_regex, parse_regex_open, Alphabet, Letter, Mode, ProblemInstance, Regex, Scope, SymbolKind,
    SymbolId, Ucq, ViewDef, Word,
};
use viewsynth::oracle::random::{random_cq, random_nwa, random_rpq_instance, random_ucq_instance, seeded, RpqShape};
use viewsynth::oracle::{
    brute_fold_member, brute_view_existence_rpq, coherence_soundness_sample, contained_by_canonical,
    cq_coherence_soundness_sample, fold_length_bound, PathViews,
};
use viewsynth::rpq::{
    capture_check, synthesize_rpq, synthesize_sound, view_languages, views_from_defs, RpqProblem, RpqRequest,
    SearchConfig, Strategy,
};
use viewsynth::twoway::{contains_2rpq, fold_automaton, folds_onto, two_to_one};

const SEC6: &str = include_str!("../examples/sec6_sound.vs");
const UNION: &str = "kind rpq\nsource a1 a2\ntarget 0 1\nmap a1.a2 ~> 0.0|0.1|1.0\n";
const SQUARE: &str = "kind rpq\nsource a\ntarget b\nmap a.a ~> b\n";
const CHAIN: &str = include_str!("../examples/chain_cq.vs");

const CRITERION_1_TIME: Duration = Duration::from_secs(1);
const CRITERION_3_TIME: Duration = Duration::from_secs(1);
const CRITERION_4_TIME: Duration = Duration::from_secs(300);
const CRITERION_4_INSTANCES: u64 = 200;
const CRITERION_5_INSTANCES: u64 = 100;
const CRITERION_7_PAIRS: u64 = 500;
const CRITERION_8_INSTANCES: u64 = 100;
const CRITERION_9_AUTOMATA: u64 = 20;
const CRITERION_9_WORD_LENGTH: usize = 4;
const COHERENCE_SAMPLES: usize = 50;
const BRUTE_BUDGET: u64 = 5_000_000;

/// Criteria whose statement cannot hold as written; see the notes printed with them.
const KNOWN_DEVIATIONS: &[&str] = &["2", "9"];

struct Line {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn line(id: &'static str, pass: bool, detail: impl Into<String>) -> Line {
    Line {
        id,
        pass,
        detail: detail.into(),
    }
}

fn path_views(inst: &ProblemInstance, defs: &[(&str, &str)]) -> PathViews {
    let al = &inst.alphabet;
    defs.iter()
        .map(|&(s, d)| {
            let r = if d == "empty" {
                Regex::Empty
            } else {
                parse_regex(d, al, Scope::TargetOnly, false).expect("view parses")
            };
            (al.lookup(s).expect("declared"), r)
        })
        .collect()
}

fn same_language(x: &Regex, y: &Regex) -> bool {
    equivalent(&compile(x, &[]), &compile(y, &[]), CAP).expect("within cap")
}

fn same_views(got: &BTreeMap<SymbolId, Regex>, want: &PathViews) -> bool {
    got.len() == want.len()
        && want
            .iter()
            .all(|(s, r)| got.get(s).is_some_and(|g| same_language(g, r)))
}

fn criterion_1(found: &mut Vec<(ProblemInstance, PathViews, Mode)>) -> Line {
    let inst = parse_instance(SEC6).unwrap();
    let start = Instant::now();
    let s = synthesize_sound(&inst, &SearchConfig::default()).unwrap();
    let elapsed = start.elapsed();
    let want = path_views(&inst, &[("a1", "b1"), ("a2", "b2"), ("a3", "empty")]);
    let equal = s.solutions.first().is_some_and(|sol| same_views(&sol.regexes, &want));

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sec6_sound.vs");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(["viewsynth", "synth", "--mode", "sound", path], &mut std::io::empty(), &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    let cli_ok = code == 0 && text.contains("view a1 = b1") && text.contains("view a2 = b2") && text.contains("view a3 = empty");

    if let Some(sol) = s.solutions.first() {
        found.push((inst.clone(), sol.regexes.clone(), Mode::Sound));
    }
    line(
        "1",
        equal && cli_ok && elapsed < CRITERION_1_TIME,
        format!("views equivalent to b1/b2/empty: {equal}, cli exit {code}, {elapsed:?} (limit {CRITERION_1_TIME:?})"),
    )
}

fn union_solutions(inst: &ProblemInstance, mode: Mode) -> Vec<BTreeMap<SymbolId, Regex>> {
    let req = RpqRequest {
        config: SearchConfig {
            mode,
            ..Default::default()
        },
        maximal: true,
        all: true,
    };
    synthesize_rpq(inst, &req).unwrap().solutions.into_iter().map(|s| s.regexes).collect()
}

fn contains_set(sols: &[BTreeMap<SymbolId, Regex>], want: &PathViews) -> bool {
    sols.iter().any(|s| same_views(s, want))
}

fn criterion_2(found: &mut Vec<(ProblemInstance, PathViews, Mode)>) -> Vec<Line> {
    let inst = parse_instance(UNION).unwrap();
    let v1 = path_views(&inst, &[("a1", "0"), ("a2", "0|1")]);
    let v2 = path_views(&inst, &[("a1", "0|1"), ("a2", "0")]);
    let union = path_views(&inst, &[("a1", "0|1"), ("a2", "0|1")]);

    let exact = union_solutions(&inst, Mode::Exact);
    let exact_ok = exact.len() == 2 && contains_set(&exact, &v1) && contains_set(&exact, &v2);
    let shown: Vec<String> = exact
        .iter()
        .map(|s| {
            let v: Vec<String> = s.values().map(|r| r.to_text(&inst.alphabet)).collect();
            format!("({})", v.join(", "))
        })
        .collect();
    for s in &exact {
        found.push((inst.clone(), s.clone(), Mode::Exact));
    }

    let problem = RpqProblem::new(&inst).unwrap();
    let defs = union
        .iter()
        .map(|(&s, r)| (s, ViewDef::Path(r.clone())))
        .collect();
    let views = views_from_defs(&defs, &inst.alphabet).unwrap();
    let langs = view_languages(&views, None, &problem.view_letters).unwrap();
    let verdict = capture_check(&problem, &langs, Mode::Sound, CAP).unwrap();
    let word = verdict.mappings[0].counterexample.as_ref().map(|w| inst.alphabet.format_word(w));
    let union_ok = !verdict.holds() && word.as_deref() == Some("1 1");

    let sound = union_solutions(&inst, Mode::Sound);
    let paper_sound = contains_set(&sound, &v1) && contains_set(&sound, &v2);
    for s in &sound {
        found.push((inst.clone(), s.clone(), Mode::Sound));
    }

    vec![
        line(
            "2",
            exact_ok && union_ok,
            format!(
                "exact --all --maximal gives {}; {{0, 0+1}} and {{0+1, 0}} are sound but not exact \
                 (0·(0+1) lacks 10), so only the eps solutions capture exactly; pointwise union rejected \
                 with word {:?}",
                shown.join(" "),
                word.unwrap_or_default()
            ),
        ),
        line(
            "2s",
            paper_sound && union_ok,
            format!(
                "sound --all --maximal contains {{0, 0+1}} and {{0+1, 0}} ({} maximal sets); union rejected with 11",
                sound.len()
            ),
        ),
    ]
}

fn criterion_3() -> Line {
    let inst = parse_instance(SQUARE).unwrap();
    let start = Instant::now();
    let engine = synthesize_sound(&inst, &SearchConfig::default()).unwrap().found();
    let brute = brute_view_existence_rpq(&inst, BRUTE_BUDGET).unwrap().found();
    let elapsed = start.elapsed();
    line(
        "3",
        !engine && !brute && elapsed < CRITERION_3_TIME,
        format!("engine found {engine}, brute found {brute}, {elapsed:?} (limit {CRITERION_3_TIME:?})"),
    )
}

fn criterion_4() -> Line {
    let start = Instant::now();
    let mut agree = 0;
    let mut found = 0;
    let mut first_mismatch = None;
    for seed in 0..CRITERION_4_INSTANCES {
        let inst = random_rpq_instance(&mut seeded(seed), RpqShape::default());
        let engine = synthesize_sound(&inst, &SearchConfig::default()).map(|s| s.found());
        let brute = brute_view_existence_rpq(&inst, BRUTE_BUDGET).map(|b| b.found());
        match (engine, brute) {
            (Ok(e), Ok(b)) if e == b => {
                agree += 1;
                found += e as u64;
            }
            (e, b) => {
                first_mismatch.get_or_insert(format!("seed {seed}: engine {e:?}, brute {b:?}"));
            }
        }
    }
    let elapsed = start.elapsed();
    line(
        "4",
        agree == CRITERION_4_INSTANCES && elapsed < CRITERION_4_TIME,
        format!(
            "{agree}/{CRITERION_4_INSTANCES} verdicts agree ({found} with views), {elapsed:?} (limit {CRITERION_4_TIME:?}){}",
            first_mismatch.map(|m| format!("; first mismatch {m}")).unwrap_or_default()
        ),
    )
}

fn criterion_5() -> Line {
    let mut agree = 0;
    let mut found = 0;
    let mut first_mismatch = None;
    for seed in 0..CRITERION_5_INSTANCES {
        let shape = RpqShape {
            mappings: 2 + (seed % 2) as usize,
            ..Default::default()
        };
        let inst = random_rpq_instance(&mut seeded(1_000 + seed), shape);
        let verdict = |strategy| {
            let cfg = SearchConfig {
                strategy,
                ..Default::default()
            };
            synthesize_sound(&inst, &cfg).map(|s| s.found())
        };
        match (verdict(Strategy::Reduced), verdict(Strategy::Direct)) {
            (Ok(r), Ok(d)) if r == d => {
                agree += 1;
                found += r as u64;
            }
            (r, d) => {
                first_mismatch.get_or_insert(format!("seed {}: reduced {r:?}, direct {d:?}", 1_000 + seed));
            }
        }
    }
    line(
        "5",
        agree == CRITERION_5_INSTANCES,
        format!(
            "{agree}/{CRITERION_5_INSTANCES} verdicts agree ({found} with views){}",
            first_mismatch.map(|m| format!("; first mismatch {m}")).unwrap_or_default()
        ),
    )
}

fn words_up_to(letters: &[Letter], max: usize) -> Vec<Word> {
    let mut all = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max {
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |&l| [w.as_slice(), &[l]].concat()))
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

fn criterion_6() -> Line {
    let mut al = Alphabet::new();
    let a = compile(&parse_regex_open("b1.b2", &mut al, false).unwrap(), &[]);
    let letters = al.target_letters();
    let m = TransitionMonoid::build(&a, &letters, DEFAULT_MONOID_CAP).unwrap();
    let classes: Vec<_> = m.elements().map(|e| m.class_automaton(e).unwrap()).collect();
    let words = words_up_to(&letters, 4);
    let exactly_one = words
        .iter()
        .filter(|w| classes.iter().filter(|c| c.accepts(w)).count() == 1)
        .count();
    line(
        "6",
        m.len() == 5 && exactly_one == words.len() && words.len() == 31,
        format!(
            "monoid size {}, {exactly_one}/{} words (eps and 30 nonempty) in exactly one class",
            m.len(),
            words.len()
        ),
    )
}

fn criterion_7(found_cq: &mut Vec<(ProblemInstance, CqViews, Mode)>) -> Line {
    let inst = parse_instance(CHAIN).unwrap();
    let s = synthesize_cq(
        &inst,
        &CqSearchConfig {
            mode: Mode::Exact,
            ..Default::default()
        },
    )
    .unwrap();
    let report = s.report();
    let view = report.solutions.first().map(|x| x.views["a"].clone()).unwrap_or_default();
    let verified = report.solutions.first().is_some_and(|x| x.verification.iter().all(|r| r.exact == Some(true)));
    if let Some(v) = &s.views {
        found_cq.push((inst.clone(), v.clone(), Mode::Exact));
    }

    let mut al = Alphabet::new();
    let r = al.declare("r", SymbolKind::Target, 2).unwrap();
    let p = al.declare("p", SymbolKind::Target, 1).unwrap();
    let preds = [(r, 2), (p, 1)];
    let mut agree = 0;
    let mut contained = 0;
    for seed in 0..CRITERION_7_PAIRS {
        let rng = &mut seeded(seed);
        let head = (seed % 3) as usize;
        let q1 = random_cq(rng, &preds, head, 3, 4);
        let q2 = random_cq(rng, &preds, head, 3, 4);
        let by_hom = cq_contains(&q1, &q2).unwrap();
        let by_db = contained_by_canonical(&q1, &Ucq::single(q2));
        agree += (by_hom == by_db) as u64;
        contained += by_hom as u64;
    }
    line(
        "7",
        view == "a(u,v) :- r(u,w), s(w,v)" && verified && agree == CRITERION_7_PAIRS,
        format!(
            "V(a) = {view} (exact: {verified}); find_hom agrees with canonical databases on \
             {agree}/{CRITERION_7_PAIRS} pairs ({contained} contained)"
        ),
    )
}

fn criterion_8() -> Line {
    let mut agree = 0;
    let mut found = 0;
    let mut first_mismatch = None;
    for seed in 0..CRITERION_8_INSTANCES {
        let inst = random_ucq_instance(&mut seeded(seed));
        let verdict = |view_kind| {
            let cfg = CqSearchConfig {
                mode: Mode::Sound,
                view_kind,
                ..Default::default()
            };
            synthesize_cq(&inst, &cfg).map(|s| s.found())
        };
        match (verdict(ViewKind::Cq), verdict(ViewKind::Ucq)) {
            (Ok(c), Ok(u)) if c == u => {
                agree += 1;
                found += c as u64;
            }
            (c, u) => {
                first_mismatch.get_or_insert(format!("seed {seed}: cq {c:?}, ucq {u:?}"));
            }
        }
    }
    line(
        "8",
        agree == CRITERION_8_INSTANCES,
        format!(
            "{agree}/{CRITERION_8_INSTANCES} sound verdicts agree ({found} with views){}",
            first_mismatch.map(|m| format!("; first mismatch {m}")).unwrap_or_default()
        ),
    )
}

fn word(al: &Alphabet, text: &str) -> Word {
    al.parse_word(text).unwrap()
}

fn criterion_9() -> Vec<Line> {
    let mut al = Alphabet::new();
    for name in ["a", "b", "c"] {
        al.declare(name, SymbolKind::Target, 2).unwrap();
    }
    let cert = folds_onto(&word(&al, "a b b^- b c"), &word(&al, "a b c"));
    let cert_ok = cert.as_deref() == Some(&[0, 1, 2, 1, 2, 3][..]);

    let mut two = Alphabet::new();
    let sa = two.declare("a", SymbolKind::Target, 2).unwrap();
    let sb = two.declare("b", SymbolKind::Target, 2).unwrap();
    let letters: Vec<Letter> = [sa, sb]
        .iter()
        .flat_map(|&s| [Letter::forward(s), Letter::backward(s)])
        .collect();
    let words = words_up_to(&letters, CRITERION_9_WORD_LENGTH);
    let mut agree_automata = 0;
    let mut first_mismatch = None;
    for seed in 0..CRITERION_9_AUTOMATA {
        let a: Nwa = random_nwa(&mut seeded(seed), &letters, 3);
        let one = two_to_one(&fold_automaton(&a, &letters).unwrap(), CAP).unwrap();
        let bad = words
            .iter()
            .find(|u| one.accepts(u) != brute_fold_member(&a, u, fold_length_bound(u.len(), a.num_states())));
        match bad {
            None => agree_automata += 1,
            Some(u) => {
                first_mismatch.get_or_insert(format!("seed {seed}, u = {}", two.format_word(u)));
            }
        }
    }

    let mut q = |text: &str| compile(&parse_regex_open(text, &mut al, true).unwrap(), &[]);
    let spec_claim = contains_2rpq(&q("a.c"), &q("a.b.b^-.c"), CAP).unwrap();
    let paper_claim = contains_2rpq(&q("a.b.c"), &q("a.b.b^-.b.c"), CAP).unwrap();
    let fold_ok = cert_ok && agree_automata == CRITERION_9_AUTOMATA;
    vec![
        line(
            "9",
            fold_ok && spec_claim,
            format!(
                "certificate {cert:?}; fold automaton agrees with brute fold search on {agree_automata}/\
                 {CRITERION_9_AUTOMATA} automata over {} words{}; contains_2rpq(a.c, a.b.b⁻.c) = {spec_claim} \
                 (a.c answers on x -a-> y -c-> z, which has no b-edge)",
                words.len(),
                first_mismatch.map(|m| format!(", first mismatch {m}")).unwrap_or_default()
            ),
        ),
        line(
            "9s",
            fold_ok && paper_claim,
            format!("folding checks as above; contains_2rpq(a.b.c, a.b.b⁻.b.c) = {paper_claim}"),
        ),
    ]
}

fn criterion_10(paths: &[(ProblemInstance, PathViews, Mode)], cqs: &[(ProblemInstance, CqViews, Mode)]) -> Line {
    let mut passed = 0;
    let mut failures = Vec::new();
    for (i, (inst, views, mode)) in paths.iter().enumerate() {
        let out = coherence_soundness_sample(inst, views, *mode, COHERENCE_SAMPLES, i as u64).unwrap();
        if out.passed() {
            passed += 1;
        } else {
            failures.push(format!("path view set {i}"));
        }
    }
    for (i, (inst, views, mode)) in cqs.iter().enumerate() {
        let out = cq_coherence_soundness_sample(inst, views, *mode, COHERENCE_SAMPLES, i as u64).unwrap();
        if out.passed() {
            passed += 1;
        } else {
            failures.push(format!("cq view set {i}"));
        }
    }
    let total = paths.len() + cqs.len();
    line(
        "10",
        failures.is_empty() && total > 0,
        format!(
            "{passed}/{total} synthesized view sets coherent on {COHERENCE_SAMPLES} random databases each{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failing: {}", failures.join(", "))
            }
        ),
    )
}

fn main() {
    let mut paths = Vec::new();
    let mut cqs = Vec::new();
    let mut lines = vec![criterion_1(&mut paths)];
    lines.extend(criterion_2(&mut paths));
    lines.push(criterion_3());
    lines.push(criterion_4());
    lines.push(criterion_5());
    lines.push(criterion_6());
    lines.push(criterion_7(&mut cqs));
    lines.push(criterion_8());
    lines.extend(criterion_9());
    lines.push(criterion_10(&paths, &cqs));

    let mut unexpected = Vec::new();
    for l in &lines {
        let tag = if l.pass { "PASS" } else { "FAIL" };
        let known = !l.pass && KNOWN_DEVIATIONS.contains(&l.id);
        println!(
            "{tag} criterion {:<3} {}{}",
            l.id,
            l.detail,
            if known { " [known deviation]" } else { "" }
        );
        if !l.pass && !known {
            unexpected.push(l.id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
