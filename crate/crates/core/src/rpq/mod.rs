//! View synthesis for regular path queries: search over congruence classes of the target
//! automaton, capture checking and maximal views.

mod check;
mod problem;
mod search;
mod views;

use std::collections::BTreeMap;

pub use check::{capture_check, CaptureVerdict, MappingCheck};
pub use problem::{reduce_to_single_mapping, CompiledMapping, RpqProblem};
pub use search::{
    enumerate, maximal_only, maximize, Assignment, SearchConfig, SearchOutcome, SearchSpace, Strategy, ViewSpace,
    DEFAULT_BUDGET,
};
pub use views::{view_languages, views_from_defs, views_to_regex, RpqView, RpqViews};

use crate::error::{Error, Result};
use crate::model::{Alphabet, Mode, ProblemInstance, Regex, SymbolId};
use crate::report::{MappingRecord, Solution, Statistics, SynthesisReport};

/// What to synthesize.
#[derive(Clone, Debug, Default)]
pub struct RpqRequest {
    pub config: SearchConfig,
    /// Enlarge the views until no class can be added.
    pub maximal: bool,
    /// Return every solution instead of the first one. Combined with `maximal`, every
    /// maximal view set.
    pub all: bool,
}

/// A synthesized view set with its verification on the original mappings.
#[derive(Clone, Debug)]
pub struct RpqSolution {
    pub assignment: Assignment,
    pub views: RpqViews,
    pub regexes: BTreeMap<SymbolId, Regex>,
    pub verdict: CaptureVerdict,
}

pub struct RpqSynthesis {
    pub space: SearchSpace,
    pub mode: Mode,
    pub maximal: bool,
    pub solutions: Vec<RpqSolution>,
    pub assignments_tried: u64,
}

impl RpqSynthesis {
    pub fn found(&self) -> bool {
        !self.solutions.is_empty()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.space.problem.instance.alphabet
    }

    pub fn report(&self) -> SynthesisReport {
        let al = self.alphabet();
        let solutions = self
            .solutions
            .iter()
            .map(|s| Solution {
                views: s
                    .regexes
                    .iter()
                    .map(|(&sym, r)| (al.name(sym).to_string(), r.to_text(al)))
                    .collect(),
                verification: records(&s.verdict, al),
            })
            .collect();
        let stats = Statistics {
            assignments_tried: self.assignments_tried,
            monoid_size: Some(self.space.monoid.len()),
            view_candidates: Some(self.space.options.len()),
            bounds: None,
        };
        SynthesisReport::new(
            self.space.problem.instance.kind,
            self.mode,
            self.maximal,
            solutions,
            stats,
        )
    }
}

/// Verification records with words rendered over `alphabet`.
pub fn records(v: &CaptureVerdict, alphabet: &Alphabet) -> Vec<MappingRecord> {
    v.mappings
        .iter()
        .enumerate()
        .map(|(i, m)| MappingRecord {
            mapping: i,
            sound: m.sound,
            nonempty: m.nonempty,
            exact: m.complete,
            nonempty_witness: m.nonempty_witness.as_ref().map(|w| alphabet.format_word(w)),
            counterexample: m.counterexample.as_ref().map(|w| alphabet.format_word(w)),
            missing: m.missing.as_ref().map(|w| alphabet.format_word(w)),
        })
        .collect()
}

/// Searches views for a path-query instance.
///
/// Sound mode searches `EMPTY` or a single class per symbol, exact mode unions of classes.
/// With `all` and `maximal` together the union space is enumerated in either mode and
/// only the maximal solutions are kept. Every solution is re-verified on the original
/// mappings by `capture_check`.
pub fn synthesize_rpq(instance: &ProblemInstance, req: &RpqRequest) -> Result<RpqSynthesis> {
    let cfg = &req.config;
    let space = SearchSpace::new(instance, cfg.strategy, cfg.monoid_cap)?;
    let native = match cfg.mode {
        Mode::Sound => ViewSpace::Classes,
        Mode::Exact => ViewSpace::Unions,
    };
    let (assignments, tried) = if req.all && req.maximal {
        let out = enumerate(&space, ViewSpace::Unions, cfg, true)?;
        (maximal_only(&out.solutions), out.assignments_tried)
    } else {
        let out = enumerate(&space, native, cfg, req.all)?;
        let mut sols = out.solutions;
        if req.maximal {
            sols = sols
                .iter()
                .map(|a| maximize(&space, a, cfg.mode, cfg.det_cap))
                .collect::<Result<_>>()?;
        }
        (sols, out.assignments_tried)
    };

    let original = RpqProblem::new(instance)?;
    let mut solutions = Vec::new();
    for assignment in assignments {
        let views = space.to_views(&assignment);
        let letters = &space.problem.view_letters;
        let langs = view_languages(&views, Some(&space.monoid), letters)?;
        let verdict = capture_check(&original, &langs, cfg.mode, cfg.det_cap)?;
        if !verdict.holds() {
            return Err(Error::invalid("internal error: a synthesized view set failed verification"));
        }
        let regexes = views_to_regex(&views, Some(&space.monoid), letters)?;
        solutions.push(RpqSolution {
            assignment,
            views,
            regexes,
            verdict,
        });
    }
    Ok(RpqSynthesis {
        space,
        mode: cfg.mode,
        maximal: req.maximal,
        solutions,
        assignments_tried: tried,
    })
}

/// First sound view set in canonical order, if any.
pub fn synthesize_sound(instance: &ProblemInstance, config: &SearchConfig) -> Result<RpqSynthesis> {
    let config = SearchConfig {
        mode: Mode::Sound,
        ..config.clone()
    };
    synthesize_rpq(instance, &RpqRequest { config, ..Default::default() })
}

/// First exact view set in canonical order, if any.
pub fn synthesize_exact(instance: &ProblemInstance, config: &SearchConfig) -> Result<RpqSynthesis> {
    let config = SearchConfig {
        mode: Mode::Exact,
        ..config.clone()
    };
    synthesize_rpq(instance, &RpqRequest { config, ..Default::default() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_instance;

    #[test]
    fn sec6_sound_report() {
        let inst = parse_instance("kind rpq\nsource a1 a2 a3\ntarget b1 b2\nmap (a1|a3).(a2|a3) ~> b1.b2\n").unwrap();
        let r = synthesize_sound(&inst, &SearchConfig::default()).unwrap().report();
        assert!(r.found());
        let v = &r.solutions[0].views;
        assert_eq!(v["a1"], "b1");
        assert_eq!(v["a2"], "b2");
        assert_eq!(v["a3"], "empty");
    }

    #[test]
    fn exact_solutions_of_the_union_example() {
        let inst = parse_instance("kind rpq\nsource a1 a2\ntarget 0 1\nmap a1.a2 ~> 0.0|0.1|1.0\n").unwrap();
        let req = RpqRequest {
            config: SearchConfig {
                mode: Mode::Exact,
                ..Default::default()
            },
            all: true,
            maximal: true,
        };
        let s = synthesize_rpq(&inst, &req).unwrap();
        let texts: Vec<Vec<String>> = s.report().solutions.iter().map(|x| x.views.values().cloned().collect()).collect();
        assert_eq!(texts.len(), 2, "{texts:?}");
        assert!(texts.iter().all(|t| t.contains(&"eps".to_string())));
    }

    #[test]
    fn trivial_exact() {
        let inst = parse_instance("kind rpq\nsource a\ntarget b\nmap a ~> b\n").unwrap();
        let r = synthesize_exact(&inst, &SearchConfig::default()).unwrap().report();
        assert_eq!(r.solutions[0].views["a"], "b");
    }

    #[test]
    fn multi_mapping_strategies_agree() {
        let inst = parse_instance("kind rpq\nsource a a'\ntarget b1 b2\nmap a ~> b1\nmap a' ~> b2|b1.b1\nmap a.a' ~> b1.b2\n").unwrap();
        for strategy in [Strategy::Reduced, Strategy::Direct] {
            let cfg = SearchConfig {
                strategy,
                ..Default::default()
            };
            let r = synthesize_sound(&inst, &cfg).unwrap().report();
            assert!(r.found(), "{strategy:?}");
            assert_eq!(r.solutions[0].views["a"], "b1");
            assert_eq!(r.solutions[0].views["a'"], "b2");
        }
    }
}
